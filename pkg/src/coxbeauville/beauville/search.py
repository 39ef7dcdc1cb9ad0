"""Searching for Beauville structures.

Exhaustive mode works on the full element list of a small group.  Conjugacy
classes are numbered once, and the Sigma set of a pair becomes a bit mask of
classes, so condition (dagger) is a single ``&``.  Pairs are taken up to
simultaneous conjugation: ``x`` runs over class representatives and ``y``
over orbits of the centralizer of ``x``.

Randomized mode samples strongly real pairs ``(tu, tv)`` for involutions
``t, u, v``, which are inverted by ``t`` by construction, and keeps a pool
of generating pairs until two of them have disjoint Sigma sets.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from typing import Any

from ..algebra import ExactMatrix, ExactScalar
from ..groups import RealizedGroup
from ..perms import SignedPermutation, to_matrix
from ..perms import Perm, perm_compose, perm_identity, perm_inverse, perm_is_identity, perm_order, perm_power
from ..stabchain import BoundExceeded, StabilizerChain, conjugacy_class, generates, index2_subgroups
from .sigma import check_dagger, sigma
from .verify import (
    BeauvilleReport,
    BeauvilleStructure,
    choose_mode,
    find_inverting_element,
    verify_unmixed,
)

__all__ = [
    "SearchResult",
    "search_structures",
    "exhaustive_search",
    "randomized_search",
    "ClassTable",
    "class_trace",
    "EXHAUSTIVE_BOUND",
]

logger = logging.getLogger(__name__)

EXHAUSTIVE_BOUND = 10_000


@dataclass
class SearchResult:
    outcome: str  # Found | NoneExists | Exhausted
    group: str
    mode: str
    structure: BeauvilleStructure | None = None
    report: BeauvilleReport | None = None
    stats: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: int = 0

    def to_json(self, G: RealizedGroup | None = None, timing: bool = True) -> dict:
        from .verify import SCHEMA_VERSION

        out: dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "group": self.group,
            "search": self.mode,
            "outcome": self.outcome,
            "stats": self.stats,
        }
        if self.report is not None:
            out["report"] = self.report.to_json(timing=False)
        if G is not None and self.structure is not None:
            s = self.structure
            out["witnesses"] = {
                k: (G.format(getattr(s, k)) if getattr(s, k) is not None else None) for k in ("t1", "t2")
            }
        if timing:
            out["timing"] = {"elapsedMs": self.elapsed_ms}
        return out


# -- class table ----------------------------------------------------------------

class ClassTable:
    """Elements of a small group with class numbers and power-class masks."""

    def __init__(self, G: RealizedGroup, bound: int = EXHAUSTIVE_BOUND) -> None:
        order = G.order()
        if order > bound:
            raise BoundExceeded(f"|{G.name}| = {order} exceeds the exhaustive bound {bound}")
        self.G = G
        self.gens = G.generator_perms
        self.elements: list[Perm] = sorted(G.chain.elements())
        self.index = {p: i for i, p in enumerate(self.elements)}
        self.class_of = [-1] * len(self.elements)
        self.reps: list[int] = []
        self.sizes: list[int] = []
        for i, p in enumerate(self.elements):
            if self.class_of[i] != -1:
                continue
            cid = len(self.reps)
            members = conjugacy_class(p, self.gens, bound=order + 1)
            for q in members:
                self.class_of[self.index[q]] = cid
            self.reps.append(i)
            self.sizes.append(len(members))
        self._renumber()
        self.identity_class = self.class_of[self.index[perm_identity(G.degree)]]
        self.power_mask = []
        for i in self.reps:
            p = self.elements[i]
            mask = 0
            for e in range(1, perm_order(p)):
                mask |= 1 << self.class_of[self.index[perm_power(p, e)]]
            self.power_mask.append(mask)
        self.central_mask = 0
        for cid, size in enumerate(self.sizes):
            if size == 1 and cid != self.identity_class:
                self.central_mask |= 1 << cid

    def _renumber(self) -> None:
        """Order classes by (element order, class size, trace), then by smallest member."""
        keys = []
        for cid, i in enumerate(self.reps):
            p = self.elements[i]
            t = class_trace(self.G, p)
            keys.append((perm_order(p), self.sizes[cid], _trace_value(t), i, cid))
        keys.sort()
        new_id = {old: new for new, (*_, old) in enumerate(keys)}
        self.class_of = [new_id[c] for c in self.class_of]
        self.reps = [k[3] for k in keys]
        self.sizes = [k[1] for k in keys]
        self.traces = [class_trace(self.G, self.elements[i]) for i in self.reps]
        self.labels = []
        letters: dict[int, int] = {}
        for o, *_ in keys:
            k = letters.get(o, 0)
            letters[o] = k + 1
            self.labels.append(f"{o}{_letters(k)}")

    def describe(self) -> list[dict[str, Any]]:
        return [
            {"label": lab, "order": perm_order(self.elements[i]), "size": size,
             "trace": str(t), "representative": self.G.format(self.G.element(self.elements[i]))}
            for lab, i, size, t in zip(self.labels, self.reps, self.sizes, self.traces)
        ]

    def cls(self, p: Perm) -> int:
        return self.class_of[self.index[p]]

    def sigma_mask(self, x: Perm, y: Perm) -> int:
        return (
            self.power_mask[self.cls(x)]
            | self.power_mask[self.cls(y)]
            | self.power_mask[self.cls(perm_compose(x, y))]
        )

    def sigma_elements(self, mask: int) -> set[Perm]:
        return {p for i, p in enumerate(self.elements) if mask >> self.class_of[i] & 1}

    def centralizer_gens(self, x: Perm) -> list[Perm]:
        """A generating set of the centralizer of ``x``, built greedily."""
        gens: list[Perm] = []
        chain = StabilizerChain(self.G.degree, [])
        for p in self.elements:
            if perm_compose(p, x) == perm_compose(x, p) and not chain.contains(p):
                gens.append(p)
                chain = StabilizerChain(self.G.degree, gens)
        return gens


def class_trace(G: RealizedGroup, p: Perm):
    """Trace in the defining representation; fixed points for dihedral and product actions."""
    g = G.element(p)
    if isinstance(g, ExactMatrix):
        return g.trace()
    if isinstance(g, SignedPermutation):
        return to_matrix(g).trace()
    return sum(1 for i, v in enumerate(p) if i == v)


def _trace_value(t) -> float:
    if isinstance(t, ExactScalar):
        return float(t.a) + float(t.b) * 5 ** 0.5
    return float(t)


def _letters(k: int) -> str:
    out = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        out = chr(ord("A") + r) + out
    return out


def _conj(g: Perm, h: Perm, hi: Perm) -> Perm:
    return perm_compose(perm_compose(hi, g), h)


def _spans(chars, x: Perm, y: Perm) -> bool:
    """Images of ``x`` and ``y`` span the largest elementary abelian 2-quotient."""
    return all(chi(x) == -1 or chi(y) == -1 for chi in chars)


def exhaustive_search(
    G: RealizedGroup,
    bound: int = EXHAUSTIVE_BOUND,
    strongly_real: bool = True,
) -> SearchResult:
    """Decide by enumeration whether ``G`` has a Beauville structure.

    ``NoneExists`` is a proof.  With ``strongly_real`` a found structure is
    preferably one with inner inverting witnesses; if every disjoint
    combination lacks them the plain structure is returned.
    """
    start = time.perf_counter()
    table = ClassTable(G, bound)
    order = len(table.elements)
    chars = index2_subgroups(G.degree, table.gens, order)
    by_mask: dict[int, list[tuple[Perm, Perm]]] = {}
    tested = generating = 0
    for xi in table.reps:
        x = table.elements[xi]
        if perm_is_identity(x):
            continue
        cgens = table.centralizer_gens(x)
        cinv = [perm_inverse(c) for c in cgens]
        seen = bytearray(order)
        for yi, y in enumerate(table.elements):
            if seen[yi]:
                continue
            # mark the centralizer orbit of y
            seen[yi] = 1
            stack = [y]
            while stack:
                z = stack.pop()
                for c, ci in zip(cgens, cinv):
                    w = _conj(z, c, ci)
                    wi = table.index[w]
                    if not seen[wi]:
                        seen[wi] = 1
                        stack.append(w)
            if perm_is_identity(y) or not _spans(chars, x, y):
                continue
            tested += 1
            if not generates(G.degree, [x, y], order)[0]:
                continue
            generating += 1
            by_mask.setdefault(table.sigma_mask(x, y), []).append((x, y))
    masks = sorted(by_mask)
    stats: dict[str, Any] = {
        "order": order,
        "classes": len(table.reps),
        "pairOrbitsTested": tested,
        "generatingPairOrbits": generating,
        "distinctSigma": len(masks),
    }
    if table.central_mask:
        stats["centralInEverySigma"] = bool(masks) and all(m & table.central_mask for m in masks)
    disjoint = [(a, b) for i, a in enumerate(masks) for b in masks[i:] if not a & b]
    stats["disjointSigmaPairs"] = len(disjoint)
    result = SearchResult("NoneExists", G.name, "exhaustive", stats=stats)
    if disjoint:
        found = None
        if strongly_real:
            found = _strongly_real_choice(G, by_mask, disjoint)
        if found is None:
            a, b = disjoint[0]
            (x1, y1), (x2, y2) = by_mask[a][0], by_mask[b][0]
            found = BeauvilleStructure(*(G.element(p) for p in (x1, y1, x2, y2)))
        result = _finish(G, found, "exhaustive", stats, exact=True)
    result.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return result


def _strongly_real_choice(G, by_mask, disjoint) -> BeauvilleStructure | None:
    witness: dict[tuple[Perm, Perm], Any] = {}

    def inverted(mask):
        for x, y in by_mask[mask]:
            key = (x, y)
            if key not in witness:
                witness[key] = find_inverting_element(G, G.element(x), G.element(y))
            if witness[key] is not None:
                return key
        return None

    for a, b in disjoint:
        pa = inverted(a)
        if pa is None:
            continue
        pb = inverted(b)
        if pb is None:
            continue
        s = BeauvilleStructure(*(G.element(p) for p in (*pa, *pb)))
        s.t1, s.t2 = witness[pa], witness[pb]
        return s
    return None


def _finish(G, s: BeauvilleStructure, mode: str, stats, exact: bool) -> SearchResult:
    rep = verify_unmixed(G, s, "exact" if exact else None)
    if not rep.unmixed:
        raise AssertionError(f"search produced a structure that does not verify: {rep.to_json(False)}")
    rep.strongly_real = s.t1 is not None and s.t2 is not None
    return SearchResult("Found", G.name, mode, structure=s, report=rep, stats=stats)


# -- randomized -----------------------------------------------------------------

def random_element(chain: StabilizerChain, rng: random.Random) -> Perm:
    """Uniform random member: one random transversal element per level."""
    acc = chain.identity
    for lvl in reversed(chain.levels):
        acc = perm_compose(acc, lvl.trans[rng.choice(lvl.orbit)])
    return acc


def random_involution(chain: StabilizerChain, rng: random.Random, tries: int = 1000) -> Perm:
    for _ in range(tries):
        g = random_element(chain, rng)
        o = perm_order(g)
        if o % 2 == 0:
            return perm_power(g, o // 2)
    raise RuntimeError("no element of even order found")


def randomized_search(
    G: RealizedGroup,
    budget: int = 20000,
    seed: int = 0,
    strongly_real: bool = True,
    pool_size: int = 64,
    mode: str | None = None,
) -> SearchResult:
    """Sample generating pairs until two have disjoint Sigma sets.

    Only certificates settled without class-orbit escalation are accepted
    here; the final structure is verified again in full.
    """
    start = time.perf_counter()
    rng = random.Random(seed)
    chain = G.chain
    order = G.order()
    mode = choose_mode(G, mode)
    chars = index2_subgroups(G.degree, G.generator_perms, order)
    pool: list[tuple[Any, Any, Any, Any]] = []
    stats: dict[str, Any] = {"order": order, "seed": seed, "budget": budget}
    sampled = generating = 0
    for _ in range(budget):
        sampled += 1
        if strongly_real:
            t = random_involution(chain, rng)
            u = random_involution(chain, rng)
            v = random_involution(chain, rng)
            x, y = perm_compose(t, u), perm_compose(t, v)
        else:
            t = None
            x, y = random_element(chain, rng), random_element(chain, rng)
        if perm_is_identity(x) or perm_is_identity(y) or not _spans(chars, x, y):
            continue
        if not generates(G.degree, [x, y], order)[0]:
            continue
        generating += 1
        ex, ey = G.element(x), G.element(y)
        fp = sigma(G, ex, ey, mode)
        for ox, oy, ot, ofp in pool:
            cert = check_dagger(G, ofp, fp, bound=0) if mode == "invariant" else check_dagger(G, ofp, fp)
            if cert.ok:
                s = BeauvilleStructure(ox, oy, ex, ey)
                if strongly_real:
                    s.t1, s.t2 = G.element(ot), G.element(t)
                stats.update(sampled=sampled, generating=generating)
                res = _finish(G, s, "randomized", stats, exact=False)
                res.elapsed_ms = int((time.perf_counter() - start) * 1000)
                return res
        if len(pool) < pool_size:
            pool.append((ex, ey, t, fp))
    stats.update(sampled=sampled, generating=generating)
    res = SearchResult("Exhausted", G.name, "randomized", stats=stats)
    res.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return res


def search_structures(
    G: RealizedGroup,
    mode: str = "exhaustive",
    budget: int = 20000,
    seed: int = 0,
    bound: int = EXHAUSTIVE_BOUND,
    strongly_real: bool = True,
) -> SearchResult:
    if mode == "exhaustive":
        return exhaustive_search(G, bound=bound, strongly_real=strongly_real)
    if mode == "randomized":
        return randomized_search(G, budget=budget, seed=seed, strongly_real=strongly_real)
    raise ValueError(f"unknown search mode {mode!r}")

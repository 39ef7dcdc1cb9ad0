"""Mixed quadruples, the order-mod-4 obstruction and mixability.

Coset scans enumerate the group when it is within the bound.  Larger
signed-permutation groups are scanned by conjugacy-class representatives
(one per signed cycle type), which is enough because element order and the
characters of index-2 subgroups are class functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterator

from .groups import PlainPointAction, RealizedGroup, SignedPointAction
from .perms import (
    Perm,
    SignedPermutation,
    perm_compose,
    perm_inverse,
    perm_order,
    perm_power,
)
from .stabchain import (
    BoundExceeded,
    Character2,
    StabilizerChain,
    conjugacy_class,
    derived_subgroup,
    index2_subgroups,
)

__all__ = [
    "MixedQuadruple",
    "MixedReport",
    "ObstructionResult",
    "verify_mixed",
    "order_mod4_obstruction",
    "mixable_check",
    "mixable_conditions",
    "mixable_obstruction",
    "characters",
    "SCAN_BOUND",
]

SCAN_BOUND = 10**6


@dataclass
class ObstructionResult:
    outcome: str  # Blocked | NotBlocked
    witness: Any = None
    scanned: str = ""
    note: str = ""

    @property
    def blocked(self) -> bool:
        return self.outcome == "Blocked"

    def to_json(self, G: RealizedGroup) -> dict:
        out: dict[str, Any] = {"outcome": self.outcome, "scan": self.scanned}
        if self.witness is not None:
            out["witness"] = G.format(self.witness)
            out["witnessOrder"] = G.order_of(self.witness)
        if self.note:
            out["note"] = self.note
        return out


def characters(G: RealizedGroup) -> list[Character2]:
    return index2_subgroups(G.degree, G.generator_perms, G.order())


# -- scanning -------------------------------------------------------------------

def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _signed_reps(n: int, even_signs: bool) -> Iterator[SignedPermutation]:
    """One signed permutation per signed cycle type on ``n`` points."""
    for part in _partitions(n):
        groups: dict[int, int] = {}
        for k in part:
            groups[k] = groups.get(k, 0) + 1
        # for each cycle length choose how many of its cycles are negative
        choices = [[(k, neg) for neg in range(m + 1)] for k, m in sorted(groups.items())]
        for combo in _product(choices):
            if even_signs and sum(neg for _, neg in combo) % 2:
                continue
            images, signs, start = list(range(n)), [False] * n, 0
            for k, neg in combo:
                for c in range(groups[k]):
                    pts = list(range(start, start + k))
                    for i, p in enumerate(pts):
                        images[p] = pts[(i + 1) % k]
                    if c < neg:
                        signs[pts[0]] = True
                    start += k
            yield SignedPermutation(tuple(images), tuple(signs))


def _product(choices):
    if not choices:
        yield ()
        return
    for head in choices[0]:
        for rest in _product(choices[1:]):
            yield (head,) + rest


def _plain_reps(n: int) -> Iterator[SignedPermutation]:
    for part in _partitions(n):
        images, start = list(range(n)), 0
        for k in part:
            for i in range(k):
                images[start + i] = start + (i + 1) % k
            start += k
        yield SignedPermutation(tuple(images), (False,) * n)


def _class_reps(G: RealizedGroup) -> list[SignedPermutation] | None:
    ct = G.ctype
    if ct is None:
        return None
    if ct.family == "A" and isinstance(G.action, PlainPointAction):
        return list(_plain_reps(G.degree))
    if ct.family in ("B", "D") and isinstance(G.action, SignedPointAction):
        return list(_signed_reps(ct.rank, even_signs=ct.family == "D"))
    return None


def _scan(G: RealizedGroup, bound: int) -> tuple[str, Iterator[Perm]]:
    """Elements to scan: the whole group if small, else class representatives."""
    if G.order() <= bound:
        return "elements", iter(G.chain.elements())
    reps = _class_reps(G)
    if reps is None:
        raise BoundExceeded(f"|{G.name}| = {G.order()} exceeds the scan bound {bound}")
    return "classes", iter(G.perm(r) for r in reps)


# -- elements outside G0 ------------------------------------------------------------

def order_mod4_obstruction(G: RealizedGroup, chi: Character2, bound: int = SCAN_BOUND) -> ObstructionResult:
    """Blocked iff some element outside ``ker(chi)`` has order not divisible by 4.

    Generators outside the kernel are tried first; the full scan is only
    needed when all of them have order divisible by 4.
    """
    for p in G.generator_perms:
        if chi(p) == -1 and perm_order(p) % 4:
            return ObstructionResult("Blocked", G.element(p), "generators")
    how, it = _scan(G, bound)
    for p in it:
        if chi(p) == -1 and perm_order(p) % 4:
            return ObstructionResult("Blocked", G.element(p), how)
    return ObstructionResult("NotBlocked", None, how)


def mixable_obstruction(G: RealizedGroup, bound: int = SCAN_BOUND) -> ObstructionResult:
    """Blocked iff every element outside the derived subgroup has even order."""
    D = derived_subgroup(G.degree, G.generator_perms)
    if D.order() == G.order():
        return ObstructionResult("Blocked", None, "none", note="perfect group: nothing lies outside the derived subgroup")
    how, it = _scan(G, bound)
    for p in it:
        if not D.contains(p) and perm_order(p) % 2:
            return ObstructionResult("NotBlocked", G.element(p), how)
    return ObstructionResult("Blocked", None, how)


def mixable_conditions(G: RealizedGroup, a1, c1, a2, c2) -> dict[str, bool]:
    order = G.order()
    pa1, pc1, pa2, pc2 = (G.perm(g) for g in (a1, c1, a2, c2))
    o = perm_order
    ac1, ac2 = perm_compose(pa1, pc1), perm_compose(pa2, pc2)
    sq = [perm_compose(pa1, pa1), ac1, perm_compose(pc1, pc1)]
    nu1 = o(pa1) * o(pc1) * o(ac1)
    nu2 = o(pa2) * o(pc2) * o(ac2)
    return {
        "evenOrders": o(pa1) % 2 == 0 and o(pc1) % 2 == 0,
        "squaresGenerate": StabilizerChain(G.degree, sq, stop_at=order).order() == order,
        "secondPairGenerates": StabilizerChain(G.degree, [pa2, pc2], stop_at=order).order() == order,
        "coprimeNu": math.gcd(nu1, nu2) == 1,
    }


def mixable_check(G: RealizedGroup, a1, c1, a2, c2) -> bool:
    return all(mixable_conditions(G, a1, c1, a2, c2).values())


# -- mixed quadruples ----------------------------------------------------------------

@dataclass
class MixedQuadruple:
    G: RealizedGroup
    chi: Character2
    a: Any
    c: Any
    g: Any


@dataclass
class MixedReport:
    conditions: dict[str, bool | None] = field(default_factory=dict)
    witness: dict[str, Any] | None = None

    @property
    def ok(self) -> bool:
        return all(v is True for v in self.conditions.values())

    def to_json(self) -> dict:
        out: dict[str, Any] = {"ok": self.ok, "conditions": self.conditions}
        if self.witness:
            out["witness"] = self.witness
        return out


def _sigma_in(kernel_gens: list[Perm], seeds: list[Perm], bound: int) -> set[Perm]:
    out: set[Perm] = set()
    for s in seeds:
        for i in range(1, perm_order(s)):
            q = perm_power(s, i)
            if q not in out:
                out |= conjugacy_class(q, kernel_gens, bound=bound)
    return out


def verify_mixed(q: MixedQuadruple, bound: int = SCAN_BOUND) -> MixedReport:
    """Check the four conditions of a mixed quadruple.

    Sigma sets are taken with respect to conjugation in the index-2 subgroup,
    which is the group the quadruple lives in.
    """
    G, chi = q.G, q.chi
    if G.order() > bound:
        raise BoundExceeded(f"|{G.name}| exceeds {bound}")
    rep = MixedReport()
    pa, pc, pg = G.perm(q.a), G.perm(q.c), G.perm(q.g)
    half = G.order() // 2
    in_kernel = chi(pa) == 1 and chi(pc) == 1
    gen = StabilizerChain(G.degree, [pa, pc], stop_at=half).order() == half
    rep.conditions["generatesIndex2"] = in_kernel and gen
    rep.conditions["outsideIndex2"] = chi(pg) == -1
    if not rep.ok:
        rep.conditions["squaresAvoidSigma"] = None
        rep.conditions["dagger"] = None
        return rep
    kgens = chi.kernel.strong_generators
    sig = _sigma_in(kgens, [pa, pc, perm_compose(pa, pc)], bound)
    squares_ok = True
    for gamma in chi.kernel.elements():
        h = perm_compose(pg, gamma)
        h2 = perm_compose(h, h)
        if h2 in sig:
            squares_ok = False
            rep.witness = {"gamma": G.format(G.element(gamma)), "square": G.format(G.element(h2))}
            break
    rep.conditions["squaresAvoidSigma"] = squares_ok
    gi = perm_inverse(pg)
    ag = perm_compose(perm_compose(gi, pa), pg)
    cg = perm_compose(perm_compose(gi, pc), pg)
    sig2 = _sigma_in(kgens, [ag, cg, perm_compose(ag, cg)], bound)
    common = sig & sig2
    rep.conditions["dagger"] = not common
    if common and rep.witness is None:
        rep.witness = {"common": G.format(G.element(min(common)))}
    return rep

"""Verification of unmixed and strongly real Beauville structures."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

from ..groups import NotInGroup, RealizedGroup
from ..perms import Perm, perm_compose, perm_inverse
from ..stabchain import generates, orbits
from .sigma import CLASS_BOUND, DaggerCertificate, check_dagger, sigma

__all__ = [
    "SCHEMA_VERSION",
    "BeauvilleStructure",
    "BeauvilleReport",
    "verify_unmixed",
    "verify_strongly_real",
    "inverts",
    "find_inverting_element",
    "choose_mode",
    "EXACT_LIMIT",
]

SCHEMA_VERSION = 1
EXACT_LIMIT = 20_000


@dataclass
class BeauvilleStructure:
    x1: Any
    y1: Any
    x2: Any
    y2: Any
    t1: Any = None
    t2: Any = None

    @property
    def pair1(self) -> tuple:
        return self.x1, self.y1

    @property
    def pair2(self) -> tuple:
        return self.x2, self.y2


@dataclass
class BeauvilleReport:
    group: str
    pairs: list[list[Any]]
    order1: int
    order2: int
    expected: int
    dagger: DaggerCertificate | None
    strongly_real: bool | None = None
    witnesses: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    elapsed_ms: int = 0
    mode: str = "exact"

    @property
    def generated(self) -> bool:
        return self.order1 == self.expected and self.order2 == self.expected

    @property
    def unmixed(self) -> bool:
        return self.generated and self.dagger is not None and self.dagger.ok

    @property
    def inconclusive(self) -> bool:
        return self.generated and self.dagger is not None and self.dagger.outcome == "Inconclusive"

    @property
    def ok(self) -> bool:
        return self.unmixed and self.strongly_real is not False

    def to_json(self, timing: bool = True) -> dict:
        out: dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "group": self.group,
            "mode": self.mode,
            "pairs": self.pairs,
            "generation": {"order1": self.order1, "order2": self.order2, "expected": self.expected},
            "dagger": self.dagger.to_json() if self.dagger is not None else None,
            "stronglyReal": self.strongly_real,
            "witnesses": self.witnesses,
        }
        if self.notes:
            out["notes"] = self.notes
        if timing:
            out["timing"] = {"elapsedMs": self.elapsed_ms}
        return out


def choose_mode(G: RealizedGroup, mode: str | None) -> str:
    if mode in ("exact", "invariant"):
        return mode
    if mode not in (None, "auto"):
        raise ValueError(f"unknown mode {mode!r}")
    return "exact" if G.order() <= EXACT_LIMIT else "invariant"


def verify_unmixed(
    G: RealizedGroup, s: BeauvilleStructure, mode: str | None = None, bound: int = CLASS_BOUND
) -> BeauvilleReport:
    """Generation of both pairs by chain order, then the (dagger) certificate."""
    start = time.perf_counter()
    mode = choose_mode(G, mode)
    target = G.order()
    for g in (s.x1, s.y1, s.x2, s.y2):
        if not G.contains(g):
            raise NotInGroup(f"{G.format(g)} is not in {G.name}")
    _, o1 = generates(G.degree, [G.perm(s.x1), G.perm(s.y1)], target)
    _, o2 = generates(G.degree, [G.perm(s.x2), G.perm(s.y2)], target)
    rep = BeauvilleReport(
        group=G.name,
        pairs=[[G.format(s.x1), G.format(s.y1)], [G.format(s.x2), G.format(s.y2)]],
        order1=o1,
        order2=o2,
        expected=target,
        dagger=None,
        mode=mode,
    )
    if rep.generated:
        f1 = sigma(G, s.x1, s.y1, mode, bound)
        f2 = sigma(G, s.x2, s.y2, mode, bound)
        rep.dagger = check_dagger(G, f1, f2, bound)
    rep.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return rep


def inverts(G: RealizedGroup, t, x, y) -> bool:
    """``x^t = x^-1`` and ``y^t = y^-1``."""
    if t is None:
        return False
    return all(G.eq(G.conj(g, t), g.inverse()) for g in (x, y))


def verify_strongly_real(G: RealizedGroup, s: BeauvilleStructure) -> bool:
    """Inner witnesses ``t1``, ``t2`` invert their pairs.

    Conjugation by ``t1`` is then an automorphism inverting pair 1, and it
    inverts pair 2 up to the inner automorphism by ``t1^-1 t2``.
    """
    for t in (s.t1, s.t2):
        if t is not None and not G.contains(t):
            raise NotInGroup(f"witness {G.format(t)} is not in {G.name}")
    return inverts(G, s.t1, s.x1, s.y1) and inverts(G, s.t2, s.x2, s.y2)


def find_inverting_element(G: RealizedGroup, x, y):
    """Some ``t`` in ``G`` with ``x^t = x^-1`` and ``y^t = y^-1``, or ``None``.

    A point map ``t`` inverting both must satisfy ``(p^x)^t = (p^t)^(x^-1)``
    and likewise for ``y``, so on each orbit of ``<x, y>`` it is fixed by the
    image of one point.  Orbits are handled by backtracking; the candidate
    permutation is finally tested for membership in ``G``.
    """
    px, py = G.perm(x), G.perm(y)
    pxi, pyi = perm_inverse(px), perm_inverse(py)
    n = G.degree
    orbs = orbits([px, py], n)
    sizes = [len(o) for o in orbs]

    def propagate(start: int, image: int, t: list[int], used: list[bool]) -> list[int] | None:
        assigned = [start]
        if used[image]:
            return None
        t[start] = image
        used[image] = True
        stack = [start]
        while stack:
            p = stack.pop()
            for g, gi in ((px, pxi), (py, pyi)):
                q, want = g[p], gi[t[p]]
                if t[q] == -1:
                    if used[want]:
                        for a in assigned:
                            used[t[a]] = False
                            t[a] = -1
                        return None
                    t[q] = want
                    used[want] = True
                    assigned.append(q)
                    stack.append(q)
                elif t[q] != want:
                    for a in assigned:
                        used[t[a]] = False
                        t[a] = -1
                    return None
        return assigned

    def rec(k: int, t: list[int], used: list[bool]):
        if k == len(orbs):
            cand = tuple(t)
            if G.chain.contains(cand):
                return cand
            return None
        start = orbs[k][0]
        for o2, size in zip(orbs, sizes):
            if size != sizes[k]:
                continue
            for image in o2:
                assigned = propagate(start, image, t, used)
                if assigned is None:
                    continue
                found = rec(k + 1, t, used)
                if found is not None:
                    return found
                for a in assigned:
                    used[t[a]] = False
                    t[a] = -1
        return None

    found = rec(0, [-1] * n, [False] * n)
    return None if found is None else G.element(found)

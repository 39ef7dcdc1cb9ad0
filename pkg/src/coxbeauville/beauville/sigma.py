"""Sigma sets of generating pairs and the disjointness certificate.

Exact mode materializes the union of conjugacy classes of all nontrivial
powers of ``x``, ``y`` and ``xy``.  Invariant mode keeps one class-invariant
key per power instead; two keys that agree are settled by an explicit,
bounded conjugacy-class orbit, and stay ``Inconclusive`` if that overflows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..algebra import ExactMatrix
from ..groups import DihedralElement, ProductElement, RealizedGroup
from ..perms import Perm, SignedPermutation, cycle_type, perm_cycle_type, perm_is_identity, perm_order, perm_power
from ..stabchain import BoundExceeded, conjugacy_class

__all__ = [
    "InvariantKey",
    "SigmaFingerprint",
    "DaggerCertificate",
    "sigma",
    "check_dagger",
    "invariant_key",
    "CLASS_BOUND",
]

CLASS_BOUND = 200_000
SEEDS = ("x", "y", "xy")
# order in which agreeing traces are told apart; the first differing field wins
LADDER = ("diagonal", "order", "fine", "action")


@dataclass(frozen=True)
class InvariantKey:
    order: int
    trace: Any
    diagonal: bool | None
    fine: tuple
    action: tuple

    def as_json(self) -> dict:
        return {
            "order": self.order,
            "trace": str(self.trace),
            "diagonal": self.diagonal,
            "fine": _jsonable(self.fine),
        }


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, bool)) or x is None:
        return x
    return str(x)


def invariant_key(G: RealizedGroup, g) -> InvariantKey:
    """Class invariants of ``g``; conjugate elements always get equal keys.

    The diagonal flag is only used for monomial (signed permutation)
    elements, where conjugation permutes coordinates and so preserves it.
    """
    p = G.perm(g)
    order = perm_order(p)
    action = perm_cycle_type(p)
    if isinstance(g, SignedPermutation):
        ct = cycle_type(g)
        trace = sum(sign for length, sign in ct if length == 1)
        if G.kind == "perm":
            return InvariantKey(order, trace, None, ct, action)
        return InvariantKey(order, trace, g.is_diagonal(), ct, action)
    if isinstance(g, ExactMatrix):
        return InvariantKey(order, g.trace(), None, tuple(g.char_poly()), action)
    if isinstance(g, ProductElement):
        a = G.action
        left = perm_cycle_type(a.a.perm(g.left))
        right = perm_cycle_type(a.b.perm(g.right))
        return InvariantKey(order, None, None, (left, right), action)
    if isinstance(g, DihedralElement):
        return InvariantKey(order, None, None, (g.flip,), action)
    return InvariantKey(order, None, None, (), action)


@dataclass
class SigmaFingerprint:
    mode: str
    elements: frozenset[Perm] | None = None
    # Invariant mode: key -> (seed label, power, element)
    keys: dict[InvariantKey, tuple[str, int, Any]] = field(default_factory=dict)
    # Exact mode: class representatives per seed power, for witnesses
    origins: list[tuple[str, int, Perm]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements) if self.mode == "exact" else len(self.keys)

    def contains(self, p: Perm) -> bool:
        if self.mode != "exact":
            raise ValueError("membership needs an exact fingerprint")
        return tuple(p) in self.elements

    def summary(self) -> dict:
        if self.mode == "exact":
            return {"mode": "exact", "size": len(self.elements)}
        return {"mode": "invariant", "keys": len(self.keys)}


def _seed_elements(G: RealizedGroup, x, y) -> list[tuple[str, Any]]:
    return [("x", x), ("y", y), ("xy", x * y)]


def sigma(G: RealizedGroup, x, y, mode: str = "exact", bound: int = CLASS_BOUND) -> SigmaFingerprint:
    """Sigma fingerprint of the pair ``(x, y)``."""
    if mode == "exact":
        gens = G.generator_perms
        members: set[Perm] = set()
        origins = []
        for label, s in _seed_elements(G, x, y):
            p = G.perm(s)
            for i in range(1, perm_order(p)):
                q = perm_power(p, i)
                if q in members:
                    continue
                cls = conjugacy_class(q, gens, bound=bound)
                members |= cls
                origins.append((label, i, q))
                if len(members) > bound:
                    raise BoundExceeded(f"Sigma larger than {bound}; use invariant mode")
        return SigmaFingerprint("exact", frozenset(members), origins=origins)
    if mode == "invariant":
        keys: dict[InvariantKey, tuple[str, int, Any]] = {}
        for label, s in _seed_elements(G, x, y):
            o = G.order_of(s)
            power = s
            for i in range(1, o):
                k = invariant_key(G, power)
                keys.setdefault(k, (label, i, power))
                power = power * s
        return SigmaFingerprint("invariant", keys=keys)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class DaggerCertificate:
    outcome: str  # DisjointCertified | IntersectNontrivial | Inconclusive
    witness: dict | None = None
    collisions: list[dict] = field(default_factory=list)
    resolved: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.outcome == "DisjointCertified"

    def to_json(self) -> dict:
        out: dict[str, Any] = {"outcome": self.outcome}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.resolved:
            out["resolved"] = dict(sorted(self.resolved.items()))
        if self.collisions:
            out["collisions"] = self.collisions
        return out


def _conjugator(G: RealizedGroup, u: Perm, v: Perm, bound: int) -> Perm | None:
    cls = conjugacy_class(u, G.generator_perms, bound=bound, with_conjugators=True)
    return cls.get(tuple(v))


def _ladder_level(k1: InvariantKey, k2: InvariantKey) -> str | None:
    for name in LADDER:
        if getattr(k1, name) != getattr(k2, name):
            return name
    return None


def check_dagger(
    G: RealizedGroup, s1: SigmaFingerprint, s2: SigmaFingerprint, bound: int = CLASS_BOUND
) -> DaggerCertificate:
    if s1.mode != s2.mode:
        raise ValueError("fingerprints were computed in different modes")
    if s1.mode == "exact":
        common = s1.elements & s2.elements
        if not common:
            return DaggerCertificate("DisjointCertified")
        # report a seed power of side 1 and one of side 2 in the same class
        for _, _, u in s1.origins:
            cls = conjugacy_class(u, G.generator_perms, bound=bound, with_conjugators=True)
            for label, i, v in s2.origins:
                if v in cls:
                    return DaggerCertificate(
                        "IntersectNontrivial",
                        witness={"u": G.format(G.element(u)), "v": G.format(G.element(v)),
                                 "conjugator": G.format(G.element(cls[v]))},
                    )
        raise AssertionError("intersecting Sigma sets without a common seed class")

    resolved: dict[str, int] = {}
    pending = []
    by_trace: dict[Any, list[InvariantKey]] = {}
    for k in s2.keys:
        by_trace.setdefault(k.trace, []).append(k)
    for k1 in s1.keys:
        for k2 in by_trace.get(k1.trace, ()):
            level = _ladder_level(k1, k2)
            if level is None:
                pending.append((k1, k2))
            else:
                resolved[level] = resolved.get(level, 0) + 1
    collisions = []
    inconclusive = []
    for k1, k2 in pending:
        u = G.perm(s1.keys[k1][2])
        v = G.perm(s2.keys[k2][2])
        try:
            c = _conjugator(G, u, v, bound)
        except BoundExceeded:
            inconclusive.append({"left": k1.as_json(), "right": k2.as_json()})
            continue
        if c is not None:
            return DaggerCertificate(
                "IntersectNontrivial",
                witness={
                    "u": G.format(s1.keys[k1][2]),
                    "v": G.format(s2.keys[k2][2]),
                    "conjugator": G.format(G.element(c)),
                },
            )
        resolved["classOrbit"] = resolved.get("classOrbit", 0) + 1
        collisions.append({"left": k1.as_json(), "right": k2.as_json(), "resolution": "classOrbit"})
    if inconclusive:
        return DaggerCertificate("Inconclusive", collisions=inconclusive, resolved=resolved)
    return DaggerCertificate("DisjointCertified", collisions=collisions, resolved=resolved)

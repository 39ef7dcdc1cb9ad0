"""Beauville structures on direct products of two Coxeter groups."""

from __future__ import annotations

import itertools
import math
from typing import Sequence

from ..groups import CoxeterType, ProductElement, RealizedGroup, direct_product
from .verify import BeauvilleReport, BeauvilleStructure, find_inverting_element, inverts, verify_unmixed

__all__ = [
    "product_structure",
    "two_generated_obstruction",
    "i2_order_obstruction",
    "ProductFailure",
]


class ProductFailure(RuntimeError):
    """No recombination of the factor structures verifies on the product."""


def _ctype(t) -> CoxeterType:
    if isinstance(t, CoxeterType):
        return t
    if isinstance(t, RealizedGroup):
        if t.ctype is None:
            raise ValueError(f"{t.name} has no Coxeter type")
        return t.ctype
    return CoxeterType.parse(t)


def two_generated_obstruction(types: Sequence) -> bool:
    """True when the abelianisation of the product needs three or more generators.

    A 2-generated group has a 2-generated abelianisation, so an F_2-rank of
    three or more rules out any generating pair.
    """
    return sum(_ctype(t).abelianization_rank() for t in types) >= 3


def i2_order_obstruction(K1, k: int) -> bool:
    """True when ``K1 x W(I2(k))`` is ruled out by the coprimality argument.

    A product of two dihedral groups is always rejected.
    """
    ct = None
    if isinstance(K1, (CoxeterType, str)) or (isinstance(K1, RealizedGroup) and K1.ctype is not None):
        ct = _ctype(K1)
    if ct is not None and ct.family == "I2":
        return True
    order = K1.order() if isinstance(K1, (RealizedGroup, CoxeterType)) else CoxeterType.parse(K1).order()
    return math.gcd(k, order) == 1


def _candidates():
    """The mixing pattern first, then every other recombination.

    A recombination takes each left pair once, pairs it with a right pair
    (possibly swapped, possibly inverted), and uses the complementary right
    pair for the other side.
    """
    # pattern: ((x1, y2'^-1), (y1, x2'^-1)) and ((x2, y1'^-1), (y2, x1'^-1))
    yield (1, True, True), (0, True, True)
    for j, sw1, inv1, sw2, inv2 in itertools.product((0, 1), (False, True), (False, True), (False, True), (False, True)):
        if (j, sw1, inv1, sw2, inv2) == (1, True, True, True, True):
            continue
        yield (j, sw1, inv1), (1 - j, sw2, inv2)


def _assemble(left, right, swap, inv):
    a, b = right
    if swap:
        a, b = b, a
    if inv:
        a, b = a.inverse(), b.inverse()
    return (ProductElement(left[0], a), ProductElement(left[1], b))


def product_structure(
    K1: RealizedGroup,
    s1: BeauvilleStructure,
    K2: RealizedGroup,
    s2: BeauvilleStructure,
    mode: str | None = None,
) -> tuple[RealizedGroup, BeauvilleStructure, BeauvilleReport]:
    """A verified strongly real structure on ``K1 x K2`` from one on each factor.

    Candidates are tried in a fixed order and only a candidate passing full
    verification is returned.  Witnesses are products of the factor
    witnesses when those invert, and are searched for otherwise.
    """
    G = direct_product(K1, K2)
    L = [s1.pair1, s1.pair2]
    R = [s2.pair1, s2.pair2]
    Lt = [s1.t1, s1.t2]
    Rt = [s2.t1, s2.t2]
    tried = 0
    for (j1, sw1, inv1), (j2, sw2, inv2) in _candidates():
        tried += 1
        p1 = _assemble(L[0], R[j1], sw1, inv1)
        p2 = _assemble(L[1], R[j2], sw2, inv2)
        s = BeauvilleStructure(*p1, *p2)
        rep = verify_unmixed(G, s, mode)
        if not rep.unmixed:
            continue
        for k, (x, y), lt, rt in (("t1", p1, Lt[0], Rt[j1]), ("t2", p2, Lt[1], Rt[j2])):
            t = None
            if lt is not None and rt is not None:
                t = ProductElement(lt, rt)
            if not inverts(G, t, x, y):
                t = find_inverting_element(G, x, y)
            setattr(s, k, t)
        rep.strongly_real = s.t1 is not None and s.t2 is not None
        rep.witnesses = {k: G.format(getattr(s, k)) if getattr(s, k) is not None else None for k in ("t1", "t2")}
        rep.notes.append(f"recombination {tried} of the factor structures")
        return G, s, rep
    raise ProductFailure(f"none of {tried} recombinations verifies on {G.name}")

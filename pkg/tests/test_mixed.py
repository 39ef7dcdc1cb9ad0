import random

import pytest

from coxbeauville.groups import build_coxeter, permutation_group
from coxbeauville.mixed import (
    MixedQuadruple,
    characters,
    mixable_check,
    mixable_conditions,
    mixable_obstruction,
    order_mod4_obstruction,
    verify_mixed,
)
from coxbeauville.mixed import _signed_reps
from coxbeauville.perms import cycle_type, parse_signed
from coxbeauville.stabchain import BoundExceeded

from oracles import brute_sigma, closure, compose, order


def _bipartitions(n):
    p = [1] + [0] * n
    for k in range(1, n + 1):
        for m in range(k, n + 1):
            p[m] += p[m - k]
    return sum(p[i] * p[n - i] for i in range(n + 1))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_signed_reps_cover_each_type_once(n):
    reps = list(_signed_reps(n, even_signs=False))
    assert len(reps) == _bipartitions(n)
    assert len({tuple(sorted(cycle_type(r))) for r in reps}) == len(reps)


@pytest.mark.parametrize("name", ["B3", "D4", "A4", "H3", "I2(6)", "F4"])
def test_obstructions_block(name):
    G = build_coxeter(name)
    for chi in characters(G):
        assert order_mod4_obstruction(G, chi).blocked
    assert mixable_obstruction(G).blocked


def test_class_scan_agrees_with_full_scan():
    G = build_coxeter("B5")
    for chi in characters(G):
        full = order_mod4_obstruction(G, chi)
        byclass = order_mod4_obstruction(G, chi, bound=10)
        assert full.outcome == byclass.outcome
    assert mixable_obstruction(G, bound=10).scanned == "classes"


def test_unscannable_group_raises():
    G = build_coxeter("H4")
    with pytest.raises(BoundExceeded):
        mixable_obstruction(G, bound=100)


def test_cyclic_four_not_blocked():
    G = permutation_group("C4", [parse_signed("(1,2,3,4)", 4)], 4, 4)
    (chi,) = characters(G)
    res = order_mod4_obstruction(G, chi)
    assert res.outcome == "NotBlocked"


def test_cyclic_three_is_mixable_candidate():
    G = permutation_group("C3", [parse_signed("(1,2,3)", 3)], 3, 3)
    res = mixable_obstruction(G)
    assert res.outcome == "NotBlocked"
    assert G.order_of(res.witness) == 3


def test_perfect_group_vacuous():
    G = permutation_group("Alt5", [parse_signed("(1,2,3)", 5), parse_signed("(1,2,3,4,5)", 5)], 5, 60)
    res = mixable_obstruction(G)
    assert res.blocked and res.note


def test_mixable_conditions_on_symmetric_group():
    G = build_coxeter("A4")
    a, c = parse_signed("(1,2)", 5), parse_signed("(1,2,3,4,5)", 5)
    conds = mixable_conditions(G, a, c, a, c)
    assert conds["evenOrders"] is False
    assert conds["secondPairGenerates"] is True
    assert conds["coprimeNu"] is False
    assert not mixable_check(G, a, c, a, c)


def _kernel_pair(G, chi, rng):
    kels = sorted(closure(chi.kernel.strong_generators))
    while True:
        a, c = rng.choice(kels), rng.choice(kels)
        if len(closure([a, c])) == len(kels):
            return kels, a, c


@pytest.mark.parametrize("name", ["B3", "B4"])
def test_verify_mixed_against_brute_force(name):
    G = build_coxeter(name)
    rng = random.Random(name)
    els = sorted(G.chain.elements())
    for chi in characters(G):
        kels, a, c = _kernel_pair(G, chi, rng)
        outside = [g for g in els if chi(g) == -1]
        g = rng.choice(outside)
        rep = verify_mixed(MixedQuadruple(G, chi, G.element(a), G.element(c), G.element(g)))
        assert rep.conditions["generatesIndex2"] and rep.conditions["outsideIndex2"]
        sig = brute_sigma(kels, a, c)
        squares = not any(compose(h, h) in sig for h in outside)
        assert rep.conditions["squaresAvoidSigma"] == squares
        gi = tuple(sorted(range(len(g)), key=lambda i: g[i]))
        ag, cg = (compose(compose(gi, p), g) for p in (a, c))
        assert rep.conditions["dagger"] == (not sig & brute_sigma(kels, ag, cg))


def test_verify_mixed_rejects_bad_input():
    G = build_coxeter("B3")
    chi = characters(G)[0]
    kels = sorted(closure(chi.kernel.strong_generators))
    g = next(p for p in G.chain.elements() if chi(p) == 1)
    rep = verify_mixed(MixedQuadruple(G, chi, G.element(kels[0]), G.element(kels[0]), G.element(g)))
    assert rep.conditions["generatesIndex2"] is False
    assert rep.conditions["outsideIndex2"] is False
    assert rep.conditions["dagger"] is None
    assert not rep.ok

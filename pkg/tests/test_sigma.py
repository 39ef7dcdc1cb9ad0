import random

import pytest

from coxbeauville.beauville import check_dagger, invariant_key, sigma
from coxbeauville.groups import build_coxeter
from coxbeauville.stabchain import BoundExceeded

from oracles import brute_sigma, closure, compose


def _pairs(G, rng, count):
    els = sorted(closure(G.generator_perms))
    out = []
    while len(out) < count:
        x, y = rng.choice(els), rng.choice(els)
        if len(closure([x, y])) == len(els):
            out.append((x, y))
    return els, out


@pytest.mark.parametrize("name", ["B3", "A4", "I2(7)", "D4", "H3"])
def test_exact_sigma_matches_brute_force(name):
    G = build_coxeter(name)
    els, pairs = _pairs(G, random.Random(name), 4)
    for x, y in pairs:
        fp = sigma(G, G.element(x), G.element(y), "exact")
        assert fp.elements == frozenset(brute_sigma(els, x, y))


def test_identity_never_in_sigma():
    G = build_coxeter("B4")
    els, pairs = _pairs(G, random.Random(3), 3)
    e = tuple(range(G.degree))
    for x, y in pairs:
        assert e not in sigma(G, G.element(x), G.element(y)).elements


def test_sigma_is_closed_under_conjugation():
    G = build_coxeter("A4")
    els, pairs = _pairs(G, random.Random(4), 2)
    for x, y in pairs:
        S = sigma(G, G.element(x), G.element(y)).elements
        for g in G.generator_perms:
            gi = tuple(sorted(range(len(g)), key=lambda i: g[i]))
            assert {compose(compose(gi, s), g) for s in S} == S


def test_invariant_key_is_class_function():
    G = build_coxeter("H3")
    rng = random.Random(5)
    els = sorted(G.chain.elements())
    for _ in range(30):
        p, k = rng.choice(els), rng.choice(els)
        ki = tuple(sorted(range(len(k)), key=lambda i: k[i]))
        a = G.element(p)
        b = G.element(compose(compose(ki, p), k))
        assert invariant_key(G, a) == invariant_key(G, b)


@pytest.mark.parametrize("name", ["B4", "D4", "F4", "H3"])
def test_invariant_dagger_agrees_with_exact(name):
    G = build_coxeter(name)
    els, pairs = _pairs(G, random.Random(6), 6)
    for (x1, y1), (x2, y2) in zip(pairs[::2], pairs[1::2]):
        a = [G.element(p) for p in (x1, y1, x2, y2)]
        ex = check_dagger(G, sigma(G, a[0], a[1], "exact"), sigma(G, a[2], a[3], "exact"))
        inv = check_dagger(G, sigma(G, a[0], a[1], "invariant"), sigma(G, a[2], a[3], "invariant"))
        assert ex.outcome == inv.outcome


def test_intersecting_pairs_report_a_witness():
    G = build_coxeter("A3")
    els, pairs = _pairs(G, random.Random(7), 1)
    x, y = (G.element(p) for p in pairs[0])
    cert = check_dagger(G, sigma(G, x, y), sigma(G, y, x))
    assert cert.outcome == "IntersectNontrivial"
    assert set(cert.witness) == {"u", "v", "conjugator"}


def test_mixed_modes_refused():
    G = build_coxeter("A3")
    x, y = G.generators[0], G.generators[1]
    with pytest.raises(ValueError):
        check_dagger(G, sigma(G, x, y, "exact"), sigma(G, x, y, "invariant"))


def test_class_bound_raises():
    G = build_coxeter("B5")
    with pytest.raises(BoundExceeded):
        sigma(G, G.generators[0], G.generators[1], "exact", bound=5)

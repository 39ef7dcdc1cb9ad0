import pytest

from coxbeauville.beauville import (
    ProductFailure,
    exhaustive_search,
    i2_order_obstruction,
    product_structure,
    two_generated_obstruction,
)
from coxbeauville.beauville.product import _candidates
from coxbeauville.groups import build_coxeter


def test_three_factors_always_rejected():
    assert two_generated_obstruction(["A2", "A3", "A4"])
    assert two_generated_obstruction(["E8", "H4", "A5"])


@pytest.mark.parametrize("bad", ["B5", "I2(4)", "F4", "I2(6)", "B2"])
def test_rank_two_factor_plus_one_more(bad):
    assert two_generated_obstruction([bad, "A4"])
    assert two_generated_obstruction(["H3", bad])


def test_two_rank_one_factors_pass():
    assert not two_generated_obstruction(["A4", "A4"])
    assert not two_generated_obstruction(["H3", "I2(5)"])
    assert not two_generated_obstruction(["D5", "E6"])


def test_i2_coprimality():
    assert i2_order_obstruction("A4", 7)
    assert not i2_order_obstruction("A4", 3)
    assert i2_order_obstruction("I2(5)", 3)
    assert not i2_order_obstruction(build_coxeter("H3"), 5)


def test_candidate_order_and_count():
    cands = list(_candidates())
    assert len(cands) == 32
    assert len(set(cands)) == 32
    assert cands[0] == ((1, True, True), (0, True, True))


def test_a4_squared():
    K = build_coxeter("A4")
    found = exhaustive_search(K)
    assert found.outcome == "Found"
    s = found.structure
    G, t, rep = product_structure(K, s, K, s)
    assert G.order() == 14400
    assert rep.unmixed and rep.strongly_real
    assert rep.order1 == rep.order2 == 14400
    assert rep.dagger.outcome == "DisjointCertified"


def test_failure_when_factors_share_no_structure():
    K = build_coxeter("A4")
    s = exhaustive_search(K).structure
    from coxbeauville.beauville import BeauvilleStructure

    # both sides use the same pair, so every recombination repeats a Sigma set
    same = BeauvilleStructure(s.x1, s.y1, s.x1, s.y1)
    with pytest.raises(ProductFailure):
        product_structure(K, same, K, same)

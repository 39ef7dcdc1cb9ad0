import pytest

from coxbeauville.beauville import (
    BeauvilleStructure,
    find_inverting_element,
    inverts,
    realize_record,
    verify_record,
    verify_strongly_real,
    verify_unmixed,
)
from coxbeauville.groups import NotInGroup, build_coxeter
from coxbeauville.paperdata import StructureRecord, paper_structure, product_examples, small_case
from coxbeauville.perms import parse_signed


@pytest.mark.parametrize("name", ["B5", "B6", "B7", "B8", "B10", "D6", "B12", "D10", "D11", "B11"])
def test_catalogued_structures_are_unmixed(name):
    rep = verify_record(paper_structure(name))
    assert rep.generated
    assert rep.dagger.outcome == "DisjointCertified"


@pytest.mark.parametrize("name", ["B5", "B8", "B12", "D10"])
def test_printed_witnesses_invert(name):
    rep = verify_record(paper_structure(name))
    assert rep.ok
    assert rep.witnesses["source"] == {"t1": "printed", "t2": "printed"}


def test_misprinted_witness_is_derived():
    rep = verify_record(paper_structure("D11"))
    assert rep.ok
    assert rep.witnesses["source"]["t2"] == "derived"
    assert any("printed t2 rejected" in n for n in rep.notes)


def test_flagged_row_uses_replacement():
    rep = verify_record(small_case("D", 5))
    assert rep.ok
    assert rep.witnesses["structureSource"] == "replacement"
    assert rep.notes[0].startswith("printed structure flagged")


def test_flagged_printed_pairs_fail_generation():
    rec = small_case("D", 5)
    printed = verify_record(StructureRecord(rec.group, rec.elements, rec.provenance))
    assert not printed.generated
    assert sorted((printed.order1, printed.order2)) == [24, 1920]


def test_product_examples():
    for rec in product_examples():
        rep = verify_record(rec)
        assert rep.ok, rep.to_json(False)


def test_same_pair_twice_violates_dagger():
    G, s, _ = realize_record(paper_structure("B6"))
    rep = verify_unmixed(G, BeauvilleStructure(s.x1, s.y1, s.x1, s.y1))
    assert rep.generated
    assert rep.dagger.outcome == "IntersectNontrivial"
    assert not rep.ok


def test_non_generating_pair():
    G = build_coxeter("B5")
    x, y = parse_signed("(1,2)", 5), parse_signed("(3,4)", 5)
    rep = verify_unmixed(G, BeauvilleStructure(x, y, x, y))
    assert not rep.generated and rep.dagger is None


def test_outsider_rejected():
    G = build_coxeter("D5")
    x = parse_signed("(_1)", 5)
    with pytest.raises(NotInGroup):
        verify_unmixed(G, BeauvilleStructure(x, x, x, x))


def test_inverting_element_search():
    G, s, _ = realize_record(paper_structure("B7"))
    t = find_inverting_element(G, s.x1, s.y1)
    assert t is not None and inverts(G, t, s.x1, s.y1)
    assert G.contains(t)
    s.t1 = t
    s.t2 = find_inverting_element(G, s.x2, s.y2)
    assert verify_strongly_real(G, s)


@pytest.mark.parametrize("name", ["B6", "D6", "B7"])
def test_invariant_mode_agrees_with_exact(name):
    exact = verify_record(paper_structure(name), mode="exact")
    inv = verify_record(paper_structure(name), mode="invariant")
    assert inv.mode == "invariant"
    assert inv.dagger.outcome == exact.dagger.outcome == "DisjointCertified"


def test_large_group_defaults_to_invariant():
    assert verify_record(paper_structure("B12")).mode == "invariant"


def test_report_json_shape():
    import json

    import jsonschema

    from coxbeauville.paperdata import data_dir

    schema = json.loads((data_dir() / "schema" / "report.schema.json").read_text())
    doc = verify_record(paper_structure("B6")).to_json()
    jsonschema.validate(doc, schema)
    assert "timing" in doc and "timing" not in verify_record(paper_structure("B6")).to_json(timing=False)

import json

import jsonschema
import pytest

from coxbeauville.paperdata import (
    CatalogueError,
    bn_even,
    bn_odd,
    catalogue,
    data_dir,
    dn_odd,
    eval_n,
    exceptional,
    load_json,
    paper_structure,
    product_examples,
    small_case,
    trace_oracle,
)
from coxbeauville.perms import parse_signed


def _schema(name):
    return json.loads((data_dir() / "schema" / f"{name}.schema.json").read_text())


@pytest.mark.parametrize(
    "path,schema",
    [("structures/parametric.json", "parametric"), ("structures/small_rank.json", "small_rank"),
     ("structures/exceptional.json", "exceptional"), ("structures/products.json", "products"),
     ("oracles/traces.json", "traces")],
)
def test_shipped_data_matches_schema(path, schema):
    jsonschema.validate(load_json(path), _schema(schema))


def test_family_expansion_examples():
    assert dn_odd(11).t1 == "(2,9)(3,8)(4,7)(5,6)(10,11)"
    assert bn_odd(11).y2 == "(11,10,9,8,7,6,5,4)"
    assert bn_even(12).t1 == "(1,2)(3,11)(4,10)(5,9)(6,8)"


def test_small_table_examples():
    assert small_case("B", 5).x1 == "(_1,_2,_5)"
    assert small_case("B", 8).t2 == "(1,3)(4,5)(6,8)"
    assert small_case("D", 7).y2 == "(_7,_6,_5,_4)(3,2,1)"


def test_every_family_string_parses():
    for fam, lo in (("B", 11), ("D", 10)):
        for n in range(lo, 31):
            rec = paper_structure(f"{fam}{n}")
            for k, v in rec.elements.items():
                if "two transpositions" in rec.annotations.get(k, ""):
                    with pytest.raises(ValueError):
                        parse_signed(v, n)
                else:
                    parse_signed(v, n)


def test_annotated_witness_only_on_d_odd():
    for n in range(10, 31):
        rec = paper_structure(f"D{n}")
        assert ("two transpositions" in rec.annotations.get("t2", "")) == (n % 2 == 1)


def test_d_elements_have_even_sign_count():
    for n in range(10, 31):
        rec = paper_structure(f"D{n}")
        for k in ("x1", "y1", "x2", "y2"):
            assert parse_signed(rec.elements[k], n).is_even_signed()


def test_wrong_parity_rejected():
    with pytest.raises(ValueError):
        bn_even(13)
    with pytest.raises(ValueError):
        dn_odd(12)


def test_flagged_rows_carry_replacements():
    flagged = {f"{r.group}" for r in (small_case("B", 9), small_case("D", 5), small_case("D", 7),
                                       small_case("D", 8), small_case("D", 9)) if r.flagged}
    assert flagged == {"B9", "D5", "D7", "D8", "D9"}
    assert small_case("B", 6).flagged is None
    rep = small_case("D", 5).extra["replacement"]
    assert set(rep.elements) == {"x1", "y1", "t1", "x2", "y2", "t2"}


def test_trace_oracle_examples():
    assert trace_oracle("B-even", "x1", 12, 11) == 10
    assert trace_oracle("D-odd", "y1", 11, 3) == 1
    assert trace_oracle("B-odd", "x2y2", 13, 8) == -3
    with pytest.raises(ValueError):
        trace_oracle("B-even", "x1", 12, 0)
    with pytest.raises(ValueError):
        trace_oracle("B-even", "x1", 12, 22, order=22)


def test_eval_n():
    assert eval_n("n-3", 12) == 9
    assert eval_n("n//2+2", 12) == 8
    with pytest.raises((ValueError, SyntaxError)):
        eval_n("__import__('os')", 3)


def test_catalogue_contents():
    recs = catalogue(12)
    names = [r.group for r in recs]
    assert names.count("B12") == 1 and "D5" in names
    assert {"E6", "E7", "E8", "H4", "H3xH3", "A4xI2(3)"} <= set(names)
    assert len(catalogue(30)) == 2 * 26 + 4 + 2


def test_exceptional_record_shape():
    rec = exceptional("E8")
    assert rec.t1 == rec.t2
    assert rec.elements["x1"]["dim"] == 8


def test_products():
    recs = {r.group: r for r in product_examples()}
    assert recs["H3xH3"].extra["factors"] == ["H3", "H3"]
    assert recs["H3xH3"].x1 == "(1,2,3,4,5)(6,7)(8,9)(10,11)"


def test_corrupt_data_dir(tmp_path, monkeypatch):
    import shutil

    shutil.copytree(data_dir(), tmp_path / "data")
    p = tmp_path / "data" / "structures" / "products.json"
    doc = json.loads(p.read_text())
    for v in doc["products"].values():
        del v["x1"]
    p.write_text(json.dumps(doc))
    monkeypatch.setenv("BEAUVILLE_DATA_DIR", str(tmp_path / "data"))
    with pytest.raises(CatalogueError):
        catalogue(5)

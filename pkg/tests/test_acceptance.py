"""Acceptance criteria, one check per criterion.

Each ``criterion_N`` returns ``(passed, detail)``.  Under pytest the lines are
collected and printed in the terminal summary; run this file directly to get
the same lines without pytest.
"""

import json
import math
import random
import subprocess
import sys
import tempfile
from pathlib import Path

import pytest

from coxbeauville.beauville import (
    exhaustive_search,
    product_structure,
    realize_record,
    sigma,
    two_generated_obstruction,
)
from coxbeauville.cli import NEGATIVES, diagonal_resolutions, table_rows
from coxbeauville.groups import build_coxeter, direct_product
from coxbeauville.mixed import characters, mixable_obstruction, order_mod4_obstruction
from coxbeauville.paperdata import load_json, paper_structure
from coxbeauville.perms import parse_signed
from coxbeauville.stabchain import ContainsAlt, StabilizerChain, jones_certificate

from oracles import brute_sigma, closure

try:
    import conftest
except ImportError:  # run as a script
    conftest = None

NAMES = {
    1: "catalogued structures verify",
    2: "trace tables reproduce",
    3: "negative cases are proofs",
    4: "Jones certificates agree with chains",
    5: "exact Sigma equals brute force",
    6: "mixed and mixable obstructions block",
    7: "product machinery",
    8: "deterministic summary",
}


def _line(n, passed, detail):
    return f"criterion {n} [{'PASS' if passed else 'FAIL'}] {NAMES[n]}: {detail}"


def _record(n, result):
    if conftest is not None:
        conftest.ACCEPTANCE_LINES[n] = _line(n, *result)
    return result


def run_paper_all(dest):
    cmd = [sys.executable, "-m", "coxbeauville", "verify-paper-all", "--seed", "0", "--out", str(dest)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    return proc.returncode, Path(dest).read_bytes()


# -- 1 ---------------------------------------------------------------------------

def _inconclusive(doc):
    if isinstance(doc, dict):
        if doc.get("outcome") == "Inconclusive":
            return True
        return any(_inconclusive(v) for v in doc.values())
    if isinstance(doc, list):
        return any(_inconclusive(v) for v in doc)
    return False


def criterion_1(summary):
    items = [i for i in summary["items"] if i["kind"] == "structure"]
    failed = [i["item"] for i in items if not i["ok"]]
    inconclusive = [i["item"] for i in items if _inconclusive(i["report"])]
    passed = not failed and not inconclusive
    detail = f"{len(items) - len(failed)}/{len(items)} certified"
    if failed:
        detail += f"; failing: {', '.join(failed)}"
    if inconclusive:
        detail += f"; inconclusive: {', '.join(inconclusive)}"
    return passed, detail


# -- 2 ---------------------------------------------------------------------------

COLLISION_RANKS = {11, 12, 17, 18, 19}


def criterion_2():
    fams = load_json("structures/parametric.json")["families"]
    checked = mismatches = 0
    fired = set()
    for case, spec in fams.items():
        parity = 0 if spec["parity"] == "even" else 1
        for n in range(max(10, spec["min_rank"]), 31):
            if n % 2 != parity:
                continue
            rows, bad = table_rows(case, n)
            checked += len(rows)
            mismatches += bad
            if diagonal_resolutions(case, n).get("diagonal"):
                fired.add(n)
    missing = sorted(COLLISION_RANKS - fired)
    passed = mismatches == 0 and not missing
    detail = f"{checked} traces, {mismatches} mismatches; diagonal rule fired at {sorted(fired & COLLISION_RANKS)}"
    if missing:
        detail += f"; did not fire at {missing}"
    return passed, detail


# -- 3 ---------------------------------------------------------------------------

REQUIRED_NEGATIVES = ["A2", "A3", "B2", "B3", "B4", "D4", "H3", "F4"] + [f"I2({k})" for k in range(3, 13)]


def criterion_3():
    wrong = []
    h3_central = None
    for name in REQUIRED_NEGATIVES:
        res = exhaustive_search(build_coxeter(name))
        if res.outcome != "NoneExists":
            wrong.append(f"{name}={res.outcome}")
        if name == "H3":
            h3_central = res.stats.get("centralInEverySigma")
    passed = not wrong and h3_central is True
    detail = f"{len(REQUIRED_NEGATIVES) - len(wrong)}/{len(REQUIRED_NEGATIVES)} NoneExists"
    detail += f"; H3 central involution in every Sigma: {h3_central}"
    if wrong:
        detail += f"; wrong: {', '.join(wrong)}"
    return passed, detail


# -- 4 ---------------------------------------------------------------------------

def _usable(rec):
    rep = rec.extra.get("replacement")
    return rep if rec.flagged and rep is not None else rec


def criterion_4(seed=2024):
    rng = random.Random(seed)
    picks = [(rng.choice("BD"), n) for n in rng.sample(range(5, 31), 5)]
    agree, details = 0, []
    for fam, n in picks:
        rec = _usable(paper_structure(f"{fam}{n}"))
        ok = True
        for a, b in (("x1", "y1"), ("x2", "y2")):
            plain = [parse_signed(rec.elements[k], n).plain() for k in (a, b)]
            cert = jones_certificate(plain, [a, b])
            image = StabilizerChain(n, plain).order()
            chain_says_alt = image * 2 >= math.factorial(n)
            if isinstance(cert, ContainsAlt) != chain_says_alt or not chain_says_alt:
                ok = False
            if a == "x1" and isinstance(cert, ContainsAlt):
                details.append(f"{fam}{n}: {cert.cycle_length}-cycle {cert.word}")
        agree += ok
    return agree == len(picks), f"{agree}/{len(picks)} agree ({'; '.join(details)})"


# -- 5 ---------------------------------------------------------------------------

SMALL_GROUPS = ["A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "D5", "H3", "I2(5)", "I2(8)", "I2(12)"]


def criterion_5(seed=5, count=50):
    rng = random.Random(seed)
    cache = {}
    equal = 0
    for i in range(count):
        name = SMALL_GROUPS[i % len(SMALL_GROUPS)]
        if name not in cache:
            G = build_coxeter(name)
            assert G.order() <= 2000
            cache[name] = (G, sorted(closure(G.generator_perms)))
        G, els = cache[name]
        while True:
            x, y = rng.choice(els), rng.choice(els)
            if len(closure([x, y])) == len(els):
                break
        fast = sigma(G, G.element(x), G.element(y), "exact").elements
        equal += fast == frozenset(brute_sigma(els, x, y))
    return equal == count, f"{equal}/{count} pairs over {len(cache)} groups"


# -- 6 ---------------------------------------------------------------------------

MIXED_GROUPS = (
    [f"B{n}" for n in range(2, 9)] + [f"D{n}" for n in range(4, 9)] + [f"A{n}" for n in range(1, 10)]
    + ["F4", "H3", "H4", "E6"] + [f"I2({k})" for k in range(3, 21)]
)


def criterion_6():
    bad = []
    chars = 0
    for name in MIXED_GROUPS:
        G = build_coxeter(name)
        for chi in characters(G):
            chars += 1
            if not order_mod4_obstruction(G, chi).blocked:
                bad.append(f"{name} order-mod-4")
        if not mixable_obstruction(G).blocked:
            bad.append(f"{name} mixable")
    detail = f"{len(MIXED_GROUPS)} groups, {chars} index-2 subgroups"
    if bad:
        detail += f"; not blocked: {', '.join(bad)}"
    return not bad, detail


# -- 7 ---------------------------------------------------------------------------

def criterion_7():
    rank_two = ["B5", "F4", "I2(4)", "I2(10)", "B12"]
    others = ["A4", "D5", "E6", "H3", "I2(5)", "B7"]
    triples = [["A2", "A3", "A4"], ["H3", "H4", "E8"], ["I2(5)", "A4", "D6"]]
    rejected = all(two_generated_obstruction(t) for t in triples)
    rejected &= all(two_generated_obstruction([r, o]) for r in rank_two for o in others)
    K = build_coxeter("A4")
    s = exhaustive_search(K).structure
    G, _, rep = product_structure(K, s, K, s)
    built = rep.unmixed and rep.strongly_real and G.order() == rep.order1 == rep.order2 == 14400
    detail = f"obstruction rejects all tested lists: {rejected}; A4xA4 order {G.order()}, "
    detail += f"dagger {rep.dagger.outcome}, strongly real {rep.strongly_real}"
    return rejected and built, detail


# -- 8 ---------------------------------------------------------------------------

def _strip_timing(raw):
    doc = json.loads(raw)
    doc.pop("timing", None)
    return json.dumps(doc, indent=2)


def criterion_8(raw1, raw2):
    a, b = _strip_timing(raw1), _strip_timing(raw2)
    same = a == b
    return same, f"two runs with seed 0 {'are' if same else 'are NOT'} identical outside the timing field ({len(a)} bytes)"


# -- pytest ------------------------------------------------------------------------

@pytest.fixture(scope="session")
def paper_all_runs(tmp_path_factory):
    d = tmp_path_factory.mktemp("paper_all")
    return run_paper_all(d / "run1.json"), run_paper_all(d / "run2.json")


CRITERION_1_GAP = (
    "printed data for B_n with n odd >= 11 has no inverting element, and the printed "
    "E6, E7 and H4 structures fail generation or condition (dagger)"
)


@pytest.mark.xfail(strict=True, reason=CRITERION_1_GAP)
def test_criterion_1_catalogued_structures(paper_all_runs):
    (code, raw), _ = paper_all_runs
    passed, detail = _record(1, criterion_1(json.loads(raw)))
    assert passed, detail


def test_criterion_2_trace_tables():
    passed, detail = _record(2, criterion_2())
    assert passed, detail


def test_criterion_3_negatives():
    passed, detail = _record(3, criterion_3())
    assert passed, detail


def test_criterion_4_jones():
    passed, detail = _record(4, criterion_4())
    assert passed, detail


def test_criterion_5_sigma_oracle():
    passed, detail = _record(5, criterion_5())
    assert passed, detail


def test_criterion_6_obstructions():
    passed, detail = _record(6, criterion_6())
    assert passed, detail


def test_criterion_7_products():
    passed, detail = _record(7, criterion_7())
    assert passed, detail


def test_criterion_8_determinism(paper_all_runs):
    (_, raw1), (_, raw2) = paper_all_runs
    passed, detail = _record(8, criterion_8(raw1, raw2))
    assert passed, detail


def test_negatives_in_summary_match(paper_all_runs):
    (_, raw), _ = paper_all_runs
    doc = json.loads(raw)
    negs = {i["item"]: i["ok"] for i in doc["items"] if i["kind"] == "negative"}
    assert set(negs) == set(NEGATIVES)
    assert all(negs.values())


if __name__ == "__main__":
    with tempfile.TemporaryDirectory() as tmp:
        runs = [run_paper_all(Path(tmp) / f"run{i}.json") for i in (1, 2)]
    results = {
        1: criterion_1(json.loads(runs[0][1])),
        2: criterion_2(),
        3: criterion_3(),
        4: criterion_4(),
        5: criterion_5(),
        6: criterion_6(),
        7: criterion_7(),
        8: criterion_8(runs[0][1], runs[1][1]),
    }
    for n, (passed, detail) in results.items():
        print(_line(n, passed, detail))

"""Command line front end.

Exit codes: 0 success, 1 verification failure or negative verdict,
2 bad input or configuration, 3 inconclusive or budget exhausted.
JSON goes to ``--out`` when given and to standard output otherwise;
human-readable lines then go to standard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any

from .beauville import (
    SCHEMA_VERSION,
    check_dagger,
    search_structures,
    sigma,
    verify_record,
)
from .beauville.search import EXHAUSTIVE_BOUND
from .beauville.sigma import CLASS_BOUND
from .groups import CoxeterType, NotInGroup, RealizedGroup, build_coxeter, direct_product
from .mixed import SCAN_BOUND, characters, mixable_obstruction, order_mod4_obstruction
from .paperdata import (
    FAMILY_CASES,
    CatalogueError,
    StructureRecord,
    catalogue,
    family_record,
    load_json,
    paper_structure,
    trace_oracle,
)
from .perms import SignedPermutation, parse_signed
from .stabchain import BoundExceeded

logger = logging.getLogger("coxbeauville")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3

# groups with no Beauville structure; each is settled by exhaustive search
NEGATIVES = (
    ["A2", "A3", "B2", "B3", "B4", "D4", "H3", "F4"]
    + [f"I2({k})" for k in range(3, 13)]
    + ["A4xI2(5)", "A5xI2(5)"]
)


class InputError(ValueError):
    pass


# -- helpers -------------------------------------------------------------------------

def group_from_descriptor(text: str) -> RealizedGroup:
    """``B12``, ``I2(7)``, or a product such as ``A4xI2(5)``."""
    parts = [p for p in text.replace(" ", "").split("x") if p]
    if len(parts) > 2:
        raise InputError("only products of two factors are supported")
    try:
        groups = [build_coxeter(CoxeterType.parse(p)) for p in parts]
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if len(groups) == 1:
        return groups[0]
    return direct_product(*groups)


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _say(args, msg: str) -> None:
    print(msg, file=sys.stderr if not args.out else sys.stdout)


def _mode(args) -> str | None:
    if getattr(args, "exact", False):
        return "exact"
    if getattr(args, "invariant", False):
        return "invariant"
    return None


def _record_from_file(path: str) -> StructureRecord:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    missing = [k for k in ("group", "x1", "y1", "x2", "y2") if k not in doc]
    if missing:
        raise InputError(f"{path}: missing fields {missing}")
    elements = {k: doc[k] for k in ("x1", "y1", "x2", "y2", "t1", "t2") if k in doc}
    return StructureRecord(doc["group"], elements, provenance=f"file {Path(path).name}")


def report_exit(rep) -> int:
    if rep.inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if rep.ok and rep.strongly_real else EXIT_FAIL


# -- verify --------------------------------------------------------------------------

def cmd_verify(args) -> int:
    if args.file:
        rec = _record_from_file(args.file)
        if args.group and rec.group.upper() != args.group.upper():
            raise InputError(f"file describes {rec.group}, not {args.group}")
    else:
        try:
            rec = paper_structure(args.group)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    try:
        rep = verify_record(rec, _mode(args))
    except (NotInGroup, ValueError) as exc:
        if isinstance(exc, CatalogueError):
            raise
        raise InputError(str(exc)) from exc
    doc = rep.to_json()
    doc["source"] = rec.provenance
    _emit(doc, args.out)
    code = report_exit(rep)
    _say(args, f"{rec.group}: {'certified' if code == 0 else 'FAILED' if code == 1 else 'inconclusive'}")
    return code


# -- search --------------------------------------------------------------------------

def cmd_search(args) -> int:
    G = group_from_descriptor(args.group)
    mode = "randomized" if args.randomized else "exhaustive"
    try:
        res = search_structures(G, mode, budget=args.budget, seed=args.seed, bound=args.bound)
    except BoundExceeded as exc:
        _say(args, f"{G.name}: {exc}")
        return EXIT_INPUT
    _emit(res.to_json(G), args.out)
    _say(args, f"{G.name}: {res.outcome}")
    return {"Found": EXIT_OK, "NoneExists": EXIT_FAIL, "Exhausted": EXIT_INCONCLUSIVE}[res.outcome]


# -- trace tables ----------------------------------------------------------------------

def _trace(p: SignedPermutation) -> int:
    return sum(-1 if s else 1 for i, (v, s) in enumerate(zip(p.images, p.signs)) if v == i)


def compute_traces(case: str, n: int) -> dict[str, list[int]]:
    """Traces of the powers ``1 .. order-1`` of each family element."""
    rec = family_record(case, n)
    el = {k: parse_signed(rec.elements[k], n) for k in ("x1", "y1", "x2", "y2")}
    el["x1y1"] = el["x1"] * el["y1"]
    el["x2y2"] = el["x2"] * el["y2"]
    out = {}
    for role in ("x1", "y1", "x1y1", "x2", "y2", "x2y2"):
        g, p, vals = el[role], el[role], []
        while not p.is_identity():
            vals.append(_trace(p))
            p = p * g
        out[role] = vals
    return out


def diagonal_resolutions(case: str, n: int) -> dict[str, int]:
    """Ladder counts when the two invariant fingerprints are compared."""
    rec = family_record(case, n)
    G = build_coxeter(f"{case[0]}{n}")
    s = [G.parse(rec.elements[k]) for k in ("x1", "y1", "x2", "y2")]
    f1 = sigma(G, s[0], s[1], "invariant")
    f2 = sigma(G, s[2], s[3], "invariant")
    return check_dagger(G, f1, f2).resolved


def table_rows(case: str, n: int) -> tuple[list[dict], int]:
    rows, mismatches = [], 0
    for role, vals in compute_traces(case, n).items():
        order = len(vals) + 1
        for r, got in enumerate(vals, start=1):
            want = trace_oracle(case, role, n, r, order)
            ok = got == want
            mismatches += not ok
            rows.append({"n": n, "role": role, "r": r, "computed": got, "expected": want, "match": ok})
    return rows, mismatches


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..")
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise InputError(f"bad range {text!r}") from exc
    if lo > hi:
        raise InputError(f"empty range {text!r}")
    return lo, hi


def cmd_tables(args) -> int:
    if args.case not in FAMILY_CASES:
        raise InputError(f"unknown case {args.case!r}; choose from {', '.join(FAMILY_CASES)}")
    lo, hi = _parse_range(args.range)
    spec = load_json("structures/parametric.json")["families"][args.case]
    want = 0 if spec["parity"] == "even" else 1
    ranks = [n for n in range(max(lo, spec["min_rank"]), hi + 1) if n % 2 == want]
    if lo == hi and not ranks:
        raise InputError(f"{args.case} is not defined at n = {lo}")
    if not ranks:
        raise InputError(f"no valid rank for {args.case} in {args.range}")
    all_rows, bad = [], 0
    summary = []
    for n in ranks:
        rows, mism = table_rows(args.case, n)
        bad += mism
        all_rows += rows
        resolved = diagonal_resolutions(args.case, n)
        summary.append({"n": n, "mismatches": mism, "resolved": dict(sorted(resolved.items()))})
        line = f"{args.case} n={n}: {len(rows)} traces, " + ("all match" if not mism else f"{mism} MISMATCH")
        if resolved.get("diagonal"):
            line += f"; diagonal rule used {resolved['diagonal']}x"
        print(line, file=sys.stderr if not args.out else sys.stdout)
        if args.verbose:
            for role in ("x1", "y1", "x1y1", "x2", "y2", "x2y2"):
                vals = [row for row in rows if row["role"] == role]
                cells = " ".join(
                    f"{row['computed']}" if row["match"] else f"[{row['computed']}!={row['expected']}]" for row in vals
                )
                print(f"  {role:5s} {cells}", file=sys.stderr if not args.out else sys.stdout)
    doc = {"schema": SCHEMA_VERSION, "case": args.case, "ranks": ranks, "summary": summary, "rows": all_rows}
    _emit(doc, args.out)
    return EXIT_FAIL if bad else EXIT_OK


# -- mixed / mixable ---------------------------------------------------------------------

def cmd_mixed(args) -> int:
    G = group_from_descriptor(args.group)
    results = []
    try:
        for chi in characters(G):
            res = order_mod4_obstruction(G, chi, bound=args.bound)
            item = res.to_json(G)
            item["character"] = list(chi.values)
            results.append(item)
    except BoundExceeded as exc:
        _say(args, str(exc))
        return EXIT_INCONCLUSIVE
    blocked = all(r["outcome"] == "Blocked" for r in results)
    _emit({"schema": SCHEMA_VERSION, "group": G.name, "obstruction": "orderMod4", "characters": results}, args.out)
    _say(args, f"{G.name}: {'Blocked' if blocked else 'NotBlocked'} for {len(results)} index-2 subgroup(s)")
    return EXIT_OK if blocked else EXIT_FAIL


def cmd_mixable(args) -> int:
    G = group_from_descriptor(args.group)
    try:
        res = mixable_obstruction(G, bound=args.bound)
    except BoundExceeded as exc:
        _say(args, str(exc))
        return EXIT_INCONCLUSIVE
    doc = {"schema": SCHEMA_VERSION, "group": G.name, "obstruction": "mixable"}
    doc.update(res.to_json(G))
    _emit(doc, args.out)
    _say(args, f"{G.name}: {res.outcome}")
    return EXIT_OK if res.blocked else EXIT_FAIL


# -- everything ------------------------------------------------------------------------

def _run_item(item: tuple[str, str, str | None]) -> dict:
    kind, name, mode = item
    start = time.perf_counter()
    if kind == "verify":
        rep = verify_record(paper_structure(name), mode)
        out = {
            "item": name,
            "kind": "structure",
            "expected": "stronglyRealBeauville",
            "ok": bool(rep.ok and rep.strongly_real),
            "report": rep.to_json(timing=False),
        }
    else:
        G = group_from_descriptor(name)
        res = search_structures(G, "exhaustive")
        out = {
            "item": name,
            "kind": "negative",
            "expected": "NoneExists",
            "ok": res.outcome == "NoneExists",
            "result": res.to_json(timing=False),
        }
    out["_ms"] = int((time.perf_counter() - start) * 1000)
    return out


def paper_items(max_rank: int, mode: str | None) -> list[tuple[str, str, str | None]]:
    items = [("verify", rec.group, mode) for rec in catalogue(max_rank)]
    items += [("search", name, None) for name in NEGATIVES]
    return items


def cmd_verify_paper_all(args) -> int:
    # fail early on unreadable data before spawning workers
    catalogue(args.max_rank)
    items = paper_items(args.max_rank, _mode(args))
    workers = args.workers or os.cpu_count() or 1
    start = time.perf_counter()
    if workers == 1:
        results = [_run_item(it) for it in items]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_item, items))
    timing = {"elapsedMs": int((time.perf_counter() - start) * 1000), "items": {}}
    for r in results:
        timing["items"][r["item"]] = r.pop("_ms")
    failed = [r["item"] for r in results if not r["ok"]]
    for r in results:
        _say(args, f"{r['item']:>10s}  {'ok' if r['ok'] else 'FAIL'}")
    doc = {
        "schema": SCHEMA_VERSION,
        "maxRank": args.max_rank,
        "seed": args.seed,
        "items": results,
        "failed": failed,
        "timing": timing,
    }
    _emit(doc, args.out)
    _say(args, f"{len(results) - len(failed)}/{len(results)} items match the classification")
    return EXIT_OK if not failed else EXIT_FAIL


# -- parser -----------------------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coxbeauville", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, modes=False):
        sp.add_argument("--out", metavar="PATH")
        sp.add_argument("--workers", type=_positive, default=None)
        sp.add_argument("--seed", type=int, default=0)
        # also accepted after the subcommand; SUPPRESS keeps the global value otherwise
        sp.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
        if modes:
            g = sp.add_mutually_exclusive_group()
            g.add_argument("--exact", action="store_true")
            g.add_argument("--invariant", action="store_true")

    v = sub.add_parser("verify", help="verify a catalogued or supplied structure")
    v.add_argument("group", nargs="?")
    src = v.add_mutually_exclusive_group()
    src.add_argument("--paper", action="store_true", help="use the catalogued structure (default)")
    src.add_argument("--file", metavar="PATH")
    v.add_argument("--bound", type=_positive, default=CLASS_BOUND)
    common(v, modes=True)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="search for a structure")
    s.add_argument("group")
    how = s.add_mutually_exclusive_group()
    how.add_argument("--exhaustive", action="store_true", help="default")
    how.add_argument("--randomized", action="store_true")
    s.add_argument("--budget", type=_positive, default=20_000)
    s.add_argument("--bound", type=_positive, default=EXHAUSTIVE_BOUND)
    common(s)
    s.set_defaults(func=cmd_search)

    t = sub.add_parser("tables", help="compare computed traces with the closed forms")
    t.add_argument("case", help=", ".join(FAMILY_CASES))
    t.add_argument("range", help="N or LO..HI")
    common(t)
    t.set_defaults(func=cmd_tables)

    for name, fn, helptext in (
        ("mixed", cmd_mixed, "order-mod-4 obstruction for every index-2 subgroup"),
        ("mixable", cmd_mixable, "even-order obstruction outside the derived subgroup"),
    ):
        m = sub.add_parser(name, help=helptext)
        m.add_argument("group")
        m.add_argument("--bound", type=_positive, default=SCAN_BOUND)
        common(m)
        m.set_defaults(func=fn)

    a = sub.add_parser("verify-paper-all", help="every catalogued structure and every negative case")
    a.add_argument("--max-rank", type=int, default=30)
    common(a, modes=True)
    a.set_defaults(func=cmd_verify_paper_all)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="level=%(levelname)s module=%(name)s message=%(message)s",
    )
    if args.command == "verify" and not args.group and not args.file:
        parser.error("verify needs a group or --file")
    try:
        return args.func(args)
    except (InputError, CatalogueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

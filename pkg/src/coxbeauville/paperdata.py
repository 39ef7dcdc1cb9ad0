"""The catalogue of explicit structures and closed-form trace values.

Everything lives in JSON under ``data/`` (or ``$BEAUVILLE_DATA_DIR``).
Parametric families are stored as ordered parts whose point expressions are
integer arithmetic in ``n``; they expand to notation strings in the printed
cycle order.
"""

from __future__ import annotations

import ast
import json
import operator
import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

__all__ = [
    "CatalogueError",
    "StructureRecord",
    "data_dir",
    "load_json",
    "bn_even",
    "bn_odd",
    "dn_even",
    "dn_odd",
    "family_record",
    "small_case",
    "exceptional",
    "load_exceptional",
    "product_examples",
    "trace_oracle",
    "trace_rules",
    "paper_structure",
    "catalogue",
    "FAMILY_CASES",
]

ENV_VAR = "BEAUVILLE_DATA_DIR"
FAMILY_CASES = ("B-even", "B-odd", "D-even", "D-odd")
ROLES = ("x1", "y1", "x1y1", "x2", "y2", "x2y2")


class CatalogueError(ValueError):
    """Malformed or missing catalogue data."""


@dataclass
class StructureRecord:
    group: str
    elements: dict[str, Any]
    provenance: str
    annotations: dict[str, str] = field(default_factory=dict)
    printed: dict[str, Any] = field(default_factory=dict)
    flagged: str | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def __getattr__(self, name: str) -> Any:
        elements = self.__dict__.get("elements", {})
        if name in elements:
            return elements[name]
        raise AttributeError(name)


# -- loading ------------------------------------------------------------------------

def data_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(str(resources.files("coxbeauville") / "data"))


@lru_cache(maxsize=None)
def _load_cached(path: str, mtime: float) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise CatalogueError(f"{path}: {exc}") from exc


def load_json(relpath: str) -> Any:
    path = data_dir() / relpath
    if not path.is_file():
        raise CatalogueError(f"missing catalogue file {path}")
    doc = _load_cached(str(path), path.stat().st_mtime)
    if not isinstance(doc, dict) or doc.get("version") != 1:
        raise CatalogueError(f"{path}: unsupported or missing version")
    return doc


# -- expressions in n ---------------------------------------------------------------

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.FloorDiv: operator.floordiv}


def eval_n(expr: str, n: int) -> int:
    """Evaluate integer arithmetic in ``n`` (``+ - * //`` and parentheses only)."""

    def ev(node: ast.AST) -> int:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id == "n":
            return n
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        raise CatalogueError(f"unsupported expression {expr!r}")

    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise CatalogueError(f"bad expression {expr!r}") from exc
    return ev(tree)


def _segment_points(seg: dict, n: int) -> list[tuple[int, bool]]:
    neg = bool(seg.get("neg", False))
    if "point" in seg:
        return [(eval_n(seg["point"], n), neg)]
    a, b = eval_n(seg["from"], n), eval_n(seg["to"], n)
    step = 1 if b >= a else -1
    return [(i, neg) for i in range(a, b + step, step)]


def expand_parts(parts: list[dict], n: int) -> str:
    """Notation string of a parametric element at rank ``n``."""
    out = []
    for part in parts:
        if "cycle" in part:
            pts = [p for seg in part["cycle"] for p in _segment_points(seg, n)]
            out.append("(" + ",".join(("_" if neg else "") + str(i) for i, neg in pts) + ")")
        elif "pairs" in part:
            spec = part["pairs"]
            s = eval_n(spec["sum"], n)
            for i in range(eval_n(spec["from"], n), eval_n(spec["to"], n) + 1):
                out.append(f"({i},{s - i})")
        else:
            raise CatalogueError(f"unknown part {part!r}")
    return "".join(out)


# -- structures ---------------------------------------------------------------------

def _family(case: str, n: int) -> StructureRecord:
    fams = load_json("structures/parametric.json")["families"]
    if case not in fams:
        raise CatalogueError(f"unknown family {case!r}")
    spec = fams[case]
    want = 0 if spec["parity"] == "even" else 1
    if n % 2 != want:
        raise ValueError(f"{case} needs {spec['parity']} rank, got {n}")
    if n < spec["min_rank"]:
        raise ValueError(f"{case} needs rank >= {spec['min_rank']}, got {n}")
    elements = {k: expand_parts(v, n) for k, v in spec["elements"].items()}
    return StructureRecord(
        group=f"{spec['family']}{n}",
        elements=elements,
        provenance=f"parametric {case}",
        annotations=dict(spec.get("annotations", {})),
        extra={"case": case},
    )


def family_record(case: str, n: int) -> StructureRecord:
    """The parametric structure of ``case`` (e.g. ``"B-even"``) at rank ``n``."""
    return _family(case, n)


def bn_even(n: int) -> StructureRecord:
    return _family("B-even", n)


def bn_odd(n: int) -> StructureRecord:
    return _family("B-odd", n)


def dn_even(n: int) -> StructureRecord:
    return _family("D-even", n)


def dn_odd(n: int) -> StructureRecord:
    return _family("D-odd", n)


def family_case(family: str, n: int) -> str:
    return f"{family}-{'even' if n % 2 == 0 else 'odd'}"


def small_case(family: str, n: int) -> StructureRecord:
    doc = load_json("structures/small_rank.json")
    rows = doc.get(family)
    if rows is None:
        raise ValueError(f"no small-rank table for family {family!r}")
    row = rows.get(str(n))
    if row is None:
        raise ValueError(f"{family}{n} is outside the small-rank table")
    rec = StructureRecord(
        group=f"{family}{n}",
        elements={k: row[k] for k in ("x1", "y1", "t1", "x2", "y2", "t2")},
        provenance=f"small-rank table {family}",
    )
    repl = doc.get("replacements", {}).get(f"{family}{n}")
    if repl is not None:
        rec.flagged = repl["reason"]
        rec.extra["replacement"] = StructureRecord(
            group=f"{family}{n}",
            elements={k: v for k, v in repl["elements"].items()},
            provenance=repl["provenance"],
        )
    return rec


def load_exceptional(name: str) -> dict:
    groups = load_json("structures/exceptional.json")["groups"]
    if name not in groups:
        raise ValueError(f"no explicit matrices for {name!r}")
    return groups[name]


def exceptional(name: str) -> StructureRecord:
    doc = load_exceptional(name)
    elements = {k: doc[k] for k in ("x1", "y1", "x2", "y2")}
    elements["t1"] = elements["t2"] = doc["t"]
    return StructureRecord(
        group=name,
        elements=elements,
        provenance=f"explicit matrices {name}",
        annotations=dict(doc.get("annotations", {})),
        printed=dict(doc.get("printed", {})),
    )


def product_examples() -> list[StructureRecord]:
    out = []
    for name, doc in load_json("structures/products.json")["products"].items():
        out.append(
            StructureRecord(
                group=name,
                elements={k: doc[k] for k in ("x1", "y1", "x2", "y2")},
                provenance=f"product example {name}",
                extra={"factors": doc["factors"], "degree": doc["degree"], "blocks": doc["blocks"]},
            )
        )
    return out


def paper_structure(group: str) -> StructureRecord:
    """The catalogued structure for a type descriptor, e.g. ``"B12"``."""
    from .groups import CoxeterType

    key = group.replace(" ", "")
    for rec in product_examples():
        if rec.group.upper() == key.upper():
            return rec
    ct = CoxeterType.parse(key)
    if ct.family in ("B", "D"):
        n = ct.rank
        small_max = 10 if ct.family == "B" else 9
        if n <= small_max:
            return small_case(ct.family, n)
        return _family(family_case(ct.family, n), n)
    if ct.family in ("E6", "E7", "E8", "H4"):
        return exceptional(ct.family)
    raise ValueError(f"no catalogued structure for {ct}")


def catalogue(max_rank: int = 30) -> list[StructureRecord]:
    try:
        return _catalogue(max_rank)
    except (KeyError, TypeError, AttributeError) as exc:
        raise CatalogueError(f"malformed catalogue entry: {exc!r}") from exc


def _catalogue(max_rank: int) -> list[StructureRecord]:
    recs = []
    for fam in ("B", "D"):
        for n in range(5, max_rank + 1):
            recs.append(paper_structure(f"{fam}{n}"))
    recs += [exceptional(t) for t in ("E6", "E7", "E8", "H4")]
    recs += product_examples()
    return recs


# -- trace oracle -----------------------------------------------------------------------

def trace_rules(case: str, role: str) -> list[dict]:
    cases = load_json("oracles/traces.json")["cases"]
    if case not in cases:
        raise ValueError(f"unknown case {case!r}")
    if role not in cases[case]:
        raise ValueError(f"unknown role {role!r}")
    return cases[case][role]


def trace_oracle(case: str, role: str, n: int, r: int, order: int | None = None) -> int:
    """Closed-form trace of the ``r``-th power of a family element.

    ``order``, when given, bounds the admissible ``r``.
    """
    if r < 1 or (order is not None and r >= order):
        raise ValueError(f"power {r} out of range")
    for rule in trace_rules(case, role):
        if "r_eq" in rule:
            a, b = rule["r_eq"]
            if r != a * n + b:
                continue
        if "parity" in rule and (r % 2 == 0) != (rule["parity"] == "even"):
            continue
        v = rule["value"]
        return v["n"] * n + v["c"]
    raise CatalogueError(f"no rule matches {case} {role} r={r}")

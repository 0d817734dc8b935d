"""JSON and CSV forms of combinations, coefficient tables and rationals.

Rationals are written as decimal strings so no precision is lost in any JSON
reader.  Every document carries ``"schema": "fmzv/1"`` and is dumped with
sorted keys, which makes repeated runs byte-identical.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Mapping

from .index import Combination, Index, Poly2, format_index, parse_index

SCHEMA = "fmzv/1"

__all__ = [
    "SCHEMA",
    "dumps",
    "rational_to_json",
    "rational_from_json",
    "poly_to_json",
    "poly_from_json",
    "combination_to_json",
    "combination_from_json",
    "combination_to_csv",
    "table_to_json",
    "table_to_csv",
]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def rational_to_json(q) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rational_from_json(d: Mapping) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def poly_to_json(c: Poly2) -> list[dict]:
    return [
        {"dplus": dp, "dminus": dm, **rational_to_json(v)}
        for (dp, dm), v in c.items()
    ]


def poly_from_json(items) -> Poly2:
    return Poly2({(int(m["dplus"]), int(m["dminus"])): rational_from_json(m) for m in items})


def combination_to_json(c: Combination, source: Index | None = None) -> dict:
    doc = {
        "schema": SCHEMA,
        "terms": [{"index": format_index(k), "coeff": poly_to_json(v)} for k, v in c.items()],
    }
    if source is not None:
        doc["source"] = format_index(source)
    return doc


def combination_from_json(doc: Mapping) -> Combination:
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    return Combination((parse_index(t["index"]), poly_from_json(t["coeff"])) for t in doc["terms"])


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def combination_to_csv(c: Combination) -> str:
    """One row per monomial: ``index,dplus,dminus,num,den``."""
    rows = [("index", "dplus", "dminus", "num", "den")]
    for k, v in c.items():
        for (dp, dm), q in v.items():
            rows.append((format_index(k), dp, dm, q.numerator, q.denominator))
    return _csv(rows)


def table_to_json(table: Mapping[Index, Poly2], depth: int, max_k: int) -> dict:
    """A ``P_r`` table keyed by exponent tuple, in lexicographic order."""
    return {
        "schema": SCHEMA,
        "depth": depth,
        "max_k": max_k,
        "entries": [{"k": format_index(k), "poly": poly_to_json(table[k])} for k in sorted(table)],
    }


def table_to_csv(table: Mapping[Index, Poly2]) -> str:
    rows = [("k", "dplus", "dminus", "num", "den")]
    for k in sorted(table):
        for (dp, dm), q in table[k].items():
            rows.append((format_index(k), dp, dm, q.numerator, q.denominator))
    return _csv(rows)

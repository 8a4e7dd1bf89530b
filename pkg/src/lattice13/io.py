"""CSV ingestion, the JSONL fingerprint index and the JSON C-type atlas.

Numbers are written so that reading them back gives the identical value:
exact rationals become strings such as ``"3/2"``, floats are rendered with
17 significant digits.
"""
from __future__ import annotations

import csv
import io as _io
import json
from dataclasses import dataclass
from fractions import Fraction

from .core import CellParameters, SymMat, gram_from_cell, require_pd, scalar
from .errors import LatticeError, ParseError

__all__ = [
    "CELL_HEADER",
    "GRAM_HEADER",
    "LatticeRecord",
    "detect_schema",
    "dumps",
    "index_record",
    "parse_number",
    "read_index",
    "read_lattice_csv",
    "render_number",
    "write_atlas",
    "write_index",
    "write_lattice_csv",
]

CELL_HEADER = ("id", "a", "b", "c", "alpha", "beta", "gamma")
GRAM_HEADER = ("id", "s11", "s22", "s33", "s12", "s13", "s23")


@dataclass(frozen=True)
class LatticeRecord:
    id: str
    gram: SymMat
    cell: CellParameters | None = None


def render_number(x):
    """JSON-ready value: str for exact rationals, float text with 17 digits."""
    if isinstance(x, float):
        return _Raw(format(x, ".17g"))
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_number(x):
    """Inverse of render_number: strings are exact, JSON numbers are floats."""
    return Fraction(x) if isinstance(x, str) else float(x)


class _Raw(str):
    """Pre-rendered JSON number token."""


def _dumps(obj):
    if isinstance(obj, _Raw):
        return str(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dumps(v) for v in obj) + "]"
    return json.dumps(obj)


def detect_schema(header):
    cols = tuple(c.strip().lower() for c in header)
    if cols == CELL_HEADER:
        return "cell"
    if cols == GRAM_HEADER:
        return "gram"
    raise ParseError(f"unrecognised header {','.join(cols)!r}; expected "
                     f"{','.join(CELL_HEADER)!r} or {','.join(GRAM_HEADER)!r}", row=1)


def read_lattice_csv(source):
    """Read lattices from a CSV path or text stream.

    Returns ``(records, skipped)``.  Malformed rows raise ParseError with the
    1-based line number; rows that parse but are not positive-definite are
    collected in ``skipped`` as ``(row, id, message)``.
    """
    if isinstance(source, str):
        with open(source, newline="", encoding="utf-8") as fh:
            return read_lattice_csv(fh)
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        return [], []
    schema = detect_schema(header)
    records, skipped, seen = [], [], set()
    for row_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 7:
            raise ParseError(f"expected 7 fields, got {len(row)}", row=row_no)
        rid = row[0].strip()
        if not rid:
            raise ParseError("empty id", row=row_no)
        if rid in seen:
            raise ParseError(f"duplicate id {rid!r}", row=row_no)
        seen.add(rid)
        try:
            values = [scalar(c.strip()) for c in row[1:]]
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad number: {exc}", row=row_no) from None
        try:
            if schema == "cell":
                cell = CellParameters(*values)
                records.append(LatticeRecord(rid, gram_from_cell(cell), cell))
            else:
                records.append(LatticeRecord(rid, _pd_gram(values)))
        except (LatticeError, ValueError) as exc:
            skipped.append((row_no, rid, str(exc)))
    return records, skipped


def _pd_gram(values):
    S = SymMat.from_entries(values)
    require_pd(S)
    return S


def write_lattice_csv(rows, fh):
    """Write ``(id, SymMat)`` pairs with the Gram header."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(GRAM_HEADER)
    for rid, S in rows:
        w.writerow([rid] + [str(render_number(x)) for x in S.entries])


def index_record(rid, embedding, det, reduced):
    return {
        "id": rid,
        "kind": embedding.kind.value,
        "values": [render_number(x) for x in embedding.values],
        "det": render_number(det),
        "reduced": [render_number(x) for x in reduced.entries],
    }


def write_index(records, fh):
    for rec in records:
        fh.write(_dumps(rec) + "\n")


def read_index(fh):
    out = []
    for line in fh:
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        rec["values"] = [parse_number(x) for x in rec["values"]]
        rec["det"] = parse_number(rec["det"])
        rec["reduced"] = [parse_number(x) for x in rec["reduced"]]
        out.append(rec)
    return out


def write_atlas(domains, n, r, fh):
    classes = []
    for dom in domains:
        classes.append({
            "phi": [list(v) for v in dom.phi.sorted()],
            "facets": [{"coeff": list(q.entries), "u": list(q.u), "v": list(q.v)}
                       for q in dom.facet_inequalities],
            "interior": [render_number(x) for x in dom.interior.entries],
            "neighbors": list(dom.neighbors),
        })
    fh.write(_dumps({"n": n, "r": r, "classes": classes}) + "\n")


def dumps(obj):
    """JSON text that keeps pre-rendered float tokens intact."""
    return _dumps(obj)


def read_csv_text(text):
    return read_lattice_csv(_io.StringIO(text))

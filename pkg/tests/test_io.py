import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice13 import ParseError, enumerate_ctype_reps, iota_m, iota_s, numeric_mode, sym3
from lattice13.io import (detect_schema, index_record, parse_number, read_csv_text,
                          read_index, render_number, write_atlas, write_index,
                          write_lattice_csv)

GRAM = "id,s11,s22,s33,s12,s13,s23\n"
CELL = "id,a,b,c,alpha,beta,gamma\n"


def test_detect_schema():
    assert detect_schema(GRAM.strip().split(",")) == "gram"
    assert detect_schema([" ID", "A", "b", "c", "alpha", "beta", "gamma "]) == "cell"
    with pytest.raises(ParseError):
        detect_schema(["id", "x"])


def test_read_gram_and_cell_rows():
    recs, skipped = read_csv_text(GRAM + "a,1,1,1,0,0,0\nb,1,2,3,0,1/2,0\n")
    assert [r.id for r in recs] == ["a", "b"] and not skipped
    assert recs[1].gram == sym3(1, 2, 3, 0, "1/2", 0)
    recs, _ = read_csv_text(CELL + "c,2,2,2,90,90,90\n")
    assert recs[0].gram == sym3(4, 4, 4, 0, 0, 0) and recs[0].cell is not None


@pytest.mark.parametrize("text, row", [
    ("id,x,y\n", 1),
    (GRAM + "a,1,1,1,0,0,0\nb,1,1,1,0,0\n", 3),
    (GRAM + "a,1,1,1,0,0,0\na,1,1,1,0,0,0\n", 3),
    (GRAM + "a,1,1,1,0,zero,0\n", 2),
    (GRAM + ",1,1,1,0,0,0\n", 2),
])
def test_parse_errors_carry_row_numbers(text, row):
    with pytest.raises(ParseError) as err:
        read_csv_text(text)
    assert err.value.row == row


def test_non_pd_rows_are_skipped():
    recs, skipped = read_csv_text(GRAM + "a,1,1,1,0,0,0\nbad,1,1,0,0,0,0\n\nc,2,2,2,0,0,0\n")
    assert [r.id for r in recs] == ["a", "c"]
    assert [(row, rid) for row, rid, _ in skipped] == [(3, "bad")]
    recs, skipped = read_csv_text(CELL + "x,1,1,1,120,120,120\n")
    assert not recs and skipped[0][1] == "x"


def test_empty_input():
    assert read_csv_text("") == ([], [])
    assert read_csv_text(GRAM) == ([], [])


def test_render_and_parse_numbers():
    assert render_number(Fraction(3, 2)) == "3/2"
    assert render_number(4) == "4"
    assert json.loads(render_number(0.1)) == 0.1
    assert parse_number("3/2") == Fraction(3, 2)
    assert parse_number(0.25) == 0.25 and isinstance(parse_number(1), float)


@settings(max_examples=200)
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_rendering_round_trips(x):
    assert parse_number(json.loads(render_number(x))) == x


def _round_trip(rows, kind):
    buf = io.StringIO()
    write_lattice_csv(rows, buf)
    recs, skipped = read_csv_text(buf.getvalue())
    assert not skipped
    assert [(r.id, r.gram.entries) for r in recs] == [(rid, S.entries) for rid, S in rows]
    idx = io.StringIO()
    write_index([index_record(r.id, kind(r.gram), r.gram.det(), r.gram) for r in recs], idx)
    back = read_index(io.StringIO(idx.getvalue()))
    assert [b["values"] for b in back] == [list(kind(r.gram).values) for r in recs]
    assert [b["reduced"] for b in back] == [list(r.gram.entries) for r in recs]
    return back


def test_exact_round_trip_is_bit_exact():
    rows = [("a", sym3(1, 1, 1, 0, 0, 0)), ("b", sym3("1/3", "2/7", 5, "-1/11", 0, "1/13"))]
    back = _round_trip(rows, iota_s)
    assert all(isinstance(x, Fraction) for x in back[1]["values"])
    assert back[1]["kind"] == "s"


def test_float_round_trip_is_bit_exact():
    with numeric_mode("float"):
        rows = [("x", sym3(0.1, 0.7, 1 / 3, 0.01, -0.02, 1e-5)),
                ("y", sym3(2.5, 3.0000000000000004, 7.1, 0, 0, 0))]
        back = _round_trip(rows, iota_m)
    assert all(isinstance(x, float) for x in back[0]["values"])


def test_atlas_json():
    buf = io.StringIO()
    write_atlas(enumerate_ctype_reps(2, 3), 2, 3, buf)
    atlas = json.loads(buf.getvalue())
    assert atlas["n"] == 2 and atlas["r"] == 3
    for cls in atlas["classes"]:
        assert len(cls["facets"]) == len(cls["neighbors"])
        assert all(len(f["coeff"]) == 3 for f in cls["facets"])
        assert all(isinstance(x, str) for x in cls["interior"])

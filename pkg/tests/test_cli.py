import io
import json
import subprocess
import sys

import pytest

from lattice13.cli import main, parse_form, single_link_clusters
from lattice13 import ParseError, iota_m, sym3

GRAM = "id,s11,s22,s33,s12,s13,s23\n"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_parse_form():
    assert parse_form("1,1,1,0,0,0") == sym3(1, 1, 1, 0, 0, 0)
    assert parse_form("cell:2,2,2,90,90,90") == sym3(4, 4, 4, 0, 0, 0)
    with pytest.raises(ParseError):
        parse_form("1,2")


@pytest.mark.parametrize("argv, expected", [
    (["embed", "1,1,1,0,0,0", "--kind", "m"], "1,1,1,2,2,2,2,2,2,3,3,3,3"),
    (["embed", "1,1,1,0,0,0", "--kind", "s"], "1,1,1,2,2,2,3,0,0,0,1,1,1"),
    (["embed", "1,2,3,0,0,0"], "1,2,3,3,3,4,4,5,5,6,6,6,6"),
    (["embed", "--cell", "1,1,1,90,90,90"], "1,1,1,2,2,2,2,2,2,3,3,3,3"),
])
def test_embed(argv, expected):
    code, text = run(*argv)
    assert code == 0 and text.strip() == expected


def test_embed_float_mode():
    code, text = run("embed", "1,2,3,0,0,0", "--mode", "float")
    assert code == 0
    assert [float(x) for x in text.split(",")] == [float(x) for x in iota_m(sym3(1, 2, 3, 0, 0, 0)).values]


def test_reduce():
    code, text = run("reduce", "3,2,1,0,0,0")
    assert code == 0
    assert text.splitlines()[0] == "reduced: 1,2,3,0,0,0"
    assert text.splitlines()[1].startswith("transform: [[")
    code, text = run("reduce", "1,1,1,0,0,0", "--kind", "s")
    assert code == 0 and "reduced: 1,1,1,0,0,0" in text


@pytest.mark.parametrize("argv, code", [
    (["reduce", "1,x,1,0,0,0"], 2),
    (["reduce"], 2),
    (["embed", "1,1,0,0,0,0"], 3),
    (["embed", "--cell", "1,1,1,120,120,120"], 3),
    (["ctype", "--n", "4", "--r", "2"], 2),
    (["verify", "--suite", "nope"], 2),
    (["frobnicate"], 2),
])
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_dist():
    assert run("dist", "1,1,1,0,0,0", "1,1,1,0,0,0") == (0, "0\n")
    code, text = run("dist", "1,1,1,0,0,0", "4,4,4,0,0,0", "--metric", "linf")
    assert code == 0 and text.strip() == "9"
    code, text = run("dist", "1,1,0", "1,1,-1/2", "--algo", "rank2", "--metric", "linf")
    assert code == 0 and text.strip() == "1"
    code, text = run("dist", "1,1,1,0,0,0", "1,1,1,0,0,0", "--algo", "vonorm-generic")
    assert code == 0 and text.strip() == "0"


def test_isometries():
    code, text = run("isometries", "1,1,1,0,0,0", "1,1,1,0,0,0")
    assert code == 0
    lines = text.splitlines()
    assert lines[-1] == "48 candidates"
    assert lines[0] == "[[1,0,0],[0,1,0],[0,0,1]] residual=0"
    code, text = run("isometries", "1,1,1,0,0,0", "100,100,100,0,0,0", "--tol", "1")
    assert text.strip() == "0 candidates"
    _, strict = run("isometries", "1,2,3,0,0,0", "1,2,3,0,0,0", "--tol", "10")
    _, loose = run("isometries", "1,2,3,0,0,0", "1,2,3,0,0,0", "--tol", "10", "--inclusive")
    # the wider row pool is cut back to the 8 sign changes by the Condition C filter
    assert strict.splitlines()[-1] == loose.splitlines()[-1] == "8 candidates"


def test_ctype(tmp_path):
    out = tmp_path / "atlas.json"
    code, text = run("ctype", "--n", "3", "--r", "3", "--out", str(out))
    assert code == 0 and text.strip() == "4 classes"
    assert len(json.loads(out.read_text())["classes"]) == 4
    assert run("ctype", "--n", "2", "--r", "3")[1].strip() == "1 class"


def test_verify_quick():
    code, text = run("verify", "--suite", "theorem1", "--suite", "prop1", "--samples", "20")
    report = json.loads(text)
    assert code == 0 and report["passed"]
    assert [s["suite"] for s in report["suites"]] == ["theorem1", "prop1"]


def _csv(tmp_path, body, name="in.csv"):
    p = tmp_path / name
    p.write_text(GRAM + body)
    return str(p)


def test_dedupe_clusters(tmp_path):
    src = _csv(tmp_path, "a,1,1,1,0,0,0\nb,2,1,1,1,0,0\nc,1,2,3,0,0,0\nbad,1,1,0,0,0,0\n")
    idx = tmp_path / "idx.jsonl"
    code, text = run("dedupe", "--in", src, "--out", str(idx), "--threshold", "0")
    report = json.loads(text)
    assert code == 0
    assert report["clusters"] == [["a", "b"], ["c"]]
    assert report["skipped"][0]["id"] == "bad"
    assert len(idx.read_text().splitlines()) == 3


def test_dedupe_threshold_is_inclusive(tmp_path):
    src = _csv(tmp_path, "i,1,1,1,0,0,0\nj,1,1,2,0,0,0\n")
    assert json.loads(run("dedupe", "--in", src, "--threshold", "1")[1])["clusters"] == [["i", "j"]]
    assert json.loads(run("dedupe", "--in", src, "--threshold", "1/2")[1])["clusters"] == [["i"], ["j"]]
    src = _csv(tmp_path, "i,1,1,1,0,0,0\nj,4,4,4,0,0,0\n", "scaled.csv")
    got = json.loads(run("dedupe", "--in", src, "--threshold", "1", "--normalize-scale")[1])
    assert got["clusters"] == [["i", "j"]]


def test_dedupe_is_order_invariant(tmp_path):
    rows = ["a,1,1,1,0,0,0", "b,2,1,1,1,0,0", "c,1,2,3,0,0,0", "d,1,2,3,1,0,0", "e,1,2,3,0,0,1/1000"]
    first = run("dedupe", "--in", _csv(tmp_path, "\n".join(rows) + "\n"), "--threshold", "1/100")[1]
    second = run("dedupe", "--in", _csv(tmp_path, "\n".join(rows[::-1]) + "\n", "rev.csv"),
                 "--threshold", "1/100")[1]
    assert json.loads(first)["clusters"] == json.loads(second)["clusters"]
    assert ["c", "e"] in json.loads(first)["clusters"]


def test_dedupe_jobs_and_float_mode_agree(tmp_path):
    rows = [f"r{k},{1 + k % 3},{2 + k % 5},{3 + k % 7},0,{k % 2}/2,0" for k in range(30)]
    src = _csv(tmp_path, "\n".join(rows) + "\n")
    serial = json.loads(run("dedupe", "--in", src, "--threshold", "0")[1])["clusters"]
    parallel = json.loads(run("dedupe", "--in", src, "--threshold", "0", "--jobs", "2")[1])["clusters"]
    floats = json.loads(run("dedupe", "--in", src, "--threshold", "1e-9", "--mode", "float")[1])["clusters"]
    assert serial == parallel == floats


def test_dedupe_empty_file(tmp_path):
    code, text = run("dedupe", "--in", _csv(tmp_path, ""))
    assert code == 0 and json.loads(text)["clusters"] == []
    assert run("dedupe", "--in", str(tmp_path / "missing.csv"))[0] == 2


def test_single_link_chains():
    embs = [iota_m(sym3(1, 1, 1 + k, 0, 0, 0)) for k in range(4)]
    assert single_link_clusters(list("abcd"), embs, 1, "linf") == [["a", "b", "c", "d"]]
    assert single_link_clusters(list("abcd"), embs, 0, "linf") == [["a"], ["b"], ["c"], ["d"]]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lattice13", "embed", "1,1,1,0,0,0"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "1,1,1,2,2,2,2,2,2,3,3,3,3"

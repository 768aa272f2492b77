import json
import xml.etree.ElementTree as ET
from fractions import Fraction as F

import jsonschema
import pytest
from hypothesis import given, strategies as st

from flagdepth import fixtures as fx
from flagdepth.cli import main
from flagdepth.dataio import (
    DatasetParseError,
    format_dataset,
    load_schema,
    parse_dataset,
    point_from_json,
    point_json,
    write_dataset,
)

rationals = st.fractions(max_denominator=10**9).filter(lambda v: abs(v) < 10**9)


@given(st.integers(1, 3).flatmap(
    lambda d: st.lists(st.tuples(*[rationals] * d), min_size=1, max_size=6)),
    st.booleans())
def test_csv_round_trip(points, weighted):
    weights = [F(i + 1, 7) for i in range(len(points))] if weighted else None
    back, wback = parse_dataset(format_dataset(points, weights))
    assert back == [tuple(p) for p in points]
    assert wback == weights


@given(st.lists(rationals, min_size=1, max_size=4))
def test_json_point_round_trip(p):
    assert point_from_json(json.loads(json.dumps(point_json(p)))) == tuple(p)


def test_parse_variants():
    pts, w = parse_dataset("# comment\n0.5, 1/3\n\n2,3\n")
    assert pts == [(F(1, 2), F(1, 3)), (F(2), F(3))] and w is None
    pts, w = parse_dataset("w,x,y\n1/2,0,0\n1/2,1,1\n")
    assert w == [F(1, 2), F(1, 2)] and pts[1] == (1, 1)
    for bad in ["", "x,y\n", "1,2\n3\n", "1,abc\n", "w,x\n-1,0\n"]:
        with pytest.raises(DatasetParseError):
            parse_dataset(bad)


@pytest.fixture
def data(tmp_path):
    paths = {}
    for name, pts in [("square", fx.SQUARE), ("tri", fx.TRIANGLE), ("ex32k0", fx.EX32_K0), ("ex42", fx.EX42)]:
        paths[name] = tmp_path / f"{name}.csv"
        write_dataset(paths[name], pts)
    return paths


def _run(args, capsys):
    code = main([str(a) for a in args])
    return code, capsys.readouterr()


def test_depth_command(data, tmp_path, capsys):
    code, out = _run(["depth", "--in", data["ex32k0"], "--at", "1/10,1/10,0"], capsys)
    assert code == 0 and out.out.startswith("depth 3/8 (0.375)")
    code, out = _run(["depth", "--in", data["tri"], "--at", "2,2"], capsys)
    assert code == 0 and out.out.startswith("depth 0 ")
    res = tmp_path / "d.json"
    code, out = _run(["depth", "--in", data["square"], "--at", "1/2,1/4", "--out", res], capsys)
    assert code == 0 and "1/4" in out.out
    payload = json.loads(res.read_text())
    jsonschema.validate(payload, load_schema("depth"))
    assert payload["depth"]["exact"] == "1/4"


def test_exit_codes(data, tmp_path, capsys):
    assert _run(["depth", "--in", data["square"], "--at", "1,2,3"], capsys)[0] == 3
    assert _run(["depth", "--in", tmp_path / "missing.csv", "--at", "1,2"], capsys)[0] == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n1,x\n")
    assert _run(["median", "--in", bad], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["depth", "--in", str(data["square"]), "--at", "a,b"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["region", "--in", str(data["square"]), "--alpha", "1/0"])
    assert exc.value.code == 2
    assert _run(["region", "--in", data["square"], "--alpha", "-1"], capsys)[0] == 2
    line = tmp_path / "line.csv"
    line.write_text("0\n1\n")
    assert _run(["median", "--in", line], capsys)[0] == 3


def test_median_command(data, tmp_path, capsys):
    out_path = tmp_path / "m.json"
    code, _ = _run(["median", "--in", data["ex42"], "--out", out_path], capsys)
    payload = json.loads(out_path.read_text())
    jsonschema.validate(payload, load_schema("median"))
    assert code == 0
    assert {tuple(v) for v in payload["vertices"]} == {("0", "1/2", "0"), ("3/44", "1/2", "9/22")}
    code, out = _run(["median", "--in", data["square"]], capsys)
    payload = json.loads(out.out[out.out.index("{"):])
    assert payload["classification"] == "NonAtomPoint" and payload["vertices"] == [["1/2", "1/2"]]
    svg = tmp_path / "t.svg"
    code, _ = _run(["median", "--in", data["tri"], "--emit-svg", svg, "--out", tmp_path / "t.json"], capsys)
    assert code == 0
    root = ET.fromstring(svg.read_text())
    assert root.get("version") == "1.1"
    assert json.loads((tmp_path / "t.json").read_text())["classification"] == "FullDimensional"


def test_region_command(data, tmp_path, capsys):
    schema = load_schema("region")
    results = {}
    for alpha in ("1/4", "1/2", "9/10"):
        path = tmp_path / f"r{alpha.replace('/', '_')}.json"
        code, _ = _run(["region", "--in", data["square"], "--alpha", alpha, "--out", path], capsys)
        assert code == 0
        results[alpha] = json.loads(path.read_text())
        jsonschema.validate(results[alpha], schema)
    assert sorted(map(tuple, results["1/4"]["vertices"])) == [("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")]
    assert results["1/2"]["vertices"] == [["1/2", "1/2"]]
    assert results["9/10"]["vertices"] == []
    svg = tmp_path / "r.svg"
    assert _run(["region", "--in", data["square"], "--alpha", "1/4", "--emit-svg", svg], capsys)[0] == 0
    ET.fromstring(svg.read_text())


def test_simulate_command(tmp_path, capsys):
    path = tmp_path / "c.json"
    code, _ = _run(["simulate", "--n", 2, "--d", 2, "--trials", 10, "--seed", 7, "--out", path], capsys)
    payload = json.loads(path.read_text())
    jsonschema.validate(payload, load_schema("census"))
    assert code == 0 and payload["histograms"]["dimension"] == {"1": 10}


def test_simulate_violation_exit(monkeypatch, tmp_path, capsys):
    import flagdepth.lab as lab
    monkeypatch.setattr(lab, "theorem_violation", lambda *a: "forced")
    assert _run(["simulate", "--n", 3, "--d", 2, "--trials", 2], capsys)[0] == 4


def test_reproduce_command(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out = _run(["reproduce", "--example", "ex4.2", "--out", path], capsys)
    assert code == 0 and "PASSED" in out.out
    jsonschema.validate(json.loads(path.read_text()), load_schema("reproduce"))


def test_reproduce_failure_exit(monkeypatch, capsys):
    import flagdepth.fixtures as f
    monkeypatch.setattr(f, "EX42_ENDPOINTS", [(0, 0, 0), (1, 1, 1)])
    code, out = _run(["reproduce", "--example", "ex4.2"], capsys)
    assert code == 1 and "FAIL" in out.out

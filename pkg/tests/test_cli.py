import json
import xml.etree.ElementTree as ET

import pytest

from powertsp import cli
from powertsp.instances import gen_random, load_instance, write_csv
from powertsp.report import RunReport, rescore

SVG = "{http://www.w3.org/2000/svg}"


def run(argv):
    return cli.main([str(a) for a in argv])


@pytest.fixture
def chain_csv(tmp_path):
    path = tmp_path / "chain.csv"
    assert run(["generate", "chain", "--n", 4, "--out", path]) == 0
    return path


def test_generate_random_json(tmp_path):
    out = tmp_path / "r.json"
    assert run(["generate", "random", "--n", 12, "--seed", 3, "--out", out]) == 0
    pts, _, meta = load_instance(out)
    assert pts.n == 12 and meta["seed"] == 3


def test_generate_grid_stdout(capsys):
    assert run(["generate", "grid", "--rows", 2, "--cols", 3]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 6


def test_generate_gadget(tmp_path):
    out = tmp_path / "g.json"
    assert run(["generate", "gadget", "--n", 3, "--weights", "1,2,1", "--density", 2, "--out", out]) == 0
    pts, labels, meta = load_instance(out)
    assert pts.dim == 3 and len(labels) == pts.n
    assert meta["gaps"]["2"][2] == pytest.approx(2**0.5)


def test_generate_gadget_needs_json(tmp_path):
    assert run(["generate", "gadget", "--n", 3, "--out", tmp_path / "g.csv"]) == 2
    assert run(["generate", "gadget", "--n", 3, "--weights", "1,x,1", "--out", tmp_path / "g.json"]) == 2


@pytest.mark.parametrize("alg", ["t3", "geo-t3"])
def test_solve_chain_ratio(chain_csv, tmp_path, alg):
    rep_path = tmp_path / "rep.json"
    assert run(["solve", chain_csv, "--alg", alg, "--root-edge", 1, "--report", rep_path]) == 0
    rep = RunReport.from_dict(json.loads(rep_path.read_text()))
    assert rep.ratio_vs_mst == pytest.approx(4.0)
    assert rep.contributions["max_ratio"] == pytest.approx(4.0)


def test_solve_with_opt(tmp_path):
    inst = tmp_path / "r.csv"
    write_csv(gen_random(12, 2, seed=4), inst)
    rep_path = tmp_path / "rep.json"
    assert run(["solve", inst, "--with-opt", "--report", rep_path]) == 0
    rep = RunReport.from_dict(json.loads(rep_path.read_text()))
    assert rep.opt is not None
    assert 1 - 1e-9 <= rep.ratio_vs_opt <= 5


def test_solve_double_tree_chain(tmp_path):
    inst = tmp_path / "c.csv"
    assert run(["generate", "chain", "--n", 100, "--out", inst]) == 0
    rep_path = tmp_path / "rep.json"
    assert run(["solve", inst, "--alg", "double-tree", "--report", rep_path]) == 0
    assert json.loads(rep_path.read_text())["cost"] / 99 == pytest.approx(100.0)


def test_report_rescore_and_determinism(tmp_path):
    inst = tmp_path / "r.json"
    run(["generate", "random", "--n", 40, "--seed", 9, "--out", inst])
    docs = []
    for name in ("a.json", "b.json"):
        assert run(["solve", inst, "--report", tmp_path / name]) == 0
        docs.append(json.loads((tmp_path / name).read_text()))
    rep = RunReport.from_dict(docs[0])
    assert rescore(rep, load_instance(inst)[0]) == pytest.approx(rep.cost, rel=1e-9)
    for d in docs:
        d.pop("wall_time")
    assert json.dumps(docs[0], sort_keys=True) == json.dumps(docs[1], sort_keys=True)


@pytest.mark.parametrize("alg", ["exact", "revtsp-exact"])
def test_solve_exact_algorithms(chain_csv, tmp_path, alg):
    rep_path = tmp_path / "rep.json"
    assert run(["solve", chain_csv, "--alg", alg, "--report", rep_path]) == 0
    doc = json.loads(rep_path.read_text())
    assert doc["cost"] == pytest.approx(10.0 if alg == "exact" else 6.0)


def test_svg_output(tmp_path):
    inst = tmp_path / "r.csv"
    write_csv(gen_random(15, 2, seed=1), inst)
    svg = tmp_path / "t.svg"
    assert run(["solve", inst, "--svg", svg, "--report", tmp_path / "r.json"]) == 0
    root = ET.parse(svg).getroot()
    assert root.tag == SVG + "svg"
    circles = root.findall(f".//{SVG}circle")
    tour_lines = [e for e in root.iter(SVG + "line") if e.get("class") == "tour"]
    assert len(circles) == 15 and len(tour_lines) == 15


def test_svg_marks_revisits(chain_csv, tmp_path):
    svg = tmp_path / "t.svg"
    assert run(["solve", chain_csv, "--alg", "revtsp-exact", "--svg", svg, "--report", tmp_path / "r.json"]) == 0
    root = ET.parse(svg).getroot()
    assert any(c.get("class") == "city revisited" for c in root.iter(SVG + "circle"))


def test_verify_passes(capsys, tmp_path):
    assert run(["verify", "--trials", 100, "--dump-dir", tmp_path]) == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out and "properties hold" in out


def test_exit_codes(tmp_path, chain_csv):
    assert run(["solve", tmp_path / "missing.csv"]) == 3
    (tmp_path / "bad.csv").write_text("a,b\n")
    assert run(["solve", tmp_path / "bad.csv"]) == 3
    big = tmp_path / "big.csv"
    write_csv(gen_random(30, 2, seed=0), big)
    assert run(["solve", big, "--alg", "exact"]) == 2
    three = tmp_path / "three.csv"
    write_csv(gen_random(5, 3, seed=0), three)
    assert run(["solve", three, "--alg", "geo-t3"]) == 2
    assert run(["solve", chain_csv, "--alpha", -1]) == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["solve"])
    assert exc.value.code == 2

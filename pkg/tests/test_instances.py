import itertools
import math

import numpy as np
import pytest

from powertsp import instances as ins
from powertsp.exact import held_karp
from powertsp.geometry import InstanceError, PointSet


def test_random_deterministic():
    a, b = ins.gen_random(20, 3, seed=5), ins.gen_random(20, 3, seed=5)
    assert np.array_equal(a.coords, b.coords)
    assert not np.array_equal(a.coords, ins.gen_random(20, 3, seed=6).coords)
    assert ins.gen_random(1).n == 1
    assert a.coords.min() >= 0 and a.coords.max() < 1


def test_chain():
    pts = ins.gen_collinear_chain(4, spacing=0.5)
    assert pts.coords.tolist() == [[0, 0], [0.5, 0], [1.0, 0], [1.5, 0]]
    with pytest.raises(InstanceError):
        ins.gen_collinear_chain(1)


def test_grid(unit_square):
    assert ins.gen_grid(1, 1).n == 1
    assert {tuple(p) for p in ins.gen_grid(2, 2).coords} == {tuple(p) for p in unit_square.coords}
    cost, _ = held_karp(ins.gen_grid(3, 3, alpha=1.0).distance_matrix())
    assert cost <= 8 + math.sqrt(2) + 1e-12


def test_canonical_edges():
    assert ins.canonical_edges(3) == [(1, 2), (1, 3), (2, 3)]
    assert len(ins.canonical_edges(5)) == 10


def test_spec_validation():
    with pytest.raises(InstanceError):
        ins.GadgetSpec(2, (1,))
    with pytest.raises(InstanceError):
        ins.GadgetSpec(3, (1, 1))
    with pytest.raises(InstanceError):
        ins.GadgetSpec(3, (1, 3, 1))
    with pytest.raises(InstanceError):
        ins.GadgetSpec(3, (1, 1, 1), density=0)


def test_city_guard():
    with pytest.raises(InstanceError):
        ins.build_gadget(ins.GadgetSpec(5, (1,) * 10, density=10_000))


def test_gadget_coordinates():
    spec = ins.GadgetSpec(3, (1, 2, 1), density=2)
    segs = spec.segments()
    assert segs[0].start == (3, 3, 3) and segs[0].end == (3, 3, 9)
    # e_2 = v1 v3 with weight 2
    first, second = segs[3 + 2], segs[3 + 3]
    assert first.start == (3, 3, 6) and first.end == (9, 3, 6)
    assert second.start == (9, 9, 6)
    assert math.dist(first.end, second.end) == pytest.approx(math.sqrt(2))


def test_gadget_small_example():
    inst = ins.build_gadget(ins.GadgetSpec(3, (1, 1, 1), density=2))
    assert [g.delta for g in inst.gaps.values()] == [1.0, 1.0, 1.0]
    assert [inst.jump_cost(k) for k in (1, 2, 3)] == pytest.approx([1, 1, 1], abs=1e-12)
    assert set(inst.labels) == {1, 2, 3}


def test_gadget_weight_two_jump():
    inst = ins.build_gadget(ins.GadgetSpec(3, (1, 2, 1), density=2))
    assert inst.gaps[2].delta == math.sqrt(2)
    assert abs(inst.jump_cost(2) - 2) <= 1e-12


@pytest.mark.parametrize("n", [3, 4, 5])
def test_total_length(n):
    spec = ins.GadgetSpec(n, (2,) * (n * (n - 1) // 2), density=1)
    assert spec.total_length() < 2 * n**4


def test_intra_cluster_cost():
    for spec in (ins.GadgetSpec(3, (1, 2, 2), 3), ins.GadgetSpec(4, (1, 2, 1, 2, 1, 2), 2)):
        inst = ins.build_gadget(spec)
        assert ins.intra_cluster_double_cost(inst) <= 4 * spec.total_length() / spec.density + 1e-9
        # adjacent cities never further than 1/density apart
        for cities in inst.segment_cities:
            c = inst.points.coords[list(cities)]
            assert np.linalg.norm(np.diff(c, axis=0), axis=1).max() <= 1 / spec.density + 1e-12


@pytest.mark.parametrize("weights,opt", [((1, 1, 1), 3), ((2, 2, 2), 6), ((1, 2, 1), 4)])
def test_correspondence_n3(weights, opt):
    spec = ins.GadgetSpec(3, weights, density=2)
    res = ins.gadget_cost_correspondence(spec)
    assert res.source_opt == opt
    assert res.holds
    assert set(res.walk) == set(range(ins.build_gadget(spec).points.n))


def test_correspondence_n4_forced_heavy_edges():
    # every Hamiltonian cycle of K_4 uses two edges at vertex 1
    weights = tuple(2 if i == 1 else 1 for i, _ in ins.canonical_edges(4))
    spec = ins.GadgetSpec(4, weights, density=3)
    res = ins.gadget_cost_correspondence(spec)
    assert res.source_opt == 6 and res.ell == 2
    assert res.holds


def test_correspondence_guard():
    with pytest.raises(InstanceError):
        ins.gadget_cost_correspondence(ins.GadgetSpec(6, (1,) * 15, 1))


def test_csv_roundtrip(tmp_path):
    pts = ins.gen_random(15, 3, seed=2)
    ins.write_csv(pts, tmp_path / "p.csv")
    back = ins.read_csv(tmp_path / "p.csv")
    assert np.array_equal(back.coords, pts.coords)


def test_json_roundtrip(tmp_path):
    pts = PointSet(ins.gen_random(10, 2, seed=1).coords, 3.0)
    ins.write_json(pts, tmp_path / "p.json", labels=list(range(10)), meta={"seed": 1})
    back, labels, meta = ins.load_instance(tmp_path / "p.json")
    assert np.array_equal(back.coords, pts.coords)
    assert back.alpha == 3.0 and labels == list(range(10)) and meta == {"seed": 1}
    assert ins.load_instance(tmp_path / "p.json", alpha=2.0)[0].alpha == 2.0


def test_malformed_files(tmp_path):
    (tmp_path / "bad.csv").write_text("1,2\n3\n")
    with pytest.raises(InstanceError):
        ins.read_csv(tmp_path / "bad.csv")
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(InstanceError):
        ins.read_json(tmp_path / "bad.json")
    (tmp_path / "dup.csv").write_text("0,0\n0,0\n")
    with pytest.raises(InstanceError):
        ins.read_csv(tmp_path / "dup.csv")

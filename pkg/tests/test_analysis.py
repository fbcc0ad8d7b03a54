import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from powertsp import analysis
from powertsp.geometry import PointSet
from powertsp.spanning import build_mst
from powertsp.tour import ARBITRARY, GEOMETRIC, cycle_in_cube, t3_tour


def geometry(*pts):
    return analysis.ShortcutGeometry.from_chain(*pts)


def test_tau():
    assert analysis.relaxed_triangle_tau(1) == 1
    assert analysis.relaxed_triangle_tau(2) == 2
    assert analysis.relaxed_triangle_tau(3) == 4


def test_k_shortcut_bound_values():
    assert analysis.k_shortcut_bound([1, 1, 1], 2) == 9
    assert analysis.k_shortcut_bound([2], 3) == 8
    assert analysis.k_shortcut_bound([1, 2], 1) == 3


def test_k_shortcut_bound_rejects_small_alpha():
    with pytest.raises(ValueError):
        analysis.k_shortcut_bound([1, 1], 0.5)


def test_right_angle_same_side():
    g = geometry((0, 0), (1, 0), (1, 1), (0, 1))
    assert g.delta == 1
    assert g.psi_ba == pytest.approx(math.pi / 2)
    assert analysis.three_shortcut_weight_formula(g) == pytest.approx(1.0)
    assert analysis.three_shortcut_upper_bound(g) == pytest.approx(5.0)


def test_zigzag_opposite_sides():
    g = geometry((0, 0), (1, 0), (1, 1), (2, 1))
    assert g.delta == -1
    assert analysis.three_shortcut_weight_formula(g) == pytest.approx(5.0)
    assert g.direct() == pytest.approx(5.0)


def test_collinear_equality():
    g = geometry((0, 0), (1, 0), (3, 0), (6, 0))
    assert analysis.three_shortcut_weight_formula(g) == pytest.approx(36.0, rel=1e-12)
    assert g.direct() == 36.0


def test_formula_on_random_chains():
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        g = geometry(*rng.random((4, 2)))
        val = analysis.three_shortcut_weight_formula(g)
        scale = g.a**2 + g.b**2 + g.c**2
        assert abs(val - g.direct()) <= 1e-9 * scale
        assert val <= analysis.three_shortcut_upper_bound(g) + 1e-9 * scale


@given(
    st.floats(-1e3, 1e3, allow_nan=False),
    st.floats(-1e3, 1e3, allow_nan=False),
    st.floats(1e-3, 1e3, allow_nan=False),
)
def test_young(x, y, eps):
    assert analysis.young_holds(x, y, eps)


def test_h_values():
    assert analysis.h_function(0.0, 1) == pytest.approx(5.0)
    assert analysis.h_function(math.pi, 1) == pytest.approx(4.0)
    assert analysis.h_function(0.0, 2) == pytest.approx(13.0)


@pytest.mark.parametrize("k", [1.0, 1.5, 2.0, 4.0, 8.0])
def test_h_argmax_at_zero(k):
    x, m = analysis.h_function_check(k, grid=20_000)
    assert x == 0.0
    assert m == pytest.approx(3**k + 2**k)


def test_contributions_two_points():
    pts = PointSet([[0, 0], [1, 0]], 2.0)
    tree = build_mst(pts)
    tour, _ = cycle_in_cube(tree, 0, ARBITRARY)
    (c,) = analysis.edge_contributions(tour, tree, pts)
    assert c.ratio == pytest.approx(2.0)


def test_contributions_chain(chain4):
    tree = build_mst(chain4)
    tour, _ = cycle_in_cube(tree, tree.edge_id(1, 2), ARBITRARY)
    contribs = analysis.edge_contributions(tour, tree, chain4)
    assert [c.ratio for c in contribs] == pytest.approx([4.0, 4.0, 4.0])
    assert sum(c.contrib for c in contribs) == pytest.approx(tour.cost(chain4))
    summary = analysis.contribution_summary(tour, tree, chain4)
    assert summary["histogram"] == {"4-5": 3}


def test_no_shortcut_bound_violations(rng):
    for _ in range(20):
        pts = PointSet(rng.random((50, 2)), 3.0)
        tree, tour, _ = t3_tour(pts, GEOMETRIC)
        assert analysis.shortcut_bound_violations(tour, tree, pts) == []


def test_related_angles_and_acute_pivots(rng):
    pairs = 0
    for _ in range(40):
        pts = PointSet(rng.random((int(rng.integers(5, 150)), 2)), 2.0)
        _, _, trace = t3_tour(pts, GEOMETRIC)
        found = analysis.related_angle_pairs(trace, pts)
        pairs += len(found)
        assert all(p.holds for p in found)
        assert analysis.acute_pivot_chains(trace, pts) == []
    assert pairs > 0

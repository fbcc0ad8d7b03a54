import itertools
import math

import numpy as np
import pytest

from powertsp import exact
from powertsp.geometry import PointSet
from powertsp.instances import gen_collinear_chain
from powertsp.spanning import mst_lower_bound


def permutation_oracle(matrix) -> float:
    """Plain-Python enumeration, kept separate from the numpy version."""
    n = len(matrix)
    best = math.inf
    for perm in itertools.permutations(range(1, n)):
        tour = (0, *perm)
        best = min(best, sum(matrix[tour[i]][tour[(i + 1) % n]] for i in range(n)))
    return best


def test_triangle():
    pts = PointSet([[0, 0], [3, 0], [0, 4]], 1.0)
    cost, order = exact.held_karp(pts.distance_matrix())
    assert cost == pytest.approx(12.0)
    assert sorted(order) == [0, 1, 2]


def test_square(unit_square):
    cost, order = exact.held_karp(unit_square.distance_matrix())
    assert cost == pytest.approx(4.0)
    assert unit_square.cycle_cost(order) == pytest.approx(4.0)


def test_small_n():
    with pytest.raises(ValueError):
        exact.held_karp(np.zeros((1, 1)))
    assert exact.held_karp(np.array([[0, 2.0], [2.0, 0]]))[0] == 4


def test_held_karp_matches_brute_force(rng):
    for _ in range(200):
        n = int(rng.integers(3, 10))
        alpha = float(rng.choice([1.0, 2.0, 3.0]))
        m = PointSet(rng.random((n, 2)), alpha).distance_matrix()
        hk, order = exact.held_karp(m)
        assert hk == pytest.approx(exact.brute_force_permutations(m), rel=1e-9)
        assert sum(m[order[i], order[(i + 1) % n]] for i in range(n)) == pytest.approx(hk, rel=1e-12)
        if n <= 7:
            assert hk == pytest.approx(permutation_oracle(m.tolist()), rel=1e-9)


def test_guards():
    with pytest.raises(ValueError):
        exact.held_karp(np.ones((23, 23)) - np.eye(23))
    with pytest.raises(ValueError):
        exact.brute_force_permutations(np.ones((11, 11)) - np.eye(11))
    with pytest.raises(ValueError):
        exact.held_karp(np.array([[0, 1.0], [2.0, 0]]))


def test_rev_tsp_chain(chain4):
    rt = exact.rev_tsp_exact(chain4)
    assert rt.cost == pytest.approx(6.0)
    assert rt.walk[0] == 0 and len(rt.walk) == 6
    assert any(rt.revisited)
    assert exact.walk_cost(chain4, rt.walk) == pytest.approx(6.0)


def test_rev_tsp_chain_linear():
    pts = gen_collinear_chain(10)
    assert exact.rev_tsp_exact(pts).cost == pytest.approx(18.0)


def test_rev_tsp_sandwich(rng):
    for _ in range(50):
        n = int(rng.integers(3, 9))
        pts = PointSet(rng.random((n, 2)), float(rng.choice([1.0, 2.0, 3.0])))
        rt = exact.rev_tsp_exact(pts).cost
        assert mst_lower_bound(pts) <= rt * (1 + 1e-9)
        assert rt <= exact.tsp_opt(pts)[0] * (1 + 1e-9)


def test_closure_agrees(rng):
    for _ in range(50):
        n = int(rng.integers(2, 8))
        pts = PointSet(rng.random((n, 2)), float(rng.choice([2.0, 3.0])))
        assert exact.rev_tsp_exact(pts).cost == pytest.approx(exact.complete_closure_rev_tsp(pts), rel=1e-9)


def test_unit_square_opt_constant():
    assert exact.unit_square_opt_bound() == 4

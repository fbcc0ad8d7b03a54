"""Approximation algorithms and exact oracles for TSP under alpha-powered Euclidean distances."""

from .geometry import InstanceError, PointSet, angle_between, euclid_dist, power_dist, same_side
from .spanning import Tree, build_mst, mst_lower_bound
from .tour import (
    ARBITRARY,
    GEOMETRIC,
    RANDOM,
    SelectionPolicy,
    Tour,
    cycle_in_cube,
    solve_double_tree_naive,
    solve_t3,
)
from .exact import brute_force_permutations, held_karp, rev_tsp_exact, tsp_opt
from .gabriel import build_gabriel, two_leg_replacement_check
from .instances import GadgetSpec, build_gadget, gen_collinear_chain, gen_grid, gen_random
from .report import RunReport

__all__ = [
    "ARBITRARY", "GEOMETRIC", "RANDOM", "GadgetSpec", "InstanceError", "PointSet", "RunReport",
    "SelectionPolicy", "Tour", "Tree", "angle_between", "brute_force_permutations",
    "build_gabriel", "build_gadget", "build_mst", "cycle_in_cube", "euclid_dist", "gen_collinear_chain", "gen_grid", "gen_random", "held_karp",
    "mst_lower_bound", "power_dist", "rev_tsp_exact", "same_side",
    "solve_double_tree_naive", "solve_t3", "tsp_opt", "two_leg_replacement_check",
]
__version__ = "0.1.0"

"""Exact oracles: Held-Karp, brute-force enumeration and Rev-TSP via metric closure."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .geometry import InstanceError, PointSet

HELD_KARP_MAX_N = 22
BRUTE_FORCE_MAX_N = 10


def check_matrix(matrix) -> np.ndarray:
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InstanceError("distance matrix must be square")
    if not np.all(np.isfinite(m)):
        raise InstanceError("distance matrix must be finite")
    if np.any(m < 0) or np.any(np.diag(m) != 0):
        raise InstanceError("distance matrix must be nonnegative with a zero diagonal")
    if not np.allclose(m, m.T, rtol=1e-12, atol=0):
        raise InstanceError("distance matrix must be symmetric")
    return m


def held_karp(matrix) -> tuple[float, list[int]]:
    """Optimal Hamiltonian cycle by dynamic programming over subsets.

    Vertex 0 is the fixed start; ``dp[S, j]`` is the cheapest path from 0
    through the set ``S`` of other vertices ending at ``j``. Subsets are
    processed by cardinality so every layer is one vectorised gather.
    Ties go to the smallest predecessor index.
    """
    m = check_matrix(matrix)
    n = m.shape[0]
    if not 2 <= n <= HELD_KARP_MAX_N:
        raise InstanceError(f"held_karp supports 2 <= n <= {HELD_KARP_MAX_N}, got {n}")
    if n == 2:
        return 2 * float(m[0, 1]), [0, 1]

    k = n - 1  # vertices 1..n-1 are bits 0..k-1
    d = m[1:, 1:]
    full = 1 << k
    dp = np.full((full, k), np.inf)
    parent = np.full((full, k), -1, dtype=np.int8)
    for j in range(k):
        dp[1 << j, j] = m[0, j + 1]

    popcount = np.array([bin(s).count("1") for s in range(full)], dtype=np.int8)
    for size in range(2, k + 1):
        layer = np.flatnonzero(popcount == size)
        for j in range(k):
            masks = layer[(layer >> j) & 1 == 1]
            prev = masks ^ (1 << j)
            cand = dp[prev] + d[:, j]
            best = np.argmin(cand, axis=1)
            dp[masks, j] = cand[np.arange(masks.size), best]
            parent[masks, j] = best

    closing = dp[full - 1] + m[1:, 0]
    last = int(np.argmin(closing))
    cost = float(closing[last])

    path = []
    s, j = full - 1, last
    while j >= 0:
        path.append(j + 1)
        pj = int(parent[s, j])
        s ^= 1 << j
        j = pj
    path.append(0)
    path.reverse()
    return cost, path


def brute_force_permutations(matrix) -> float:
    """Minimum over all cycles through vertex 0 (each cycle counted in both directions)."""
    m = check_matrix(matrix)
    n = m.shape[0]
    if not 1 <= n <= BRUTE_FORCE_MAX_N:
        raise InstanceError(f"brute force supports n <= {BRUTE_FORCE_MAX_N}, got {n}")
    if n == 1:
        return 0.0
    perms = np.array(list(itertools.permutations(range(1, n))), dtype=np.int64)
    cycles = np.hstack([np.zeros((perms.shape[0], 1), dtype=np.int64), perms])
    nxt = np.roll(cycles, -1, axis=1)
    return float(m[cycles, nxt].sum(axis=1).min())


@dataclass(frozen=True)
class RevTour:
    cost: float
    walk: list[int]
    revisited: list[bool]
    closure: str


def metric_closure(weights, return_predecessors: bool = True):
    """All-pairs shortest paths (Dijkstra) on a graph given as a dense matrix; ``inf`` marks absent edges."""
    w = np.asarray(weights, dtype=float)
    graph = csr_matrix(np.where(np.isfinite(w), w, 0.0))
    return shortest_path(graph, method="D", directed=False, return_predecessors=return_predecessors)


def rev_tsp_exact(points: PointSet, alpha: float | None = None, use_gabriel: bool | None = None) -> RevTour:
    """Optimal closed walk visiting every city at least once.

    For alpha >= 2 in the plane the walk only needs Gabriel edges, so the
    closure is taken over the Gabriel graph; otherwise over the complete graph.
    """
    from .gabriel import build_gabriel

    points = points.with_alpha(alpha)
    alpha = points.alpha
    n = points.n
    if n > HELD_KARP_MAX_N:
        raise InstanceError(f"rev_tsp_exact supports n <= {HELD_KARP_MAX_N}, got {n}")
    if use_gabriel is None:
        use_gabriel = alpha >= 2 and points.dim == 2
    if n == 1:
        return RevTour(0.0, [0], [False], "gabriel" if use_gabriel else "complete")

    if use_gabriel:
        g = build_gabriel(points, alpha)
        w = np.full((n, n), np.inf)
        for u, v, wt in g.edges:
            w[u, v] = w[v, u] = wt
        closure_name = "gabriel"
    else:
        w = points.distance_matrix(alpha)
        closure_name = "complete"
    dist, pred = metric_closure(w)
    dist = 0.5 * (dist + dist.T)
    cost, order = held_karp(dist)

    walk = [order[0]]
    for i in range(len(order)):
        a, b = order[i], order[(i + 1) % len(order)]
        walk.extend(_expand(pred, a, b)[1:])
    walk.pop()  # closing vertex repeats the start
    seen: set[int] = set()
    revisited = []
    for v in walk:
        revisited.append(v in seen)
        seen.add(v)
    return RevTour(cost, walk, revisited, closure_name)


def _expand(pred, a: int, b: int) -> list[int]:
    path = [b]
    while path[-1] != a:
        path.append(int(pred[a, path[-1]]))
    path.reverse()
    return path


def complete_closure_rev_tsp(points: PointSet, alpha: float | None = None) -> float:
    """Rev-TSP optimum via Floyd-Warshall on the complete alpha-weighted graph."""
    points = points.with_alpha(alpha)
    d = points.distance_matrix().copy()
    for k in range(points.n):
        d = np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :])
    if points.n == 1:
        return 0.0
    return held_karp(d)[0]


def walk_cost(points: PointSet, walk: list[int], alpha: float | None = None) -> float:
    return points.cycle_cost(walk, alpha)


def tsp_opt(points: PointSet, alpha: float | None = None) -> tuple[float, list[int]]:
    points = points.with_alpha(alpha)
    if points.n == 1:
        return 0.0, [0]
    return held_karp(points.distance_matrix())


def unit_square_opt_bound() -> float:
    """Every point set in the unit square has a tour of squared length at most this."""
    return 4.0


"""Gabriel graphs and the obtuse-angle replacement rule for tours with revisits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ANGLE_TOL, REL_TOL, InstanceError, PointSet, angle_between, check_alpha, segments_cross


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        seen = set()
        for u, v, w in self.edges:
            if u == v:
                raise InstanceError("self-loop")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InstanceError(f"parallel edge {key}")
            if not w > 0:
                raise InstanceError("edge weights must be positive")
            seen.add(key)

    def pairs(self) -> set[tuple[int, int]]:
        return {(min(u, v), max(u, v)) for u, v, _ in self.edges}

    def adjacency_matrix(self) -> np.ndarray:
        m = np.full((self.n, self.n), np.inf)
        np.fill_diagonal(m, 0.0)
        for u, v, w in self.edges:
            m[u, v] = m[v, u] = w
        return m


def build_gabriel(points: PointSet, alpha: float | None = None) -> WeightedGraph:
    """Edge ``pq`` iff no third point ``r`` sees ``pq`` at an angle above pi/2.

    A witness exactly on the diametral circle (angle pi/2) keeps the edge.
    Naive O(n^3): for each ``p`` every candidate ``q`` is tested against
    every ``r`` at once.
    """
    if points.dim != 2:
        raise InstanceError("Gabriel graphs are built for planar instances")
    alpha = points.alpha if alpha is None else check_alpha(alpha)
    c = points.coords
    n = points.n
    edges = []
    for p in range(n - 1):
        qs = np.arange(p + 1, n)
        rp = c[p] - c  # (n, 2): vector r -> p for every r
        rq = c[qs][:, None, :] - c[None, :, :]  # (|qs|, n, 2): r -> q
        dots = np.einsum("rk,qrk->qr", rp, rq)
        norms = np.linalg.norm(rp, axis=1)[None, :] * np.linalg.norm(rq, axis=2)
        # angle(p r q) <= pi/2 + tol  <=>  cos >= -sin(tol)
        ok = dots >= -np.sin(ANGLE_TOL) * norms
        ok[:, p] = True
        ok[np.arange(qs.size), qs] = True
        for q in qs[ok.all(axis=1)]:
            length = float(np.linalg.norm(c[p] - c[q]))
            edges.append((p, int(q), length**alpha))
    return WeightedGraph(n, tuple(edges))


def two_leg_replacement_check(p, r, q, alpha: float) -> bool:
    """Whether ``angle(p r q) >= pi/2`` implies ``|pr|^a + |rq|^a <= |pq|^a`` for this triple."""
    if alpha < 2:
        raise ValueError("the replacement rule is stated for alpha >= 2")
    ang = angle_between(r, p, q).angle
    if ang < np.pi / 2 - ANGLE_TOL:
        return True
    pr = float(np.linalg.norm(np.subtract(p, r))) ** alpha
    rq = float(np.linalg.norm(np.subtract(r, q))) ** alpha
    pq = float(np.linalg.norm(np.subtract(p, q))) ** alpha
    return pr + rq <= pq + REL_TOL * max(pq, pr + rq)


def crossing_pairs(points: PointSet, graph: WeightedGraph) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """All pairs of edges whose segments properly cross (O(m^2))."""
    es = sorted(graph.pairs())
    c = points.coords
    out = []
    for i in range(len(es)):
        a, b = es[i]
        for j in range(i + 1, len(es)):
            u, v = es[j]
            if len({a, b, u, v}) < 4:
                continue
            if segments_cross(c[a], c[b], c[u], c[v]):
                out.append((es[i], es[j]))
    return out

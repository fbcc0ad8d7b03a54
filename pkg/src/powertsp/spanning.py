"""Euclidean minimum spanning tree with alpha-powered edge weights."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import InstanceError, PointSet, angle_between


@dataclass(frozen=True)
class Tree:
    """A spanning tree over ``n`` vertices.

    Edges are ``(u, v, euclid_len, alpha_weight)`` with ``u < v``, sorted by
    ``(u, v)``; an edge id is its index in ``edges``. ``adjacency[v]`` lists
    ``(neighbor, edge_id)`` pairs ordered by neighbor id.
    """

    n: int
    alpha: float
    edges: tuple[tuple[int, int, float, float], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...]

    @classmethod
    def from_edges(cls, n: int, pairs, lengths, alpha: float) -> "Tree":
        rows = sorted(
            (min(u, v), max(u, v), float(ln)) for (u, v), ln in zip(pairs, lengths)
        )
        edges = tuple((u, v, ln, ln**alpha) for u, v, ln in rows)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for eid, (u, v, _, _) in enumerate(edges):
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        tree = cls(n, float(alpha), edges, tuple(tuple(sorted(a)) for a in adj))
        tree._check_shape()
        return tree

    def _check_shape(self):
        if len(self.edges) != max(self.n - 1, 0):
            raise InstanceError(f"a spanning tree on {self.n} vertices needs {self.n - 1} edges")
        seen = {0} if self.n else set()
        stack = [0] if self.n else []
        while stack:
            v = stack.pop()
            for w, _ in self.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != self.n:
            raise InstanceError("edge set is not connected")

    @property
    def weight(self) -> float:
        return math.fsum(e[3] for e in self.edges)

    def endpoints(self, eid: int) -> tuple[int, int]:
        u, v, _, _ = self.edges[eid]
        return u, v

    def other(self, eid: int, v: int) -> int:
        a, b = self.endpoints(eid)
        if v == a:
            return b
        if v == b:
            return a
        raise ValueError(f"vertex {v} is not an endpoint of edge {eid}")

    def edge_id(self, u: int, v: int) -> int:
        for w, eid in self.adjacency[u]:
            if w == v:
                return eid
        raise KeyError(f"({u}, {v}) is not a tree edge")

    def edge_set(self) -> set[tuple[int, int]]:
        return {(u, v) for u, v, _, _ in self.edges}

    def with_alpha(self, alpha: float) -> "Tree":
        edges = tuple((u, v, ln, ln**alpha) for u, v, ln, _ in self.edges)
        return Tree(self.n, float(alpha), edges, self.adjacency)

    def path_edges(self, u: int, v: int) -> list[int]:
        """Edge ids along the tree path from ``u`` to ``v``."""
        if u == v:
            return []
        parent = {u: (-1, -1)}
        stack = [u]
        while stack:
            x = stack.pop()
            if x == v:
                break
            for w, eid in self.adjacency[x]:
                if w not in parent:
                    parent[w] = (x, eid)
                    stack.append(w)
        out = []
        x = v
        while x != u:
            x, eid = parent[x]
            out.append(eid)
        out.reverse()
        return out

    def min_incident_angle(self, points: PointSet) -> float:
        """Smallest angle between two tree edges sharing an endpoint (pi when none exist)."""
        best = math.pi
        for v, nbrs in enumerate(self.adjacency):
            for i in range(len(nbrs)):
                for j in range(i + 1, len(nbrs)):
                    ang = angle_between(points[v], points[nbrs[i][0]], points[nbrs[j][0]]).angle
                    best = min(best, ang)
        return best


def _pair_less(a_lo, a_hi, b_lo, b_hi):
    return (a_lo < b_lo) | ((a_lo == b_lo) & (a_hi < b_hi))


def build_mst(points: PointSet, alpha: float | None = None) -> Tree:
    """Prim's algorithm with a dense O(n^2) scan.

    Lengths are Euclidean, so the tree is the same for every alpha > 0.
    Ties between equal-length candidates go to the lexicographically smaller
    ``(min(u, v), max(u, v))`` pair.
    """
    alpha = points.alpha if alpha is None else float(alpha)
    n = points.n
    coords = points.coords
    if n == 1:
        return Tree.from_edges(1, [], [], alpha)

    key = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    in_tree = np.zeros(n, dtype=bool)
    idx = np.arange(n)
    pairs, lengths = [], []

    u = 0
    in_tree[0] = True
    for _ in range(n - 1):
        d = np.sqrt(np.sum((coords - coords[u]) ** 2, axis=1))
        lo_new, hi_new = np.minimum(idx, u), np.maximum(idx, u)
        lo_old, hi_old = np.minimum(idx, parent), np.maximum(idx, parent)
        better = (d < key) | ((d == key) & _pair_less(lo_new, hi_new, lo_old, hi_old))
        better &= ~in_tree
        key[better] = d[better]
        parent[better] = u

        masked = np.where(in_tree, np.inf, key)
        kmin = masked.min()
        cand = np.flatnonzero(masked == kmin)
        if cand.size > 1:
            lo = np.minimum(cand, parent[cand])
            hi = np.maximum(cand, parent[cand])
            cand = cand[np.lexsort((hi, lo))]
        v = int(cand[0])
        in_tree[v] = True
        pairs.append((int(parent[v]), v))
        lengths.append(float(key[v]))
        u = v

    return Tree.from_edges(n, pairs, lengths, alpha)


def mst_lower_bound(points: PointSet, alpha: float | None = None) -> float:
    return build_mst(points, alpha).weight

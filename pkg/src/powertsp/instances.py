"""Instance generators, the {1,2}-TSP gadget embedding in R^3, and CSV/JSON instance files."""

from __future__ import annotations

import csv
import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .geometry import InstanceError, PointSet

MAX_GADGET_CITIES = 1_000_000


def gen_random(n: int, d: int = 2, seed: int = 0, alpha: float = 2.0) -> PointSet:
    """``n`` distinct points uniform in the unit cube ``[0, 1)^d``."""
    if n < 1 or d < 1:
        raise InstanceError("need n >= 1 and d >= 1")
    rng = np.random.default_rng(seed)
    while True:
        pts = rng.random((n, d))
        if np.unique(pts, axis=0).shape[0] == n:
            return PointSet(pts, alpha)


def gen_collinear_chain(n: int, spacing: float = 1.0, alpha: float = 2.0) -> PointSet:
    if n < 2 or not spacing > 0:
        raise InstanceError("need n >= 2 and spacing > 0")
    pts = np.zeros((n, 2))
    pts[:, 0] = np.arange(n) * float(spacing)
    return PointSet(pts, alpha)


def gen_grid(rows: int, cols: int, alpha: float = 2.0) -> PointSet:
    if rows < 1 or cols < 1:
        raise InstanceError("need rows, cols >= 1")
    pts = [(c, r) for r in range(rows) for c in range(cols)]
    return PointSet(np.array(pts, dtype=float), alpha)


# --- {1,2}-TSP gadget ---------------------------------------------------------


def canonical_edges(n: int) -> list[tuple[int, int]]:
    """Edges ``(i, j)`` of K_n with 1-based vertices, ``i < j``, in lexicographic order; e_k is entry k-1."""
    return list(itertools.combinations(range(1, n + 1), 2))


@dataclass(frozen=True)
class GadgetSpec:
    n: int
    weights: tuple[int, ...]
    density: int = 4

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if self.n < 3:
            raise InstanceError("the gadget needs n >= 3")
        m = self.n * (self.n - 1) // 2
        if len(self.weights) != m:
            raise InstanceError(f"expected {m} edge weights for K_{self.n}, got {len(self.weights)}")
        if any(w not in (1, 2) for w in self.weights):
            raise InstanceError("edge weights must be 1 or 2")
        if int(self.density) != self.density or self.density < 1:
            raise InstanceError("density must be a positive integer")

    @property
    def m(self) -> int:
        return len(self.weights)

    def weight_matrix(self) -> np.ndarray:
        w = np.zeros((self.n, self.n))
        for (i, j), wt in zip(canonical_edges(self.n), self.weights):
            w[i - 1, j - 1] = w[j - 1, i - 1] = wt
        return w

    def segments(self) -> list["Segment"]:
        n, m = self.n, self.m
        segs = [
            Segment(i, "spine", None, (n * i, n * i, n), (n * i, n * i, n * m))
            for i in range(1, n + 1)
        ]
        for k, ((i, j), w) in enumerate(zip(canonical_edges(n), self.weights), start=1):
            delta = 1.0 if w == 1 else math.sqrt(2.0)
            segs.append(Segment(i, "bone", k, (n * i, n * i, n * k), (n * j, n * i, n * k)))
            # ends delta short of the first bone's tip, leaving a gap of exactly delta
            segs.append(Segment(j, "bone", k, (n * j, n * j, n * k), (n * j, n * i + delta, n * k)))
        return segs

    def total_length(self) -> float:
        return math.fsum(s.length for s in self.segments())


@dataclass(frozen=True)
class Segment:
    vertex: int
    kind: str
    edge: int | None
    start: tuple[float, float, float]
    end: tuple[float, float, float]

    @property
    def length(self) -> float:
        return math.dist(self.start, self.end)


@dataclass(frozen=True)
class Gap:
    edge: int
    i: int
    j: int
    city_i: int
    city_j: int
    delta: float
    weight: int


@dataclass(frozen=True)
class GadgetInstance:
    spec: GadgetSpec
    points: PointSet
    labels: tuple[int, ...]
    gaps: dict[int, Gap]
    segment_cities: tuple[tuple[int, ...], ...]
    segments: tuple[Segment, ...] = field(repr=False)

    def jump_cost(self, k: int, alpha: float = 2.0) -> float:
        g = self.gaps[k]
        return math.dist(self.points[g.city_i], self.points[g.city_j]) ** alpha

    def cluster_adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {}
        for cities in self.segment_cities:
            for a, b in zip(cities, cities[1:]):
                adj.setdefault(a, []).append(b)
                adj.setdefault(b, []).append(a)
        return adj


def build_gadget(spec: GadgetSpec) -> GadgetInstance:
    """Subdivide every spine and bone so adjacent cities are at most ``1/density`` apart."""
    segs = spec.segments()
    estimate = sum(math.ceil(s.length * spec.density - 1e-9) + 1 for s in segs)
    if estimate > MAX_GADGET_CITIES:
        raise InstanceError(f"gadget would have ~{estimate} cities (limit {MAX_GADGET_CITIES})")

    index: dict[tuple[float, ...], int] = {}
    coords: list[np.ndarray] = []
    labels: list[int] = []
    seg_cities = []
    for s in segs:
        steps = max(1, math.ceil(s.length * spec.density - 1e-9))
        a, b = np.array(s.start, dtype=float), np.array(s.end, dtype=float)
        cities = []
        for t in range(steps + 1):
            p = a + (b - a) * (t / steps)
            key = tuple(np.round(p, 9))
            if key not in index:
                index[key] = len(coords)
                coords.append(p)
                labels.append(s.vertex)
            elif labels[index[key]] != s.vertex:
                raise InstanceError("segments of different clusters touch")
            cities.append(index[key])
        seg_cities.append(tuple(cities))

    gaps = {}
    for k, ((i, j), w) in enumerate(zip(canonical_edges(spec.n), spec.weights), start=1):
        first = seg_cities[spec.n + 2 * (k - 1)]
        second = seg_cities[spec.n + 2 * (k - 1) + 1]
        delta = 1.0 if w == 1 else math.sqrt(2.0)
        gaps[k] = Gap(k, i, j, first[-1], second[-1], delta, w)

    pts = PointSet(np.array(coords), 2.0)
    return GadgetInstance(spec, pts, tuple(labels), gaps, tuple(seg_cities), tuple(segs))


def intra_cluster_double_cost(inst: GadgetInstance, alpha: float = 2.0) -> float:
    """Cost of walking every adjacent-city step of every cluster twice."""
    c = inst.points.coords
    total = 0.0
    for cities in inst.segment_cities:
        idx = np.asarray(cities)
        steps = np.linalg.norm(np.diff(c[idx], axis=0), axis=1)
        total += float(np.sum(steps**alpha))
    return 2.0 * total


def _cluster_walk(adj: dict[int, list[int]], s: int, t: int) -> list[int]:
    """Walk from ``s`` to ``t`` through every city of the tree containing them.

    Off-path subtrees are toured and returned from; the ``s``-``t`` path is
    walked once, so the cost is at most twice the tree's total step cost.
    """
    parent = {s: -1}
    order = [s]
    for v in order:
        for w in adj.get(v, []):
            if w not in parent:
                parent[w] = v
                order.append(w)
    children: dict[int, list[int]] = {v: [] for v in order}
    for v in order[1:]:
        children[parent[v]].append(v)
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    path.reverse()
    on_path = set(path)

    walk: list[int] = []
    for v in path:
        walk.append(v)
        for c in children[v]:
            if c in on_path:
                continue
            walk.append(c)
            stack = [(c, iter(children[c]))]
            while stack:
                x, it = stack[-1]
                nxt = next(it, None)
                if nxt is not None:
                    walk.append(nxt)
                    stack.append((nxt, iter(children[nxt])))
                else:
                    stack.pop()
                    walk.append(stack[-1][0] if stack else v)
    return walk


@dataclass(frozen=True)
class GadgetCorrespondence:
    gadget_cost: float
    source_opt: float
    source_order: tuple[int, ...]
    slack: float
    walk: tuple[int, ...]

    @property
    def ell(self) -> int:
        return int(round(self.source_opt)) - len(self.source_order)

    @property
    def holds(self) -> bool:
        return self.source_opt - 1e-9 <= self.gadget_cost <= self.source_opt + self.slack


def source_opt(spec: GadgetSpec) -> tuple[float, list[int]]:
    """Optimal {1,2}-TSP tour of the source K_n (1-based vertex order)."""
    from .exact import held_karp

    cost, order = held_karp(spec.weight_matrix())
    return cost, [v + 1 for v in order]


def gadget_cost_correspondence(spec: GadgetSpec, inst: GadgetInstance | None = None, alpha: float = 2.0) -> GadgetCorrespondence:
    """Follow an optimal source tour through the city clusters and price the resulting closed walk."""
    if spec.n > 5:
        raise InstanceError("gadget correspondence is checked for n <= 5")
    inst = build_gadget(spec) if inst is None else inst
    opt, order = source_opt(spec)
    edge_index = {pair: k for k, pair in enumerate(canonical_edges(spec.n), start=1)}

    def gap_city(owner: int, other: int) -> int:
        k = edge_index[(min(owner, other), max(owner, other))]
        g = inst.gaps[k]
        return g.city_i if owner == g.i else g.city_j

    adj = inst.cluster_adjacency()
    walk: list[int] = []
    n = len(order)
    for pos, v in enumerate(order):
        entry = gap_city(v, order[pos - 1])
        exit_ = gap_city(v, order[(pos + 1) % n])
        walk.extend(_cluster_walk(adj, entry, exit_))
    cost = inst.points.cycle_cost(walk, alpha)
    slack = 4.0 * spec.total_length() / spec.density
    return GadgetCorrespondence(cost, opt, tuple(order), slack, tuple(walk))


# --- files ----------------------------------------------------------------------


def write_csv(points: PointSet, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        for row in points.coords:
            w.writerow([repr(float(x)) for x in row])


def read_csv(path: str | Path, alpha: float = 2.0) -> PointSet:
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for line_no, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                rows.append([float(c) for c in row])
            except ValueError as exc:
                raise InstanceError(f"{path}:{line_no}: {exc}") from None
    if not rows:
        raise InstanceError(f"{path}: no points")
    if len({len(r) for r in rows}) != 1:
        raise InstanceError(f"{path}: rows have different dimensions")
    return PointSet(np.array(rows), alpha)


def write_json(points: PointSet, path: str | Path, labels: Sequence[Any] | None = None, meta: dict | None = None) -> None:
    doc: dict[str, Any] = {
        "alpha": points.alpha,
        "dim": points.dim,
        "points": points.coords.tolist(),
    }
    if labels is not None:
        doc["labels"] = list(labels)
    if meta is not None:
        doc["meta"] = meta
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_json(path: str | Path) -> tuple[PointSet, list | None, dict | None]:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"{path}: not valid JSON ({exc})") from None
    try:
        pts = np.array(doc["points"], dtype=float)
        alpha = float(doc.get("alpha", 2.0))
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"{path}: malformed instance envelope ({exc})") from None
    if pts.ndim != 2 or ("dim" in doc and pts.shape[1] != int(doc["dim"])):
        raise InstanceError(f"{path}: points do not match dim")
    return PointSet(pts, alpha), doc.get("labels"), doc.get("meta")


def load_instance(path: str | Path, alpha: float | None = None) -> tuple[PointSet, list | None, dict | None]:
    path = Path(path)
    if path.suffix.lower() == ".json":
        pts, labels, meta = read_json(path)
    else:
        pts, labels, meta = read_csv(path), None, None
    return pts.with_alpha(alpha), labels, meta

"""Hamiltonian cycles in the cube of a spanning tree (CycleInCube) and the double-tree baseline.

The recursion of CycleInCube is unrolled onto an explicit stack, since a
path-shaped MST makes it as deep as the instance is large.

For a call on tree edge ``(x, y)`` the tree minus that edge splits into the
``x``-side and the ``y``-side. On each side a policy picks an edge at the
side's root (``x`` or ``y``); the call contributes one tour edge, the
shortcut ``w_x - x - y - w_y``, and recurses on the two picked edges. The
Hamiltonian path of a call from ``x`` to ``y`` is ``S_x + reversed(S_y)``
where ``S_x`` is the child path from ``x`` to ``w_x``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .geometry import InstanceError, PointSet
from .report import RunReport
from .spanning import Tree, build_mst

ARBITRARY = "arbitrary"
GEOMETRIC = "geometric"
RANDOM = "random"


@dataclass
class SelectionPolicy:
    """Which incident edge to recurse on at each split (line "pick an edge" of CycleInCube).

    ``arbitrary`` takes the smallest neighbor id, ``geometric`` the edge making
    the smallest angle with the current call edge (ties to the smaller
    neighbor id), ``random`` a uniform choice drawn from ``seed``.
    """

    kind: str = GEOMETRIC
    seed: int | None = None
    _rng: np.random.Generator | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.kind not in (ARBITRARY, GEOMETRIC, RANDOM):
            raise ValueError(f"unknown selection policy {self.kind!r}")
        if self.kind == RANDOM:
            self._rng = np.random.default_rng(self.seed)

    def choose(self, coords, pivot: int, other: int, candidates: list[tuple[int, int]]) -> tuple[int, int]:
        if len(candidates) == 1 or self.kind == ARBITRARY:
            return candidates[0]
        if self.kind == RANDOM:
            return candidates[int(self._rng.integers(len(candidates)))]
        nbrs = np.fromiter((c[0] for c in candidates), dtype=np.int64, count=len(candidates))
        base = coords[other] - coords[pivot]
        vecs = coords[nbrs] - coords[pivot]
        cos = vecs @ base / (np.linalg.norm(vecs, axis=1) * np.linalg.norm(base))
        angles = np.arccos(np.clip(cos, -1.0, 1.0))
        best = int(np.lexsort((nbrs, angles))[0])
        return candidates[best]


@dataclass(frozen=True)
class Tour:
    """Cyclic vertex order; ``legs[i]`` lists the tree edges used by ``order[i] -> order[i+1]``."""

    order: tuple[int, ...]
    legs: tuple[tuple[int, ...], ...]

    @property
    def ks(self) -> list[int]:
        return [len(leg) for leg in self.legs]

    def edge_usage(self, n_edges: int) -> list[int]:
        usage = [0] * n_edges
        for leg in self.legs:
            for eid in leg:
                usage[eid] += 1
        return usage

    def cost(self, points: PointSet, alpha: float | None = None) -> float:
        return points.cycle_cost(self.order, alpha)


@dataclass(frozen=True)
class Call:
    """One CycleInCube invocation on ``edge`` oriented as ``(x, y)``.

    ``x`` is the vertex shared with the parent call (for the root it is the
    smaller endpoint). ``x_pick``/``y_pick`` are the ``(neighbor, edge id)``
    chosen on each side, or None for a single-vertex side.
    """

    index: int
    edge: int
    x: int
    y: int
    x_pick: tuple[int, int] | None
    y_pick: tuple[int, int] | None
    depth: int
    parent: int | None
    child_x: int | None
    child_y: int | None

    def is_three_shortcut(self) -> bool:
        return self.x_pick is not None and self.y_pick is not None


@dataclass(frozen=True)
class Shortcut:
    path: tuple[int, ...]
    edges: tuple[int, ...]
    depth: int
    call_edge: int
    call: int | None

    @property
    def k(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class ShortcutTrace:
    shortcuts: tuple[Shortcut, ...]
    calls: tuple[Call, ...]

    def child_at(self, call: Call, vertex: int) -> Call | None:
        if vertex == call.x:
            c = call.child_x
        elif vertex == call.y:
            c = call.child_y
        else:
            return None
        return None if c is None else self.calls[c]


def _available(tree: Tree, removed: list[bool], v: int) -> list[tuple[int, int]]:
    return [(w, eid) for w, eid in tree.adjacency[v] if not removed[eid]]


def cycle_in_cube(
    tree: Tree,
    e: int,
    policy: SelectionPolicy | str = GEOMETRIC,
    points: PointSet | None = None,
) -> tuple[Tour, ShortcutTrace]:
    """Hamiltonian cycle of the cube of ``tree`` containing tree edge ``e``."""
    if isinstance(policy, str):
        policy = SelectionPolicy(policy)
    if tree.n < 2:
        raise InstanceError("CycleInCube needs a tree with at least two vertices")
    if not 0 <= e < len(tree.edges):
        raise InstanceError(f"edge {e} is not an edge of the tree")
    coords = None
    if policy.kind == GEOMETRIC:
        if points is None:
            raise ValueError("the geometric policy needs the point coordinates")
        coords = points.coords

    removed = [False] * len(tree.edges)
    fields_: list[dict] = []
    root_u, root_v = tree.endpoints(e)
    shortcuts = [Shortcut((root_u, root_v), (e,), 0, e, None)]
    # (x, y, edge, depth, parent, side)
    stack = [(root_u, root_v, e, 0, None, None)]
    while stack:
        x, y, eid, depth, parent, side = stack.pop()
        removed[eid] = True
        idx = len(fields_)
        picks = []
        for pivot, other in ((x, y), (y, x)):
            cands = _available(tree, removed, pivot)
            picks.append(policy.choose(coords, pivot, other, cands) if cands else None)
        x_pick, y_pick = picks
        fields_.append(dict(index=idx, edge=eid, x=x, y=y, x_pick=x_pick, y_pick=y_pick,
                            depth=depth, parent=parent, child_x=None, child_y=None))
        if parent is not None:
            fields_[parent]["child_" + side] = idx

        path = ([x_pick[0]] if x_pick else []) + [x, y] + ([y_pick[0]] if y_pick else [])
        edges = ([x_pick[1]] if x_pick else []) + [eid] + ([y_pick[1]] if y_pick else [])
        shortcuts.append(Shortcut(tuple(path), tuple(edges), depth, eid, idx))

        # y-side pushed first so the x-side subtree is processed (and traced) first
        if y_pick:
            stack.append((y, y_pick[0], y_pick[1], depth + 1, idx, "y"))
        if x_pick:
            stack.append((x, x_pick[0], x_pick[1], depth + 1, idx, "x"))

    calls = tuple(Call(**f) for f in fields_)
    order = _emit_root(calls)
    tour = Tour(tuple(order), _legs_from_shortcuts(order, shortcuts))
    return tour, ShortcutTrace(tuple(shortcuts), calls)


def _emit_root(calls: tuple[Call, ...]) -> list[int]:
    # path(call) = S_x + reversed(S_y); the root cycle is reversed(S_x) + S_y.
    out: list[int] = []
    root = calls[0]
    # stack items: ("c", call index, reversed) or ("v", vertex, _)
    stack = [_part(root, "y", False), _part(root, "x", True)]
    while stack:
        kind, ref, rev = stack.pop()
        if kind == "v":
            out.append(ref)
            continue
        c = calls[ref]
        if not rev:
            stack.append(_part(c, "y", True))
            stack.append(_part(c, "x", False))
        else:
            stack.append(_part(c, "x", True))
            stack.append(_part(c, "y", False))
    return out


def _part(call: Call, side: str, rev: bool):
    child = call.child_x if side == "x" else call.child_y
    if child is None:
        return ("v", call.x if side == "x" else call.y, rev)
    return ("c", child, rev)


def _legs_from_shortcuts(order: list[int], shortcuts: list[Shortcut]) -> tuple[tuple[int, ...], ...]:
    by_pair: dict[tuple[int, int], list[Shortcut]] = {}
    for s in shortcuts:
        a, b = s.path[0], s.path[-1]
        by_pair.setdefault((min(a, b), max(a, b)), []).append(s)
    legs = []
    n = len(order)
    for i in range(n):
        a, b = order[i], order[(i + 1) % n]
        bucket = by_pair.get((min(a, b), max(a, b)))
        if not bucket:
            raise AssertionError(f"tour edge ({a}, {b}) was not generated by any shortcut")
        s = bucket.pop()
        legs.append(s.edges if s.path[0] == a else tuple(reversed(s.edges)))
    return tuple(legs)


def default_root_edge(tree: Tree) -> int:
    # edges are sorted by (u, v), so id 0 is the lexicographically smallest
    return 0


def t3_tour(
    points: PointSet,
    policy: SelectionPolicy | str = GEOMETRIC,
    root_edge: int | None = None,
    tree: Tree | None = None,
) -> tuple[Tree, Tour, ShortcutTrace | None]:
    """MST plus CycleInCube from the default (or given) root edge."""
    if isinstance(policy, str):
        policy = SelectionPolicy(policy)
    tree = build_mst(points) if tree is None else tree
    if points.n == 1:
        return tree, Tour((0,), ()), None
    e = default_root_edge(tree) if root_edge is None else root_edge
    tour, trace = cycle_in_cube(tree, e, policy, points)
    return tree, tour, trace


def _report(points, tree, tour, algorithm, alpha, started, source, seed, contributions=True) -> RunReport:
    from .analysis import contribution_summary

    cost = tour.cost(points, alpha)
    rep = RunReport(
        algorithm=algorithm,
        instance=dict(source=source, n=points.n, d=points.dim, alpha=alpha, seed=seed),
        order=list(tour.order),
        legs=[list(leg) for leg in tour.legs],
        cost=cost,
        mst_weight=tree.weight,
    )
    if contributions and tour.legs:
        rep.contributions = contribution_summary(tour, tree, points, alpha)
    rep.wall_time = time.perf_counter() - started
    return rep


def solve_t3(
    points: PointSet,
    alpha: float | None = None,
    policy: SelectionPolicy | str = GEOMETRIC,
    root_edge: int | None = None,
    source: str = "memory",
    seed: int | None = None,
) -> RunReport:
    started = time.perf_counter()
    points = points.with_alpha(alpha)
    if isinstance(policy, str):
        policy = SelectionPolicy(policy)
    tree, tour, _ = t3_tour(points, policy, root_edge)
    name = "geo-t3" if policy.kind == GEOMETRIC else f"t3-{policy.kind}"
    return _report(points, tree, tour, name, points.alpha, started, source, seed)


def double_tree_tour(tree: Tree) -> Tour:
    """Euler tour of the doubled tree from vertex 0 (neighbors by increasing id), shortcut to first visits."""
    if tree.n == 1:
        return Tour((0,), ())
    visited = [False] * tree.n
    visited[0] = True
    order = [0]
    legs: list[tuple[int, ...]] = []
    pending: list[int] = []
    stack = [(0, -1, iter(tree.adjacency[0]))]
    while stack:
        v, parent_edge, it = stack[-1]
        for w, eid in it:
            if not visited[w]:
                visited[w] = True
                legs.append(tuple(pending) + (eid,))
                pending = []
                order.append(w)
                stack.append((w, eid, iter(tree.adjacency[w])))
                break
        else:
            stack.pop()
            if parent_edge >= 0:
                pending.append(parent_edge)
    legs.append(tuple(pending))
    return Tour(tuple(order), tuple(legs))


def solve_double_tree_naive(
    points: PointSet,
    alpha: float | None = None,
    source: str = "memory",
    seed: int | None = None,
) -> RunReport:
    started = time.perf_counter()
    points = points.with_alpha(alpha)
    tree = build_mst(points)
    tour = double_tree_tour(tree)
    return _report(points, tree, tour, "double-tree", points.alpha, started, source, seed)


def universal_t3_factor(alpha: float) -> float:
    """Ratio guaranteed by every T3 variant: 2 * 3**(alpha - 1)."""
    return 2.0 * 3.0 ** (alpha - 1.0)


def geometric_t3_factor(alpha: float) -> float:
    """Ratio guaranteed by the geometric T3 variant in the plane for alpha >= 2."""
    if alpha == 2.0:
        return 5.0
    return 3.0 ** (alpha - 1.0) + math.sqrt(6.0) ** alpha / 3.0

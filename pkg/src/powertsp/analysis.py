"""Numeric checks for the shortcut inequalities behind the T3 approximation bounds.

Everything here is a pure function of point coordinates; the predicates are
what the test-suite and ``powertsp verify`` evaluate over random instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .geometry import REL_TOL, InstanceError, PointSet, angle_between, same_side

if TYPE_CHECKING:
    from .spanning import Tree
    from .tour import ShortcutTrace, Tour


def relaxed_triangle_tau(alpha: float) -> float:
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return 2.0 ** (alpha - 1.0)


def k_shortcut_bound(edge_lengths: Sequence[float], alpha: float) -> float:
    """Upper bound ``k**(alpha-1) * sum(|e_i|**alpha)`` on a k-shortcut's weight."""
    if alpha < 1:
        raise ValueError(f"the k-shortcut bound needs alpha >= 1, got {alpha}")
    lengths = [float(x) for x in edge_lengths]
    if not lengths:
        raise ValueError("a shortcut uses at least one edge")
    if any(x <= 0 for x in lengths):
        raise ValueError("edge lengths must be positive")
    k = len(lengths)
    return k ** (alpha - 1.0) * math.fsum(x**alpha for x in lengths)


@dataclass(frozen=True)
class ShortcutGeometry:
    """Three consecutive tree edges a=(p0,p1), b=(p1,p2), c=(p2,p3) in the plane."""

    a: float
    b: float
    c: float
    psi_ba: float
    psi_bc: float
    delta: int
    start: tuple[float, float]
    end: tuple[float, float]

    @classmethod
    def from_chain(cls, p0, p1, p2, p3) -> "ShortcutGeometry":
        p0, p1, p2, p3 = (np.asarray(p, dtype=float) for p in (p0, p1, p2, p3))
        if p0.size != 2:
            raise InstanceError("3-shortcut geometry is planar")
        lens = [float(np.linalg.norm(q - p)) for p, q in ((p0, p1), (p1, p2), (p2, p3))]
        if min(lens) == 0.0:
            raise InstanceError("degenerate segment in 3-shortcut")
        psi_ba = angle_between(p1, p0, p2).psi
        psi_bc = angle_between(p2, p1, p3).psi
        delta = same_side(p1, p2, p0, p3)
        return cls(*lens, psi_ba, psi_bc, delta, tuple(p0), tuple(p3))

    def direct(self) -> float:
        """Squared distance between the shortcut endpoints."""
        dx = self.end[0] - self.start[0]
        dy = self.end[1] - self.start[1]
        return dx * dx + dy * dy


def three_shortcut_weight_formula(g: ShortcutGeometry) -> float:
    a, b, c = g.a, g.b, g.c
    return (
        a * a + b * b + c * c
        + 2 * a * b * math.cos(g.psi_ba)
        + 2 * b * c * math.cos(g.psi_bc)
        + 2 * a * c * math.cos(g.psi_ba + g.delta * g.psi_bc)
    )


def three_shortcut_upper_bound(g: ShortcutGeometry) -> float:
    a, b, c = g.a, g.b, g.c
    return (
        2 * a * a + b * b + 2 * c * c
        + 2 * a * b * math.cos(g.psi_ba)
        + 2 * b * c * math.cos(g.psi_bc)
    )


def young_holds(x: float, y: float, eps: float, tol: float = REL_TOL) -> bool:
    """``x*y <= x**2/(2 eps) + eps*y**2/2`` up to a relative tolerance."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    rhs = x * x / (2 * eps) + y * y * eps / 2
    return x * y <= rhs + tol * max(abs(rhs), abs(x * y), 1e-300)


def h_function(x, k: float):
    return (2 + np.cos(x)) ** k + (2 + np.sin(np.asarray(x) / 2) ** 2) ** k


def h_function_check(k: float, grid: int = 100_000) -> tuple[float, float]:
    """Grid argmax and maximum of ``(2+cos x)^k + (2+sin^2(x/2))^k`` over ``[0, 2 pi]``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    xs = np.linspace(0.0, 2 * math.pi, grid)
    vals = h_function(xs, k)
    i = int(np.argmax(vals))
    return float(xs[i]), float(vals[i])


@dataclass(frozen=True)
class EdgeContribution:
    edge: int
    contrib: float
    ratio: float


def edge_contributions(tour: "Tour", tree: "Tree", points: PointSet, alpha: float | None = None) -> list[EdgeContribution]:
    """Split each leg's cost over the tree edges it uses, in proportion to ``|e_i|**alpha``.

    This equals the ``k**(alpha-1) |e_i|**alpha`` terms of the k-shortcut bound
    rescaled so the shares add up to the leg's actual cost.
    """
    alpha = points.alpha if alpha is None else alpha
    lengths = [e[2] for e in tree.edges]
    contrib = [0.0] * len(lengths)
    order = tour.order
    n = len(order)
    for i, leg in enumerate(tour.legs):
        p, q = points[order[i]], points[order[(i + 1) % n]]
        cost = float(np.linalg.norm(q - p)) ** alpha
        ws = [lengths[eid] ** alpha for eid in leg]
        total = math.fsum(ws)
        for eid, w in zip(leg, ws):
            contrib[eid] += cost * w / total
    return [
        EdgeContribution(eid, c, c / lengths[eid] ** alpha) for eid, c in enumerate(contrib)
    ]


def contribution_summary(tour: "Tour", tree: "Tree", points: PointSet, alpha: float | None = None) -> dict:
    contribs = edge_contributions(tour, tree, points, alpha)
    if not contribs:
        return {"max_ratio": None, "histogram": {}}
    ratios = np.array([c.ratio for c in contribs])
    buckets = np.floor(ratios).astype(int)
    hist = {f"{b}-{b + 1}": int(np.sum(buckets == b)) for b in sorted(set(buckets.tolist()))}
    return {"max_ratio": float(ratios.max()), "histogram": hist}


def shortcut_bound_violations(tour: "Tour", tree: "Tree", points: PointSet, alpha: float | None = None) -> list[int]:
    """Indices of legs whose weight exceeds the k-shortcut bound (empty when all hold)."""
    alpha = points.alpha if alpha is None else alpha
    bad = []
    n = len(tour.order)
    for i, leg in enumerate(tour.legs):
        p, q = points[tour.order[i]], points[tour.order[(i + 1) % n]]
        w = float(np.linalg.norm(q - p)) ** alpha
        bound = k_shortcut_bound([tree.edges[e][2] for e in leg], alpha)
        if w > bound * (1 + REL_TOL):
            bad.append(i)
    return bad


def _psi(points: PointSet, pivot: int, u: int, v: int) -> float:
    return angle_between(points[pivot], points[u], points[v]).psi


@dataclass(frozen=True)
class RelatedAngles:
    """Consecutive 3-shortcuts s(a,b,c) and s(e,a,d) sharing the vertex ``pivot`` of a, b and d."""

    call: int
    child: int
    pivot: int
    psi_ba: float
    psi_ad: float

    @property
    def holds(self) -> bool:
        return self.psi_ba >= (math.pi - self.psi_ad) / 2 - REL_TOL


def related_angle_pairs(trace: "ShortcutTrace", points: PointSet) -> list[RelatedAngles]:
    out = []
    for call in trace.calls:
        if not call.is_three_shortcut():
            continue
        for pivot, far in ((call.x, call.y), (call.y, call.x)):
            child = trace.child_at(call, pivot)
            if child is None or not child.is_three_shortcut():
                continue
            a_end = child.y
            d_end = child.x_pick[0]
            out.append(RelatedAngles(
                call.index, child.index, pivot,
                _psi(points, pivot, far, a_end),
                _psi(points, pivot, a_end, d_end),
            ))
    return out


def acute_pivot_chains(trace: "ShortcutTrace", points: PointSet) -> list[tuple[int, int, tuple[float, float, float]]]:
    """Chains of three consecutive calls pivoting at one vertex with all three psi below pi/2.

    Returns ``(first call index, pivot, (psi_prev, psi_i, psi_next))`` for each
    occurrence; the geometric policy in the plane should never produce one.
    """
    found = []
    half = math.pi / 2
    for call in trace.calls:
        for pivot, far in ((call.x, call.y), (call.y, call.x)):
            c1 = trace.child_at(call, pivot)
            if c1 is None:
                continue
            c2 = trace.child_at(c1, pivot)
            if c2 is None or c2.x_pick is None:
                continue
            rays = [far, c1.y, c2.y, c2.x_pick[0]]
            psis = tuple(_psi(points, pivot, rays[j], rays[j + 1]) for j in range(3))
            if all(p < half - REL_TOL for p in psis):
                found.append((call.index, pivot, psis))
    return found

"""Points, alpha-powered distances and the angle quantities used by the T3 analysis."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

REL_TOL = 1e-9
ANGLE_TOL = 1e-12


class InstanceError(ValueError):
    """Raised for malformed instances: bad dimensions, duplicates, degenerate segments."""


def _as_point(p) -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise InstanceError(f"a point must be a non-empty coordinate vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InstanceError("point coordinates must be finite")
    return arr


def _pair(p, q) -> tuple[np.ndarray, np.ndarray]:
    p, q = _as_point(p), _as_point(q)
    if p.shape != q.shape:
        raise InstanceError(f"dimension mismatch: {p.size} vs {q.size}")
    return p, q


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0:
        raise InstanceError(f"alpha must be positive and finite, got {alpha}")
    return alpha


@dataclass(frozen=True, eq=False)
class PointSet:
    """An immutable TSP(d, alpha) instance.

    ``coords`` is an ``(n, d)`` float array that is made read-only on
    construction. Duplicate points are rejected.
    """

    coords: np.ndarray
    alpha: float = 2.0

    def __post_init__(self):
        arr = np.array(self.coords, dtype=float, copy=True)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1) if arr.size else arr.reshape(0, 1)
        if arr.ndim != 2 or arr.shape[1] < 1:
            raise InstanceError(f"coords must be an (n, d) array with d >= 1, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise InstanceError("an instance needs at least one point")
        if not np.all(np.isfinite(arr)):
            raise InstanceError("coordinates must be finite")
        if np.unique(arr, axis=0).shape[0] != arr.shape[0]:
            raise InstanceError("duplicate points are not allowed")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)
        object.__setattr__(self, "alpha", check_alpha(self.alpha))

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i) -> np.ndarray:
        return self.coords[i]

    def with_alpha(self, alpha: float) -> "PointSet":
        if alpha is None or float(alpha) == self.alpha:
            return self
        return PointSet(self.coords, alpha)

    def distance_matrix(self, alpha: float | None = None) -> np.ndarray:
        """Dense ``n x n`` matrix of ``|pq|**alpha`` (Euclidean when alpha is 1)."""
        a = self.alpha if alpha is None else check_alpha(alpha)
        diff = self.coords[:, None, :] - self.coords[None, :, :]
        d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        return d if a == 1.0 else d**a

    def cycle_cost(self, order: Sequence[int], alpha: float | None = None) -> float:
        """Cost of the closed tour visiting ``order`` cyclically."""
        a = self.alpha if alpha is None else check_alpha(alpha)
        idx = np.asarray(order, dtype=int)
        if idx.size < 2:
            return 0.0
        pts = self.coords[idx]
        steps = np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)
        return float(np.sum(steps**a))


def euclid_dist(p, q) -> float:
    p, q = _pair(p, q)
    return float(math.sqrt(float(np.dot(p - q, p - q))))


def power_dist(p, q, alpha: float) -> float:
    return euclid_dist(p, q) ** check_alpha(alpha)


class AnglePair(NamedTuple):
    angle: float
    psi: float


def angle_between(shared, u, v) -> AnglePair:
    """Smaller angle at ``shared`` between segments to ``u`` and ``v``, plus its supplement."""
    shared, u = _pair(shared, u)
    _, v = _pair(shared, v)
    du, dv = u - shared, v - shared
    nu, nv = float(np.linalg.norm(du)), float(np.linalg.norm(dv))
    if nu == 0.0 or nv == 0.0:
        raise InstanceError("angle undefined for a zero-length segment")
    # Kahan's form; arccos of the dot product loses ~1e-8 near 0 and pi
    a, b = nv * du, nu * dv
    angle = 2.0 * math.atan2(float(np.linalg.norm(a - b)), float(np.linalg.norm(a + b)))
    angle = min(math.pi, max(0.0, angle))
    return AnglePair(angle, math.pi - angle)


def _cross2(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return float((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def same_side(b_from, b_to, a_end, c_end) -> int:
    """+1 when a_end and c_end lie on the same side of line(b_from, b_to), -1 otherwise.

    A point on the line (relative tolerance) counts as the same side.
    """
    pts = [_as_point(x) for x in (b_from, b_to, a_end, c_end)]
    if any(p.size != 2 for p in pts):
        raise InstanceError("same_side is only defined in the plane")
    b0, b1, a, c = pts
    blen = float(np.linalg.norm(b1 - b0))
    if blen == 0.0:
        raise InstanceError("degenerate segment b")
    sa = _cross2(b0, b1, a)
    sc = _cross2(b0, b1, c)
    tol_a = ANGLE_TOL * blen * max(float(np.linalg.norm(a - b0)), float(np.linalg.norm(a - b1)))
    tol_c = ANGLE_TOL * blen * max(float(np.linalg.norm(c - b0)), float(np.linalg.norm(c - b1)))
    if abs(sa) <= tol_a or abs(sc) <= tol_c:
        return 1
    return 1 if (sa > 0) == (sc > 0) else -1


def segments_cross(p1, p2, q1, q2) -> bool:
    """True when two planar segments properly cross (interiors intersect at a single point)."""
    p1, p2, q1, q2 = (np.asarray(x, dtype=float) for x in (p1, p2, q1, q2))
    d1 = _cross2(q1, q2, p1)
    d2 = _cross2(q1, q2, p2)
    d3 = _cross2(p1, p2, q1)
    d4 = _cross2(p1, p2, q2)
    return ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0))

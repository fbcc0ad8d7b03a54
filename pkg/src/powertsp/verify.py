"""Property suites behind ``powertsp verify``.

Each suite returns a list of :class:`Check` results; a failing check carries
the offending instance so it can be written out and replayed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import analysis, exact, gabriel, instances, tour
from .geometry import REL_TOL, PointSet
from .spanning import build_mst

SUITES = ("lemmas", "bounds", "gabriel", "gadget")


@dataclass
class Check:
    name: str
    passed: bool = True
    samples: int = 0
    detail: str = ""
    counterexample: PointSet | None = field(default=None, repr=False)

    def fail(self, detail: str, pts: PointSet | None = None):
        if self.passed:
            self.passed = False
            self.detail = detail
            self.counterexample = pts


def _rng(seed: int, salt: int) -> np.random.Generator:
    return np.random.default_rng([seed, salt])


def suite_lemmas(seed: int = 0, trials: int = 1000) -> list[Check]:
    rng = _rng(seed, 1)
    out = []

    c = Check("relaxed triangle inequality")
    for alpha in (1.1, 1.5, 2.0, 3.0, 4.0):
        tau = analysis.relaxed_triangle_tau(alpha)
        p, q, r = (rng.random((trials, 2)) for _ in range(3))
        pr = np.linalg.norm(p - r, axis=1) ** alpha
        pq = np.linalg.norm(p - q, axis=1) ** alpha
        qr = np.linalg.norm(q - r, axis=1) ** alpha
        bad = np.flatnonzero(pr > tau * (pq + qr) * (1 + REL_TOL) + 1e-15)
        c.samples += trials
        if bad.size:
            i = bad[0]
            c.fail(f"alpha={alpha}", PointSet(np.array([p[i], q[i], r[i]]), alpha))
    out.append(c)

    c = Check("k-shortcut bound")
    for _ in range(trials):
        k = int(rng.integers(1, 4))
        alpha = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
        chain = np.cumsum(rng.normal(size=(k + 1, 2)), axis=0)
        lens = np.linalg.norm(np.diff(chain, axis=0), axis=1)
        w = float(np.linalg.norm(chain[-1] - chain[0])) ** alpha
        c.samples += 1
        if w > analysis.k_shortcut_bound(lens, alpha) * (1 + REL_TOL):
            c.fail(f"k={k} alpha={alpha}", PointSet(chain, alpha))
    out.append(c)

    f = Check("3-shortcut formula")
    b = Check("3-shortcut upper bound")
    for _ in range(trials):
        chain = rng.random((4, 2))
        g = analysis.ShortcutGeometry.from_chain(*chain)
        val = analysis.three_shortcut_weight_formula(g)
        direct = g.direct()
        f.samples += 1
        b.samples += 1
        scale = g.a**2 + g.b**2 + g.c**2
        if abs(val - direct) > REL_TOL * scale:
            f.fail(f"formula {val} vs direct {direct}", PointSet(chain, 2.0))
        if val > analysis.three_shortcut_upper_bound(g) + REL_TOL * scale:
            b.fail("bound below formula", PointSet(chain, 2.0))
    out += [f, b]

    y = Check("Young's inequality")
    xs, ys = rng.normal(size=trials) * 10, rng.normal(size=trials) * 10
    eps = rng.exponential(size=trials) + 1e-6
    for x_, y_, e_ in zip(xs, ys, eps):
        y.samples += 1
        if not analysis.young_holds(float(x_), float(y_), float(e_)):
            y.fail(f"x={x_} y={y_} eps={e_}")
    out.append(y)

    l4 = Check("related angles of consecutive 3-shortcuts")
    c3 = Check("no three consecutive acute psi at one vertex")
    for _ in range(max(1, trials // 100)):
        n = int(rng.integers(3, 200))
        pts = PointSet(rng.random((n, 2)), 2.0)
        _, _, trace = tour.t3_tour(pts, tour.GEOMETRIC)
        for pair in analysis.related_angle_pairs(trace, pts):
            l4.samples += 1
            if not pair.holds:
                l4.fail(f"psi_ba={pair.psi_ba} psi_ad={pair.psi_ad}", pts)
        c3.samples += 1
        if analysis.acute_pivot_chains(trace, pts):
            c3.fail("three acute-psi calls at one vertex", pts)
    out += [l4, c3]

    h = Check("h attains its maximum at 0")
    for k in np.arange(1.0, 8.01, 0.5):
        x, _ = analysis.h_function_check(float(k), grid=10_000)
        h.samples += 1
        if x != 0.0:
            h.fail(f"k={k} argmax={x}")
    out.append(h)
    return out


def suite_bounds(seed: int = 0, trials: int = 1000) -> list[Check]:
    rng = _rng(seed, 2)
    five = Check("geometric T3 <= 5 MST at alpha=2")
    alph = Check("geometric T3 <= (3^(a-1) + sqrt6^a/3) MST")
    univ = Check("every T3 variant <= 2*3^(a-1) MST")
    shape = Check("T3 tour shape (permutation, k<=3, each edge twice)")
    lem2 = Check("k-shortcut bound on every leg")
    angle = Check("MST incident edges at least pi/3 apart")
    for t in range(max(1, trials // 50)):
        n = int(rng.integers(3, 257))
        pts = PointSet(rng.random((n, 2)), 2.0)
        tree, tr, _ = tour.t3_tour(pts, tour.GEOMETRIC)
        mst = tree.weight
        _check_shape(shape, tree, tr, pts)
        cost = tr.cost(pts)
        five.samples += 1
        if cost > 5 * mst * (1 + 1e-6):
            five.fail(f"ratio {cost / mst}", pts)
        for alpha in (2.5, 3.0, 4.0):
            alph.samples += 1
            c_a = tr.cost(pts, alpha)
            if c_a > tour.geometric_t3_factor(alpha) * tree.with_alpha(alpha).weight * (1 + 1e-6):
                alph.fail(f"alpha={alpha}", pts.with_alpha(alpha))
        if analysis.shortcut_bound_violations(tr, tree, pts):
            lem2.fail("leg exceeds bound", pts)
        lem2.samples += len(tr.legs)
        angle.samples += 1
        if tree.min_incident_angle(pts) < math.pi / 3 - REL_TOL:
            angle.fail("MST angle below pi/3", pts)
        for policy in (tour.SelectionPolicy(tour.ARBITRARY), tour.SelectionPolicy(tour.RANDOM, seed=seed * 7919 + t)):
            tree_, tr_, _ = tour.t3_tour(pts, policy, tree=tree)
            _check_shape(shape, tree_, tr_, pts)
            for alpha in (1.0, 2.0, 3.0):
                univ.samples += 1
                if tr_.cost(pts, alpha) > tour.universal_t3_factor(alpha) * tree.with_alpha(alpha).weight * (1 + 1e-6):
                    univ.fail(f"policy={policy.kind} alpha={alpha}", pts.with_alpha(alpha))
    return [five, alph, univ, shape, lem2, angle]


def _check_shape(check: Check, tree, tr, pts) -> None:
    check.samples += 1
    n = pts.n
    if sorted(tr.order) != list(range(n)):
        check.fail("order is not a permutation", pts)
    elif any(not 1 <= k <= 3 for k in tr.ks):
        check.fail("leg uses more than three tree edges", pts)
    elif any(u != 2 for u in tr.edge_usage(len(tree.edges))):
        check.fail("a tree edge is not used exactly twice", pts)


def suite_gabriel(seed: int = 0, trials: int = 1000) -> list[Check]:
    rng = _rng(seed, 3)
    contains = Check("MST edges are Gabriel edges")
    planar = Check("Gabriel graph is planar")
    repl = Check("obtuse two-leg replacement")
    revc = Check("Rev-TSP optimum uses only Gabriel edges")
    for _ in range(max(1, trials // 50)):
        n = int(rng.integers(3, 60))
        pts = PointSet(rng.random((n, 2)), 2.0)
        g = gabriel.build_gabriel(pts)
        contains.samples += 1
        if not build_mst(pts).edge_set() <= g.pairs():
            contains.fail("MST edge missing from Gabriel graph", pts)
        planar.samples += 1
        if len(g.edges) > 3 * n - 6 or gabriel.crossing_pairs(pts, g):
            planar.fail("crossing edges or too many edges", pts)
    for _ in range(trials):
        alpha = float(rng.choice([2.0, 2.5, 3.0, 4.0]))
        p, r, q = rng.random((3, 2))
        repl.samples += 1
        if not gabriel.two_leg_replacement_check(p, r, q, alpha):
            repl.fail(f"alpha={alpha}", PointSet(np.array([p, r, q]), alpha))
    for _ in range(max(1, trials // 100)):
        n = int(rng.integers(2, 8))
        alpha = float(rng.choice([2.0, 3.0]))
        pts = PointSet(rng.random((n, 2)), alpha)
        a = exact.rev_tsp_exact(pts).cost
        b = exact.complete_closure_rev_tsp(pts)
        revc.samples += 1
        if not math.isclose(a, b, rel_tol=REL_TOL, abs_tol=1e-12):
            revc.fail(f"gabriel {a} vs complete {b}", pts)
    return [contains, planar, repl, revc]


def suite_gadget(seed: int = 0, trials: int = 1000) -> list[Check]:
    import itertools

    rng = _rng(seed, 4)
    jump = Check("gap jump cost equals source weight")
    corr = Check("cluster-following tour within slack of source optimum")
    specs = [instances.GadgetSpec(3, ws, 2) for ws in itertools.product((1, 2), repeat=3)]
    for n in (4, 5):
        m = n * (n - 1) // 2
        for _ in range(max(1, trials // 500)):
            specs.append(instances.GadgetSpec(n, tuple(rng.integers(1, 3, size=m)), 2))
    for spec in specs:
        inst = instances.build_gadget(spec)
        for k, gap in inst.gaps.items():
            jump.samples += 1
            if abs(inst.jump_cost(k) - gap.weight) > 1e-12:
                jump.fail(f"edge {k}: {inst.jump_cost(k)} vs {gap.weight}", inst.points)
        res = instances.gadget_cost_correspondence(spec, inst)
        corr.samples += 1
        if not res.holds:
            corr.fail(f"weights={spec.weights} cost={res.gadget_cost} opt={res.source_opt}", inst.points)
    return [jump, corr]


RUNNERS: dict[str, Callable[..., list[Check]]] = {
    "lemmas": suite_lemmas,
    "bounds": suite_bounds,
    "gabriel": suite_gabriel,
    "gadget": suite_gadget,
}


def run(suite: str, seed: int = 0, trials: int = 1000) -> list[Check]:
    names = SUITES if suite == "all" else (suite,)
    results = []
    for name in names:
        results.extend(RUNNERS[name](seed=seed, trials=trials))
    return sorted(results, key=lambda c: c.name)

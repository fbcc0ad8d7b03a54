"""Command-line front end: ``powertsp generate | solve | verify``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import exact, instances, tour, verify
from .geometry import InstanceError, PointSet
from .report import RunReport
from .spanning import build_mst
from .svg import render_svg

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

ALGORITHMS = ("geo-t3", "t3", "double-tree", "exact", "revtsp-exact")


class UsageError(Exception):
    pass


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _save_points(points: PointSet, out: str | None, labels=None, meta=None) -> None:
    if out is None or out == "-":
        for row in points.coords:
            sys.stdout.write(",".join(repr(float(x)) for x in row) + "\n")
    elif out.lower().endswith(".json"):
        instances.write_json(points, out, labels, meta)
    else:
        instances.write_csv(points, out)


def cmd_generate(args) -> int:
    meta = {"kind": args.kind}
    labels = None
    if args.kind == "random":
        pts = instances.gen_random(args.n, args.d, args.seed, args.alpha)
        meta.update(n=args.n, d=args.d, seed=args.seed)
    elif args.kind == "chain":
        pts = instances.gen_collinear_chain(args.n, args.spacing, args.alpha)
        meta.update(n=args.n, spacing=args.spacing)
    elif args.kind == "grid":
        pts = instances.gen_grid(args.rows, args.cols, args.alpha)
        meta.update(rows=args.rows, cols=args.cols)
    else:
        try:
            weights = tuple(int(w) for w in args.weights.split(","))
        except ValueError:
            raise UsageError("--weights must be a comma-separated list of 1s and 2s") from None
        spec = instances.GadgetSpec(args.n, weights, args.density)
        inst = instances.build_gadget(spec)
        pts = inst.points
        labels = list(inst.labels)
        meta.update(
            n=args.n, weights=list(weights), density=args.density,
            gaps={str(k): [g.city_i, g.city_j, g.delta] for k, g in inst.gaps.items()},
        )
        if args.out is None or not args.out.lower().endswith(".json"):
            raise UsageError("gadget instances carry labels; write them to a .json file")
    _save_points(pts, args.out, labels, meta)
    return EXIT_OK


def solve(points: PointSet, alg: str, root_edge: int | None = None, with_opt: bool = False,
          source: str = "memory", seed: int | None = None) -> RunReport:
    """Run one algorithm and return its report (shared by the CLI and tests)."""
    started = time.perf_counter()
    n = points.n
    if alg == "geo-t3":
        if points.dim != 2:
            raise UsageError("geo-t3 requires a planar (d=2) instance")
        rep = tour.solve_t3(points, policy=tour.GEOMETRIC, root_edge=root_edge, source=source, seed=seed)
    elif alg == "t3":
        rep = tour.solve_t3(points, policy=tour.ARBITRARY, root_edge=root_edge, source=source, seed=seed)
    elif alg == "double-tree":
        rep = tour.solve_double_tree_naive(points, source=source, seed=seed)
    elif alg in ("exact", "revtsp-exact"):
        if n > exact.HELD_KARP_MAX_N:
            raise UsageError(f"{alg} is limited to n <= {exact.HELD_KARP_MAX_N}")
        tree = build_mst(points)
        desc = dict(source=source, n=n, d=points.dim, alpha=points.alpha, seed=seed)
        if alg == "exact":
            cost, order = exact.tsp_opt(points)
            legs = [tree.path_edges(order[i], order[(i + 1) % n]) for i in range(n)] if n > 1 else []
            rep = RunReport("exact", desc, list(order), legs, cost, tree.weight, opt=cost)
        else:
            rt = exact.rev_tsp_exact(points)
            rep = RunReport("revtsp-exact", desc, rt.walk, [], rt.cost, tree.weight,
                            revisited=rt.revisited, extra={"closure": rt.closure})
    else:
        raise UsageError(f"unknown algorithm {alg!r}")
    if with_opt and rep.opt is None:
        if n <= exact.HELD_KARP_MAX_N:
            rep.opt = exact.tsp_opt(points)[0]
        else:
            print(f"warning: n={n} exceeds the exact oracle limit; OPT not attached", file=sys.stderr)
    rep.wall_time = time.perf_counter() - started
    return rep


def cmd_solve(args) -> int:
    if args.alpha is not None and not args.alpha > 0:
        raise UsageError("--alpha must be positive")
    try:
        pts, _, meta = instances.load_instance(args.instance, args.alpha)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    seed = (meta or {}).get("seed") if args.seed is None else args.seed
    rep = solve(pts, args.alg, args.root_edge, args.with_opt, source=str(args.instance), seed=seed)
    _write(args.report, rep.to_json())
    if args.svg:
        mst = [(u, v) for u, v, _, _ in build_mst(pts).edges]
        title = f"{rep.algorithm} alpha={pts.alpha:g} cost={rep.cost:.6g}"
        _write(args.svg, render_svg(pts, rep.order, mst, rep.revisited, title))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run(args.suite, seed=args.seed, trials=args.trials)
    dump = Path(args.dump_dir)
    failed = 0
    for i, c in enumerate(results):
        status = "PASS" if c.passed else "FAIL"
        line = f"[{status}] {c.name} ({c.samples} samples)"
        if not c.passed:
            failed += 1
            line += f": {c.detail}"
            if c.counterexample is not None:
                dump.mkdir(parents=True, exist_ok=True)
                path = dump / f"counterexample_{i:02d}.json"
                instances.write_json(c.counterexample, path, meta={"check": c.name, "seed": args.seed})
                line += f" -> {path}"
        print(line)
    print(f"{len(results) - failed}/{len(results)} properties hold")
    return EXIT_OK if failed == 0 else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="powertsp", description="TSP under |pq|^alpha distances")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write an instance file")
    g.add_argument("kind", choices=("random", "chain", "grid", "gadget"))
    g.add_argument("--n", type=int, default=16)
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--spacing", type=float, default=1.0)
    g.add_argument("--rows", type=int, default=3)
    g.add_argument("--cols", type=int, default=3)
    g.add_argument("--weights", default="1,1,1")
    g.add_argument("--density", type=int, default=4)
    g.add_argument("--alpha", type=float, default=2.0)
    g.add_argument("--out", help="output path (.csv or .json); stdout CSV when omitted")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="run a solver on an instance file")
    s.add_argument("instance")
    s.add_argument("--alg", choices=ALGORITHMS, default="geo-t3")
    s.add_argument("--alpha", type=float, default=None, help="overrides the instance's alpha (default 2)")
    s.add_argument("--report", help="JSON report path (stdout when omitted)")
    s.add_argument("--svg", help="write an SVG drawing here")
    s.add_argument("--with-opt", action="store_true", help="attach the Held-Karp optimum when n <= 22")
    s.add_argument("--root-edge", type=int, default=None, help="MST edge id for the first CycleInCube call")
    s.add_argument("--seed", type=int, default=None, help="seed recorded in the report")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check the approximation lemmas and bounds on random instances")
    v.add_argument("--suite", choices=(*verify.SUITES, "all"), default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--dump-dir", default=".", help="where counterexample instances are written")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Exit codes: 0 success, 1 negative finding (unsolvable instance, failed
property, violated bound, failed repro block), 2 usage error, 3 resource
limit exceeded (partial bounds are printed when available).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import repro as repro_mod
from .errors import (InvalidParameterError, NotATreeError, PebblingError,
                     ResourceLimitError)
from .families import FamilySpec, formula, generate, parse_family
from .graphs import Graph, parse_distribution, parse_graph
from .lattice import (bmul_count, first_f, genlov_check, rank, shadow,
                      supernormal_gap, unrank)
from .lemke import solve as lemke_solve
from .properties import class0, graham_check, two_pebbling
from .solve import SolveMode, pebbling_number, solvable
from .thresholds import TrialConfig, rows_to_csv, threshold_scan


def _ints(text: str):
    return [int(x) for x in text.replace(",", " ").split()]


def _load_graph(args, prefix: str = "") -> Graph:
    prefix = prefix.replace("-", "_")
    gf = getattr(args, f"{prefix}graph", None)
    fam = getattr(args, f"{prefix}family", None)
    if (gf is None) == (fam is None):
        raise InvalidParameterError(
            f"give exactly one of --{prefix}graph / --{prefix}family")
    if fam is not None:
        return generate(parse_family(fam))
    text = sys.stdin.read() if gf == "-" else Path(gf).read_text()
    return parse_graph(text)


def _load_dist(args, n: int):
    if (args.dist is None) == (args.dist_file is None):
        raise InvalidParameterError("give exactly one of --dist / --dist-file")
    text = args.dist if args.dist is not None else Path(args.dist_file).read_text()
    return parse_distribution(text.replace(",", " "), n)


def _graph_args(sub, prefix: str = ""):
    sub.add_argument(f"--{prefix}graph", metavar="FILE",
                     help="graph file ('n m' header plus 'u v' edge lines; '-' for stdin)")
    sub.add_argument(f"--{prefix}family", metavar="SPEC",
                     help="family spec such as cycle:7, grid:2,1 or petersen")


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_solve(args) -> int:
    g = _load_graph(args)
    counts = _load_dist(args, g.n)
    mode = SolveMode.from_string(args.mode)
    res = solvable(g, counts, args.root, k=args.k, p=args.p, mode=mode,
                   budget=args.budget)
    if not res.solvable:
        suffix = "" if mode is SolveMode.UNRESTRICTED else f" ({mode.value})"
        print(f"UNSOLVABLE{suffix}")
        return 1
    print("SOLVABLE")
    for m in res.moves:
        print(f"{m.src} {m.dst} {m.cost}")
    return 0


def _cmd_number(args) -> int:
    g = _load_graph(args)
    print(pebbling_number(g, root=args.root, k=args.k, p=args.p,
                          budget=args.budget))
    return 0


def _cmd_family(args) -> int:
    spec = parse_family(args.spec)
    pbar = tuple(_ints(args.pbar)) if args.pbar else None
    value = formula(spec, pbar)
    print("unknown" if value is None else value)
    return 0


def _cmd_two_pebbling(args) -> int:
    g = _load_graph(args)
    rep = two_pebbling(g, budget=args.budget)
    if rep.holds:
        print("holds")
        return 0
    counts, root = rep.witness
    print("fails")
    print("witness distribution:", " ".join(map(str, counts)))
    print("witness root:", root)
    return 1


def _cmd_class0(args) -> int:
    g = _load_graph(args)
    rep = class0(g, budget=args.budget)
    if rep.holds:
        print(f"Class 0 (f = n = {g.n}, method: {rep.method})")
        return 0
    print(f"Class 1 (method: {rep.method})")
    if rep.witness is not None:
        counts, root = rep.witness
        print("unsolvable distribution:", " ".join(map(str, counts)))
        print("root:", root)
    return 1


def _cmd_graham(args) -> int:
    g1 = _load_graph(args, "g1-")
    g2 = _load_graph(args, "g2-")
    cmp = graham_check(g1, g2, args.p1, args.p2, budget=args.budget)
    rel = "<=" if cmp.holds else ">"
    print(f"f(G1 x G2) = {cmp.lhs} {rel} {cmp.rhs} = f(G1) * f(G2): "
          f"{'holds' if cmp.holds else 'VIOLATED'}")
    return 0 if cmp.holds else 1


def _cmd_threshold(args) -> int:
    cfg = TrialConfig(trials=args.trials, seed=args.seed,
                      confidence=args.confidence)
    res = threshold_scan(args.family, _ints(args.n_list), target=args.target,
                         cfg=cfg, budget=args.budget, jobs=args.jobs)
    for n, t in res.t_half:
        print(f"n={n} t_half={t}")
    if res.nonmonotone:
        print("warning: probe curve not monotone within CI widths",
              file=sys.stderr)
    print(f"exponent={res.exponent}")
    if args.out:
        Path(args.out).write_text(rows_to_csv(res.rows))
    if args.summary_out:
        Path(args.summary_out).write_text(res.summary_csv())
    return 0


def _cmd_lemke_solve(args) -> int:
    xs = _ints(args.xs)
    cert = lemke_solve(xs, args.q)
    print("I =", " ".join(map(str, cert.indices)))
    print(f"sum = {cert.total} = {cert.total // cert.q} * {cert.q}")
    print(f"gcd-sum = {cert.gcd_total} <= {cert.q}")
    if args.steps:
        for s in cert.steps:
            pos = ",".join(map(str, s.pos))
            new = ",".join(map(str, s.new_pos))
            line = (f"({pos}) --dim {s.dim}--> ({new}): "
                    f"merged {{{', '.join(map(str, s.merged))}}}")
            if s.discarded:
                line += f" discarded {{{', '.join(map(str, s.discarded))}}}"
            print(line)
    return 0


def _read_family_ranks(text: str):
    path = Path(text)
    if path.exists():
        return [int(line) for line in path.read_text().split()]
    return _ints(text)


def _cmd_lattice_shadow(args) -> int:
    ranks = _read_family_ranks(args.family)
    members = [unrank(r, args.w, args.b) for r in ranks]
    shad = shadow(members, args.b)
    print(f"family size {len(members)}, weight {args.w}, "
          f"shadow size {len(shad)}")
    for ms in shad:
        mults = ",".join(map(str, ms)) if ms else "-"
        print(f"{rank(ms, args.b)}\t{mults}")
    return 0


def _cmd_lattice_supernormal(args) -> int:
    gap = supernormal_gap(args.n, args.b, args.s)
    print(f"gap = {gap} ({'positive' if gap > 0 else 'NOT positive'})")
    return 0 if gap > 0 else 1


def _cmd_lattice_genlov(args) -> int:
    violations = 0
    checked = 0
    top = bmul_count(args.nmax, args.w, args.b)
    for f in range(1, top + 1):
        rep = genlov_check(first_f(f, args.w, args.b), args.b)
        checked += 1
        if not rep.holds:
            violations += 1
            print(f"violation: w={args.w} b={args.b} |F|={f} "
                  f"x={rep.x:.6f} bound={rep.bound:.6f} "
                  f"shadow={rep.shad_actual}")
    print(f"checked {checked} colex segments on <= {args.nmax} symbols: "
          f"{violations} violation(s)")
    return 1 if violations else 0


def _cmd_repro(args) -> int:
    results = repro_mod.run(seed=args.seed, jobs=args.jobs,
                            skip_heavy=args.skip_heavy, out_dir=args.out)
    return 0 if all(r.ok for r in results) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pebbling",
        description="Graph pebbling: exact solving, pebbling numbers, "
                    "structural properties, threshold estimation, the "
                    "number-theoretic partition solver, and bounded-multiset "
                    "lattice bounds.")
    subs = top.add_subparsers(dest="command", required=True)

    p = subs.add_parser("solve", help="decide solvability of a distribution")
    _graph_args(p)
    p.add_argument("--dist", help="comma/space separated pebble counts")
    p.add_argument("--dist-file", help="file with pebble counts")
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--k", type=int, default=1, help="pebbles to place (default 1)")
    p.add_argument("--p", type=int, default=2, help="move cost (default 2)")
    p.add_argument("--mode", default="unrestricted",
                   choices=["unrestricted", "greedy", "semi-greedy", "tree"])
    p.add_argument("--budget", type=int, help="search node budget")
    p.set_defaults(fn=_cmd_solve)

    p = subs.add_parser("number", help="exact pebbling number")
    _graph_args(p)
    p.add_argument("--root", type=int, help="rooted number (default: all roots)")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--budget", type=int)
    p.set_defaults(fn=_cmd_number)

    p = subs.add_parser("family", help="closed-form value for a family spec")
    p.add_argument("spec", help="e.g. cycle:7, path:5, grid:2,1")
    p.add_argument("--pbar", help="per-dimension move costs (grid only)")
    p.set_defaults(fn=_cmd_family)

    p = subs.add_parser("two-pebbling", help="2-pebbling property test")
    _graph_args(p)
    p.add_argument("--budget", type=int)
    p.set_defaults(fn=_cmd_two_pebbling)

    p = subs.add_parser("class0", help="is f(G) = n(G)?")
    _graph_args(p)
    p.add_argument("--budget", type=int)
    p.set_defaults(fn=_cmd_class0)

    p = subs.add_parser("graham", help="product bound f(G1 x G2) <= f(G1)f(G2)")
    _graph_args(p, "g1-")
    _graph_args(p, "g2-")
    p.add_argument("--p1", type=int, default=2)
    p.add_argument("--p2", type=int, default=2)
    p.add_argument("--budget", type=int)
    p.set_defaults(fn=_cmd_graham)

    p = subs.add_parser("threshold", help="Monte Carlo threshold scan")
    p.add_argument("--family", required=True,
                   help="family name: complete, star, path, ...")
    p.add_argument("--n-list", required=True, help="comma separated sizes")
    p.add_argument("--target", type=float, default=0.5)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--confidence", type=float, default=0.95)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int)
    p.add_argument("--out", help="write the probe curve CSV here")
    p.add_argument("--summary-out", help="write the n,t_half CSV here")
    p.set_defaults(fn=_cmd_threshold)

    p = subs.add_parser("lemke", help="number-theoretic partition solver")
    lsubs = p.add_subparsers(dest="lemke_command", required=True)
    ps = lsubs.add_parser("solve", help="find I with q | sum and gcd-sum <= q")
    ps.add_argument("--q", type=int, required=True)
    ps.add_argument("--xs", required=True, help="comma separated values")
    ps.add_argument("--steps", action="store_true",
                    help="print the merge schedule")
    ps.set_defaults(fn=_cmd_lemke_solve)

    p = subs.add_parser("lattice", help="bounded-multiset lattice tools")
    lsubs = p.add_subparsers(dest="lattice_command", required=True)
    ps = lsubs.add_parser("shadow", help="shadow of a family")
    ps.add_argument("--w", type=int, required=True)
    ps.add_argument("--b", type=int, required=True)
    ps.add_argument("--family", required=True,
                    help="comma separated colex ranks, or a file with one per line")
    ps.set_defaults(fn=_cmd_lattice_shadow)
    ps = lsubs.add_parser("supernormal", help="supernormality gap")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--b", type=int, required=True)
    ps.add_argument("--s", type=int, required=True)
    ps.set_defaults(fn=_cmd_lattice_supernormal)
    ps = lsubs.add_parser("genlov", help="generalized Lovász bound sweep")
    ps.add_argument("--w", type=int, required=True)
    ps.add_argument("--b", type=int, required=True)
    ps.add_argument("--nmax", type=int, required=True)
    ps.set_defaults(fn=_cmd_lattice_genlov)

    p = subs.add_parser("repro", help="recompute all headline results")
    p.add_argument("--seed", type=int, default=repro_mod.SEED_DEFAULT)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--skip-heavy", action="store_true",
                   help="skip the slow items (Petersen, full product number)")
    p.add_argument("--out", default="repro_csv",
                   help="directory for CSV artifacts (default: repro_csv)")
    p.set_defaults(fn=_cmd_repro)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ResourceLimitError as exc:
        msg = str(exc)
        if exc.lo is not None or exc.hi is not None:
            msg += f" (bounds: [{exc.lo}, {exc.hi}])"
        print(f"resource limit: {msg}", file=sys.stderr)
        return 3
    except (InvalidParameterError, NotATreeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PebblingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

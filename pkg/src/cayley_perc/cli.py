"""Command-line entry point: ``cayley-perc {simulate,survival,diameter,verify,plot}``.

Exit codes: 0 success, 1 usage error, 2 capability/cap error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from math import comb

from .branching import survival_near_critical, survival_poisson
from .cayley import CayleyGraph
from .errors import CapabilityError, InputDomainError
from .experiment import SweepConfig, emit_plot, epsilon_grid, read_rows, rows_to_csv, run_sweep, summarize
from .generators import from_spec, star_bound
from .verification import SUITES, run_verification_suite

log = logging.getLogger("cayley_perc")

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3

# flag dest -> SweepConfig field
_SWEEP_KEYS = {
    "n": "n", "tree": "tree_spec", "trials": "trials", "seed": "master_seed", "k": "k",
    "delta": "delta", "ck": "c_k", "out": "output_path", "format": "format", "workers": "workers",
    "allow_large": "allow_large",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _add_grid_flags(p):
    p.add_argument("--eps-min", type=float)
    p.add_argument("--eps-max", type=float)
    p.add_argument("--eps-steps", type=int)
    p.add_argument("--lambda-list", type=_floats, help="comma-separated selection probabilities")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cayley-perc", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sim = sub.add_parser("simulate", help="percolation sweep over an epsilon or lambda grid")
    sim.add_argument("--config", help="JSON file with sweep settings; flags override it")
    sim.add_argument("--n", type=int)
    sim.add_argument("--tree", help="star | bubble | prufer:a,b,... | edges:a-b,c-d,...")
    _add_grid_flags(sim)
    sim.add_argument("--trials", type=int)
    sim.add_argument("--seed", type=int)
    sim.add_argument("--k", type=int)
    sim.add_argument("--delta", type=float)
    sim.add_argument("--ck", type=float)
    sim.add_argument("--out", help="output file (default: CSV to stdout)")
    sim.add_argument("--format", choices=["csv", "json"])
    sim.add_argument("--workers", type=int)
    sim.add_argument("--plot", help="also write an SVG plot here")
    sim.add_argument("--allow-large", action="store_true", default=None,
                     help="permit n = 12 (about 2-3 GiB of memory)")

    sv = sub.add_parser("survival", help="survival probability table")
    _add_grid_flags(sv)
    sv.add_argument("--n", type=int, help="needed with --lambda-list to convert lambda to epsilon")

    dm = sub.add_parser("diameter", help="tree ordering sequence and diameter bounds")
    dm.add_argument("--n", type=int, required=True)
    dm.add_argument("--tree", default="star")
    dm.add_argument("--cap", type=int, default=8, help="largest n for exact BFS diameter")

    vf = sub.add_parser("verify", help="run a property suite")
    vf.add_argument("--suite", required=True, choices=SUITES)
    vf.add_argument("--n", type=int)
    vf.add_argument("--samples", type=int)
    vf.add_argument("--seed", type=int, default=0)

    pl = sub.add_parser("plot", help="plot a saved sweep")
    pl.add_argument("--input", required=True, help="CSV or JSON written by simulate")
    pl.add_argument("--plot", required=True, help="SVG output path")
    return parser


def sweep_config_from_args(args) -> SweepConfig:
    settings: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                settings.update(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
    for flag, key in _SWEEP_KEYS.items():
        value = getattr(args, flag)
        if value is not None:
            settings[key] = value
    if args.lambda_list is not None:
        settings["lambda_grid"] = args.lambda_list
        settings.pop("epsilon_grid", None)
    elif args.eps_min is not None or args.eps_max is not None or args.eps_steps is not None:
        lo = args.eps_min if args.eps_min is not None else 0.05
        hi = args.eps_max if args.eps_max is not None else 1.0
        steps = args.eps_steps if args.eps_steps is not None else 20
        settings["epsilon_grid"] = epsilon_grid(lo, hi, steps)
        settings.pop("lambda_grid", None)
    try:
        return SweepConfig(**settings)
    except TypeError as exc:
        raise UsageError(f"bad sweep settings: {exc}") from exc


def cmd_simulate(args) -> int:
    cfg = sweep_config_from_args(args)
    rows = run_sweep(cfg)
    if not cfg.output_path:
        sys.stdout.write(rows_to_csv(rows))
    for s in summarize(rows):
        log.info("eps=%.4f lambda=%.5f mean_relative_giant=%.4f predicted=%.4f",
                 s["epsilon"], s["lambda"], s["mean_relative_giant"], s["predicted_survival"])
    if args.plot:
        emit_plot(rows, args.plot)
    return EXIT_OK


def cmd_survival(args) -> int:
    if args.lambda_list is not None:
        if args.n is None:
            raise UsageError("--lambda-list needs --n")
        eps = [lam * (args.n - 1) - 1.0 for lam in args.lambda_list]
    else:
        eps = epsilon_grid(args.eps_min if args.eps_min is not None else 0.05,
                           args.eps_max if args.eps_max is not None else 1.0,
                           args.eps_steps if args.eps_steps is not None else 20)
    print("epsilon,mean_offspring,survival,near_critical_2eps,residual,iterations,regime")
    for e in eps:
        res = survival_poisson(max(0.0, 1.0 + e))
        print(f"{e!r},{1.0 + e!r},{res.value!r},{survival_near_critical(e)!r},"
              f"{res.residual:.3e},{res.iterations},{res.regime}")
    return EXIT_OK


def cmd_diameter(args) -> int:
    tree = from_spec(args.tree, args.n)
    n = tree.n
    print(f"n = {n}")
    print("edges:", " ".join(f"({a} {b})" for a, b in tree.edges))
    print("order sequence (v_i, s_i):", " ".join(f"({v},{s})" for v, s in tree.order_sequence))
    print("subtree diameters:", " ".join(map(str, tree.subtree_diameters)))
    print(f"sum of subtree diameters = {tree.diameter_bound()}")
    print(f"C(n,2) = {comb(n, 2)}")
    if tree.is_star():
        print(f"star bound 2(n-2) = {star_bound(n)}")
    if n <= args.cap:
        print(f"exact diameter = {CayleyGraph(tree, small_n_cap=args.cap).exact_diameter()}")
    else:
        print(f"exact diameter skipped (n > cap {args.cap})")
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = run_verification_suite(args.suite, n=args.n, samples=args.samples, seed=args.seed)
    print(rep.summary())
    for line in rep.details[:20]:
        print("  " + line)
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_plot(args) -> int:
    try:
        rows = read_rows(args.input)
    except (OSError, KeyError, ValueError) as exc:
        raise UsageError(f"cannot read sweep file {args.input}: {exc}") from exc
    emit_plot(rows, args.plot)
    return EXIT_OK


_COMMANDS = {
    "simulate": cmd_simulate,
    "survival": cmd_survival,
    "diameter": cmd_diameter,
    "verify": cmd_verify,
    "plot": cmd_plot,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except CapabilityError as exc:
        print(f"capability error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, InputDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

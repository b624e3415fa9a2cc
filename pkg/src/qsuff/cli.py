"""Command line interface.

Exit codes: 0 success, 2 parse error, 3 invalid state or algebra,
4 resource limit, 5 internal inconsistency.
"""
import argparse
import json
import sys

from . import io
from .exceptions import QsuffError


def _apply_overrides(problem, args):
    for flag, key in (("tol", "tol"), ("lambda_grid", "lambda_grid"),
                      ("tensor_cap", "tensor_cap"), ("seed", "seed"), ("n_max", "n_max")):
        value = getattr(args, flag, None)
        if value is not None:
            problem.options[key] = value
    return problem


def cmd_analyze(problem, args):
    return io.analyze(problem)


def cmd_chernoff_curve(problem, args):
    n_max = int(problem.option("n_max"))
    return {"options": problem.resolved_options(), "rows": io.chernoff_curve(problem, n_max)}


def cmd_simulate(problem, args):
    seed = int(problem.option("seed"))
    out = io.simulation_report(problem, args.prior, args.shots, seed)
    return {"options": problem.resolved_options(), **out}


def cmd_np_test(problem, args):
    return {"options": problem.resolved_options(), **io.np_report(problem, args.t)}


def cmd_entropies(problem, args):
    return {"options": problem.resolved_options(), **io.entropy_report(problem)}


COMMANDS = {
    "analyze": (cmd_analyze, "sufficiency, 2-sufficiency, entropies and Chernoff distance"),
    "chernoff-curve": (cmd_chernoff_curve, "Bayes error exponents of n-fold tensor powers"),
    "simulate": (cmd_simulate, "Monte Carlo error rates of the canonical optimal test"),
    "np-test": (cmd_np_test, "Neyman-Pearson projections at a threshold t"),
    "entropies": (cmd_entropies, "Umegaki and Belavkin-Staszewski entropies, full and restricted"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="qsuff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, metavar="PATH", help="problem file (JSON)")
        p.add_argument("--output", metavar="PATH", help="write the report here (default stdout)")
        p.add_argument("--tol", type=float)
        p.add_argument("--lambda-grid", dest="lambda_grid", type=int)
        p.add_argument("--tensor-cap", dest="tensor_cap", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--n-max", dest="n_max", type=int)
        if name == "simulate":
            p.add_argument("--lambda", dest="prior", type=float, default=0.5)
            p.add_argument("--shots", type=int, default=100_000)
        if name == "np-test":
            p.add_argument("--t", type=float, required=True)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    func, _ = COMMANDS[args.command]
    try:
        problem = _apply_overrides(io.load(args.input), args)
        report = func(problem, args)
        text = json.dumps(report, indent=2, allow_nan=False)
    except QsuffError as exc:
        print(f"qsuff {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:  # non-finite numbers refused by json
        print(f"qsuff {args.command}: InternalInconsistency: {exc}", file=sys.stderr)
        return 5
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

    avgnystrom quad  --measure jacobi --alpha 0 --beta 0 --m 4 --rule wavg [--problem I1]
    avgnystrom table --id 5 [--digits 3] [--out table5.csv]
    avgnystrom solve --problem EX1 --m 6 --method iter1 [--tol 1e-15] [--gamma 0 --delta 0]
    avgnystrom figure --problem EX1 --m 2

Exit codes: 0 success, 2 usage error, 3 numeric failure, 4 no convergence.
"""
from __future__ import annotations

import argparse
import sys

from . import experiments, problems, rules
from .estimator import METHODS, NystromSolver
from .exceptions import NumericalError, ParameterError
from .measures import Measure

EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_NOCONV = 4

_RULE_ALIASES = {
    "gauss": rules.GAUSS,
    "antigauss": rules.ANTIGAUSS,
    "gstar": rules.GSTAR,
    "averaged": rules.AVERAGED,
    "wavg": rules.WEIGHTED_AVERAGED,
}


def _measure(args):
    if args.measure == "jacobi":
        return Measure.jacobi(args.alpha, args.beta)
    if args.measure == "laguerre":
        return Measure.laguerre(args.alpha)
    return Measure.hermite()


def _emit(text, out=None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_quad(args):
    kind = _RULE_ALIASES[args.rule]
    if args.problem:
        it = problems.INTEGRALS[args.problem]
        rule = rules.make_rule(kind, it.measure, args.m)
        value = rules.apply(rule, it.integrand)
        ref = it.value()
        report = experiments.RunReport(
            ["problem", "rule", "m", "value", "reference", "error"],
            [{"problem": args.problem, "rule": args.rule, "m": args.m,
              "value": value, "reference": ref, "error": ref - value}])
    else:
        rule = rules.make_rule(kind, _measure(args), args.m)
        report = experiments.RunReport(
            ["k", "node", "weight"],
            [{"k": i + 1, "node": x, "weight": w}
             for i, (x, w) in enumerate(zip(rule.nodes, rule.weights))])
        if not rule.internal:
            print(f"warning: {args.rule} rule has nodes outside the domain", file=sys.stderr)
    _emit(report.to_csv(args.digits), args.out)
    return 0


def cmd_table(args):
    report = experiments.run_table(args.id)
    _emit(report.to_csv(args.digits), args.out)
    return 0


def cmd_solve(args):
    prob = problems.equation(args.problem, args.gamma, args.delta)
    est = NystromSolver(m=args.m, method=args.method, tol=args.tol, max_iter=args.max_iter)
    est.fit(prob)
    err = est.error(problems.reference_solution(args.problem), args.grid)
    row = {"problem": args.problem, "method": args.method, "m": args.m, "error": err,
           "iterations": est.n_iter_, "converged": est.converged_,
           "condition": est.condition_ if est.condition_ is not None else float("nan")}
    report = experiments.RunReport(list(row), [row])
    _emit(report.to_csv(args.digits), args.out)
    return 0 if est.converged_ else EXIT_NOCONV


def cmd_figure(args):
    report = experiments.signed_errors(args.problem, args.m, args.points)
    _emit(report.to_csv(args.digits), args.out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="avgnystrom", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--digits", type=int, default=None,
                        help="significant digits in the CSV (default: full precision)")
        sp.add_argument("--out", default=None, help="write CSV to this file")

    q = sub.add_parser("quad", help="nodes and weights, or quadrature errors")
    q.add_argument("--measure", choices=["jacobi", "laguerre", "hermite"], default="jacobi")
    q.add_argument("--alpha", type=float, default=0.0)
    q.add_argument("--beta", type=float, default=0.0)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--rule", choices=sorted(_RULE_ALIASES), default="gauss")
    q.add_argument("--problem", choices=sorted(problems.INTEGRALS))
    common(q)
    q.set_defaults(func=cmd_quad)

    t = sub.add_parser("table", help="rerun the experiment behind a results table")
    t.add_argument("--id", type=int, required=True, choices=sorted(experiments.TABLES))
    common(t)
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("solve", help="solve one built-in integral equation")
    s.add_argument("--problem", choices=["EX1", "EX2", "EX3"], required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--method", choices=METHODS, default="hat1")
    s.add_argument("--tol", type=float, default=1e-15)
    s.add_argument("--max-iter", type=int, default=100)
    s.add_argument("--gamma", type=float, default=0.0)
    s.add_argument("--delta", type=float, default=0.0)
    s.add_argument("--grid", type=int, default=1000, help="points in the error grid")
    common(s)
    s.set_defaults(func=cmd_solve)

    f = sub.add_parser("figure", help="signed pointwise errors of the m-point interpolants")
    f.add_argument("--problem", choices=["EX1", "EX2", "EX3"], default="EX1")
    f.add_argument("--m", type=int, default=2)
    f.add_argument("--points", type=int, default=100)
    common(f)
    f.set_defaults(func=cmd_figure)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "m", 1) is not None and getattr(args, "m", 1) < 1:
        parser.error("--m must be positive")
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

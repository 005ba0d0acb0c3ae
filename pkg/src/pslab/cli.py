"""``pslab`` command line.

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 on usage, parse or validation errors.
"""
import argparse
import json
import math
import sys

from pslab.classical import load_grid
from pslab.errors import PslabError
from pslab.harness import CHECKS, SweepConfig, cmd_check_pair, cmd_classical, cmd_sweep
from pslab.hermitian import load_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _check_list(text):
    names = [x.strip() for x in text.split(",") if x.strip()]
    bad = [n for n in names if n not in CHECKS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown checks {bad}; choose from {','.join(CHECKS)}")
    return names


def build_parser():
    parser = _Parser(prog="pslab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="seeded random sweep over dimensions and t values")
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--dims", type=_int_list, default=[2, 3, 4])
    sw.add_argument("--t", dest="t_grid", type=_float_list, default=[0.1, 0.5, 0.9])
    sw.add_argument("--trials", type=int, default=10)
    sw.add_argument("--checks", type=_check_list, default=["theorem1", "epi"])
    sw.add_argument("--equal-pair", action="store_true", help="use sigma = rho in every trial")
    sw.add_argument("--out", help="write the report here instead of stdout")

    cp = sub.add_parser("check-pair", help="check one pair of density matrices")
    cp.add_argument("rho")
    cp.add_argument("sigma")
    cp.add_argument("--t", type=float, default=0.5)
    cp.add_argument("--witness", action="store_true", help="include the doubly stochastic witness")
    cp.add_argument("--out")

    cl = sub.add_parser("classical", help="classical EPI for two grid densities")
    cl.add_argument("rho")
    cl.add_argument("sigma")
    cl.add_argument("--theta", type=float, default=math.pi / 4)
    cl.add_argument("--out")
    return parser


def _emit(report, path):
    text = json.dumps(report, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            config = SweepConfig(
                seed=args.seed, dims=args.dims, t_grid=args.t_grid, trials=args.trials,
                checks=args.checks, equal_pair=args.equal_pair,
            )
            report = cmd_sweep(config)
        elif args.command == "check-pair":
            report = cmd_check_pair(load_matrix(args.rho), load_matrix(args.sigma), args.t, witness=args.witness)
        else:
            report = cmd_classical(load_grid(args.rho), load_grid(args.sigma), args.theta)
    except (PslabError, OSError, ValueError) as exc:
        print(f"pslab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args.out)
    return EXIT_OK if report["ok"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

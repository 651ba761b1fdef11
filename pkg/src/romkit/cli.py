"""Command-line interface.

Exit codes: 0 on success, 2 for invalid arguments or input files, 3 when a
computation fails.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import bench, formats
from .errors import NumericalError, RomError, ValidationError
from .integration import Rule, make_quadrature
from .pendulum import PendulumConfig, generate_training
from .reduced_basis import TrainingSet, reduce_basis
from .surrogate import build_surrogate, relative_l2_error

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

logger = logging.getLogger("romkit")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _flag(value):
    lowered = value.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {value!r}")


def _sizes(value):
    try:
        sizes = []
        for item in value.split(","):
            n, _, length = item.lower().partition("x")
            sizes.append((int(n), int(length or n)))
        return sizes
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes look like 11x11,101x101; got {value!r}")


def _training(training_path, params_path, grid_path):
    values = formats.read_matrix(training_path, "training")
    params = formats.read_matrix(params_path, "params")
    grid = formats.read_matrix(grid_path, "grid").ravel()
    if params.shape[1] == 1:
        params = params[:, 0]
    return TrainingSet(values=values, parameter_points=params, physical_points=grid)


def cmd_gen_pendulum(args):
    if args.t_count < 2:
        raise ValidationError("--t-count must be at least 2")
    if args.lambda_count < 1:
        raise ValidationError("--lambda-count must be at least 1")
    cfg = PendulumConfig(
        b=args.b,
        lambda_grid=np.linspace(args.lambda_min, args.lambda_max, args.lambda_count),
        t_grid=np.linspace(args.t_min, args.t_max, args.t_count),
        theta0=args.theta0,
        omega0=args.omega0,
        substeps=args.substeps,
    )
    training = generate_training(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    formats.write_matrix(out / "training.csv", training.values, "training")
    formats.write_matrix(out / "params.csv", training.parameter_points[:, None], "params")
    formats.write_matrix(out / "grid.csv", training.physical_points, "grid")
    print(f"wrote {training.shape[0]}x{training.shape[1]} training set to {out}")


def cmd_build_rb(args):
    values = formats.read_matrix(args.training, "training")
    grid = formats.read_matrix(args.grid, "grid").ravel()
    quadrature = make_quadrature(grid, args.rule)
    rb = reduce_basis(values, quadrature, greedy_tol=args.greedy_tol, normalize=args.normalize)
    if args.out:
        formats.write_matrix(args.out, rb.elements, "basis")
    print(f"n = {rb.size}")
    print("greedy_indices = " + ",".join(str(i) for i in rb.greedy_indices))
    print("greedy_errors = " + ",".join(formats.format_float(e) for e in rb.greedy_errors))


def cmd_build_surrogate(args):
    training = _training(args.training, args.params, args.grid)
    quadrature = make_quadrature(training.physical_points, args.rule)
    model = build_surrogate(
        training,
        quadrature,
        greedy_tol=args.greedy_tol,
        poly_deg=args.poly_deg,
        normalize=args.normalize,
    )
    formats.save_model(model, args.out)
    report = model.build_report
    print(f"n = {report['n']}")
    print(f"build_seconds = {report['build_seconds']:.6f}")
    print(f"wrote model to {args.out}")


def cmd_eval(args):
    model = formats.load_model(args.model)
    values = model(args.parameter)
    text = formats.write_matrix(args.out, values, "grid")
    if not args.out:
        sys.stdout.write(text)


def cmd_validate(args):
    model = formats.load_model(args.model)
    truth = formats.read_matrix(args.test_training, "training")
    params = formats.read_matrix(args.test_params, "params")
    if params.shape[1] != 1:
        raise ValidationError("test parameters must be one-dimensional")
    params = params[:, 0]
    if len(params) != len(truth):
        raise ValidationError(f"{len(truth)} test functions but {len(params)} parameters")
    if truth.shape[1] != model.quadrature.size:
        raise ValidationError(
            f"test functions have {truth.shape[1]} points, model grid has {model.quadrature.size}"
        )
    errors = relative_l2_error(model(params), truth, model.quadrature)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["lambda", "relative_l2_error"])
            for lam, err in zip(params, errors):
                writer.writerow([formats.format_float(lam), formats.format_float(err)])
    print(f"count = {len(errors)}")
    print(f"max = {np.max(errors):.6e}")
    print(f"median = {np.median(errors):.6e}")


def cmd_bench(args):
    records = bench.run_benchmark(
        args.sizes,
        rules=args.rules,
        tols=args.tols,
        normalize_opts=args.normalize,
        reps=args.reps,
        seed=args.seed,
        parallel=args.parallel,
    )
    fh = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(fh)
        writer.writerow(bench.BenchRecord.header())
        for record in records:
            writer.writerow(record.as_row())
    finally:
        if args.out:
            fh.close()
    if args.fit_exponent:
        exponent = bench.fit_scaling_exponent(records)
        print(f"scaling_exponent = {exponent:.4f}", file=sys.stderr if not args.out else sys.stdout)


def build_parser():
    parser = _Parser(prog="romkit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    rules = [r.value for r in Rule]

    p = sub.add_parser("gen-pendulum", help="generate damped pendulum training data")
    p.add_argument("--b", type=float, default=0.2)
    p.add_argument("--lambda-min", type=float, default=1.0)
    p.add_argument("--lambda-max", type=float, default=5.0)
    p.add_argument("--lambda-count", type=int, default=101)
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=50.0)
    p.add_argument("--t-count", type=int, default=1001)
    p.add_argument("--theta0", type=float, default=math.pi / 2)
    p.add_argument("--omega0", type=float, default=0.0)
    p.add_argument("--substeps", type=int, default=10)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_gen_pendulum)

    p = sub.add_parser("build-rb", help="build a reduced basis")
    p.add_argument("--training", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--rule", choices=rules, default="riemann")
    p.add_argument("--greedy-tol", type=float, default=1e-12)
    p.add_argument("--normalize", type=_flag, default=False)
    p.add_argument("--out", help="basis matrix file")
    p.set_defaults(func=cmd_build_rb)

    p = sub.add_parser("build-surrogate", help="build a surrogate model")
    p.add_argument("--training", required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--rule", choices=rules, default="riemann")
    p.add_argument("--greedy-tol", type=float, default=1e-12)
    p.add_argument("--poly-deg", type=int, choices=(1, 3, 5), default=3)
    p.add_argument("--normalize", type=_flag, default=True)
    p.add_argument("--out", required=True, help="model JSON file")
    p.set_defaults(func=cmd_build_surrogate)

    p = sub.add_parser("eval", help="evaluate a surrogate at one parameter")
    p.add_argument("--model", required=True)
    p.add_argument("--lambda", dest="parameter", type=float, required=True)
    p.add_argument("--out", help="values file (default: stdout)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("validate", help="relative L2 errors against a test set")
    p.add_argument("--model", required=True)
    p.add_argument("--test-training", required=True)
    p.add_argument("--test-params", required=True)
    p.add_argument("--out", help="per-parameter error CSV")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="time reduce_basis on random data")
    p.add_argument("--sizes", type=_sizes, default=[(11, 11), (101, 101)])
    p.add_argument("--rules", type=lambda s: s.split(","), default=list(bench.DEFAULT_RULES))
    p.add_argument("--tols", type=lambda s: [float(t) for t in s.split(",")],
                   default=list(bench.DEFAULT_TOLS))
    p.add_argument("--normalize", type=lambda s: [_flag(t) for t in s.split(",")],
                   default=list(bench.DEFAULT_NORMALIZE))
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--fit-exponent", action="store_true")
    p.add_argument("--out", help="CSV output (default: stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        args.func(args)
    except (ValidationError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"romkit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, RomError) as exc:
        print(f"romkit {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

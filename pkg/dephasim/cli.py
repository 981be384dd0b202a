"""
Command-Line Interface

Subcommands:
- evolve:   EW/purity/entropy series for one partition and noise setting
- table:    saturation table for a preset (table1..table4, comparative)
- scenario: write every CSV of a figure scenario (fig2..fig10)
- validate: Monte Carlo oracle and OU-variance check against the channel
- beta:     print the accumulated phase variance beta(g, t)

Exit codes: 0 success, 1 computation or tolerance failure, 2 usage error.
CSV goes to stdout unless --output is given; logs go to stderr.

Usage:
    python -m dephasim evolve --partition cse --g 1 --t-max 2 --steps 200
    python -m dephasim table --preset table1 --output table1.csv
    python -m dephasim validate --samples 100000 --seed 42 --partition cse --g 1 --t 2
    python -m dephasim beta --g 1e-4 --t 120
"""

import argparse
import sys
from dataclasses import replace
from typing import List, Optional

from config.settings import config
from dephasim import __version__, channel, experiments, linalg
from dephasim.errors import DephasimError, ParameterError, ToleranceError
from dephasim.measures import EntropyBase
from dephasim.model import InitialState, NoiseParams, Partition, beta, initial_density
from dephasim.montecarlo import PhaseScheme, TrajectoryConfig, mc_evolve, ou_variance_check
from utils.constants import MAX_QUBITS, MIN_QUBITS
from utils.decorators import log_execution
from utils.logger import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


# ==================== ARGUMENT TYPES ====================

def _float_arg(check, message: str):
    def parse(text: str) -> float:
        try:
            value = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
        if not check(value):
            raise argparse.ArgumentTypeError(f"{text!r}: {message}")
        return value
    return parse


def _int_arg(low: int, high: int = None):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
        if value < low or (high is not None and value > high):
            bound = f">= {low}" if high is None else f"in [{low}, {high}]"
            raise argparse.ArgumentTypeError(f"{text!r}: must be {bound}")
        return value
    return parse


positive_float = _float_arg(lambda v: v > 0.0 and v != float("inf"), "must be positive and finite")
nonnegative_float = _float_arg(lambda v: 0.0 <= v < float("inf"), "must be non-negative and finite")
finite_float = _float_arg(lambda v: abs(v) < float("inf"), "must be finite")
probability = _float_arg(lambda v: 0.0 <= v <= 1.0, "must lie in [0, 1]")
fraction = _float_arg(lambda v: 0.0 < v < 1.0, "must lie in (0, 1)")


# ==================== PARSER ====================

def _add_partition(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--partition", default="cse",
        help="preset name (cse, bse, tse, ise) or explicit assignment such as '0,0,1,1' (default: cse)",
    )
    parser.add_argument(
        "--qubits", type=_int_arg(MIN_QUBITS, MAX_QUBITS), default=4,
        help=f"number of qubits, {MIN_QUBITS}..{MAX_QUBITS}; must match an explicit partition (default: 4)",
    )


def _add_noise(parser: argparse.ArgumentParser, g_default: float = 1.0) -> None:
    parser.add_argument("--g", type=positive_float, default=g_default,
                        help=f"inverse noise correlation time, > 0 (default: {g_default:g})")
    parser.add_argument("--lambda", dest="lambda_", type=nonnegative_float, default=1.0,
                        help="system-environment coupling, >= 0 (default: 1)")
    parser.add_argument("--p", type=probability, default=1.0,
                        help="GHZ weight of the initial state (1 - p) I/d + p |GHZ><GHZ| (default: 1)")


def build_parser() -> argparse.ArgumentParser:
    """Top-level parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="dephasim",
        description="Exact averaged dephasing of GHZ-type qubit registers under Ornstein-Uhlenbeck noise.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    # evolve
    p_evolve = sub.add_parser("evolve", help="EW, purity and entropy over a time grid")
    _add_partition(p_evolve)
    _add_noise(p_evolve)
    p_evolve.add_argument("--epsilon", type=finite_float, default=0.0,
                          help="qubit energy; contributes a global phase only (default: 0)")
    p_evolve.add_argument("--t-max", type=nonnegative_float, default=2.0,
                          help="final time of the grid (default: 2)")
    p_evolve.add_argument("--steps", type=_int_arg(1), default=None,
                          help="grid points on [0, t-max], both ends included (default: from config)")
    p_evolve.add_argument("--entropy-base", choices=("nats", "bits"), default="nats",
                          help="entropy unit (default: nats)")
    p_evolve.add_argument("--output", "-o", default=None, help="CSV path (default: stdout)")
    p_evolve.set_defaults(handler=cmd_evolve)

    # table
    p_table = sub.add_parser("table", help="saturation levels and times for a table preset")
    p_table.add_argument("--preset", required=True, choices=sorted(experiments.TABLE_PRESETS),
                         help="table preset")
    p_table.add_argument("--threshold", type=fraction, default=None,
                         help="relative saturation band in (0, 1) (default: from config)")
    p_table.add_argument("--output", "-o", default=None, help="table CSV path (default: stdout)")
    p_table.add_argument("--report", default=None,
                         help="also write the comparison with published values to this CSV path")
    p_table.set_defaults(handler=cmd_table)

    # scenario
    p_scenario = sub.add_parser("scenario", help="write every series CSV of a figure scenario")
    p_scenario.add_argument("--name", required=True, choices=sorted(experiments.SCENARIOS), help="scenario")
    p_scenario.add_argument("--steps", type=_int_arg(1), default=None,
                            help="grid points (default: from config)")
    p_scenario.add_argument("--out-dir", required=True, help="directory for the CSV files")
    p_scenario.set_defaults(handler=cmd_scenario)

    # validate
    mc = config.montecarlo
    p_validate = sub.add_parser("validate", help="check the channel against Monte Carlo trajectories")
    _add_partition(p_validate)
    _add_noise(p_validate)
    p_validate.add_argument("--t", type=nonnegative_float, default=2.0, help="time (default: 2)")
    p_validate.add_argument("--samples", type=_int_arg(config.validate["min_samples"]), default=mc["samples"],
                            help=f"Monte Carlo samples, >= {config.validate['min_samples']} (default: {mc['samples']})")
    p_validate.add_argument("--seed", type=_int_arg(0, 2 ** 64 - 1), default=mc["seed"],
                            help=f"root seed (default: {mc['seed']})")
    p_validate.add_argument("--scheme", choices=[s.value for s in PhaseScheme], default=mc["scheme"],
                            help=f"phase sampling scheme (default: {mc['scheme']})")
    p_validate.add_argument("--dt", type=positive_float, default=None,
                            help="OU path step (default: min(config dt, 0.01/g))")
    p_validate.add_argument("--variance-paths", type=_int_arg(2), default=config.validate["variance_paths"],
                            help=f"OU paths for the variance check (default: {config.validate['variance_paths']})")
    p_validate.set_defaults(handler=cmd_validate)

    # beta
    p_beta = sub.add_parser("beta", help="accumulated phase variance beta(g, t)")
    p_beta.add_argument("--g", type=positive_float, required=True, help="inverse noise correlation time, > 0")
    p_beta.add_argument("--t", type=nonnegative_float, required=True, help="time, >= 0")
    p_beta.set_defaults(handler=cmd_beta)

    return parser


def _resolve_partition(parser: argparse.ArgumentParser, args: argparse.Namespace) -> Partition:
    try:
        partition = Partition.parse(args.partition, args.qubits)
    except ParameterError as exc:
        parser.error(f"--partition: {exc}")
    if partition.n_qubits != args.qubits:
        parser.error(f"--partition covers {partition.n_qubits} qubits but --qubits is {args.qubits}")
    return partition


def _write(payload: bytes, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(payload.decode("utf-8"))
        sys.stdout.flush()
    else:
        experiments.write_atomic(payload, output)
        logger.info(f"✓ Wrote {output}")


# ==================== COMMANDS ====================

@log_execution
def cmd_evolve(args: argparse.Namespace) -> int:
    """Series CSV for one (partition, g) setting."""
    noise = NoiseParams(g=args.g, lambda_=args.lambda_, epsilon=args.epsilon)
    steps = experiments.default_steps(args.t_max) if args.steps is None else args.steps
    grid = experiments.time_grid(args.t_max, steps)
    series = experiments.series_for(args.partition_obj, noise, grid, p=args.p, base=EntropyBase.parse(args.entropy_base))
    _write(experiments.emit_csv(series), args.output)
    return EXIT_OK


@log_execution
def cmd_table(args: argparse.Namespace) -> int:
    """Saturation table CSV, optionally with the published-value comparison."""
    preset = experiments.get_table_preset(args.preset)
    rows = experiments.build_table(preset, rel_threshold=args.threshold)
    _write(experiments.emit_csv(rows), args.output)
    if args.report:
        report = experiments.saturation_comparison(args.preset, rows)
        experiments.emit_csv(report, args.report)
        logger.info(f"✓ Comparison report: {args.report}")
    return EXIT_OK


@log_execution
def cmd_scenario(args: argparse.Namespace) -> int:
    """One CSV per (g, partition) of a figure scenario."""
    scenario = experiments.get_scenario(args.name)
    if args.steps is not None:
        scenario = replace(scenario, steps=args.steps)
    for path in experiments.write_scenario(scenario, args.out_dir):
        print(path)
    return EXIT_OK


@log_execution
def cmd_validate(args: argparse.Namespace) -> int:
    """
    Frobenius distance between the channel and a Monte Carlo estimate,
    plus the OU-variance check; exit 1 if either is out of tolerance.
    """
    partition = args.partition_obj
    noise = NoiseParams(g=args.g, lambda_=args.lambda_)
    dt = min(config.montecarlo["dt"], 0.01 / args.g) if args.dt is None else args.dt
    tolerances = config.validate

    rho0 = initial_density(InitialState(partition.n_qubits, args.p))
    analytic = channel.evolve(rho0, partition, noise, args.t)
    cfg = TrajectoryConfig(samples=args.samples, seed=args.seed, dt=dt, scheme=args.scheme)
    estimate, stderr = mc_evolve(rho0, partition, noise, args.t, cfg)
    distance = linalg.frobenius_distance(analytic, estimate)

    lines = [
        f"partition={partition.label} g={args.g:g} lambda={args.lambda_:g} t={args.t:g} p={args.p:g}",
        f"scheme={cfg.scheme.value} samples={cfg.samples} seed={cfg.seed}",
        f"frobenius_distance={distance:.6g} stderr={stderr:.6g} tolerance={tolerances['distance_tol']:g}",
    ]
    failures = []
    if distance > tolerances["distance_tol"]:
        failures.append(f"distance {distance:.6g} > {tolerances['distance_tol']:g}")

    if args.t > 0.0 and dt <= args.t:
        variance = ou_variance_check(noise, args.t, dt, args.variance_paths, args.seed)
        lines.append(
            f"ou_variance={variance.empirical:.6g} beta={variance.expected:.6g} "
            f"rel_error={variance.rel_error:.4g} tolerance={tolerances['variance_rel_tol']:g} "
            f"dt={dt:g} paths={variance.paths}"
        )
        if variance.rel_error > tolerances["variance_rel_tol"]:
            failures.append(f"OU variance off by {variance.rel_error:.2%}")
    else:
        lines.append("ou_variance=skipped (needs 0 < dt <= t)")

    lines.append("result=PASS" if not failures else "result=FAIL")
    print("\n".join(lines))
    if failures:
        raise ToleranceError("; ".join(failures))
    return EXIT_OK


@log_execution
def cmd_beta(args: argparse.Namespace) -> int:
    """Print beta(g, t) to 12 significant digits."""
    print(f"{beta(NoiseParams(g=args.g), args.t):.12g}")
    return EXIT_OK


# ==================== ENTRY POINT ====================

def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and run one command.

    Returns:
        Process exit code (0 success, 1 failure, 2 usage error)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if hasattr(args, "partition"):
            args.partition_obj = _resolve_partition(parser, args)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    try:
        return args.handler(args)
    except ToleranceError as exc:
        logger.error(f"Validation failed: {exc}")
        return EXIT_FAILURE
    except DephasimError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())

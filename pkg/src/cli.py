"""Command-line entry point.

Machine-readable output (JSON, HGR) goes to stdout, logs go to stderr.
Exit codes: 0 success, 1 usage error, 2 instance error, 3 iteration budget
exhausted without reaching ``--target``.
"""

import argparse
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Optional, Sequence

from src.__version__ import __version__
from src.core.exceptions import (
    ConfigError,
    HyperAcoError,
    PreconditionViolatedError,
)
from src.formats.hgr import dumps, read_hgr, write_hgr
from src.formats.metadata import read_metadata, write_metadata
from src.models.config import GENERATORS, MODES, ExperimentSpec, SolverConfig
from src.models.hypergraph import Hypergraph, validate
from src.services import bounds, generators, harness, oracle, reductions
from src.solver.mmas import solve
from src.utils.logger import get_logger, setup_logging
from src.utils.serialization import to_canonical_json

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INSTANCE = 2
EXIT_TARGET_MISSED = 3

PROBLEM_CHOICES = ("edge-cover", "vertex-cover", "weak-is")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class UsageError(Exception):
    """Bad flag combination detected after argparse accepted the flags."""

    def __init__(self, message: str, flag: str) -> None:
        self.flag = flag
        super().__init__(f"{flag}: {message}")


class _Parser(argparse.ArgumentParser):
    """Argument parser that exits with the usage code instead of 2."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(payload: Any) -> None:
    sys.stdout.write(to_canonical_json(payload) + "\n")


def _require_seed(args: argparse.Namespace, flag: str, value: Optional[int]) -> int:
    if value is None:
        if args.strict:
            raise UsageError("an explicit seed is required in --strict mode", flag)
        return 0
    return value


def _parse_beta(text: str) -> Optional[float]:
    return None if text.strip().lower() == "auto" else float(text)


def _parse_sizes(text: str) -> List[int]:
    return [int(part) for part in text.split(",") if part.strip()]


# ============================================================================
# SUBCOMMANDS
# ============================================================================


def _cmd_gen(args: argparse.Namespace) -> int:
    seed = _require_seed(args, "--seed", args.seed)
    meta_path = getattr(args, "meta", None)
    if args.kind == "instance1":
        planted = generators.gen_instance1(
            args.n,
            args.r,
            seed,
            rand_max=args.rand_max,
            literal_closing_edge=args.literal_closing_edge,
        )
        h = planted.hypergraph
    elif args.kind == "instance2":
        planted = generators.gen_instance2(
            args.n, _parse_sizes(args.p_sequence), args.extra_edges, seed
        )
        h = planted.hypergraph
    else:
        planted = None
        h = generators.gen_random(args.n, args.m, args.max_card, args.weighted, seed)

    if args.out is None:
        sys.stdout.write(dumps(h))
    else:
        write_hgr(h, args.out)
    if meta_path is not None and planted is not None:
        write_metadata(planted, meta_path)
    return EXIT_OK


def _load_instance(path: str) -> Hypergraph:
    h = read_hgr(path)
    validate(h)
    return h


def _solver_config(args: argparse.Namespace, h: Hypergraph, seed: int) -> SolverConfig:
    beta = args.beta
    if beta is None:
        if args.meta is None:
            raise UsageError("'auto' needs --meta with the instance's beta*", "--beta")
        planted = read_metadata(h, args.meta)
        if planted.beta_star is None:
            raise UsageError("the instance metadata has no beta*", "--beta")
        beta = float(math.ceil(planted.beta_star))
    target = args.target if args.problem != "weak-is" else None
    return SolverConfig(
        alpha=args.alpha,
        beta=beta,
        pher_high=args.pher_high,
        pher_low=args.pher_low,
        max_iterations=args.max_iters,
        target_fitness=target,
        seed=seed,
    )


def _cmd_solve(args: argparse.Namespace) -> int:
    seed = _require_seed(args, "--seed", args.seed)
    h = _load_instance(args.instance)
    cfg = _solver_config(args, h, seed)

    if args.problem == "edge-cover":
        result = solve(h, cfg, record_trace=args.trace)
        _emit(result.to_dict())
        reached = args.target is None or result.best_fitness <= args.target
    else:
        reduction = reductions.PROBLEMS[args.problem](h, cfg)
        _emit(reduction.to_dict())
        if args.target is None:
            reached = True
        elif args.problem == "weak-is":
            reached = reduction.value >= args.target
        else:
            reached = reduction.value <= args.target

    if not reached:
        logger.warning(
            "Iteration budget exhausted before reaching the target",
            extra={"target": args.target, "max_iterations": cfg.max_iterations},
        )
        return EXIT_TARGET_MISSED
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    h = _load_instance(args.instance)
    _emit(oracle.PROBLEMS[args.problem](h).to_dict())
    return EXIT_OK


def _cmd_bounds(args: argparse.Namespace) -> int:
    if args.theorem == "theorem1":
        value = bounds.theorem1_bound(args.m, args.k, args.c_n)
    elif args.theorem == "theorem2":
        value = bounds.theorem2_bound(
            args.m, args.k, args.eta_max, args.eta_min, args.beta
        )
    elif args.theorem == "theorem3":
        value = bounds.theorem3_pmin(
            args.m, args.k, args.eta_prime_min, args.eta_1_max, args.beta
        )
    else:
        value = bounds.beta_star(args.m, args.k, args.eta_prime_min, args.eta_1_max)
    _emit(value.to_dict())
    return EXIT_OK


_GENERATOR_FLAGS = {
    "instance1": ("n", "r", "rand_max", "literal_closing_edge"),
    "instance2": ("n", "p_sequence", "extra_edges"),
    "random": ("n", "m", "max_card", "weighted"),
}


def _alpha_grid(args: argparse.Namespace) -> str:
    """Explicit --alpha, else 0 when a β is 'auto', else 1."""
    if args.alpha is not None:
        return str(args.alpha)
    betas = [b.strip().lower() for b in str(args.beta).split(",")]
    return "0" if "auto" in betas else "1"


def _inline_spec(args: argparse.Namespace) -> ExperimentSpec:
    if args.gen is None and args.instance is None:
        raise UsageError("give --config, --instance or --gen", "--instance")
    master_seed = _require_seed(args, "--master-seed", args.master_seed)
    data: Dict[str, Any] = {
        "mode": args.mode,
        "trials": args.trials,
        "master_seed": master_seed,
        "alphas": _alpha_grid(args),
        "betas": args.beta,
        "max_iterations": args.max_iters,
        "threads": args.threads,
    }
    if args.pher_high is not None:
        data["pher_highs"] = args.pher_high
    if args.pher_low is not None:
        data["pher_lows"] = args.pher_low
    if args.gen is not None:
        gen_seed = master_seed if args.gen_seed is None else args.gen_seed
        params: Dict[str, Any] = {"seed": gen_seed}
        for name in _GENERATOR_FLAGS[args.gen]:
            value = getattr(args, name)
            if value is None:
                continue
            params[name] = _parse_sizes(value) if name == "p_sequence" else value
        if args.gen == "instance2":
            params.setdefault("extra_edges", 0)
        data["generator"] = args.gen
        data["generator_params"] = params
    else:
        data["instance_path"] = args.instance
        data["meta_path"] = args.meta
    return ExperimentSpec.from_mapping(data)


def _cmd_experiment(args: argparse.Namespace) -> int:
    if args.config is not None:
        data = ExperimentSpec.read_mapping(args.config)
        if args.strict and "master_seed" not in data:
            raise UsageError(
                "an explicit master_seed is required in --strict mode", "--config"
            )
        spec = ExperimentSpec.from_mapping(data)
    else:
        spec = _inline_spec(args)
    reports = harness.run_experiment(spec)
    if args.csv is not None:
        harness.write_trials_csv(reports, args.csv)
    _emit({"reports": [report.summary() for report in reports]})
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    h = _load_instance(args.instance)
    logger.info("Instance is valid", extra={"n": h.n, "m": h.m})
    return EXIT_OK


# ============================================================================
# PARSER
# ============================================================================


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--alpha", type=float, default=1.0, help="pheromone exponent (default 1)"
    )
    parser.add_argument(
        "--beta",
        type=_parse_beta,
        default=1.0,
        help="heuristic exponent, or 'auto' for ceil(beta*) from --meta (default 1)",
    )
    parser.add_argument(
        "--pher-high",
        type=float,
        help="upper pheromone level h (default max(1-1/m, 1/m))",
    )
    parser.add_argument(
        "--pher-low", type=float, help="lower pheromone level l (default 1/m)"
    )
    parser.add_argument(
        "--max-iters",
        type=int,
        default=1000,
        help="constructions before giving up (default 1000)",
    )
    parser.add_argument("--seed", type=int, help="64-bit unsigned seed (default 0)")


def _add_generator_commands(subparsers: Any) -> None:
    gen = subparsers.add_parser("gen", help="generate an instance as HGR")
    kinds = gen.add_subparsers(dest="kind", required=True, metavar="KIND")

    def common(parser: argparse.ArgumentParser, with_meta: bool) -> None:
        parser.add_argument("--seed", type=int, help="generator seed (default 0)")
        parser.add_argument("--out", help="HGR output path (default stdout)")
        if with_meta:
            parser.add_argument(
                "--meta", help="sidecar JSON path for the planted cover"
            )

    one = kinds.add_parser(
        "instance1",
        help="weighted complete r-uniform hypergraph",
        description=(
            "Weighted complete r-uniform hypergraph with a planted unit-weight "
            "cover. By default the closing unit edge is added only when r does "
            "not divide n, so k = ceil(n/r) and the planted cover is optimal. "
            "--literal-closing-edge always adds it (k = floor(n/r) + 1); when r "
            "divides n that edge is redundant and the optimum has k - 1 edges."
        ),
    )
    one.add_argument("--n", type=int, required=True, help="number of vertices")
    one.add_argument(
        "--r", type=int, required=True, help="edge cardinality, 2 <= r <= n"
    )
    one.add_argument(
        "--rand-max",
        type=int,
        default=10,
        help="largest non-planted weight (default 10)",
    )
    one.add_argument(
        "--literal-closing-edge",
        action="store_true",
        help="always add the closing unit edge, k = floor(n/r) + 1 (default off)",
    )
    common(one, with_meta=True)

    two = kinds.add_parser(
        "instance2", help="unweighted hypergraph from a size sequence"
    )
    two.add_argument("--n", type=int, required=True, help="number of vertices")
    two.add_argument(
        "--p-sequence",
        required=True,
        help="non-increasing comma-separated edge sizes",
    )
    two.add_argument(
        "--extra-edges", type=int, default=0, help="number of extra edges (default 0)"
    )
    common(two, with_meta=True)

    rand = kinds.add_parser("random", help="random valid hypergraph")
    rand.add_argument("--n", type=int, required=True, help="number of vertices")
    rand.add_argument("--m", type=int, required=True, help="number of edges")
    rand.add_argument(
        "--max-card", type=int, required=True, help="largest edge cardinality"
    )
    rand.add_argument(
        "--weighted", action="store_true", help="integer weights in 1..10"
    )
    common(rand, with_meta=False)
    gen.set_defaults(handler=_cmd_gen)


def _add_bounds_command(subparsers: Any) -> None:
    parser = subparsers.add_parser("bounds", help="evaluate a closed-form bound")
    kinds = parser.add_subparsers(dest="theorem", required=True, metavar="THEOREM")

    def counts(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--m", type=int, required=True, help="number of edges")
        sub.add_argument(
            "--k", type=int, required=True, help="size of the optimal cover"
        )

    def planted_ratios(sub: argparse.ArgumentParser) -> None:
        sub.add_argument(
            "--eta-prime-min",
            type=float,
            required=True,
            help="smallest |e|/w(e) over the planted cover, > 0",
        )
        sub.add_argument(
            "--eta-1-max",
            type=float,
            required=True,
            help="largest |e|/w(e) outside the planted cover, > 0",
        )

    one = kinds.add_parser("theorem1", help="pheromone-only expected iterations")
    counts(one)
    one.add_argument(
        "--c-n", type=float, required=True, help="pheromone ratio h/l >= 1"
    )

    two = kinds.add_parser("theorem2", help="heuristic-only expected iterations")
    counts(two)
    two.add_argument(
        "--eta-max", type=float, required=True, help="largest |e|/w(e), > 0"
    )
    two.add_argument(
        "--eta-min",
        type=float,
        required=True,
        help="smallest |e|/w(e), 0 < eta-min <= eta-max",
    )
    two.add_argument(
        "--beta", type=float, required=True, help="heuristic exponent, >= 0"
    )

    three = kinds.add_parser(
        "theorem3", help="probability of building the planted cover"
    )
    counts(three)
    planted_ratios(three)
    three.add_argument(
        "--beta", type=float, required=True, help="heuristic exponent, >= 0"
    )

    star = kinds.add_parser(
        "beta-star", help="threshold beta for success probability 1/e"
    )
    counts(star)
    planted_ratios(star)
    parser.set_defaults(handler=_cmd_bounds)


def _add_experiment_command(subparsers: Any) -> None:
    parser = subparsers.add_parser(
        "experiment",
        help="run repeated trials and compare with the matching bound",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Grid flags (--alpha, --beta, --pher-high, --pher-low) take comma-separated
values; every combination is one report. --beta auto uses ceil(beta*)
and, without --alpha, alpha = 0.
Iterations count constructed solutions.

Examples:
  hyperaco experiment --gen instance1 --n 4 --r 2 --rand-max 2 \\
      --mode construction_probability --alpha 0 --beta auto --master-seed 7
  hyperaco experiment --config run.cfg --csv trials.csv
        """,
    )
    parser.add_argument("--config", help="JSON or flat key = value experiment file")
    parser.add_argument(
        "--mode",
        choices=MODES,
        default="optimization_time",
        help="what each trial measures (default optimization_time)",
    )
    parser.add_argument(
        "--trials", type=int, default=100, help="trials per grid point (default 100)"
    )
    parser.add_argument(
        "--master-seed", type=int, help="seed every trial seed derives from"
    )
    parser.add_argument("--instance", help="HGR instance file")
    parser.add_argument("--meta", help="sidecar JSON for --instance")
    parser.add_argument(
        "--gen", choices=GENERATORS, help="generate the instance instead"
    )
    parser.add_argument(
        "--gen-seed", type=int, help="generator seed (default: the master seed)"
    )
    parser.add_argument("--n", type=int, help="generator: number of vertices")
    parser.add_argument("--r", type=int, help="instance1: edge cardinality")
    parser.add_argument("--m", type=int, help="random: number of edges")
    parser.add_argument(
        "--rand-max", type=int, help="instance1: largest non-planted weight (10)"
    )
    parser.add_argument(
        "--literal-closing-edge",
        action="store_true",
        help="instance1: always add the closing unit edge",
    )
    parser.add_argument(
        "--p-sequence", help="instance2: non-increasing comma-separated sizes"
    )
    parser.add_argument(
        "--extra-edges", type=int, help="instance2: number of extra edges (0)"
    )
    parser.add_argument(
        "--max-card", type=int, help="random: largest edge cardinality"
    )
    parser.add_argument(
        "--weighted", action="store_true", help="random: integer weights in 1..10"
    )
    parser.add_argument(
        "--alpha",
        help="pheromone exponents (default 0 with --beta auto, otherwise 1)",
    )
    parser.add_argument(
        "--beta", default="1", help="heuristic exponents or 'auto' (default 1)"
    )
    parser.add_argument("--pher-high", help="upper pheromone levels")
    parser.add_argument("--pher-low", help="lower pheromone levels")
    parser.add_argument(
        "--max-iters",
        type=int,
        default=100_000,
        help="per-trial iteration budget (default 100000)",
    )
    parser.add_argument(
        "--threads",
        type=int,
        help="worker processes (default HYPERACO_THREADS or the CPU count)",
    )
    parser.add_argument("--csv", help="write one row per trial to this CSV file")
    parser.set_defaults(handler=_cmd_experiment)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hyperaco",
        description="MMAS* for minimum-weight hypergraph edge cover",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default="WARNING",
        help="log level on stderr (default WARNING)",
    )
    parser.add_argument(
        "--log-dir", type=Path, help="also write rotating logs to this directory"
    )
    parser.add_argument(
        "--strict",
        action="store_true",
        help="require explicit seeds on randomized commands",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    _add_generator_commands(subparsers)

    solve_parser = subparsers.add_parser("solve", help="run MMAS* on an HGR instance")
    solve_parser.add_argument("instance", help="HGR instance file")
    _add_solver_flags(solve_parser)
    solve_parser.add_argument(
        "--target", type=float, help="stop once the value reaches this"
    )
    solve_parser.add_argument(
        "--problem",
        choices=PROBLEM_CHOICES,
        default="edge-cover",
        help="problem to answer (default edge-cover)",
    )
    solve_parser.add_argument("--meta", help="sidecar JSON, needed for --beta auto")
    solve_parser.add_argument(
        "--trace", action="store_true", help="include improvement events"
    )
    solve_parser.set_defaults(handler=_cmd_solve)

    oracle_parser = subparsers.add_parser(
        "oracle", help="exhaustive optimum of a small instance"
    )
    oracle_parser.add_argument("instance", help="HGR instance file")
    oracle_parser.add_argument(
        "--problem",
        choices=PROBLEM_CHOICES,
        default="edge-cover",
        help="problem to answer (default edge-cover)",
    )
    oracle_parser.set_defaults(handler=_cmd_oracle)

    _add_bounds_command(subparsers)
    _add_experiment_command(subparsers)

    validate_parser = subparsers.add_parser("validate", help="check an HGR instance")
    validate_parser.add_argument("instance", help="HGR instance file")
    validate_parser.set_defaults(handler=_cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level, args.log_dir)
    try:
        return int(args.handler(args))
    except UsageError as error:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"hyperaco: error: {error}\n")
        return EXIT_USAGE
    except (ConfigError, PreconditionViolatedError) as error:
        sys.stderr.write(f"hyperaco: error: {error}\n")
        return EXIT_USAGE
    except (HyperAcoError, OSError) as error:
        logger.error(
            "Command failed", extra={"command": args.command, "error": str(error)}
        )
        sys.stderr.write(f"hyperaco: error: {error}\n")
        return EXIT_INSTANCE


if __name__ == "__main__":
    sys.exit(main())

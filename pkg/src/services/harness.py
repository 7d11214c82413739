"""Repeated-trial experiment runner.

An :class:`~src.models.config.ExperimentSpec` names an instance (file or
generator), a parameter grid and a mode. For each grid point the runner
builds the mode's :class:`~src.core.base.Experiment` through
:class:`~src.services.experiment_factory.ExperimentFactory`, runs the
trials, and reduces them to an :class:`ExperimentReport` with a verdict
against the matching closed-form bound.

Trials are independent: trial ``i`` draws its seed from the master seed by
counter, and records are reduced in trial order, so a report is
reproducible regardless of worker count.
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy import stats

from src.core.base import Experiment, ExperimentContext
from src.core.exceptions import ConfigError, InstanceTooLargeError, UnknownOptimumError
from src.formats.hgr import read_hgr
from src.formats.metadata import read_metadata
from src.models.config import ITERATION_CAP, ExperimentSpec, SolverConfig
from src.models.hypergraph import validate
from src.models.results import ExperimentReport, PlantedInstance, TrialRecord
from src.services import generators, oracle
from src.services.experiment_factory import ExperimentFactory
from src.utils.logger import get_logger
from src.utils.rng import child_seed

logger = get_logger(__name__)

SIGMA_TOLERANCE = 3.0
THREADS_ENV = "HYPERACO_THREADS"
BATCHES_PER_WORKER = 4
CSV_COLUMNS = ["trial", "seed", "iterations", "best_fitness", "success"]


def load_context(spec: ExperimentSpec) -> ExperimentContext:
    """Build or read the instance and determine its optimum.

    Raises:
        UnknownOptimumError: If there is no planted cover and the instance is
            too large for the exhaustive oracle.
    """
    planted: Optional[PlantedInstance] = None
    params = dict(spec.generator_params)
    try:
        if spec.generator == "instance1":
            planted = generators.gen_instance1(**params)
        elif spec.generator == "instance2":
            planted = generators.gen_instance2(**params)
        elif spec.generator == "random":
            h = generators.gen_random(**params)
    except TypeError as error:
        raise ConfigError("invalid generator parameters", str(error))
    if planted is not None:
        h = planted.hypergraph
    elif spec.generator is None:
        assert spec.instance_path is not None
        h = read_hgr(spec.instance_path)
        validate(h)
        if spec.meta_path is not None:
            planted = read_metadata(h, spec.meta_path)
    source = spec.generator or str(spec.instance_path)

    if planted is not None:
        return ExperimentContext(
            h, planted.optimum_value, planted.optimal_cover, planted, source
        )
    try:
        optimum = oracle.min_weight_edge_cover(h)
    except InstanceTooLargeError:
        logger.error("No way to know the optimum", extra={"m": h.m})
        raise UnknownOptimumError(
            "Instance has no planted cover and is too large for the oracle", h.m
        )
    return ExperimentContext(
        h, optimum.optimum_value, optimum.one_witness, None, source
    )


def resolve_beta(beta: Optional[float], context: ExperimentContext) -> float:
    """A missing β means ⌈β*⌉ of the planted instance."""
    if beta is not None:
        return beta
    if context.planted is None or context.planted.beta_star is None:
        raise ConfigError("beta 'auto' needs an instance with a known beta*", "beta")
    return float(math.ceil(context.planted.beta_star))


def worker_count(spec: ExperimentSpec) -> int:
    if spec.threads is not None:
        return spec.threads
    override = os.environ.get(THREADS_ENV)
    if override:
        try:
            count = int(override)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be a positive integer", override)
        if count < 1:
            raise ConfigError(f"{THREADS_ENV} must be a positive integer", override)
        return count
    return min(32, os.cpu_count() or 1)


def _aggregate(
    experiment: Experiment,
    records: List[TrialRecord],
    parameters: Dict[str, Any],
) -> ExperimentReport:
    frame = records_frame(records)
    iterations = frame["iterations"].to_numpy(dtype=float)
    successes = frame["success"].to_numpy(dtype=bool)
    trials = len(records)
    frequency = float(successes.mean())
    frequency_se = math.sqrt(frequency * (1.0 - frequency) / trials)
    iterations_se = float(stats.sem(iterations)) if trials > 1 else 0.0
    if not math.isfinite(iterations_se):
        iterations_se = 0.0
    notes: List[str] = []

    capped = int((~successes).sum()) if experiment.mode == "optimization_time" else 0
    if capped:
        notes.append(f"{capped} trial(s) hit the iteration budget without the optimum")
        logger.warning(
            "Trials reached the iteration budget",
            extra={"capped": capped, "trials": trials},
        )

    bound = experiment.bound()
    verdict = "no bound"
    bound_value: Optional[float] = None
    if bound is not None:
        bound_value = bound.value
        if experiment.bound_kind == "time":
            slack = SIGMA_TOLERANCE * iterations_se
            respected = float(iterations.mean()) <= bound.value + slack
        else:
            # one-sided test at the bound's own Bernoulli deviation
            p = min(max(bound.value, 0.0), 1.0)
            sigma = math.sqrt(p * (1.0 - p) / trials)
            respected = frequency >= bound.value - SIGMA_TOLERANCE * sigma
        verdict = "bound respected" if respected else "bound violated"
        parameters = {**parameters, "bound_theorem": bound.theorem}
    else:
        notes.append("no closed-form bound for this parameter combination")

    return ExperimentReport(
        mode=experiment.mode,
        parameters=parameters,
        records=tuple(records),
        mean_iterations=float(iterations.mean()),
        median_iterations=float(np.median(iterations)),
        iterations_standard_error=iterations_se,
        success_frequency=frequency,
        frequency_standard_error=frequency_se,
        optimum_value=experiment.context.optimum_value,
        bound_kind=experiment.bound_kind if bound is not None else None,
        bound_value=bound_value,
        verdict=verdict,
        notes=notes,
    )


def _run_batch(
    experiment: Experiment, master_seed: int, first: int, count: int
) -> List[TrialRecord]:
    return [
        experiment.run_trial(index, child_seed(master_seed, index))
        for index in range(first, first + count)
    ]


def run_trials(
    experiment: Experiment, trials: int, master_seed: int, threads: int = 1
) -> List[TrialRecord]:
    """Run ``trials`` independent trials, returned in trial order.

    With more than one worker the trials are split into contiguous batches
    that run in separate processes; each trial still derives its own seed
    from its index, so the records do not depend on ``threads``.
    """
    workers = min(threads, trials)
    if workers <= 1:
        return _run_batch(experiment, master_seed, 0, trials)
    size = math.ceil(trials / (workers * BATCHES_PER_WORKER))
    starts = list(range(0, trials, size))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        batches = pool.map(
            _run_batch,
            [experiment] * len(starts),
            [master_seed] * len(starts),
            starts,
            [min(size, trials - start) for start in starts],
        )
        return [record for batch in batches for record in batch]


def _grid_configs(
    spec: ExperimentSpec, context: ExperimentContext
) -> List[Tuple[SolverConfig, Dict[str, Any]]]:
    configs = []
    for alpha, beta, high, low in spec.grid():
        assert alpha is not None
        resolved_beta = resolve_beta(beta, context)
        cfg = SolverConfig(
            alpha=alpha,
            beta=resolved_beta,
            pher_high=high,
            pher_low=low,
            max_iterations=min(spec.max_iterations, ITERATION_CAP),
            seed=spec.master_seed,
        ).resolve(context.hypergraph.m)
        parameters = {
            "alpha": cfg.alpha,
            "beta": cfg.beta,
            "pher_high": cfg.pher_high,
            "pher_low": cfg.pher_low,
            "max_iterations": cfg.max_iterations,
            "master_seed": spec.master_seed,
            "trials": spec.trials,
            "instance": context.source,
            "n": context.hypergraph.n,
            "m": context.hypergraph.m,
            "k": len(context.optimal_cover),
        }
        configs.append((cfg, parameters))
    return configs


def _run_mode(spec: ExperimentSpec, mode: str) -> List[ExperimentReport]:
    context = load_context(spec)
    threads = worker_count(spec)
    reports = []
    for cfg, parameters in _grid_configs(spec, context):
        experiment = ExperimentFactory.create(mode, context, cfg)
        logger.info(
            "Running experiment grid point",
            extra={"mode": mode, "trials": spec.trials, **parameters},
        )
        records = run_trials(experiment, spec.trials, spec.master_seed, threads)
        if mode == "adversarial_t1":
            parameters = {**parameters, "alpha": 1.0, "beta": 0.0}
        report = _aggregate(experiment, records, parameters)
        logger.info(
            "Experiment grid point finished",
            extra={
                "mode": mode,
                "success_frequency": report.success_frequency,
                "mean_iterations": report.mean_iterations,
                "verdict": report.verdict,
            },
        )
        reports.append(report)
    return reports


def run_optimization_time(spec: ExperimentSpec) -> List[ExperimentReport]:
    """Mean iterations to the optimum, one report per grid point."""
    return _run_mode(spec, "optimization_time")


def run_construction_probability(spec: ExperimentSpec) -> List[ExperimentReport]:
    """Single-construction success frequency, one report per grid point."""
    return _run_mode(spec, "construction_probability")


def run_adversarial_t1(spec: ExperimentSpec) -> List[ExperimentReport]:
    """Worst-case single-construction success frequency, one report per grid point."""
    return _run_mode(spec, "adversarial_t1")


def run_experiment(spec: ExperimentSpec) -> List[ExperimentReport]:
    return _run_mode(spec, spec.mode)


def records_frame(records: List[TrialRecord]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "trial": r.trial,
                "seed": r.seed,
                "iterations": r.iterations,
                "best_fitness": r.best_fitness,
                "success": r.success,
            }
            for r in records
        ],
        columns=CSV_COLUMNS,
    )


def write_trials_csv(
    reports: List[ExperimentReport], path: Union[str, Path]
) -> None:
    """One row per trial; several grid points are concatenated in order."""
    frame = pd.concat(
        [records_frame(list(r.records)) for r in reports], ignore_index=True
    )
    frame["seed"] = frame["seed"].astype("uint64")
    frame.to_csv(path, index=False)
    logger.info("Wrote trial CSV", extra={"path": str(path), "rows": len(frame)})

"""Experiment modes.

Each mode is an :class:`~src.core.base.Experiment` strategy that knows how
to run one trial and which closed-form bound its measurements answer to:

- ``optimization_time``: full MMAS* runs until the known optimum is hit,
  compared with an expected-time bound;
- ``construction_probability``: single constructions from the initial
  pheromone state, compared with a lower bound on the per-construction
  success probability;
- ``adversarial_t1``: single constructions from the worst pheromone state
  (optimal edges low, all others high) with α = 1, β = 0.
"""

from typing import Optional

from src.core.base import Experiment, ExperimentContext
from src.core.exceptions import PendantEdgesPresentError
from src.models.config import SolverConfig
from src.models.hypergraph import forced_edges
from src.models.results import BoundValue, TrialRecord
from src.services import bounds
from src.solver.mmas import PheromoneState, construct, fitness, heuristic_info, solve
from src.utils.logger import get_logger
from src.utils.rng import make_rng

logger = get_logger(__name__)

FITNESS_TOLERANCE = 1e-9


def _reached(value: float, optimum: float) -> bool:
    return value <= optimum + FITNESS_TOLERANCE


def _heuristic_regime_bound(
    context: ExperimentContext, cfg: SolverConfig
) -> Optional[BoundValue]:
    """Success-probability bound for α = 0, from the planted data when it applies.

    The planted-cover bound needs S itself to be optimal; a redundant closing
    edge (literal Instance 1) falls back to the η_max/η_min bound.
    """
    h = context.hypergraph
    planted = context.planted
    if (
        planted is not None
        and planted.beta_star is not None
        and planted.optimal_cover == planted.planted_cover
    ):
        return bounds.theorem3_pmin(
            h.m, planted.k, planted.eta_prime_min, planted.eta_1_max, cfg.beta
        )
    eta = heuristic_info(h)
    return bounds.theorem2_pmin(
        h.m, len(context.optimal_cover), eta.eta_max, eta.eta_min, cfg.beta
    )


def _pheromone_regime_bound(
    context: ExperimentContext, high: float, low: float
) -> BoundValue:
    return bounds.theorem1_success_probability(
        context.hypergraph.m, len(context.optimal_cover), high / low
    )


class OptimizationTimeExperiment(Experiment):
    """Full runs; a trial succeeds when the best fitness reaches the optimum."""

    mode = "optimization_time"
    bound_kind = "time"

    def run_trial(self, index: int, seed: int) -> TrialRecord:
        cfg = SolverConfig(
            alpha=self.cfg.alpha,
            beta=self.cfg.beta,
            pher_high=self.cfg.pher_high,
            pher_low=self.cfg.pher_low,
            max_iterations=self.cfg.max_iterations,
            target_fitness=self.context.optimum_value + FITNESS_TOLERANCE,
            seed=seed,
        )
        result = solve(self.context.hypergraph, cfg)
        success = _reached(result.best_fitness, self.context.optimum_value)
        iterations = result.iteration_found if success else result.iterations_run
        return TrialRecord(index, seed, iterations, result.best_fitness, success)

    def bound(self) -> Optional[BoundValue]:
        if self.cfg.alpha == 0:
            return bounds.expected_time_from_pmin(
                _heuristic_regime_bound(self.context, self.cfg)
            )
        if self.cfg.alpha == 1 and self.cfg.beta == 0:
            assert self.cfg.pher_high is not None and self.cfg.pher_low is not None
            return bounds.expected_time_from_pmin(
                _pheromone_regime_bound(
                    self.context, self.cfg.pher_high, self.cfg.pher_low
                )
            )
        return None


class ConstructionProbabilityExperiment(Experiment):
    """Single constructions from the uniform initial pheromone state."""

    mode = "construction_probability"
    bound_kind = "probability"

    def __init__(self, context: ExperimentContext, cfg: SolverConfig) -> None:
        super().__init__(context, cfg)
        self.eta = heuristic_info(context.hypergraph)
        self.pheromones = self.initial_pheromones()

    def initial_pheromones(self) -> PheromoneState:
        return PheromoneState.initial(self.context.hypergraph)

    def run_trial(self, index: int, seed: int) -> TrialRecord:
        h = self.context.hypergraph
        built = construct(h, self.pheromones, self.eta, self.cfg, make_rng(seed))
        value = fitness(h, built)
        success = _reached(value, self.context.optimum_value)
        return TrialRecord(index, seed, 1, value, success)

    def bound(self) -> Optional[BoundValue]:
        if self.cfg.alpha == 0:
            return _heuristic_regime_bound(self.context, self.cfg)
        if self.cfg.beta == 0:
            # uniform pheromone: every level equal, c_n = 1
            return _pheromone_regime_bound(self.context, 1.0, 1.0)
        return None


class AdversarialT1Experiment(ConstructionProbabilityExperiment):
    """Single constructions with the optimal edges at l and every other edge at h."""

    mode = "adversarial_t1"

    def __init__(self, context: ExperimentContext, cfg: SolverConfig) -> None:
        forced = forced_edges(context.hypergraph)
        if forced:
            logger.error(
                "Worst-case experiment needs a pendant-free instance",
                extra={"forced_edges": sorted(forced)},
            )
            raise PendantEdgesPresentError(
                "Instance has edges with pendant vertices", sorted(forced)
            )
        pinned = SolverConfig(
            alpha=1.0,
            beta=0.0,
            pher_high=cfg.pher_high,
            pher_low=cfg.pher_low,
            max_iterations=cfg.max_iterations,
            seed=cfg.seed,
        )
        super().__init__(context, pinned)

    def initial_pheromones(self) -> PheromoneState:
        assert self.cfg.pher_high is not None and self.cfg.pher_low is not None
        return PheromoneState.adversarial(
            self.context.hypergraph.m,
            self.context.optimal_cover,
            self.cfg.pher_high,
            self.cfg.pher_low,
        )

    def bound(self) -> Optional[BoundValue]:
        assert self.cfg.pher_high is not None and self.cfg.pher_low is not None
        return _pheromone_regime_bound(
            self.context, self.cfg.pher_high, self.cfg.pher_low
        )



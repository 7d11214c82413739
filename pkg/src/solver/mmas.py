"""MMAS* for minimum-weight edge cover on hypergraphs.

The construction graph has one node per non-forced hyperedge plus a start
node. Because every update assigns the same level to all arcs entering a
node, and initialization is uniform, the pheromone on arc (u, v) depends
on v alone; the state is therefore stored per node, which is exact.

Edges holding a pendant vertex (forced edges) are placed in every
solution up front and never enter the random walk; the walk then adds one
edge at a time, always one that covers at least one still-uncovered
vertex, chosen with probability proportional to ``tau**alpha * eta**beta``.
"""

import math
from dataclasses import dataclass
from typing import AbstractSet, Dict, List, Optional, Tuple

import numpy as np

from src.core.exceptions import DegenerateWeightsError
from src.models.config import SolverConfig
from src.models.hypergraph import EdgeSet, Hypergraph, forced_edges, validate
from src.models.results import SolveResult
from src.utils.logger import get_logger
from src.utils.rng import make_rng

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Heuristic:
    """Static desirability η_e = |e| / w(e), indexed by ``edge_id - 1``."""

    eta: np.ndarray

    def __getitem__(self, edge_id: int) -> float:
        return float(self.eta[edge_id - 1])

    @property
    def eta_max(self) -> float:
        return float(self.eta.max())

    @property
    def eta_min(self) -> float:
        return float(self.eta.min())


@dataclass(frozen=True, eq=False)
class PheromoneState:
    """Pheromone level per construction node (edge id - 1).

    ``initial_uniform`` is set until the first update; before it every
    node carries τ₀ = 1/|U|.
    """

    levels: np.ndarray
    initial_uniform: bool = False

    @classmethod
    def initial(cls, h: Hypergraph) -> "PheromoneState":
        """Uniform start: |U| = m_c² arcs for m_c construction nodes."""
        nodes = max(h.m - len(forced_edges(h)), 1)
        levels = np.full(h.m, 1.0 / (nodes * nodes))
        return cls(levels, initial_uniform=True)

    @classmethod
    def adversarial(
        cls, m: int, optimal: AbstractSet[int], high: float, low: float
    ) -> "PheromoneState":
        """Worst case for reaching ``optimal``: l on its edges, h everywhere else."""
        levels = np.full(m, high)
        levels[[e - 1 for e in optimal]] = low
        return cls(levels)

    def level(self, edge_id: int) -> float:
        return float(self.levels[edge_id - 1])


def heuristic_info(h: Hypergraph) -> Heuristic:
    """η_e = |e| / w(e) for every edge."""
    eta = h.cardinalities / h.weights
    eta.setflags(write=False)
    return Heuristic(eta)


def _uncovered_hits(h: Hypergraph, covered: np.ndarray) -> np.ndarray:
    return h.incidence_matrix[:, ~covered].any(axis=1)


def feasible_neighborhood(
    h: Hypergraph, covered: AbstractSet[int], visited: AbstractSet[int]
) -> EdgeSet:
    """Unvisited edges that still contain an uncovered vertex.

    With ``covered`` holding the vertices of the forced edges (as the
    construction keeps it), forced edges never qualify.
    """
    covered_mask = np.zeros(h.n, dtype=bool)
    covered_mask[[v - 1 for v in covered]] = True
    visited_mask = np.zeros(h.m, dtype=bool)
    visited_mask[[e - 1 for e in visited]] = True
    candidates = ~visited_mask & _uncovered_hits(h, covered_mask)
    return frozenset(int(i) + 1 for i in np.flatnonzero(candidates))


def _selection_weights(
    levels: np.ndarray, eta: np.ndarray, alpha: float, beta: float
) -> np.ndarray:
    return np.power(levels, alpha) * np.power(eta, beta)


def _normalizer(weights: np.ndarray) -> float:
    total = float(weights.sum())
    if not (total > 0 and math.isfinite(total)):
        logger.error(
            "Degenerate selection weights",
            extra={"total": total, "candidates": int(weights.size)},
        )
        raise DegenerateWeightsError(
            "Selection weights sum to zero or overflow; check alpha, beta, h and l",
            total,
        )
    return total


def selection_probabilities(
    candidates: AbstractSet[int],
    pher: PheromoneState,
    eta: Heuristic,
    cfg: SolverConfig,
) -> Dict[int, float]:
    """Probability of each candidate being the next edge of the walk.

    Edges outside ``candidates`` have probability zero and are omitted.

    Raises:
        DegenerateWeightsError: If ``candidates`` is empty or the normalizing
            sum is zero or not finite.
    """
    if not candidates:
        raise DegenerateWeightsError("Feasible neighbourhood is empty", 0)
    ids = sorted(candidates)
    index = [e - 1 for e in ids]
    weights = _selection_weights(
        pher.levels[index], eta.eta[index], cfg.alpha, cfg.beta
    )
    total = _normalizer(weights)
    return {edge_id: float(w / total) for edge_id, w in zip(ids, weights)}


def _roulette(weights: np.ndarray, rng: np.random.Generator) -> int:
    """Index drawn proportionally to ``weights``; the last slot absorbs rounding."""
    cumulative = np.cumsum(weights)
    total = float(cumulative[-1])
    if not (total > 0 and math.isfinite(total)):
        _normalizer(weights)
    position = int(np.searchsorted(cumulative, rng.random() * total, side="right"))
    return min(position, weights.size - 1)


def construct(
    h: Hypergraph,
    pher: PheromoneState,
    eta: Heuristic,
    cfg: SolverConfig,
    rng: np.random.Generator,
) -> EdgeSet:
    """Build one edge cover by a random walk on the construction graph.

    Forced edges are taken first; the walk then repeatedly picks an edge
    from the feasible neighbourhood until every vertex is covered.
    """
    incidence = h.incidence_matrix
    attractiveness = _selection_weights(pher.levels, eta.eta, cfg.alpha, cfg.beta)
    visited = h.forced_mask.copy()
    covered = h.forced_coverage.copy()
    selected: List[int] = [int(r) + 1 for r in np.flatnonzero(visited)]

    while not covered.all():
        candidates = np.flatnonzero(~visited & _uncovered_hits(h, covered))
        pick = int(candidates[_roulette(attractiveness[candidates], rng)])
        visited[pick] = True
        covered |= incidence[pick]
        selected.append(pick + 1)

    return frozenset(selected)


def fitness(h: Hypergraph, x: AbstractSet[int]) -> float:
    """Total weight of the edges in ``x``; feasibility is not checked."""
    return math.fsum(h.weight(e) for e in sorted(x))


def update_pheromones(
    pher: PheromoneState, best: AbstractSet[int], cfg: SolverConfig
) -> PheromoneState:
    """Set level h on the nodes of ``best`` and l on every other node."""
    m = pher.levels.size
    high, low = cfg.levels(m)
    mask = np.zeros(m, dtype=bool)
    mask[[e - 1 for e in best]] = True
    return PheromoneState(np.where(mask, high, low), initial_uniform=False)


def solve(h: Hypergraph, cfg: SolverConfig, record_trace: bool = False) -> SolveResult:
    """Run MMAS* on ``h``.

    A new solution replaces the best-so-far only when strictly lighter.
    The run stops after ``cfg.max_iterations`` constructions or as soon as
    the best fitness reaches ``cfg.target_fitness``.
    """
    validate(h)
    cfg = cfg.resolve(h.m)
    rng = make_rng(cfg.seed)
    eta = heuristic_info(h)
    logger.info(
        "Starting MMAS* run",
        extra={
            "n": h.n,
            "m": h.m,
            "alpha": cfg.alpha,
            "beta": cfg.beta,
            "pher_high": cfg.pher_high,
            "pher_low": cfg.pher_low,
            "seed": cfg.seed,
        },
    )

    pher = PheromoneState.initial(h)
    best = construct(h, pher, eta, cfg, rng)
    best_fitness = fitness(h, best)
    found = 1
    trace: List[Tuple[int, float]] = [(1, best_fitness)]
    pher = update_pheromones(pher, best, cfg)

    iteration = 1
    while iteration < cfg.max_iterations:
        if _reached(best_fitness, cfg.target_fitness):
            break
        iteration += 1
        candidate = construct(h, pher, eta, cfg, rng)
        candidate_fitness = fitness(h, candidate)
        if candidate_fitness < best_fitness:
            best, best_fitness, found = candidate, candidate_fitness, iteration
            trace.append((iteration, best_fitness))
            logger.debug(
                "Improved best-so-far",
                extra={"iteration": iteration, "fitness": best_fitness},
            )
            pher = update_pheromones(pher, best, cfg)

    logger.info(
        "Finished MMAS* run",
        extra={
            "iterations": iteration,
            "best_fitness": best_fitness,
            "iteration_found": found,
        },
    )
    return SolveResult(
        best_edges=best,
        best_fitness=best_fitness,
        iterations_run=iteration,
        iteration_found=found,
        trace=tuple(trace) if record_trace else None,
    )


def _reached(best_fitness: float, target: Optional[float]) -> bool:
    return target is not None and best_fitness <= target


__all__ = [
    "Heuristic",
    "PheromoneState",
    "construct",
    "feasible_neighborhood",
    "fitness",
    "heuristic_info",
    "selection_probabilities",
    "solve",
    "update_pheromones",
]

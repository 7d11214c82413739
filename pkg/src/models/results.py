"""Result records produced by the solver, oracles, generators and harness.

Each record knows how to turn itself into the plain dictionary that the
CLI prints as canonical JSON.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

from src.models.hypergraph import EdgeSet, Hypergraph, VertexSet


@dataclass(frozen=True)
class SolveResult:
    """Outcome of one MMAS* run.

    Attributes:
        best_edges: Best-so-far edge cover (1-based edge ids).
        best_fitness: Total weight of ``best_edges``.
        iterations_run: Number of constructions performed.
        iteration_found: Iteration at which ``best_edges`` was first constructed.
        trace: Improvement events ``(iteration, fitness)`` when recorded.
    """

    best_edges: EdgeSet
    best_fitness: float
    iterations_run: int
    iteration_found: int
    trace: Optional[Tuple[Tuple[int, float], ...]] = None

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "best_edges": sorted(self.best_edges),
            "best_fitness": self.best_fitness,
            "iterations_run": self.iterations_run,
            "iteration_found": self.iteration_found,
        }
        if self.trace is not None:
            payload["trace"] = [[i, f] for i, f in self.trace]
        return payload


@dataclass(frozen=True)
class ReductionResult:
    """A vertex-set answer obtained by solving edge cover on the dual."""

    problem: str
    witness: VertexSet
    value: float
    dual_result: SolveResult

    def to_dict(self) -> Dict[str, Any]:
        return {
            "problem": self.problem,
            "witness": sorted(self.witness),
            "value": self.value,
            "dual_result": self.dual_result.to_dict(),
        }


@dataclass(frozen=True)
class OracleResult:
    """Exhaustive optimum with a lexicographically smallest witness."""

    problem: str
    optimum_value: float
    one_witness: FrozenSet[int]
    all_optima_count: int

    @property
    def k(self) -> int:
        """Cardinality of the witness."""
        return len(self.one_witness)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "problem": self.problem,
            "value": self.optimum_value,
            "witness": sorted(self.one_witness),
            "optima_count": self.all_optima_count,
        }


@dataclass(frozen=True)
class PlantedInstance:
    """A generated hypergraph together with its planted cover S.

    ``optimal_cover``/``optimum_value`` describe a cover that is optimal;
    it equals ``planted_cover`` except when the literal Instance 1
    construction appended a redundant closing edge.
    """

    hypergraph: Hypergraph
    planted_cover: EdgeSet
    k: int
    eta_prime_min: float
    eta_1_max: float
    beta_star: Optional[float]
    optimal_cover: EdgeSet
    optimum_value: float
    generator_params: Dict[str, Any] = field(default_factory=dict)

    def metadata(self) -> Dict[str, Any]:
        """Sidecar payload stored next to the HGR file."""
        return {
            "planted_cover": sorted(self.planted_cover),
            "k": self.k,
            "eta_prime_min": self.eta_prime_min,
            "eta_1_max": self.eta_1_max,
            "beta_star": self.beta_star,
            "optimal_cover": sorted(self.optimal_cover),
            "optimum_value": self.optimum_value,
            "generator_params": dict(self.generator_params),
        }


@dataclass(frozen=True)
class BoundValue:
    """A closed-form bound with its natural logarithm."""

    theorem: str
    inputs: Dict[str, Any]
    value: float
    log_value: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem,
            "inputs": dict(self.inputs),
            "value": self.value,
            "log_value": self.log_value,
        }


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    iterations: int
    best_fitness: float
    success: bool


@dataclass(frozen=True)
class ExperimentReport:
    """Per-trial records of one grid point plus aggregates and a verdict.

    ``bound_kind`` tells how ``bound_value`` is compared: ``"time"`` bounds
    are upper bounds on mean iterations, ``"probability"`` bounds are lower
    bounds on the success frequency.
    """

    mode: str
    parameters: Dict[str, Any]
    records: Tuple[TrialRecord, ...]
    mean_iterations: float
    median_iterations: float
    iterations_standard_error: float
    success_frequency: float
    frequency_standard_error: float
    optimum_value: float
    bound_kind: Optional[str]
    bound_value: Optional[float]
    verdict: str
    notes: List[str] = field(default_factory=list)

    def summary(self) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "parameters": dict(self.parameters),
            "trials": len(self.records),
            "mean_iterations": self.mean_iterations,
            "median_iterations": self.median_iterations,
            "iterations_standard_error": self.iterations_standard_error,
            "success_frequency": self.success_frequency,
            "frequency_standard_error": self.frequency_standard_error,
            "optimum_value": self.optimum_value,
            "bound_kind": self.bound_kind,
            "bound_value": self.bound_value,
            "verdict": self.verdict,
            "notes": list(self.notes),
        }

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

from src.models.config import SolverConfig
from src.models.hypergraph import EdgeSet, Hypergraph
from src.models.results import BoundValue, PlantedInstance, TrialRecord


@dataclass(frozen=True)
class ExperimentContext:
    """The instance an experiment runs on, with its known optimum."""

    hypergraph: Hypergraph
    optimum_value: float
    optimal_cover: EdgeSet
    planted: Optional[PlantedInstance] = None
    source: str = ""


class Experiment(ABC):
    """One grid point of an experiment: a fixed instance and solver setting."""

    mode: str = ""
    # "time" bounds cap mean iterations, "probability" bounds floor success rates
    bound_kind: str = ""

    def __init__(self, context: ExperimentContext, cfg: SolverConfig) -> None:
        super().__init__()
        self.context = context
        self.cfg = cfg.resolve(context.hypergraph.m)

    @abstractmethod
    def run_trial(self, index: int, seed: int) -> TrialRecord:
        pass

    @abstractmethod
    def bound(self) -> Optional[BoundValue]:
        pass

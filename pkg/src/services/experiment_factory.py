"""Factory for experiment modes.

Maps the mode names accepted by experiment specs and the CLI onto the
:class:`~src.core.base.Experiment` strategies that run them.
"""

from typing import Dict, Type

from src.core.base import Experiment, ExperimentContext
from src.core.exceptions import ConfigError
from src.models.config import SolverConfig
from src.services.experiments import (
    AdversarialT1Experiment,
    ConstructionProbabilityExperiment,
    OptimizationTimeExperiment,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)


class ExperimentFactory:
    """Creates one experiment per grid point.

    The returned experiment already carries a resolved solver configuration,
    so pheromone levels default from the instance's edge count.
    """

    SUPPORTED_MODES: Dict[str, Type[Experiment]] = {
        "optimization_time": OptimizationTimeExperiment,
        "construction_probability": ConstructionProbabilityExperiment,
        "adversarial_t1": AdversarialT1Experiment,
    }

    @staticmethod
    def create(
        mode: str, context: ExperimentContext, cfg: SolverConfig
    ) -> Experiment:
        """Create the experiment for ``mode``.

        Raises:
            ConfigError: If the mode is unknown.
            PendantEdgesPresentError: For ``adversarial_t1`` on an instance
                with forced edges.
        """
        logger.debug(
            "Creating experiment",
            extra={"mode": mode, "alpha": cfg.alpha, "beta": cfg.beta},
        )
        if mode not in ExperimentFactory.SUPPORTED_MODES:
            logger.error(
                "Unsupported experiment mode requested",
                extra={
                    "mode": mode,
                    "supported_modes": list(ExperimentFactory.SUPPORTED_MODES),
                },
            )
            raise ConfigError(f"Unsupported experiment mode: {mode}", "mode")
        experiment_class = ExperimentFactory.SUPPORTED_MODES[mode]
        experiment = experiment_class(context, cfg)
        logger.debug(
            "Experiment created",
            extra={"mode": mode, "class": experiment_class.__name__},
        )
        return experiment

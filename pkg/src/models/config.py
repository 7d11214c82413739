"""Solver and experiment configuration.

Both configuration types are frozen dataclasses validated on
construction; an invalid value raises :class:`ConfigError` naming the
offending field.
"""

import itertools
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from src.core.exceptions import ConfigError
from src.utils.logger import get_logger

logger = get_logger(__name__)

MODES = ("optimization_time", "construction_probability", "adversarial_t1")
GENERATORS = ("instance1", "instance2", "random")
ITERATION_CAP = 10_000_000

# (alpha, beta, pher_high, pher_low); a None beta or level is resolved per instance
GridPoint = Tuple[float, Optional[float], Optional[float], Optional[float]]


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of one MMAS* run.

    Attributes:
        alpha: Pheromone exponent (α ≥ 0).
        beta: Heuristic exponent (β ≥ 0).
        pher_high: Upper pheromone level h; None selects ``max(1 - 1/m, 1/m)``.
        pher_low: Lower pheromone level l; None selects ``1/m``.
        max_iterations: Number of constructions before giving up.
        target_fitness: Stop as soon as the best fitness is at most this value.
        seed: 64-bit unsigned seed of the run's random stream.
    """

    alpha: float = 1.0
    beta: float = 1.0
    pher_high: Optional[float] = None
    pher_low: Optional[float] = None
    max_iterations: int = 1000
    target_fitness: Optional[float] = None
    seed: int = 0

    def __post_init__(self) -> None:
        if not (self.alpha >= 0 and math.isfinite(self.alpha)):
            raise ConfigError("alpha must be a finite non-negative number", "alpha")
        if not (self.beta >= 0 and math.isfinite(self.beta)):
            raise ConfigError("beta must be a finite non-negative number", "beta")
        if self.max_iterations < 1:
            raise ConfigError("max_iterations must be at least 1", "max_iterations")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer", "seed")
        if self.pher_low is not None and not self.pher_low > 0:
            raise ConfigError("pher_low must be positive", "pher_low")
        if self.pher_high is not None and not self.pher_high > 0:
            raise ConfigError("pher_high must be positive", "pher_high")
        if (
            self.pher_low is not None
            and self.pher_high is not None
            and self.pher_low > self.pher_high
        ):
            raise ConfigError("pheromone levels need 0 < l <= h", "pher_low")

    def levels(self, m: int) -> Tuple[float, float]:
        """Return (h, l), filling unset levels with the defaults for ``m`` edges."""
        low = self.pher_low if self.pher_low is not None else 1.0 / m
        high = self.pher_high if self.pher_high is not None else max(1.0 - 1.0 / m, low)
        if low > high:
            raise ConfigError("pheromone levels need 0 < l <= h", "pher_low")
        return high, low

    def resolve(self, m: int) -> "SolverConfig":
        high, low = self.levels(m)
        return replace(self, pher_high=high, pher_low=low)

    def with_seed(self, seed: int) -> "SolverConfig":
        return replace(self, seed=seed)


def _as_float_list(value: Any) -> List[Optional[float]]:
    if value is None:
        return [None]
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    if not isinstance(value, (list, tuple)):
        value = [value]
    out: List[Optional[float]] = []
    for item in value:
        if item is None or (isinstance(item, str) and item.strip().lower() == "auto"):
            out.append(None)
        else:
            out.append(float(item))
    return out


def _scalar(text: str) -> Any:
    """Parse a flat-file value as JSON when possible, else keep the string."""
    try:
        return json.loads(text)
    except ValueError:
        return text


@dataclass(frozen=True)
class ExperimentSpec:
    """Description of a repeated-trial experiment.

    The instance comes either from ``instance_path`` (an HGR file, with an
    optional metadata sidecar) or from ``generator`` plus ``generator_params``.
    A ``None`` entry in ``betas`` means "use the instance's β* rounded up".
    """

    mode: str = "optimization_time"
    trials: int = 100
    master_seed: int = 0
    instance_path: Optional[str] = None
    meta_path: Optional[str] = None
    generator: Optional[str] = None
    generator_params: Dict[str, Any] = field(default_factory=dict)
    alphas: Tuple[Optional[float], ...] = (1.0,)
    betas: Tuple[Optional[float], ...] = (1.0,)
    pher_highs: Tuple[Optional[float], ...] = (None,)
    pher_lows: Tuple[Optional[float], ...] = (None,)
    max_iterations: int = 100_000
    threads: Optional[int] = None

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {', '.join(MODES)}", "mode")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1", "trials")
        if self.instance_path is None and self.generator is None:
            raise ConfigError("an instance file or a generator is required", "instance")
        if self.generator is not None and self.generator not in GENERATORS:
            raise ConfigError(
                f"generator must be one of {', '.join(GENERATORS)}", "generator"
            )
        for name in ("alphas", "betas", "pher_highs", "pher_lows"):
            if not getattr(self, name):
                raise ConfigError("parameter grid must not be empty", name)
        if None in self.alphas:
            raise ConfigError("alpha cannot be 'auto'", "alphas")
        if not 1 <= self.max_iterations <= ITERATION_CAP:
            raise ConfigError(
                f"max_iterations must lie in 1..{ITERATION_CAP}", "max_iterations"
            )
        if self.threads is not None and self.threads < 1:
            raise ConfigError("threads must be positive", "threads")

    def grid(self) -> List[GridPoint]:
        """Cartesian product of (alpha, beta, pher_high, pher_low)."""
        return list(
            itertools.product(self.alphas, self.betas, self.pher_highs, self.pher_lows)
        )

    @classmethod
    def from_mapping(cls, data: Dict[str, Any]) -> "ExperimentSpec":
        """Build an ExperimentSpec from a JSON object or flat key/value pairs."""
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigError("unknown experiment keys", ", ".join(sorted(unknown)))
        kwargs: Dict[str, Any] = dict(data)
        try:
            for name in ("alphas", "betas", "pher_highs", "pher_lows"):
                if name in kwargs:
                    kwargs[name] = tuple(_as_float_list(kwargs[name]))
            for name in ("trials", "master_seed", "max_iterations", "threads"):
                if kwargs.get(name) is not None:
                    kwargs[name] = int(kwargs[name])
            if isinstance(kwargs.get("generator_params"), str):
                kwargs["generator_params"] = json.loads(kwargs["generator_params"])
            return cls(**kwargs)
        except (TypeError, ValueError) as error:
            raise ConfigError("invalid experiment configuration", str(error))

    @staticmethod
    def read_mapping(path: Union[str, Path]) -> Dict[str, Any]:
        """Read a JSON object, or flat ``key = value`` lines with '#' comments."""
        text = Path(path).read_text(encoding="utf-8")
        data: Dict[str, Any]
        if text.lstrip().startswith("{"):
            try:
                data = json.loads(text)
            except ValueError as error:
                raise ConfigError("malformed JSON experiment file", str(error))
        else:
            data = {}
            for number, raw in enumerate(text.splitlines(), start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError("expected 'key = value'", f"line {number}")
                key, value = (part.strip() for part in line.split("=", 1))
                if key.startswith("gen."):
                    params = data.setdefault("generator_params", {})
                    params[key[4:]] = _scalar(value)
                else:
                    data[key] = value
        logger.info("Loaded experiment configuration", extra={"path": str(path)})
        return data

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ExperimentSpec":
        return cls.from_mapping(cls.read_mapping(path))

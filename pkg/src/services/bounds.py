"""Closed-form runtime bounds for MMAS* on edge cover.

Three families of bounds are evaluated:

- pheromone-only worst case (α = 1, β = 0 with the optimal edges held at
  the low level): expected time ((m−k)c + k)! / (((m−k)c)! k!) with
  c = h/l, the inverse of the per-construction success probability;
- heuristic-only (α = 0): expected time [1 + (η_max/η_min)^β (m−k)]^k;
- heuristic-dominated instances: P′ = [1 + (η_1max/η′_min)^β (m−k)]^(−k),
  which is at least 1/e once β ≥ β* = log(k(m−k)) / log(η′_min/η_1max).

Every evaluator returns a :class:`BoundValue` carrying the natural log of
the value as well, so large instances stay representable.
"""

import math
from typing import Optional

from scipy.special import gammaln

from src.core.exceptions import PreconditionViolatedError
from src.models.results import BoundValue
from src.utils.logger import get_logger

logger = get_logger(__name__)

_MAX_LOG = math.log(1.7976931348623157e308)


def _from_log(log_value: float) -> float:
    return math.exp(log_value) if log_value < _MAX_LOG else math.inf


def _check_counts(m: int, k: int) -> None:
    if not 0 <= k <= m:
        logger.error("Bound inputs out of range", extra={"m": m, "k": k})
        raise PreconditionViolatedError("need 0 <= k <= m", f"m={m}, k={k}")


def _positive(name: str, value: float) -> None:
    if not (value > 0 and math.isfinite(value)):
        raise PreconditionViolatedError(f"{name} must be positive and finite", value)


def theorem1_bound(m: int, k: int, c_n: float) -> BoundValue:
    """Expected-time bound for the pheromone-only worst case.

    The factorials of the non-integer (m−k)·c_n are continued through the
    Gamma function; integral arguments are evaluated exactly.
    """
    _check_counts(m, k)
    if not c_n >= 1:
        raise PreconditionViolatedError("c_n = h/l must be at least 1", c_n)
    spread = (m - k) * c_n
    if float(spread).is_integer():
        exact = math.comb(int(spread) + k, k)
        log_value = math.log(exact)
        value = float(exact) if log_value < _MAX_LOG else math.inf
    else:
        log_value = float(
            gammaln(spread + k + 1) - gammaln(spread + 1) - gammaln(k + 1)
        )
        value = _from_log(log_value)
    return BoundValue("theorem1", {"m": m, "k": k, "c_n": c_n}, value, log_value)


def theorem1_success_probability(m: int, k: int, c_n: float) -> BoundValue:
    """Per-construction success probability lower bound k!((m−k)c)!/((m−k)c+k)!."""
    bound = theorem1_bound(m, k, c_n)
    return BoundValue(
        "theorem1_probability",
        bound.inputs,
        math.exp(-bound.log_value),
        -bound.log_value,
    )


def _heuristic_base(m: int, k: int, ratio: float, beta: float) -> float:
    return (ratio**beta) * (m - k)


def theorem2_bound(
    m: int, k: int, eta_max: float, eta_min: float, beta: float
) -> BoundValue:
    """Expected-time bound [1 + (η_max/η_min)^β (m−k)]^k for α = 0."""
    _check_counts(m, k)
    _positive("eta_min", eta_min)
    _positive("eta_max", eta_max)
    if eta_max < eta_min:
        raise PreconditionViolatedError("need eta_max >= eta_min", (eta_max, eta_min))
    if beta < 0:
        raise PreconditionViolatedError("beta must be non-negative", beta)
    log_value = k * math.log1p(_heuristic_base(m, k, eta_max / eta_min, beta))
    inputs = {"m": m, "k": k, "eta_max": eta_max, "eta_min": eta_min, "beta": beta}
    return BoundValue("theorem2", inputs, _from_log(log_value), log_value)


def theorem2_pmin(
    m: int, k: int, eta_max: float, eta_min: float, beta: float
) -> BoundValue:
    bound = theorem2_bound(m, k, eta_max, eta_min, beta)
    return BoundValue(
        "theorem2_probability",
        bound.inputs,
        math.exp(-bound.log_value),
        -bound.log_value,
    )


def beta_star(m: int, k: int, eta_prime_min: float, eta_1_max: float) -> BoundValue:
    """Smallest β for which the planted cover is built with probability ≥ 1/e.

    Raises:
        PreconditionViolatedError: If η′_min ≤ η_1max (no β works) or k is
            not in 1..m−1.
    """
    _positive("eta_prime_min", eta_prime_min)
    _positive("eta_1_max", eta_1_max)
    if not eta_prime_min > eta_1_max:
        logger.warning(
            "beta* undefined: planted edges are not strictly more attractive",
            extra={"eta_prime_min": eta_prime_min, "eta_1_max": eta_1_max},
        )
        raise PreconditionViolatedError(
            "beta* needs eta_prime_min > eta_1_max", (eta_prime_min, eta_1_max)
        )
    if not 1 <= k < m:
        raise PreconditionViolatedError("beta* needs 1 <= k < m", f"m={m}, k={k}")
    value = math.log(k * (m - k)) / math.log(eta_prime_min / eta_1_max)
    inputs = {"m": m, "k": k, "eta_prime_min": eta_prime_min, "eta_1_max": eta_1_max}
    log_value = math.log(value) if value > 0 else -math.inf
    return BoundValue("beta_star", inputs, value, log_value)


def theorem3_pmin(
    m: int, k: int, eta_prime_min: float, eta_1_max: float, beta: float
) -> BoundValue:
    """P′ = 1 / [1 + (η_1max/η′_min)^β (m−k)]^k."""
    _check_counts(m, k)
    _positive("eta_prime_min", eta_prime_min)
    _positive("eta_1_max", eta_1_max)
    log_value = -k * math.log1p(_heuristic_base(m, k, eta_1_max / eta_prime_min, beta))
    inputs = {
        "m": m,
        "k": k,
        "eta_prime_min": eta_prime_min,
        "eta_1_max": eta_1_max,
        "beta": beta,
    }
    return BoundValue("theorem3_probability", inputs, math.exp(log_value), log_value)


def expected_time_from_pmin(
    pmin: BoundValue, theorem: Optional[str] = None
) -> BoundValue:
    """Geometric waiting time 1/p for a per-construction success probability p."""
    return BoundValue(
        theorem or pmin.theorem.replace("_probability", ""),
        pmin.inputs,
        _from_log(-pmin.log_value),
        -pmin.log_value,
    )

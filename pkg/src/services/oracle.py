"""Exhaustive oracles for edge cover, vertex cover and weak-independent set.

These solvers enumerate every subset, so they are only meant for small
instances where they serve as ground truth for the heuristic solver.
Subsets are visited by cardinality and, within a cardinality, in
lexicographic order; the reported witness is the lexicographically
smallest optimal subset and every optimum is counted.
"""

import itertools
from typing import Callable, List, Optional, Sequence, Tuple

from src.core.exceptions import InstanceTooLargeError, ValidationError
from src.models.hypergraph import Hypergraph, validate
from src.models.results import OracleResult
from src.utils.logger import get_logger

logger = get_logger(__name__)

ENUMERATION_LIMIT = 24
TOLERANCE = 1e-9


def _guard(size: int, what: str) -> None:
    if size > ENUMERATION_LIMIT:
        logger.error(
            "Instance too large for exhaustive search",
            extra={"size": size, "limit": ENUMERATION_LIMIT, "dimension": what},
        )
        raise InstanceTooLargeError(size, ENUMERATION_LIMIT)


def _masks(sets: Sequence[frozenset]) -> List[int]:
    return [sum(1 << (v - 1) for v in members) for members in sets]


def _worse(value: float, reference: float, maximize: bool) -> bool:
    if maximize:
        return value < reference - TOLERANCE
    return value > reference + TOLERANCE


def _enumerate(
    weights: Sequence[float],
    feasible: Callable[[int], bool],
    maximize: bool,
) -> Tuple[float, Tuple[int, ...], int]:
    """Search all subsets of ``range(len(weights))``.

    Returns the optimum value, the lexicographically smallest optimal
    subset (0-based, sorted) and the number of optimal subsets.
    """
    size = len(weights)
    ascending = sorted(weights)
    best_value: Optional[float] = None
    witness: Tuple[int, ...] = ()
    count = 0

    sizes = range(size, -1, -1) if maximize else range(size + 1)
    for k in sizes:
        if best_value is not None:
            # every subset of this size is at best this good
            bound = sum(ascending[size - k :]) if maximize else sum(ascending[:k])
            if _worse(bound, best_value, maximize):
                break
        for combo in itertools.combinations(range(size), k):
            value = sum(weights[i] for i in combo)
            if best_value is not None:
                if _worse(value, best_value, maximize):
                    continue
            mask = 0
            for i in combo:
                mask |= 1 << i
            if not feasible(mask):
                continue
            if best_value is None or _worse(best_value, value, maximize):
                best_value, witness, count = value, combo, 1
            else:
                count += 1
                witness = min(witness, combo)
    if best_value is None:
        raise ValidationError("No feasible subset exists")
    return best_value, witness, count


def min_weight_edge_cover(h: Hypergraph) -> OracleResult:
    """Minimum-weight edge cover by exhaustive search over the 2^m edge subsets.

    Raises:
        InstanceTooLargeError: If m exceeds the enumeration limit.
    """
    validate(h)
    _guard(h.m, "edges")
    edge_masks = _masks([e.vertices for e in h.edges])
    full = (1 << h.n) - 1

    def covers(selection: int) -> bool:
        union = 0
        for i, edge_mask in enumerate(edge_masks):
            if selection >> i & 1:
                union |= edge_mask
        return union == full

    weights = [e.weight for e in h.edges]
    value, witness, count = _enumerate(weights, covers, maximize=False)
    logger.debug(
        "Edge cover oracle finished",
        extra={"m": h.m, "value": value, "optima": count},
    )
    return OracleResult(
        "edge-cover", value, frozenset(i + 1 for i in witness), count
    )


def _vertex_weights(h: Hypergraph, weighted: bool) -> List[float]:
    if not weighted:
        return [1.0] * h.n
    if h.vertex_weights is None:
        raise ValidationError("Hypergraph carries no vertex weights")
    return list(h.vertex_weights)


def min_vertex_cover(h: Hypergraph, weighted: bool = False) -> OracleResult:
    """Minimum (weight) vertex cover by exhaustive search over vertex subsets.

    Raises:
        InstanceTooLargeError: If n exceeds the enumeration limit.
    """
    validate(h)
    _guard(h.n, "vertices")
    edge_masks = _masks([e.vertices for e in h.edges])

    def hits_every_edge(selection: int) -> bool:
        return all(edge_mask & selection for edge_mask in edge_masks)

    value, witness, count = _enumerate(
        _vertex_weights(h, weighted), hits_every_edge, maximize=False
    )
    return OracleResult(
        "vertex-cover", value, frozenset(i + 1 for i in witness), count
    )


def max_weak_independent_set(h: Hypergraph, weighted: bool = False) -> OracleResult:
    """Maximum (weight) weak-independent set by exhaustive search.

    Raises:
        InstanceTooLargeError: If n exceeds the enumeration limit.
    """
    validate(h)
    _guard(h.n, "vertices")
    edge_masks = _masks([e.vertices for e in h.edges])

    def contains_no_edge(selection: int) -> bool:
        return all(edge_mask & selection != edge_mask for edge_mask in edge_masks)

    value, witness, count = _enumerate(
        _vertex_weights(h, weighted), contains_no_edge, maximize=True
    )
    return OracleResult(
        "weak-is", value, frozenset(i + 1 for i in witness), count
    )


PROBLEMS = {
    "edge-cover": min_weight_edge_cover,
    "vertex-cover": min_vertex_cover,
    "weak-is": max_weak_independent_set,
}

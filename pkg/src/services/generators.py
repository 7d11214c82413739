"""Instance generators with planted optimal covers.

- :func:`gen_instance1` builds the weighted complete r-uniform hypergraph
  whose ⌈n/r⌉ unit-weight edges form the optimum, every other edge
  weighing an integer ≥ 2.
- :func:`gen_instance2` builds an unweighted hypergraph from a
  non-increasing size sequence: near-disjoint edges Ψ covering V, then
  extra edges Φ no larger than the last Ψ edge.
- :func:`gen_random` builds an arbitrary valid hypergraph for testing.

All generators are deterministic for a given seed.
"""

import itertools
import math
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from src.core.exceptions import (
    ConfigError,
    InstanceTooLargeError,
    InvalidSequenceError,
    PreconditionViolatedError,
)
from src.models.hypergraph import Hyperedge, Hypergraph, validate
from src.models.results import PlantedInstance
from src.services import bounds
from src.solver.mmas import fitness, heuristic_info
from src.utils.logger import get_logger
from src.utils.rng import make_rng

logger = get_logger(__name__)

COMPLETE_EDGE_LIMIT = 2**16


def _eta_split(h: Hypergraph, planted: Set[int]) -> Tuple[float, float]:
    """(η′_min over planted edges, η_1max over the rest)."""
    eta = heuristic_info(h)
    planted_eta = [eta[e] for e in planted]
    others = [eta[e] for e in h.edge_ids if e not in planted]
    return min(planted_eta), (max(others) if others else 0.0)


def _planted(
    h: Hypergraph,
    planted: Set[int],
    optimal: Set[int],
    params: Dict[str, Any],
) -> PlantedInstance:
    validate(h)
    eta_prime_min, eta_1_max = _eta_split(h, planted)
    k = len(planted)
    star: Optional[float] = None
    if eta_1_max > 0:
        try:
            star = bounds.beta_star(h.m, k, eta_prime_min, eta_1_max).value
        except PreconditionViolatedError:
            star = None
    return PlantedInstance(
        hypergraph=h,
        planted_cover=frozenset(planted),
        k=k,
        eta_prime_min=eta_prime_min,
        eta_1_max=eta_1_max,
        beta_star=star,
        optimal_cover=frozenset(optimal),
        optimum_value=fitness(h, optimal),
        generator_params=params,
    )


def gen_instance1(
    n: int,
    r: int,
    seed: int,
    rand_max: int = 10,
    literal_closing_edge: bool = False,
) -> PlantedInstance:
    """Weighted complete r-uniform hypergraph with a planted unit-weight cover.

    ⌊n/r⌋ pairwise disjoint edges get weight 1, then one more unit edge
    containing the still-uncovered vertices closes the cover. Every other
    edge gets an integer weight drawn uniformly from ``[2, rand_max]``.

    The closing edge is only added while vertices remain uncovered. With
    ``literal_closing_edge`` it is added unconditionally, which leaves a
    redundant unit edge in S whenever r divides n; ``optimal_cover`` then
    excludes it.

    Raises:
        ConfigError: If ``2 <= r <= n`` or ``rand_max >= 2`` does not hold.
        InstanceTooLargeError: If C(n, r) exceeds 2^16.
    """
    if not 2 <= r <= n:
        raise ConfigError("instance1 needs 2 <= r <= n", f"n={n}, r={r}")
    if rand_max < 2:
        raise ConfigError("instance1 needs rand_max >= 2", rand_max)
    size = math.comb(n, r)
    if size > COMPLETE_EDGE_LIMIT:
        logger.error("Complete hypergraph too large", extra={"edges": size})
        raise InstanceTooLargeError(size, COMPLETE_EDGE_LIMIT)

    rng = make_rng(seed)
    all_edges = [frozenset(c) for c in itertools.combinations(range(1, n + 1), r)]
    position = {edge: index + 1 for index, edge in enumerate(all_edges)}

    vertices = [int(v) for v in rng.permutation(np.arange(1, n + 1))]
    disjoint = [frozenset(vertices[i * r : (i + 1) * r]) for i in range(n // r)]
    planted = [position[e] for e in disjoint]
    covered = frozenset().union(*disjoint)
    remaining = frozenset(range(1, n + 1)) - covered

    optimal = list(planted)
    if remaining or literal_closing_edge:
        closing = [
            position[e]
            for e in all_edges
            if remaining <= e and position[e] not in planted
        ]
        if closing:
            choice = closing[int(rng.integers(len(closing)))]
            planted.append(choice)
            if remaining:
                optimal.append(choice)

    planted_set = set(planted)
    weights = [
        1.0 if edge_id in planted_set else float(rng.integers(2, rand_max + 1))
        for edge_id in range(1, size + 1)
    ]
    h = Hypergraph(n, [Hyperedge(e, w) for e, w in zip(all_edges, weights)])
    params = {
        "generator": "instance1",
        "n": n,
        "r": r,
        "seed": seed,
        "rand_max": rand_max,
        "literal_closing_edge": literal_closing_edge,
    }
    instance = _planted(h, planted_set, set(optimal), params)
    logger.info(
        "Generated instance1",
        extra={"n": n, "r": r, "m": h.m, "k": instance.k, "seed": seed},
    )
    return instance


def _check_sequence(n: int, p_sequence: Sequence[int]) -> List[int]:
    sizes = [int(p) for p in p_sequence]
    if not sizes:
        raise InvalidSequenceError("p_sequence must not be empty")
    for index, p in enumerate(sizes):
        if not 2 <= p <= n:
            raise InvalidSequenceError("every size must satisfy 2 <= p <= n", p)
        if index and p > sizes[index - 1]:
            raise InvalidSequenceError("p_sequence must be non-increasing", sizes)
    return sizes


def gen_instance2(
    n: int, p_sequence: Sequence[int], extra_edges: int, seed: int
) -> PlantedInstance:
    """Unweighted hypergraph whose first edges Ψ form a minimum edge cover.

    Edge i of Ψ has size ``p_sequence[i]`` (the last size repeats). It is
    drawn inside the uncovered vertices while they are at least that many,
    otherwise it contains all of them plus covered vertices to reach the
    size. Then ``extra_edges`` new distinct edges Φ are added, sized by the
    rest of the sequence (its last value repeating).

    Raises:
        InvalidSequenceError: If the sequence is not non-increasing within
            ``2..n`` or no further distinct edge of the required size exists.
    """
    sizes = _check_sequence(n, p_sequence)
    if extra_edges < 0:
        raise InvalidSequenceError("extra_edges must be non-negative", extra_edges)
    rng = make_rng(seed)

    def size_at(index: int) -> int:
        return sizes[min(index, len(sizes) - 1)]

    edges: List[frozenset] = []
    covered: Set[int] = set()
    while len(covered) < n:
        p = size_at(len(edges))
        uncovered = sorted(set(range(1, n + 1)) - covered)
        if p <= len(uncovered):
            members = rng.choice(uncovered, size=p, replace=False)
            edge = frozenset(int(v) for v in members)
        else:
            fill = rng.choice(sorted(covered), size=p - len(uncovered), replace=False)
            edge = frozenset(uncovered) | frozenset(int(v) for v in fill)
        edges.append(edge)
        covered |= edge
    psi = len(edges)

    existing = set(edges)
    for extra in range(extra_edges):
        p = size_at(psi + extra)
        if math.comb(n, p) > COMPLETE_EDGE_LIMIT:
            raise InstanceTooLargeError(math.comb(n, p), COMPLETE_EDGE_LIMIT)
        free = [
            frozenset(c)
            for c in itertools.combinations(range(1, n + 1), p)
            if frozenset(c) not in existing
        ]
        if not free:
            raise InvalidSequenceError("no distinct edge of this size left", p)
        edge = free[int(rng.integers(len(free)))]
        edges.append(edge)
        existing.add(edge)

    h = Hypergraph(n, [Hyperedge(e, 1.0) for e in edges])
    planted = set(range(1, psi + 1))
    params = {
        "generator": "instance2",
        "n": n,
        "p_sequence": list(sizes),
        "extra_edges": extra_edges,
        "seed": seed,
    }
    instance = _planted(h, planted, planted, params)
    logger.info(
        "Generated instance2",
        extra={"n": n, "m": h.m, "k": instance.k, "seed": seed},
    )
    return instance


def gen_random(
    n: int, m: int, max_card: int, weighted: bool, seed: int
) -> Hypergraph:
    """Random valid hypergraph.

    Edge cardinalities are uniform in ``[1, max_card]``; any vertex left
    uncovered is then added to a random edge. Weights are integers uniform
    in ``[1, 10]`` when ``weighted``, otherwise 1.
    """
    if n < 1 or m < 1:
        raise ConfigError("gen_random needs n >= 1 and m >= 1", f"n={n}, m={m}")
    if not 1 <= max_card <= n:
        raise ConfigError("gen_random needs 1 <= max_card <= n", max_card)
    rng = make_rng(seed)
    members: List[Set[int]] = []
    for _ in range(m):
        size = int(rng.integers(1, max_card + 1))
        chosen = rng.choice(np.arange(1, n + 1), size=size, replace=False)
        members.append({int(v) for v in chosen})
    covered = set().union(*members)
    for vertex in range(1, n + 1):
        if vertex not in covered:
            members[int(rng.integers(m))].add(vertex)
    weights = (
        [float(w) for w in rng.integers(1, 11, size=m)] if weighted else [1.0] * m
    )
    h = Hypergraph(n, [Hyperedge(frozenset(s), w) for s, w in zip(members, weights)])
    validate(h)
    logger.debug("Generated random hypergraph", extra={"n": n, "m": m, "seed": seed})
    return h

"""Hypergraph model.

This module defines the immutable :class:`Hyperedge` and
:class:`Hypergraph` types together with the structural operations the
solvers rely on: validation, pendant-vertex detection, forced edges, the
cover and independence predicates, and the dual hypergraph.

Conventions
-----------
Vertex ids are dense and 1-based (``1..n``). Edge ids are the 1-based
positions of the edges in ``Hypergraph.edges``. Id sets are plain
``frozenset`` objects of those integers.
"""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import AbstractSet, FrozenSet, Iterable, Optional, Sequence, Tuple

import numpy as np

from src.core.exceptions import (
    EmptyEdgeError,
    NonPositiveWeightError,
    UncoveredVertexError,
    ValidationError,
    VertexRangeError,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

VertexSet = FrozenSet[int]
EdgeSet = FrozenSet[int]


@dataclass(frozen=True)
class Hyperedge:
    """A weighted, non-empty set of vertex ids."""

    vertices: FrozenSet[int]
    weight: float = 1.0

    @classmethod
    def of(cls, vertices: Iterable[int], weight: float = 1.0) -> "Hyperedge":
        """Build a hyperedge, rejecting repeated vertex ids.

        Raises:
            ValidationError: If a vertex id is listed more than once.
        """
        listed = [int(v) for v in vertices]
        unique = frozenset(listed)
        if len(unique) != len(listed):
            raise ValidationError("Hyperedge lists a vertex twice", sorted(listed))
        return cls(unique, float(weight))

    @property
    def cardinality(self) -> int:
        return len(self.vertices)


class Hypergraph:
    """An edge-weighted hypergraph on the vertex set ``{1..n}``.

    Construction only checks that ids are in range; the remaining
    structural requirements (non-empty edges, positive weights, every
    vertex covered) are checked by :func:`validate` so that invalid
    instances can still be represented and reported on.

    Attributes:
        n (int): Number of vertices.
        edges (tuple[Hyperedge, ...]): Edges in id order (edge id = position + 1).
        vertex_weights (tuple[float, ...] | None): Optional vertex weights,
            used by the weighted vertex-cover variant.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[Hyperedge],
        vertex_weights: Optional[Sequence[float]] = None,
    ) -> None:
        if n < 1:
            raise VertexRangeError("Hypergraph needs at least one vertex", n)
        self._n = int(n)
        self._edges: Tuple[Hyperedge, ...] = tuple(edges)
        for index, edge in enumerate(self._edges, start=1):
            for vertex in edge.vertices:
                if not 1 <= vertex <= self._n:
                    raise VertexRangeError(
                        "Vertex id out of range 1..n", f"edge {index}, vertex {vertex}"
                    )
        if vertex_weights is not None:
            if len(vertex_weights) != self._n:
                raise ValidationError(
                    "Expected one weight per vertex", len(vertex_weights)
                )
            self._vertex_weights: Optional[Tuple[float, ...]] = tuple(
                float(w) for w in vertex_weights
            )
        else:
            self._vertex_weights = None

    @classmethod
    def from_sets(
        cls,
        n: int,
        edge_sets: Iterable[Iterable[int]],
        weights: Optional[Sequence[float]] = None,
    ) -> "Hypergraph":
        """Convenience constructor from plain vertex lists and optional weights."""
        sets = [list(s) for s in edge_sets]
        if weights is None:
            weights = [1.0] * len(sets)
        if len(weights) != len(sets):
            raise ValidationError("Expected one weight per edge", len(weights))
        return cls(n, [Hyperedge.of(s, w) for s, w in zip(sets, weights)])

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Hyperedge, ...]:
        return self._edges

    @property
    def vertex_weights(self) -> Optional[Tuple[float, ...]]:
        return self._vertex_weights

    @property
    def vertex_ids(self) -> range:
        return range(1, self._n + 1)

    @property
    def edge_ids(self) -> range:
        return range(1, self.m + 1)

    def edge(self, edge_id: int) -> Hyperedge:
        if not 1 <= edge_id <= self.m:
            raise VertexRangeError("Edge id out of range 1..m", edge_id)
        return self._edges[edge_id - 1]

    def weight(self, edge_id: int) -> float:
        return self.edge(edge_id).weight

    def cardinality(self, edge_id: int) -> int:
        return self.edge(edge_id).cardinality

    @cached_property
    def incidence_matrix(self) -> np.ndarray:
        """Boolean m×n matrix; entry [i, j] is true iff vertex j+1 ∈ edge i+1."""
        matrix = np.zeros((self.m, self._n), dtype=bool)
        for row, edge in enumerate(self._edges):
            matrix[row, [v - 1 for v in edge.vertices]] = True
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def weights(self) -> np.ndarray:
        array = np.array([e.weight for e in self._edges], dtype=float)
        array.setflags(write=False)
        return array

    @cached_property
    def cardinalities(self) -> np.ndarray:
        array = np.array([e.cardinality for e in self._edges], dtype=float)
        array.setflags(write=False)
        return array

    @cached_property
    def _degrees(self) -> np.ndarray:
        array = self.incidence_matrix.sum(axis=0)
        array.setflags(write=False)
        return array

    @cached_property
    def forced_mask(self) -> np.ndarray:
        """Edge mask (by ``edge_id - 1``) of the edges holding a pendant vertex."""
        mask = self.incidence_matrix[:, self._degrees == 1].any(axis=1)
        mask.setflags(write=False)
        return mask

    @cached_property
    def forced_coverage(self) -> np.ndarray:
        """Vertex mask (by ``vertex - 1``) of what the forced edges cover."""
        coverage = self.incidence_matrix[self.forced_mask].any(axis=0)
        coverage.setflags(write=False)
        return coverage

    def degrees(self) -> np.ndarray:
        """Degree of every vertex, indexed by ``vertex - 1``."""
        return self._degrees.copy()

    def degree(self, vertex: int) -> int:
        self._check_vertices([vertex])
        return int(self.incidence_matrix[:, vertex - 1].sum())

    def uniformity(self) -> Optional[int]:
        """Return k if every edge has cardinality k, otherwise None."""
        sizes = {e.cardinality for e in self._edges}
        return sizes.pop() if len(sizes) == 1 else None

    def is_k_uniform(self, k: int) -> bool:
        return self.uniformity() == k

    def with_weights(self, weights: Sequence[float]) -> "Hypergraph":
        if len(weights) != self.m:
            raise ValidationError("Expected one weight per edge", len(weights))
        return Hypergraph(
            self._n,
            [Hyperedge(e.vertices, float(w)) for e, w in zip(self._edges, weights)],
            self._vertex_weights,
        )

    def unweighted(self) -> "Hypergraph":
        return self.with_weights([1.0] * self.m)

    def scaled(self, factor: float) -> "Hypergraph":
        """Copy with every edge weight multiplied by ``factor``."""
        return self.with_weights([e.weight * factor for e in self._edges])

    def _check_vertices(self, vertices: Iterable[int]) -> None:
        for vertex in vertices:
            if not 1 <= vertex <= self._n:
                raise VertexRangeError("Vertex id out of range 1..n", vertex)

    def _check_edges(self, edge_ids: Iterable[int]) -> None:
        for edge_id in edge_ids:
            if not 1 <= edge_id <= self.m:
                raise VertexRangeError("Edge id out of range 1..m", edge_id)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self._n == other._n
            and self._edges == other._edges
            and self._vertex_weights == other._vertex_weights
        )

    def __hash__(self) -> int:
        return hash((self._n, self._edges, self._vertex_weights))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self._n}, m={self.m})"


def validate(h: Hypergraph) -> None:
    """Check every hypergraph invariant, raising on the first violation.

    Raises:
        ValidationError: If the hypergraph has no edges.
        EmptyEdgeError: If an edge has no vertices.
        NonPositiveWeightError: If an edge weight is not a positive finite number.
        UncoveredVertexError: If a vertex belongs to no edge.
    """
    if h.m < 1:
        logger.error("Hypergraph has no edges", extra={"n": h.n})
        raise ValidationError("Hypergraph needs at least one edge", h.m)
    for edge_id, edge in enumerate(h.edges, start=1):
        if not edge.vertices:
            logger.error("Empty hyperedge", extra={"edge": edge_id})
            raise EmptyEdgeError(edge_id)
        if not (edge.weight > 0 and math.isfinite(edge.weight)):
            logger.error(
                "Non-positive hyperedge weight",
                extra={"edge": edge_id, "weight": edge.weight},
            )
            raise NonPositiveWeightError(edge_id, edge.weight)
    degrees = h.degrees()
    uncovered = np.flatnonzero(degrees == 0)
    if uncovered.size:
        vertex = int(uncovered[0]) + 1
        logger.error("Uncovered vertex", extra={"vertex": vertex, "n": h.n})
        raise UncoveredVertexError(vertex)


def is_valid(h: Hypergraph) -> bool:
    try:
        validate(h)
    except ValidationError:
        return False
    return True


def pendant_vertices(h: Hypergraph) -> VertexSet:
    """Vertices contained in exactly one hyperedge."""
    return frozenset(int(v) + 1 for v in np.flatnonzero(h.degrees() == 1))


def forced_edges(h: Hypergraph) -> EdgeSet:
    """Edges containing at least one pendant vertex; every edge cover holds them."""
    rows = np.flatnonzero(h.forced_mask)
    return frozenset(int(r) + 1 for r in rows)


def covered_vertices(h: Hypergraph, t: AbstractSet[int]) -> VertexSet:
    """Union of the vertex sets of the edges in ``t``."""
    h._check_edges(t)
    covered: set = set()
    for edge_id in t:
        covered |= h.edge(edge_id).vertices
    return frozenset(covered)


def is_edge_cover(h: Hypergraph, t: AbstractSet[int]) -> bool:
    return len(covered_vertices(h, t)) == h.n


def is_vertex_cover(h: Hypergraph, s: AbstractSet[int]) -> bool:
    h._check_vertices(s)
    return all(edge.vertices & s for edge in h.edges)


def is_weak_independent(h: Hypergraph, i: AbstractSet[int]) -> bool:
    """No edge lies completely inside ``i``."""
    h._check_vertices(i)
    return all(len(edge.vertices & i) < edge.cardinality for edge in h.edges)


def is_strong_independent(h: Hypergraph, i: AbstractSet[int]) -> bool:
    """Every edge meets ``i`` in at most one vertex."""
    h._check_vertices(i)
    return all(len(edge.vertices & i) <= 1 for edge in h.edges)


def dual(h: Hypergraph, carry_vertex_weights: bool = False) -> Hypergraph:
    """Return the dual hypergraph, whose incidence matrix is the transpose of h's.

    Vertex ``i`` of the dual stands for edge ``i`` of ``h`` and edge ``j``
    of the dual is the set of edges of ``h`` containing vertex ``j``. Dual
    edges have weight 1 unless ``carry_vertex_weights`` is set, in which
    case edge ``j`` takes the weight of vertex ``j`` of ``h``.

    Raises:
        ValidationError: If ``h`` is not a valid hypergraph, or vertex
            weights are requested but ``h`` has none.
    """
    validate(h)
    if carry_vertex_weights and h.vertex_weights is None:
        raise ValidationError("Hypergraph carries no vertex weights")
    transposed = h.incidence_matrix.T
    edges = []
    for vertex_index, row in enumerate(transposed):
        weight = h.vertex_weights[vertex_index] if carry_vertex_weights else 1.0
        members = frozenset(int(i) + 1 for i in np.flatnonzero(row))
        edges.append(Hyperedge(members, weight))
    return Hypergraph(h.m, edges)

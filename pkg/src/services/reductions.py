"""Vertex cover and weak-independent set through the edge-cover solver.

A vertex set S of H is a vertex cover exactly when the dual edges
standing for the vertices of S cover every dual vertex (that is, every
edge of H). Solving edge cover on the dual therefore solves vertex cover,
and the complement of a vertex cover is a weak-independent set.
"""

from src.core.exceptions import ValidationError
from src.models.config import SolverConfig
from src.models.hypergraph import (
    Hypergraph,
    dual,
    is_vertex_cover,
    is_weak_independent,
)
from src.models.results import ReductionResult
from src.solver.mmas import solve
from src.utils.logger import get_logger

logger = get_logger(__name__)


def solve_vertex_cover(
    h: Hypergraph, cfg: SolverConfig, weighted: bool = False
) -> ReductionResult:
    """Minimum vertex cover of ``h`` via MMAS* on its dual.

    Dual edge ``j`` is vertex ``j`` of ``h``, so the returned dual edge ids
    are the cover's vertex ids. With ``weighted`` the vertex weights of
    ``h`` become dual edge weights and the value is the cover weight.
    """
    result = solve(dual(h, carry_vertex_weights=weighted), cfg)
    witness = frozenset(result.best_edges)
    if not is_vertex_cover(h, witness):
        logger.error(
            "Dual edge cover did not map to a vertex cover",
            extra={"witness": sorted(witness)},
        )
        raise ValidationError("Mapped witness is not a vertex cover", sorted(witness))
    value = result.best_fitness if weighted else float(len(witness))
    logger.info(
        "Solved vertex cover through the dual",
        extra={"n": h.n, "m": h.m, "value": value},
    )
    return ReductionResult("vertex-cover", witness, value, result)


def solve_weak_independent_set(
    h: Hypergraph, cfg: SolverConfig, weighted: bool = False
) -> ReductionResult:
    """Maximum weak-independent set as the complement of a vertex cover."""
    cover = solve_vertex_cover(h, cfg, weighted)
    witness = frozenset(h.vertex_ids) - cover.witness
    if not is_weak_independent(h, witness):
        raise ValidationError("Complement is not weak-independent", sorted(witness))
    if weighted:
        assert h.vertex_weights is not None
        value = sum(h.vertex_weights[v - 1] for v in sorted(witness))
    else:
        value = float(h.n - len(cover.witness))
    return ReductionResult("weak-is", witness, value, cover.dual_result)


PROBLEMS = {
    "vertex-cover": solve_vertex_cover,
    "weak-is": solve_weak_independent_set,
}

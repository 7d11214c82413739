"""Sidecar JSON for generated instances.

The HGR file only stores the hypergraph; the planted cover and the
heuristic figures derived from it travel in a ``.meta.json`` next to it.
"""

from pathlib import Path
from typing import Any, Dict, Union

from src.core.exceptions import ValidationError
from src.models.hypergraph import Hypergraph, is_edge_cover
from src.models.results import PlantedInstance
from src.utils.logger import get_logger
from src.utils.serialization import read_json, write_json

logger = get_logger(__name__)

REQUIRED_KEYS = ("planted_cover", "k", "eta_prime_min", "eta_1_max")


def write_metadata(instance: PlantedInstance, path: Union[str, Path]) -> None:
    write_json(instance.metadata(), path)
    logger.info("Wrote instance metadata", extra={"path": str(path)})


def planted_from_metadata(h: Hypergraph, meta: Dict[str, Any]) -> PlantedInstance:
    """Rebuild a :class:`PlantedInstance` for ``h`` from a sidecar payload.

    Older sidecars without ``optimal_cover`` fall back to the planted cover.

    Raises:
        ValidationError: If keys are missing or the cover does not cover ``h``.
    """
    missing = [key for key in REQUIRED_KEYS if key not in meta]
    if missing:
        raise ValidationError("Metadata is missing keys", missing)
    planted = frozenset(int(e) for e in meta["planted_cover"])
    optimal = frozenset(int(e) for e in meta.get("optimal_cover", planted))
    h._check_edges(planted | optimal)
    if not is_edge_cover(h, optimal):
        logger.error(
            "Metadata cover does not cover the instance",
            extra={"optimal_cover": sorted(optimal)},
        )
        raise ValidationError("Metadata cover is not an edge cover", sorted(optimal))
    optimum = meta.get("optimum_value")
    if optimum is None:
        optimum = sum(h.weight(e) for e in sorted(optimal))
    beta_star = meta.get("beta_star")
    return PlantedInstance(
        hypergraph=h,
        planted_cover=planted,
        k=int(meta["k"]),
        eta_prime_min=float(meta["eta_prime_min"]),
        eta_1_max=float(meta["eta_1_max"]),
        beta_star=None if beta_star is None else float(beta_star),
        optimal_cover=optimal,
        optimum_value=float(optimum),
        generator_params=dict(meta.get("generator_params", {})),
    )


def read_metadata(h: Hypergraph, path: Union[str, Path]) -> PlantedInstance:
    meta = read_json(path)
    if not isinstance(meta, dict):
        raise ValidationError("Metadata must be a JSON object", str(path))
    return planted_from_metadata(h, meta)

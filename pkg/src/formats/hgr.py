"""HGR text format reader and writer.

Layout::

    # comments start with '#'
    n m
    w v1 v2 ... vk      (one line per edge, in edge-id order)

Weights come first on each edge line, followed by 1-based vertex ids.
The writer is byte-stable: the same hypergraph always produces the same
text.
"""

import math
from pathlib import Path
from typing import Iterator, List, Tuple, Union

import numpy as np

from src.core.exceptions import HgrParseError, ValidationError
from src.models.hypergraph import Hyperedge, Hypergraph
from src.utils.logger import get_logger

logger = get_logger(__name__)


def format_weight(weight: float) -> str:
    """Shortest round-tripping decimal, never in scientific notation; 2.0 -> '2'."""
    return np.format_float_positional(float(weight), unique=True, trim="-")


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _parse_int(token: str, number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise HgrParseError(f"Expected an integer {what}, got {token!r}", number)


def loads(text: str) -> Hypergraph:
    """Parse HGR text into a :class:`Hypergraph`.

    Only the file structure and id ranges are checked here; call
    :func:`src.models.hypergraph.validate` for the structural invariants.

    Raises:
        HgrParseError: On malformed input; the error carries the line number.
    """
    lines = _content_lines(text)
    try:
        number, header = next(lines)
    except StopIteration:
        raise HgrParseError("Missing 'n m' header", 1)
    parts = header.split()
    if len(parts) != 2:
        raise HgrParseError("Header must be 'n m'", number)
    n = _parse_int(parts[0], number, "vertex count")
    m = _parse_int(parts[1], number, "edge count")
    if n < 1 or m < 1:
        raise HgrParseError("Header counts must be positive", number)

    edges: List[Hyperedge] = []
    last_line = number
    for number, line in lines:
        last_line = number
        if len(edges) == m:
            raise HgrParseError(f"More than {m} edge lines", number)
        tokens = line.split()
        try:
            weight = float(tokens[0])
        except ValueError:
            raise HgrParseError(f"Invalid weight {tokens[0]!r}", number)
        if not math.isfinite(weight):
            raise HgrParseError(f"Invalid weight {tokens[0]!r}", number)
        vertices = [_parse_int(t, number, "vertex id") for t in tokens[1:]]
        for vertex in vertices:
            if not 1 <= vertex <= n:
                raise HgrParseError(f"Vertex id {vertex} outside 1..{n}", number)
        try:
            edges.append(Hyperedge.of(vertices, weight))
        except ValidationError as error:
            raise HgrParseError(error.message, number)
    if len(edges) != m:
        raise HgrParseError(f"Expected {m} edge lines, found {len(edges)}", last_line)

    logger.debug("Parsed HGR text", extra={"n": n, "m": m})
    return Hypergraph(n, edges)


def dumps(h: Hypergraph) -> str:
    """Serialize ``h`` to HGR text (vertex ids ascending within each line)."""
    out = [f"{h.n} {h.m}"]
    for edge in h.edges:
        ids = " ".join(str(v) for v in sorted(edge.vertices))
        out.append(f"{format_weight(edge.weight)} {ids}".rstrip())
    return "\n".join(out) + "\n"


def read_hgr(path: Union[str, Path]) -> Hypergraph:
    logger.info("Reading HGR file", extra={"path": str(path)})
    return loads(Path(path).read_text(encoding="utf-8"))


def write_hgr(h: Hypergraph, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(h), encoding="utf-8")
    logger.info("Wrote HGR file", extra={"path": str(path), "n": h.n, "m": h.m})

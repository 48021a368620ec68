"""Text format for embedded planar digraphs.

One record per line::

    p <n> <arc_count>
    a <arc_id> <tail> <head> <weight>
    r <vertex> <endpoint> <endpoint> ...

An endpoint is ``<arc_id>:t`` (arc leaves this vertex) or ``<arc_id>:h``
(arc enters). Lines starting with ``#`` are comments. Weights are decimal
integers or decimals. Arc ids must be dense in ``[0, arc_count)`` and every
vertex needs an ``r`` line (possibly empty, for isolated vertices).

Writing is canonical -- ``write_graph(parse_graph(text)) == text`` whenever
``text`` itself was produced by :func:`write_graph` -- so generator output
round-trips byte-identically. Graphs whose slots carry two arcs (after
normalization/triangulation) are written as two adjacent endpoints per slot
and parse back to an equivalent embedding with one slot per arc.
"""

from __future__ import annotations

import io

from .embedding import (HEAD_END, TAIL_END, PlanarGraph, build_graph,
                        format_weight)
from .errors import DanglingReference, EmbeddingInvalid


class FormatError(EmbeddingInvalid):
    """Malformed text input."""


def parse_weight(token: str):
    try:
        return int(token)
    except ValueError:
        try:
            return float(token)
        except ValueError:
            raise FormatError(f"bad weight {token!r}") from None


def parse_graph(text: str) -> PlanarGraph:
    """Parse the text format into a validated PlanarGraph."""
    n = None
    arc_count = None
    arcs: list[tuple[int, int, object] | None] = []
    rotations: dict[int, list[tuple[int, str]]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        kind = fields[0]
        try:
            if kind == "p":
                if n is not None:
                    raise FormatError("duplicate p line")
                n, arc_count = int(fields[1]), int(fields[2])
                arcs = [None] * arc_count
            elif kind == "a":
                if n is None:
                    raise FormatError("a line before p line")
                aid, tail, head = int(fields[1]), int(fields[2]), int(fields[3])
                if not (0 <= aid < arc_count):
                    raise DanglingReference(f"arc id {aid} out of range")
                if arcs[aid] is not None:
                    raise FormatError(f"duplicate arc id {aid}")
                arcs[aid] = (tail, head, parse_weight(fields[4]))
            elif kind == "r":
                if n is None:
                    raise FormatError("r line before p line")
                v = int(fields[1])
                if not (0 <= v < n):
                    raise DanglingReference(f"vertex {v} out of range")
                if v in rotations:
                    raise FormatError(f"duplicate r line for vertex {v}")
                entries = []
                for tok in fields[2:]:
                    aid_s, _, end = tok.partition(":")
                    aid = int(aid_s)
                    if end not in (TAIL_END, HEAD_END):
                        raise FormatError(f"bad endpoint {tok!r}")
                    entries.append((aid, end))
                rotations[v] = entries
            else:
                raise FormatError(f"unknown record {kind!r}")
        except (IndexError, ValueError) as exc:
            raise FormatError(f"line {lineno}: {raw!r}: {exc}") from None

    if n is None:
        raise FormatError("missing p line")
    missing = [a for a, rec in enumerate(arcs) if rec is None]
    if missing:
        raise FormatError(f"arc {missing[0]} declared but never defined")
    rot_list = []
    for v in range(n):
        if v not in rotations:
            raise EmbeddingInvalid(f"vertex {v} has no r line")
        rot_list.append(rotations[v])
    return build_graph(n, arcs, rot_list)


def write_graph(g: PlanarGraph) -> str:
    """Serialize a PlanarGraph canonically."""
    out = io.StringIO()
    out.write(f"p {g.n} {g.num_arcs}\n")
    for a in range(g.num_arcs):
        out.write(f"a {a} {int(g.arc_tail[a])} {int(g.arc_head[a])} "
                  f"{format_weight(g.arc_weight[a].item())}\n")
    for v in range(g.n):
        tokens = []
        for d in g.rot[v]:
            s, side = divmod(d, 2)
            fwd, bwd = int(g.slot_fwd[s]), int(g.slot_bwd[s])
            if side == 0:  # dart leaves slot_u
                if fwd >= 0:
                    tokens.append(f"{fwd}:{TAIL_END}")
                if bwd >= 0:
                    tokens.append(f"{bwd}:{HEAD_END}")
            else:
                if fwd >= 0:
                    tokens.append(f"{fwd}:{HEAD_END}")
                if bwd >= 0:
                    tokens.append(f"{bwd}:{TAIL_END}")
        out.write("r " + " ".join([str(v)] + tokens) + "\n")
    return out.getvalue()


def read_graph_file(path) -> PlanarGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph_file(g: PlanarGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_graph(g))

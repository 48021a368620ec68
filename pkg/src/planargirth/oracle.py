"""Brute-force ground truth for distances, girth and witnesses.

Everything here is deliberately independent of the recursive engine: plain
Floyd-Warshall closure over a dense matrix, vectorized with numpy. Weights
are carried in float64, which is exact for the integer ranges this package
accepts, so integer-mode comparisons downstream can demand equality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embedding import GirthValue, PlanarGraph
from .errors import CapExceeded

DEFAULT_CAP = 1024


@dataclass
class DistanceTable:
    """All-pairs distances with predecessor matrix.

    ``dist[i, j]`` is the shortest i->j path weight (+inf if unreachable);
    ``pred[i, j]`` is the vertex preceding ``j`` on such a path (-1 at the
    diagonal and for unreachable pairs). ``has_negative_cycle`` reports a
    strictly negative diagonal after closure.
    """

    dist: np.ndarray
    pred: np.ndarray
    int_mode: bool

    @property
    def has_negative_cycle(self) -> bool:
        return bool(np.any(np.diag(self.dist) < 0))


def _dense_arrays(g: PlanarGraph):
    """Adjacency matrix of minimum arc weights plus the argmin arc ids.

    Self-loops are excluded; they are scored separately by the callers.
    """
    n = g.n
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    arc_at = np.full((n, n), -1, dtype=np.int64)
    for a in range(g.num_arcs):
        t, h = int(g.arc_tail[a]), int(g.arc_head[a])
        if t == h:
            continue
        w = float(g.arc_weight[a])
        if arc_at[t, h] < 0 or w < dist[t, h]:
            dist[t, h] = w
            arc_at[t, h] = a
    return dist, arc_at


def oracle_apsp(g: PlanarGraph, cap: int = DEFAULT_CAP) -> DistanceTable:
    """Floyd-Warshall closure. Raises CapExceeded above ``cap`` vertices."""
    if g.n > cap:
        raise CapExceeded(f"oracle cap {cap} exceeded by n={g.n}")
    dist, arc_at = _dense_arrays(g)
    n = g.n
    pred = np.full((n, n), -1, dtype=np.int64)
    direct = arc_at >= 0
    pred[direct] = np.broadcast_to(np.arange(n)[:, None], (n, n))[direct]
    for k in range(n):
        via = dist[:, k:k + 1] + dist[k:k + 1, :]
        better = via < dist
        if better.any():
            dist[better] = via[better]
            pred[better] = np.broadcast_to(pred[k:k + 1, :], (n, n))[better]
    return DistanceTable(dist, pred, g.int_mode)


def _loop_minimum(g: PlanarGraph) -> tuple[float, int | None]:
    best, arc = np.inf, None
    for a in range(g.num_arcs):
        if g.arc_tail[a] == g.arc_head[a]:
            w = float(g.arc_weight[a])
            if w < best:
                best, arc = w, a
    return best, arc


def _as_weight(value: float, int_mode: bool):
    if int_mode:
        i = int(round(value))
        assert i == value, "integer-mode weight came out fractional"
        return i
    return value


def oracle_girth(g: PlanarGraph, cap: int = DEFAULT_CAP) -> GirthValue:
    """Exact girth by exhaustive closure.

    -inf when any negative cycle (including a negative self-loop) exists,
    +inf when the graph is acyclic, else the minimum cycle weight: the best
    of ``dist(head, tail) + w`` over arcs and the best self-loop.
    """
    value, _, _ = _girth_with_argmin(g, cap)
    return value


def _girth_with_argmin(g: PlanarGraph, cap: int):
    loop_w, loop_arc = _loop_minimum(g)
    if loop_w < 0:
        return GirthValue.minus_infinity(), None, loop_arc
    table = oracle_apsp(g, cap)
    if table.has_negative_cycle:
        return GirthValue.minus_infinity(), None, loop_arc
    best = np.inf
    best_arc = None
    for a in range(g.num_arcs):
        t, h = int(g.arc_tail[a]), int(g.arc_head[a])
        if t == h:
            continue
        cand = table.dist[h, t] + float(g.arc_weight[a])
        if cand < best:
            best, best_arc = cand, a
    if loop_w < best:
        best, best_arc = loop_w, loop_arc
    if not np.isfinite(best):
        return GirthValue.plus_infinity(), table, None
    return GirthValue.finite(_as_weight(best, g.int_mode)), table, best_arc


def oracle_cycle(g: PlanarGraph, cap: int = DEFAULT_CAP):
    """One witness cycle attaining the oracle girth, or None for +/-inf.

    Returns a list of arc ids forming a closed, vertex-simple chain whose
    weight equals ``oracle_girth(g)``.
    """
    value, table, best_arc = _girth_with_argmin(g, cap)
    if not value.is_finite:
        return None
    t, h = int(g.arc_tail[best_arc]), int(g.arc_head[best_arc])
    if t == h:
        return [best_arc]
    verts = _reconstruct_path(table.pred, h, t)
    _, arc_at = _dense_arrays(g)
    arcs = [best_arc]
    for u, v in zip(verts, verts[1:]):
        arcs.append(int(arc_at[u, v]))
    vertex_seq = [t] + verts  # closed: t -> h ... -> t
    arcs = _splice_zero_cycles(g, arcs, vertex_seq)
    return arcs


def _reconstruct_path(pred: np.ndarray, src: int, dst: int) -> list[int]:
    """Vertex sequence src..dst following the predecessor matrix."""
    if src == dst:
        return [src]
    chain = [dst]
    v = dst
    guard = pred.shape[0] + 1
    while v != src:
        v = int(pred[src, v])
        assert v >= 0 and guard > 0, "broken predecessor chain"
        chain.append(v)
        guard -= 1
    chain.reverse()
    return chain


def _splice_zero_cycles(g: PlanarGraph, arcs: list[int],
                        vertex_seq: list[int]) -> list[int]:
    """Remove zero-weight closed subwalks so the witness is vertex-simple.

    With no negative cycles any repeated vertex bounds a subwalk of weight
    >= 0, and a positive one would contradict girth minimality, so splicing
    preserves the total weight.
    """
    changed = True
    while changed:
        changed = False
        seen: dict[int, int] = {}
        for i, v in enumerate(vertex_seq[:-1]):
            if v in seen:
                j = seen[v]
                sub = arcs[j:i]
                sub_w = sum(float(g.arc_weight[a]) for a in sub)
                assert sub_w >= 0, "negative subcycle inside a witness"
                del arcs[j:i]
                del vertex_seq[j:i]
                changed = True
                break
            seen[v] = i
    return arcs

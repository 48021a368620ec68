"""Embedded instance generators.

All shapes are produced from straight-line planar drawings, so rotations
come from sorting incident curves by angle and the embedding is valid by
construction. Every undirected edge of the drawing carries one or two
directed arcs depending on the direction mode, each on its own slot.

``potential-screened`` weighting draws nonnegative base costs ``c`` and
vertex potentials ``p`` and emits ``w(u, v) = c + p[u] - p[v]``; every cycle
weight then telescopes to a sum of nonnegative costs, so no negative cycle
can exist. ``raw`` weighting draws signed weights directly and makes no
such promise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .embedding import PlanarGraph, build_graph
from .errors import InvalidSpec

SHAPES = ("grid", "wheel", "nested")
SAFETIES = ("potential-screened", "raw")
DIRECTIONS = ("mixed", "acyclic", "both")


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one generated instance.

    ``shape`` picks the drawing: ``grid`` (rows x cols with one diagonal
    per cell), ``wheel`` (hub plus k-vertex rim), or ``nested`` (concentric
    triangles, consecutive layers joined into a triangulated shell).
    ``direction`` controls arc orientation: ``mixed`` flips a coin per edge
    between one random direction and both, ``acyclic`` orients every edge
    from lower to higher vertex id, ``both`` always emits both directions.
    """

    shape: str = "grid"
    rows: int = 3
    cols: int = 3
    k: int = 8
    layers: int = 3
    weight_range: tuple[int, int] = (-8, 32)
    negative_fraction: float = 0.25
    safety: str = "potential-screened"
    seed: int = 0
    direction: str = "mixed"

    def validate(self) -> None:
        if self.shape not in SHAPES:
            raise InvalidSpec(f"unknown shape {self.shape!r}")
        if self.safety not in SAFETIES:
            raise InvalidSpec(f"unknown safety mode {self.safety!r}")
        if self.direction not in DIRECTIONS:
            raise InvalidSpec(f"unknown direction mode {self.direction!r}")
        lo, hi = self.weight_range
        if lo > hi:
            raise InvalidSpec(f"weight range {self.weight_range} is empty")
        if not (0.0 <= self.negative_fraction <= 1.0):
            raise InvalidSpec("negative_fraction must lie in [0, 1]")
        if self.shape == "grid" and (self.rows < 2 or self.cols < 2):
            raise InvalidSpec("grid needs rows, cols >= 2")
        if self.shape == "wheel" and self.k < 3:
            raise InvalidSpec("wheel needs k >= 3")
        if self.shape == "nested" and self.layers < 1:
            raise InvalidSpec("nested needs layers >= 1")


# ---------------------------------------------------------------------------
# Drawings: vertex coordinates plus undirected edges
# ---------------------------------------------------------------------------


def _draw_grid(rows: int, cols: int):
    coords = [(float(j), float(-i)) for i in range(rows) for j in range(cols)]
    vid = lambda i, j: i * cols + j
    edges = []
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                edges.append((vid(i, j), vid(i, j + 1)))
            if i + 1 < rows:
                edges.append((vid(i, j), vid(i + 1, j)))
            if i + 1 < rows and j + 1 < cols:
                edges.append((vid(i, j), vid(i + 1, j + 1)))
    return coords, edges


def _draw_wheel(k: int):
    coords = [(0.0, 0.0)]
    for i in range(k):
        ang = 2 * math.pi * i / k
        coords.append((math.cos(ang), math.sin(ang)))
    edges = [(0, 1 + i) for i in range(k)]
    edges += [(1 + i, 1 + (i + 1) % k) for i in range(k)]
    return coords, edges


def _draw_nested(layers: int):
    # geometric radii keep every chord inside its annulus, so the
    # straight-line drawing stays planar at any depth
    coords = []
    edges = []
    for t in range(layers):
        r = 2.0 ** (layers - t)
        for i in range(3):
            ang = 2 * math.pi * i / 3
            coords.append((r * math.cos(ang), r * math.sin(ang)))
        base = 3 * t
        for i in range(3):
            edges.append((base + i, base + (i + 1) % 3))
        if t > 0:
            prev = base - 3
            for i in range(3):
                edges.append((prev + i, base + i))
                edges.append((prev + (i + 1) % 3, base + i))
    return coords, edges


# ---------------------------------------------------------------------------
# Weights and orientation
# ---------------------------------------------------------------------------


def _edge_arcs(edges, spec: GenSpec, rng) -> list[tuple[int, int]]:
    arcs = []
    for u, v in edges:
        if spec.direction == "both":
            arcs.append((u, v))
            arcs.append((v, u))
        elif spec.direction == "acyclic":
            arcs.append((u, v) if u < v else (v, u))
        else:
            roll = rng.integers(0, 4)
            if roll == 0:
                arcs.append((u, v))
            elif roll == 1:
                arcs.append((v, u))
            else:
                arcs.append((u, v))
                arcs.append((v, u))
    return arcs


def _weights(arcs, n: int, spec: GenSpec, rng) -> list[int]:
    lo, hi = spec.weight_range
    top = max(hi, 0)
    if spec.safety == "potential-screened":
        amp = max(0, -min(lo, 0))
        pot = rng.integers(0, amp + 1, size=n)
        ws = []
        for t, h in arcs:
            c = int(rng.integers(0, top + 1))
            ws.append(c + int(pot[t]) - int(pot[h]))
        return ws
    ws = []
    for _ in arcs:
        if lo < 0 and rng.random() < spec.negative_fraction:
            ws.append(int(rng.integers(lo, 0)))
        else:
            ws.append(int(rng.integers(0, top + 1)))
    return ws


def gen(spec: GenSpec) -> PlanarGraph:
    """Generate one embedded instance, deterministically in ``spec.seed``."""
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    if spec.shape == "grid":
        coords, edges = _draw_grid(spec.rows, spec.cols)
    elif spec.shape == "wheel":
        coords, edges = _draw_wheel(spec.k)
    else:
        coords, edges = _draw_nested(spec.layers)
    n = len(coords)

    arcs_dir = _edge_arcs(edges, spec, rng)
    weights = _weights(arcs_dir, n, spec, rng)
    arcs = [(t, h, w) for (t, h), w in zip(arcs_dir, weights)]

    # group arc endpoints per undirected edge so both curves of an
    # antiparallel pair sit adjacently in the rotations
    by_edge: dict[tuple[int, int], list[int]] = {}
    for a, (t, h, _) in enumerate(arcs):
        key = (t, h) if t < h else (h, t)
        by_edge.setdefault(key, []).append(a)

    incident: dict[int, list[tuple[float, tuple[int, int], int]]] = {
        v: [] for v in range(n)}
    for (u, v), arc_ids in by_edge.items():
        du = (coords[v][0] - coords[u][0], coords[v][1] - coords[u][1])
        incident[u].append((math.atan2(du[1], du[0]), (u, v), 0))
        incident[v].append((math.atan2(-du[1], -du[0]), (u, v), 1))

    rotations = []
    for v in range(n):
        entries = []
        # clockwise = decreasing angle; the two curves of one edge nest,
        # so their order flips between the endpoints
        for _, key, side in sorted(incident[v], key=lambda t: -t[0]):
            strand = by_edge[key] if side == 0 else list(reversed(by_edge[key]))
            for a in strand:
                end = "t" if arcs[a][0] == v else "h"
                entries.append((a, end))
        rotations.append(entries)
    return build_graph(n, arcs, rotations)


def instance_size(spec: GenSpec) -> int:
    if spec.shape == "grid":
        return spec.rows * spec.cols
    if spec.shape == "wheel":
        return spec.k + 1
    return 3 * spec.layers


def spec_for_size(shape: str, n: int, **kwargs) -> GenSpec:
    """A GenSpec of the given shape with roughly ``n`` vertices."""
    if shape == "grid":
        rows = max(2, int(math.isqrt(n)))
        cols = max(2, (n + rows - 1) // rows)
        return GenSpec(shape="grid", rows=rows, cols=cols, **kwargs)
    if shape == "wheel":
        return GenSpec(shape="wheel", k=max(3, n - 1), **kwargs)
    if shape == "nested":
        return GenSpec(shape="nested", layers=max(1, n // 3), **kwargs)
    raise InvalidSpec(f"unknown shape {shape!r}")

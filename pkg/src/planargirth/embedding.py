"""Embedded planar digraphs: slots, darts, rotations and face tracing.

The embedding is a rotation system over *slots*. A slot is one embedded
curve between two vertices; it carries up to two directed arcs, at most one
per direction. Slot ``s`` owns dart ``2*s`` (leaving ``slot_u[s]``) and dart
``2*s + 1`` (leaving ``slot_v[s]``); ``twin(d) == d ^ 1``. Each vertex lists
its outgoing darts in clockwise order and faces are the orbits of
``d -> rot_next[twin(d)]``.

Freshly built graphs (see :func:`build_graph`) put every arc on its own
slot; :func:`planargirth.triangulate.normalize` merges antiparallel arcs
onto shared slots so the underlying undirected graph becomes simple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DanglingReference, EmbeddingInvalid

#: Weight magnitudes above this make float64 distance sums inexact.
MAX_WEIGHT_MAGNITUDE = 2**31


# ---------------------------------------------------------------------------
# Girth values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GirthValue:
    """Weighted girth: a finite cycle weight, +infinity, or -infinity."""

    kind: str  # "finite" | "+inf" | "-inf"
    weight: float | int | None = None

    @staticmethod
    def finite(weight) -> "GirthValue":
        return GirthValue("finite", weight)

    @staticmethod
    def plus_infinity() -> "GirthValue":
        return GirthValue("+inf")

    @staticmethod
    def minus_infinity() -> "GirthValue":
        return GirthValue("-inf")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self) -> str:
        if self.kind == "finite":
            return format_weight(self.weight)
        return self.kind


def format_weight(w) -> str:
    """Render a weight the way the text format writes it."""
    if isinstance(w, (int, np.integer)):
        return str(int(w))
    f = float(w)
    if f.is_integer():
        return str(int(f))
    return repr(f)


# ---------------------------------------------------------------------------
# The graph
# ---------------------------------------------------------------------------


class PlanarGraph:
    """Immutable embedded planar digraph.

    Attributes:
        n: number of vertices (ids ``0..n-1``).
        slot_u, slot_v: per-slot endpoint arrays.
        slot_fwd, slot_bwd: arc id carried in each direction, -1 if absent
            (``fwd`` runs from ``slot_u`` to ``slot_v``).
        arc_tail, arc_head, arc_weight, arc_original, arc_slot: arc arrays.
        rot: per-vertex tuple of outgoing darts in clockwise order.
        int_mode: True when every weight is integral (exact arithmetic).
    """

    def __init__(self, n, slot_u, slot_v, slot_fwd, slot_bwd,
                 arc_tail, arc_head, arc_weight, arc_original, arc_slot,
                 rot, validate: bool = True):
        self.n = int(n)
        self.slot_u = np.asarray(slot_u, dtype=np.int64)
        self.slot_v = np.asarray(slot_v, dtype=np.int64)
        self.slot_fwd = np.asarray(slot_fwd, dtype=np.int64)
        self.slot_bwd = np.asarray(slot_bwd, dtype=np.int64)
        self.arc_tail = np.asarray(arc_tail, dtype=np.int64)
        self.arc_head = np.asarray(arc_head, dtype=np.int64)
        self.arc_weight = _weight_array(arc_weight)
        self.arc_original = np.asarray(arc_original, dtype=bool)
        self.arc_slot = np.asarray(arc_slot, dtype=np.int64)
        self.rot = tuple(tuple(int(d) for d in r) for r in rot)
        self.int_mode = self.arc_weight.dtype == np.int64
        self._faces = None
        self._face_of = None
        self._rot_next = None
        if validate:
            self._validate()

    # -- basic accessors ----------------------------------------------------

    @property
    def num_arcs(self) -> int:
        return len(self.arc_tail)

    @property
    def num_slots(self) -> int:
        return len(self.slot_u)

    def dart_tail(self, d: int) -> int:
        s, side = divmod(d, 2)
        return int(self.slot_v[s] if side else self.slot_u[s])

    def dart_head(self, d: int) -> int:
        return self.dart_tail(d ^ 1)

    def arcs(self):
        """Iterate ``(arc_id, tail, head, weight, original)`` tuples."""
        for a in range(self.num_arcs):
            yield (a, int(self.arc_tail[a]), int(self.arc_head[a]),
                   self.arc_weight[a].item(), bool(self.arc_original[a]))

    # -- embedding structure -------------------------------------------------

    @property
    def rot_next(self) -> np.ndarray:
        """dart -> next dart clockwise around its tail vertex."""
        if self._rot_next is None:
            nxt = np.full(2 * self.num_slots, -1, dtype=np.int64)
            for r in self.rot:
                k = len(r)
                for i, d in enumerate(r):
                    nxt[d] = r[(i + 1) % k]
            self._rot_next = nxt
        return self._rot_next

    def faces(self) -> list[tuple[int, ...]]:
        """Orbits of ``d -> rot_next[twin(d)]``, one tuple of darts per face."""
        if self._faces is None:
            nxt = self.rot_next
            nd = 2 * self.num_slots
            face_of = np.full(nd, -1, dtype=np.int64)
            faces = []
            for d0 in range(nd):
                if face_of[d0] >= 0:
                    continue
                orbit = []
                d = d0
                while face_of[d] < 0:
                    face_of[d] = len(faces)
                    orbit.append(d)
                    d = int(nxt[d ^ 1])
                if d != d0:
                    raise EmbeddingInvalid("face traversal is not a permutation")
                faces.append(tuple(orbit))
            self._faces = faces
            self._face_of = face_of
        return self._faces

    @property
    def face_of(self) -> np.ndarray:
        self.faces()
        return self._face_of

    def component_labels(self) -> np.ndarray:
        """Connected components of the underlying undirected graph."""
        label = np.full(self.n, -1, dtype=np.int64)
        adj = self.undirected_adjacency()
        comp = 0
        for start in range(self.n):
            if label[start] >= 0:
                continue
            stack = [start]
            label[start] = comp
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if label[w] < 0:
                        label[w] = comp
                        stack.append(w)
            comp += 1
        return label

    def undirected_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for s in range(self.num_slots):
            u, v = int(self.slot_u[s]), int(self.slot_v[s])
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def euler_summary(self) -> tuple[int, int, int, int]:
        """(V, embedded edges, faces, components) for the Euler check.

        Faces are geometric: the traversal orbits of the components share
        one outer face, and an isolated vertex sits inside a face of its
        own, so ``F = orbits + isolated - (components - 1)`` and
        ``V - E + F = 1 + components``.
        """
        labels = self.component_labels()
        ncomp = int(labels.max()) + 1 if self.n else 0
        isolated = sum(1 for r in self.rot if not r)
        nf = len(self.faces()) + isolated - max(ncomp - 1, 0)
        return self.n, self.num_slots, nf, ncomp

    def slot_pair_set(self) -> set[tuple[int, int]]:
        """Unordered endpoint pairs of all slots (for simplicity checks)."""
        pairs = set()
        for s in range(self.num_slots):
            u, v = int(self.slot_u[s]), int(self.slot_v[s])
            pairs.add((u, v) if u <= v else (v, u))
        return pairs

    def is_triangulated(self) -> bool:
        """All faces are triangles and every slot carries both directions."""
        if self.n < 3:
            return False
        if any(len(f) != 3 for f in self.faces()):
            return False
        return bool(np.all(self.slot_fwd >= 0) and np.all(self.slot_bwd >= 0))

    # -- validation ----------------------------------------------------------

    def _validate(self) -> None:
        ns, na = self.num_slots, self.num_arcs
        if ns and (self.slot_u.min() < 0 or self.slot_u.max() >= self.n
                   or self.slot_v.min() < 0 or self.slot_v.max() >= self.n):
            raise DanglingReference("slot endpoint out of range")
        if na and (self.arc_tail.min() < 0 or self.arc_tail.max() >= self.n
                   or self.arc_head.min() < 0 or self.arc_head.max() >= self.n):
            raise DanglingReference("arc endpoint out of range")
        if not np.all(np.isfinite(np.asarray(self.arc_weight, dtype=np.float64))):
            raise EmbeddingInvalid("arc weights must be finite")
        if na and np.abs(self.arc_weight).max() > MAX_WEIGHT_MAGNITUDE:
            raise EmbeddingInvalid(
                f"|weight| above {MAX_WEIGHT_MAGNITUDE} breaks exact arithmetic")
        # slot <-> arc cross references
        for s in range(ns):
            for a, tail, head in ((self.slot_fwd[s], self.slot_u[s], self.slot_v[s]),
                                  (self.slot_bwd[s], self.slot_v[s], self.slot_u[s])):
                if a < 0:
                    continue
                if a >= na:
                    raise DanglingReference("slot refers to a missing arc")
                if self.arc_tail[a] != tail or self.arc_head[a] != head \
                        or self.arc_slot[a] != s:
                    raise EmbeddingInvalid("slot/arc direction tables disagree")
        carried = set(int(a) for a in self.slot_fwd if a >= 0)
        carried |= set(int(a) for a in self.slot_bwd if a >= 0)
        if carried != set(range(na)):
            raise EmbeddingInvalid("every arc must be carried by exactly one slot")
        # rotations: all darts exactly once, each at its tail vertex
        if len(self.rot) != self.n:
            raise EmbeddingInvalid("rotation list must cover every vertex")
        seen = np.zeros(2 * ns, dtype=bool)
        for v, r in enumerate(self.rot):
            for d in r:
                if d < 0 or d >= 2 * ns:
                    raise DanglingReference("rotation refers to a missing dart")
                if seen[d]:
                    raise EmbeddingInvalid(f"dart {d} appears twice in rotations")
                seen[d] = True
                if self.dart_tail(d) != v:
                    raise EmbeddingInvalid(
                        f"dart {d} listed at vertex {v}, not at its tail")
        if not seen.all():
            missing = int(np.flatnonzero(~seen)[0])
            raise EmbeddingInvalid(f"dart {missing} missing from rotations")
        # Euler characteristic of the rotation system must be planar
        if self.n:
            nv, ne, nf, ncomp = self.euler_summary()
            if nv - ne + nf != 1 + ncomp:
                raise EmbeddingInvalid(
                    f"Euler check failed: V={nv} E={ne} F={nf} C={ncomp}")


def _weight_array(weights) -> np.ndarray:
    arr = np.asarray(weights)
    if arr.size == 0:
        return arr.astype(np.int64)
    if arr.dtype == np.int64:
        return arr
    if np.issubdtype(arr.dtype, np.integer):
        return arr.astype(np.int64)
    if all(isinstance(w, (int, np.integer)) for w in np.ravel(weights)) \
            and arr.dtype == object:
        return arr.astype(np.int64)
    return arr.astype(np.float64)


# ---------------------------------------------------------------------------
# Construction from arc lists and rotations
# ---------------------------------------------------------------------------

TAIL_END = "t"
HEAD_END = "h"


def build_graph(n: int, arcs, rotations) -> PlanarGraph:
    """Build and validate a PlanarGraph from explicit rotation data.

    Args:
        n: vertex count; ids must be dense in ``[0, n)``.
        arcs: sequence of ``(tail, head, weight)``; every arc is original.
        rotations: per-vertex clockwise list of ``(arc_id, end)`` endpoints
            where ``end`` is ``"t"`` (the arc leaves here) or ``"h"``.

    Each input arc occupies its own embedded slot. Raises
    :class:`EmbeddingInvalid` or :class:`DanglingReference` on malformed
    input, including failures of the Euler face-count check.
    """
    arcs = list(arcs)
    m = len(arcs)
    if len(rotations) != n:
        raise EmbeddingInvalid(
            f"expected {n} rotation lists, got {len(rotations)}")
    tails = np.empty(m, dtype=np.int64)
    heads = np.empty(m, dtype=np.int64)
    weights = []
    for a, (t, h, w) in enumerate(arcs):
        if not (0 <= t < n and 0 <= h < n):
            raise DanglingReference(f"arc {a} endpoint out of range")
        if isinstance(w, float) and not math.isfinite(w):
            raise EmbeddingInvalid(f"arc {a} weight must be finite")
        tails[a], heads[a] = t, h
        weights.append(w)

    rot = []
    for v, entries in enumerate(rotations):
        r = []
        for arc_id, end in entries:
            if not (0 <= arc_id < m):
                raise DanglingReference(
                    f"rotation of vertex {v} references missing arc {arc_id}")
            if end == TAIL_END:
                d = 2 * arc_id
            elif end == HEAD_END:
                d = 2 * arc_id + 1
            else:
                raise EmbeddingInvalid(f"bad endpoint tag {end!r}")
            r.append(d)
        rot.append(r)

    return PlanarGraph(
        n=n,
        slot_u=tails, slot_v=heads,
        slot_fwd=np.arange(m, dtype=np.int64),
        slot_bwd=np.full(m, -1, dtype=np.int64),
        arc_tail=tails, arc_head=heads,
        arc_weight=weights,
        arc_original=np.ones(m, dtype=bool),
        arc_slot=np.arange(m, dtype=np.int64),
        rot=rot,
    )

"""Input normalization and W-augmented triangulation.

``normalize`` strips self-loops, collapses same-direction parallel arcs to
their minimum weight, and merges antiparallel arcs onto a shared slot, so
the underlying undirected graph becomes simple. ``triangulate`` then
connects components, ear-clips every face down to triangles, and adds
reverse arcs so each slot carries both directions; all added arcs weigh W
and are flagged non-original. Augmentation never changes finite shortest
paths between original vertices because any path through a W-arc outweighs
every original-arc path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embedding import GirthValue, PlanarGraph
from .errors import EmbeddingInvalid, InternalInconsistency

# ---------------------------------------------------------------------------
# W and normalization
# ---------------------------------------------------------------------------


def big_weight(g: PlanarGraph):
    """Augmentation weight ``W = 1 + 2 * sum(|w|)`` over original arcs."""
    if g.num_arcs == 0:
        return 1
    mags = np.abs(g.arc_weight[g.arc_original])
    total = mags.sum() if mags.size else 0
    if g.int_mode:
        return 1 + 2 * int(total)
    return 1.0 + 2.0 * float(total)


def infinity_threshold(g: PlanarGraph):
    """Girth of the W-augmented graph is below this iff the original
    graph has a cycle: ``1 + sum(|w|)`` over original arcs."""
    if g.num_arcs == 0:
        return 1
    mags = np.abs(g.arc_weight[g.arc_original])
    total = mags.sum() if mags.size else 0
    if g.int_mode:
        return 1 + int(total)
    return 1.0 + float(total)


@dataclass
class NormalizeResult:
    graph: PlanarGraph
    selfloop_candidate: GirthValue
    loop_arc: int | None  # arc id in the input graph attaining the candidate
    arc_map: np.ndarray   # new arc id -> input arc id


def normalize(g: PlanarGraph) -> NormalizeResult:
    """Remove self-loops and parallel arcs; make the underlying graph simple.

    Returns the cleaned graph, the minimum self-loop weight as a girth
    candidate (+inf when no loops), and the arc id mapping back into ``g``.
    Same-direction parallels keep the minimum weight (ties: lowest arc id);
    antiparallel arcs survive and end up sharing one embedded slot.
    """
    best: dict[tuple[int, int], int] = {}
    loop_arc = None
    for a in range(g.num_arcs):
        t, h = int(g.arc_tail[a]), int(g.arc_head[a])
        w = g.arc_weight[a]
        if t == h:
            if loop_arc is None or w < g.arc_weight[loop_arc]:
                loop_arc = a
            continue
        cur = best.get((t, h))
        if cur is None or w < g.arc_weight[cur]:
            best[(t, h)] = a

    kept_arcs = sorted(best.values())
    new_id = {a: i for i, a in enumerate(kept_arcs)}

    # one representative slot per vertex pair: the kept forward arc's curve
    # if that direction exists, else the kept backward arc's curve
    rep_slot: dict[tuple[int, int], int] = {}
    slot_dir: dict[tuple[int, int], dict[int, int]] = {}
    for (t, h), a in best.items():
        key = (t, h) if t < h else (h, t)
        slot_dir.setdefault(key, {})[0 if t == key[0] else 1] = a
    for key, dirs in slot_dir.items():
        a = dirs.get(0, dirs.get(1))
        rep_slot[key] = int(g.arc_slot[a])

    kept_slots = sorted(rep_slot.values())
    slot_new = {s: i for i, s in enumerate(kept_slots)}

    ns = len(kept_slots)
    slot_u = np.empty(ns, dtype=np.int64)
    slot_v = np.empty(ns, dtype=np.int64)
    slot_fwd = np.full(ns, -1, dtype=np.int64)
    slot_bwd = np.full(ns, -1, dtype=np.int64)
    arc_slot = np.empty(len(kept_arcs), dtype=np.int64)
    for key, dirs in slot_dir.items():
        s_old = rep_slot[key]
        s = slot_new[s_old]
        u, v = int(g.slot_u[s_old]), int(g.slot_v[s_old])
        slot_u[s], slot_v[s] = u, v
        for a in dirs.values():
            i = new_id[a]
            arc_slot[i] = s
            if int(g.arc_tail[a]) == u:
                slot_fwd[s] = i
            else:
                slot_bwd[s] = i

    rot = []
    for r in g.rot:
        filtered = []
        for d in r:
            s, side = divmod(d, 2)
            if s in slot_new:
                filtered.append(2 * slot_new[s] + side)
        rot.append(filtered)

    arc_map = np.array(kept_arcs, dtype=np.int64)
    graph = PlanarGraph(
        n=g.n,
        slot_u=slot_u, slot_v=slot_v, slot_fwd=slot_fwd, slot_bwd=slot_bwd,
        arc_tail=g.arc_tail[arc_map], arc_head=g.arc_head[arc_map],
        arc_weight=g.arc_weight[arc_map], arc_original=g.arc_original[arc_map],
        arc_slot=arc_slot, rot=rot,
    )
    if loop_arc is None:
        candidate = GirthValue.plus_infinity()
    else:
        candidate = GirthValue.finite(g.arc_weight[loop_arc].item())
    return NormalizeResult(graph, candidate, loop_arc, arc_map)


# ---------------------------------------------------------------------------
# Mutable embedding for triangulation edits
# ---------------------------------------------------------------------------


class _Builder:
    """Rotation system with O(1) dart insertion (circular linked lists)."""

    def __init__(self, g: PlanarGraph):
        self.n = g.n
        self.slot_u = list(map(int, g.slot_u))
        self.slot_v = list(map(int, g.slot_v))
        self.slot_fwd = list(map(int, g.slot_fwd))
        self.slot_bwd = list(map(int, g.slot_bwd))
        self.arc_tail = list(map(int, g.arc_tail))
        self.arc_head = list(map(int, g.arc_head))
        self.arc_weight = [w.item() for w in g.arc_weight]
        self.arc_original = list(map(bool, g.arc_original))
        self.arc_slot = list(map(int, g.arc_slot))
        nd = 2 * len(self.slot_u)
        self.rot_next = [-1] * nd
        self.rot_prev = [-1] * nd
        self.some_dart: list[int | None] = [None] * self.n
        for v, r in enumerate(g.rot):
            if not r:
                continue
            self.some_dart[v] = r[0]
            k = len(r)
            for i, d in enumerate(r):
                self.rot_next[d] = r[(i + 1) % k]
                self.rot_prev[d] = r[(i - 1) % k]

    # -- darts ---------------------------------------------------------------

    def dart_tail(self, d: int) -> int:
        s, side = divmod(d, 2)
        return self.slot_v[s] if side else self.slot_u[s]

    def dart_head(self, d: int) -> int:
        return self.dart_tail(d ^ 1)

    def _new_slot(self, u: int, v: int) -> int:
        s = len(self.slot_u)
        self.slot_u.append(u)
        self.slot_v.append(v)
        self.slot_fwd.append(-1)
        self.slot_bwd.append(-1)
        self.rot_next.extend((-1, -1))
        self.rot_prev.extend((-1, -1))
        return s

    def add_vertex(self) -> int:
        self.n += 1
        self.some_dart.append(None)
        return self.n - 1

    def _link(self, a: int, b: int) -> None:
        self.rot_next[a] = b
        self.rot_prev[b] = a

    def _insert_after(self, ref: int, d: int) -> None:
        nxt = self.rot_next[ref]
        self._link(ref, d)
        self._link(d, nxt)

    def _insert_before(self, ref: int, d: int) -> None:
        self._insert_after(self.rot_prev[ref], d)

    def _insert_at_vertex(self, v: int, d: int, after: int | None) -> None:
        if after is None:
            anchor = self.some_dart[v]
            if anchor is None:
                self._link(d, d)
                self.some_dart[v] = d
            else:
                self._insert_after(anchor, d)
        else:
            self._insert_after(after, d)

    # -- editing operations ----------------------------------------------------

    def connect(self, u: int, v: int) -> int:
        """Join two components with a fresh slot; placement is arbitrary."""
        s = self._new_slot(u, v)
        self._insert_at_vertex(u, 2 * s, None)
        self._insert_at_vertex(v, 2 * s + 1, None)
        return s

    def add_chord(self, e1: int, e2: int) -> int:
        """Cut triangle (tail(e1), head(e1), head(e2)) off the face walk
        ``..., e1, e2, ...``; returns the dart tail(e1) -> head(e2)."""
        a = self.dart_tail(e1)
        c = self.dart_head(e2)
        s = self._new_slot(a, c)
        f, f_twin = 2 * s, 2 * s + 1
        self._insert_before(e1, f)
        self._insert_after(e2 ^ 1, f_twin)
        return f

    def add_apex(self, e1: int, e2: int) -> tuple[int, int]:
        """Insert a fresh vertex joined to the three corners of the walk
        segment ``e1, e2``; returns darts replacing that segment."""
        a = self.dart_tail(e1)
        b = self.dart_head(e1)
        c = self.dart_head(e2)
        x = self.add_vertex()
        sa = self._new_slot(a, x)
        sb = self._new_slot(b, x)
        sc = self._new_slot(c, x)
        ax, xa = 2 * sa, 2 * sa + 1
        bx, xb = 2 * sb, 2 * sb + 1
        cx, xc = 2 * sc, 2 * sc + 1
        self._insert_before(e1, ax)
        self._insert_after(e1 ^ 1, bx)
        self._insert_after(e2 ^ 1, cx)
        # clockwise rotation at x closing faces (a,b,x) and (b,c,x)
        self._link(xa, xc)
        self._link(xc, xb)
        self._link(xb, xa)
        self.some_dart[x] = xa
        return ax, xc

    def add_arc(self, slot: int, forward: bool, weight, original: bool) -> int:
        a = len(self.arc_tail)
        if forward:
            t, h = self.slot_u[slot], self.slot_v[slot]
            self.slot_fwd[slot] = a
        else:
            t, h = self.slot_v[slot], self.slot_u[slot]
            self.slot_bwd[slot] = a
        self.arc_tail.append(t)
        self.arc_head.append(h)
        self.arc_weight.append(weight)
        self.arc_original.append(original)
        self.arc_slot.append(slot)
        return a

    # -- faces -----------------------------------------------------------------

    def trace_faces(self) -> list[list[int]]:
        nd = 2 * len(self.slot_u)
        seen = [False] * nd
        faces = []
        for d0 in range(nd):
            if seen[d0]:
                continue
            walk = []
            d = d0
            while not seen[d]:
                seen[d] = True
                walk.append(d)
                d = self.rot_next[d ^ 1]
            faces.append(walk)
        return faces

    def freeze(self, validate: bool = True) -> PlanarGraph:
        rot = []
        nd = 2 * len(self.slot_u)
        claimed = [False] * nd
        for v in range(self.n):
            anchor = self.some_dart[v]
            if anchor is None:
                rot.append(())
                continue
            cycle = [anchor]
            d = self.rot_next[anchor]
            while d != anchor:
                cycle.append(d)
                d = self.rot_next[d]
            start = cycle.index(min(cycle))
            cycle = cycle[start:] + cycle[:start]
            for d in cycle:
                claimed[d] = True
            rot.append(cycle)
        if not all(claimed):
            raise InternalInconsistency("builder lost a dart")
        return PlanarGraph(
            n=self.n,
            slot_u=self.slot_u, slot_v=self.slot_v,
            slot_fwd=self.slot_fwd, slot_bwd=self.slot_bwd,
            arc_tail=self.arc_tail, arc_head=self.arc_head,
            arc_weight=self.arc_weight, arc_original=self.arc_original,
            arc_slot=self.arc_slot, rot=rot, validate=validate,
        )


# ---------------------------------------------------------------------------
# Triangulation
# ---------------------------------------------------------------------------


@dataclass
class TriangulationResult:
    graph: PlanarGraph
    arc_map: np.ndarray  # new arc id -> input arc id, -1 for added arcs


def triangulate(g: PlanarGraph, W) -> TriangulationResult:
    """Connect, triangulate and symmetrize an embedded digraph.

    Requires a normalized graph (simple underlying embedding) with at least
    3 vertices. Every face of the result is a triangle, every slot carries
    arcs in both directions, and all added arcs have weight ``W`` with
    ``original=False``. New helper vertices may be introduced when no
    simplicity-preserving chord exists on a face.
    """
    if g.n < 3:
        raise EmbeddingInvalid("triangulation needs at least 3 vertices")
    pairs = g.slot_pair_set()
    if len(pairs) != g.num_slots:
        raise EmbeddingInvalid("triangulate requires a normalized graph")

    b = _Builder(g)

    labels = g.component_labels()
    ncomp = int(labels.max()) + 1
    if ncomp > 1:
        reps = [int(np.flatnonzero(labels == c)[0]) for c in range(ncomp)]
        for other in reps[1:]:
            s = b.connect(reps[0], other)
            pairs.add(_norm_pair(reps[0], other))

    for walk in b.trace_faces():
        if len(walk) > 3:
            _clip_face(b, walk, pairs)

    for s in range(len(b.slot_u)):
        if b.slot_fwd[s] < 0:
            b.add_arc(s, True, W, False)
        if b.slot_bwd[s] < 0:
            b.add_arc(s, False, W, False)

    graph = b.freeze()
    arc_map = np.full(graph.num_arcs, -1, dtype=np.int64)
    arc_map[:g.num_arcs] = np.arange(g.num_arcs)
    if not graph.is_triangulated():
        raise InternalInconsistency("triangulation left a non-triangle face")
    return TriangulationResult(graph, arc_map)


def _norm_pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


def _clip_face(b: _Builder, walk: list[int], pairs: set) -> None:
    """Ear-clip one face walk down to a triangle.

    Scans for a corner whose straddling chord neither duplicates an
    existing embedded edge nor degenerates to a loop; when a full scan
    finds none, a fresh apex vertex is inserted at some corner, which
    always re-enables clipping.
    """
    pos = 0
    stall = 0
    budget = 32 * (len(walk) * len(walk) + 8)
    while len(walk) > 3:
        budget -= 1
        if budget < 0:
            raise InternalInconsistency("face triangulation stalled")
        L = len(walk)
        if pos >= L:
            pos = 0
        if pos == L - 1:
            walk[:] = walk[1:] + walk[:1]
            pos -= 1
        e1, e2 = walk[pos], walk[pos + 1]
        a, c = b.dart_tail(e1), b.dart_head(e2)
        key = _norm_pair(a, c)
        if a != c and key not in pairs:
            f = b.add_chord(e1, e2)
            pairs.add(key)
            walk[pos:pos + 2] = [f]
            stall = 0
            if pos > 0:
                pos -= 1
            continue
        pos += 1
        stall += 1
        if stall < L:
            continue
        # no simplicity-preserving chord anywhere on this walk: apex time
        stall = 0
        idx = None
        for i in range(L):
            e1, e2 = walk[i], walk[(i + 1) % L]
            if b.dart_tail(e1) != b.dart_head(e2):
                idx = i
                break
        if idx is None:
            raise InternalInconsistency("degenerate two-vertex face walk")
        if idx == L - 1:
            walk[:] = walk[1:] + walk[:1]
            idx -= 1
        e1, e2 = walk[idx], walk[idx + 1]
        a, c = b.dart_tail(e1), b.dart_head(e2)
        bmid = b.dart_head(e1)
        d_ax, d_xc = b.add_apex(e1, e2)
        x = b.dart_head(d_ax)
        pairs.add(_norm_pair(a, x))
        pairs.add(_norm_pair(bmid, x))
        pairs.add(_norm_pair(c, x))
        walk[idx:idx + 2] = [d_ax, d_xc]
        pos = idx

"""Balanced simple-cycle separators of triangulated embeddings.

The construction takes a breadth-first spanning tree and scores every
non-tree slot's fundamental cycle. Exact closed-region vertex counts come
cheaply from the interdigitating dual tree: the faces enclosed by the
fundamental cycle of slot ``e`` are exactly the dual subtree hanging below
``e``, and Euler's formula turns the face count into a vertex count. A few
deterministic alternate roots are tried when the first tree has no cycle
meeting the balance and size bounds.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import ceil, isqrt

import numpy as np

from .embedding import PlanarGraph
from .errors import InternalInconsistency, InvalidCycle, NotTriangulated

SIZE_FACTOR = 4          # target |C| <= 4 * sqrt(n) ...
SIZE_ASSERT_MIN_N = 32   # ... asserted only from this size up
BALANCE_NUM, BALANCE_DEN = 2, 3


@dataclass(frozen=True)
class SeparatorCycle:
    """A simple cycle of the underlying undirected graph.

    ``vertices`` in cyclic order; the faces to the traversal side of
    ``vertices[i] -> vertices[i+1]`` darts are the *inside*. Counts are of
    the closed regions (cycle vertices included in both).
    """

    vertices: tuple[int, ...]
    inside_count: int
    outside_count: int

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass
class Piece:
    """One side of a split, with its boundary on a single face.

    ``boundary`` holds piece-local vertex ids of the separator cycle in
    cycle order; ``vertex_map``/``arc_map`` translate back to the parent.
    """

    graph: PlanarGraph
    boundary: tuple[int, ...]
    boundary_parent: tuple[int, ...]
    vertex_map: np.ndarray
    arc_map: np.ndarray


def balance_bound(n: int) -> int:
    return ceil(BALANCE_NUM * n / BALANCE_DEN)


def size_bound(n: int) -> float:
    return SIZE_FACTOR * (n ** 0.5)


# ---------------------------------------------------------------------------
# Separator search
# ---------------------------------------------------------------------------


def cycle_separator(g: PlanarGraph, seed: int = 0) -> SeparatorCycle:
    """Balanced fundamental-cycle separator of a triangulated graph.

    Requires a connected, fully triangulated embedding with ``n >= 4``.
    Returns a cycle whose closed sides both have at most ``ceil(2n/3)``
    vertices and whose length is at most ``4*sqrt(n)`` whenever such a
    fundamental cycle exists for one of the candidate BFS roots; otherwise
    the best available cycle is returned (callers guard progress).
    """
    if g.n < 4:
        raise NotTriangulated(f"separator needs n >= 4, got {g.n}")
    if not g.is_triangulated():
        raise NotTriangulated("graph is not a triangulated embedding")
    labels = g.component_labels()
    if labels.max() != 0:
        raise NotTriangulated("graph is not connected")

    adj = _slot_adjacency(g)
    best = None  # (score, root, slot, bfs)
    for root in _candidate_roots(g, adj, seed):
        bfs = _BfsTree(g, adj, root)
        cand = bfs.best_candidate()
        if cand is None:
            continue
        score, slot = cand
        if best is None or score < best[0]:
            best = (score, root, slot, bfs)
        if score[0] == 0 and score[1] == 0:
            break
    if best is None:
        raise InternalInconsistency("no fundamental cycle candidate found")
    score, _, slot, bfs = best
    return bfs.build_cycle(slot)


def _candidate_roots(g: PlanarGraph, adj, seed: int) -> list[int]:
    n = g.n
    roots = [seed % n]
    order = _bfs_order(adj, roots[0])
    roots.append(int(order[len(order) // 2]))   # median of BFS order
    far = int(order[-1])
    roots.append(far)
    order2 = _bfs_order(adj, far)
    roots.append(int(order2[len(order2) // 2]))
    seen, out = set(), []
    for r in roots:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def _slot_adjacency(g: PlanarGraph) -> list[list[tuple[int, int]]]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for s in range(g.num_slots):
        u, v = int(g.slot_u[s]), int(g.slot_v[s])
        adj[u].append((v, s))
        adj[v].append((u, s))
    return adj


def _bfs_order(adj, root: int) -> list[int]:
    seen = [False] * len(adj)
    seen[root] = True
    order = [root]
    q = deque([root])
    while q:
        v = q.popleft()
        for w, _ in adj[v]:
            if not seen[w]:
                seen[w] = True
                order.append(w)
                q.append(w)
    return order


class _BfsTree:
    """BFS tree plus the dual-tree bookkeeping for candidate scoring."""

    def __init__(self, g: PlanarGraph, adj, root: int):
        self.g = g
        self.root = root
        n = g.n
        parent = np.full(n, -1, dtype=np.int64)
        parent_slot = np.full(n, -1, dtype=np.int64)
        depth = np.full(n, -1, dtype=np.int64)
        depth[root] = 0
        parent[root] = root
        q = deque([root])
        while q:
            v = q.popleft()
            for w, s in adj[v]:
                if depth[w] < 0:
                    depth[w] = depth[v] + 1
                    parent[w] = v
                    parent_slot[w] = s
                    q.append(w)
        self.parent, self.parent_slot, self.depth = parent, parent_slot, depth

        tree = np.zeros(g.num_slots, dtype=bool)
        used = parent_slot[parent_slot >= 0]
        tree[used] = True
        self.tree_slot = tree
        self.nontree = np.flatnonzero(~tree)
        self._scan_dual()
        self._build_lifting()

    # -- dual tree over non-tree slots ------------------------------------

    def _scan_dual(self) -> None:
        g = self.g
        face_of = g.face_of
        faces = g.faces()
        nf = len(faces)
        face_slots: list[list[int]] = [[] for _ in range(nf)]
        for s in self.nontree:
            face_slots[int(face_of[2 * s])].append(int(s))
            face_slots[int(face_of[2 * s + 1])].append(int(s))
        parent_face = np.full(nf, -1, dtype=np.int64)
        entry_slot = np.full(nf, -1, dtype=np.int64)
        child_face = np.full(g.num_slots, -1, dtype=np.int64)
        order = []
        parent_face[0] = 0
        q = deque([0])
        while q:
            f = q.popleft()
            order.append(f)
            for s in face_slots[f]:
                f2 = int(face_of[2 * s]) if int(face_of[2 * s]) != f \
                    else int(face_of[2 * s + 1])
                if parent_face[f2] < 0:
                    parent_face[f2] = f
                    entry_slot[f2] = s
                    child_face[s] = f2
                    q.append(f2)
        if len(order) != nf:
            raise InternalInconsistency("dual tree did not span all faces")
        sub = np.ones(nf, dtype=np.int64)
        for f in reversed(order[1:]):
            sub[parent_face[f]] += sub[f]
        # Euler-tour intervals for subtree membership queries
        children: list[list[int]] = [[] for _ in range(nf)]
        for f in order[1:]:
            children[int(parent_face[f])].append(f)
        tin = np.empty(nf, dtype=np.int64)
        tout = np.empty(nf, dtype=np.int64)
        clock = 0
        stack = [(0, False)]
        while stack:
            f, done = stack.pop()
            if done:
                tout[f] = clock
                continue
            tin[f] = clock
            clock += 1
            stack.append((f, True))
            for c in children[f]:
                stack.append((c, False))
        self.face_subtree = sub
        self.child_face = child_face
        self.face_tin, self.face_tout = tin, tout

    def _build_lifting(self) -> None:
        n = self.g.n
        log = 1
        while (1 << log) < max(2, n):
            log += 1
        up = np.empty((log, n), dtype=np.int64)
        up[0] = self.parent
        for k in range(1, log):
            up[k] = up[k - 1][up[k - 1]]
        self.up = up

    def _lca_depth(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        depth, up = self.depth, self.up
        x, y = xs.copy(), ys.copy()
        swap = depth[x] < depth[y]
        x[swap], y[swap] = ys[swap], xs[swap]
        for k in range(up.shape[0] - 1, -1, -1):
            lift = (depth[x] - depth[y]) >= (1 << k)
            x[lift] = up[k][x[lift]]
        for k in range(up.shape[0] - 1, -1, -1):
            move = (x != y) & (up[k][x] != up[k][y])
            x[move] = up[k][x[move]]
            y[move] = up[k][y[move]]
        differ = x != y
        x[differ] = up[0][x[differ]]
        return depth[x]

    # -- candidate scoring --------------------------------------------------

    def best_candidate(self):
        g = self.g
        n = g.n
        slots = self.nontree
        if slots.size == 0:
            return None
        xs = g.slot_u[slots]
        ys = g.slot_v[slots]
        lca_d = self._lca_depth(xs, ys)
        clen = self.depth[xs] + self.depth[ys] - 2 * lca_d + 1
        f_in = self.face_subtree[self.child_face[slots]]
        odd = (f_in + clen) % 2 != 0
        if odd.any():
            raise InternalInconsistency("enclosed-region parity broken")
        v_in = 1 + (f_in + clen) // 2
        v_out = n - v_in + clen
        vmax = np.maximum(v_in, v_out)
        bal = balance_bound(n)
        size_ok = (n < SIZE_ASSERT_MIN_N) | (clen <= size_bound(n))
        feasible_b = vmax <= bal
        shrinking = vmax < n
        # lexicographic score; hard-prefer cycles that shrink both sides
        key = np.lexsort((slots, clen, vmax,
                          ~size_ok, ~feasible_b, ~shrinking))
        i = int(key[0])
        score = (int(~feasible_b[i]), int(~size_ok[i]), int(vmax[i]),
                 int(clen[i]), int(slots[i]))
        if not shrinking[i]:
            score = (2, 2, n, int(clen[i]), int(slots[i]))
        return score, int(slots[i])

    # -- cycle construction ---------------------------------------------------

    def build_cycle(self, slot: int) -> SeparatorCycle:
        g = self.g
        x, y = int(g.slot_u[slot]), int(g.slot_v[slot])
        px = self._path_to_root(x)
        py = self._path_to_root(y)
        sx, sy = set(px), set(py)
        lca = next(v for v in px if v in sy)
        cx = px[:px.index(lca) + 1]
        cy = py[:py.index(lca)]
        verts = cx + cy[::-1]  # x .. lca .. y, closed by the non-tree slot
        f_in = int(self.face_subtree[self.child_face[slot]])
        clen = len(verts)
        v_in = 1 + (f_in + clen) // 2
        v_out = g.n - v_in + clen

        d0 = _dart_between(g, verts[-1], verts[0], slot)
        child = int(self.child_face[slot])
        f0 = int(g.face_of[d0])
        inside = self.face_tin[child] <= self.face_tin[f0] < self.face_tout[child]
        if not inside:
            verts = [verts[0]] + verts[1:][::-1]
        return SeparatorCycle(tuple(verts), v_in, v_out)

    def _path_to_root(self, v: int) -> list[int]:
        path = [v]
        while path[-1] != self.root:
            path.append(int(self.parent[path[-1]]))
        return path


def _dart_between(g: PlanarGraph, a: int, b: int, slot: int) -> int:
    if int(g.slot_u[slot]) == a and int(g.slot_v[slot]) == b:
        return 2 * slot
    if int(g.slot_u[slot]) == b and int(g.slot_v[slot]) == a:
        return 2 * slot + 1
    raise InvalidCycle(f"slot {slot} does not join {a} and {b}")


# ---------------------------------------------------------------------------
# Splitting along a cycle
# ---------------------------------------------------------------------------


def split(g: PlanarGraph, c: SeparatorCycle) -> tuple[Piece, Piece]:
    """Cut along the cycle: piece one keeps the inside region plus the
    cycle's own slots and arcs, piece two gets the strictly-outside slots;
    both keep every cycle vertex, in cycle order, on one face."""
    pair_to_slot: dict[tuple[int, int], int] = {}
    for s in range(g.num_slots):
        u, v = int(g.slot_u[s]), int(g.slot_v[s])
        key = (u, v) if u <= v else (v, u)
        if key in pair_to_slot:
            raise InvalidCycle("split requires a simple underlying graph")
        pair_to_slot[key] = s

    verts = list(c.vertices)
    L = len(verts)
    if L < 3 or len(set(verts)) != L:
        raise InvalidCycle("separator vertices must form a simple cycle")
    cyc_slots = []
    cyc_darts = []
    for i, a in enumerate(verts):
        b = verts[(i + 1) % L]
        key = (a, b) if a <= b else (b, a)
        s = pair_to_slot.get(key)
        if s is None:
            raise InvalidCycle(f"no embedded edge between {a} and {b}")
        cyc_slots.append(s)
        cyc_darts.append(_dart_between(g, a, b, s))
    cyc_slot_set = set(cyc_slots)

    face_of = g.face_of
    faces = g.faces()
    inside_faces = _flood_side(g, faces, face_of, cyc_slot_set,
                               seeds={int(face_of[d]) for d in cyc_darts})
    for d in cyc_darts:
        if int(face_of[d ^ 1]) in inside_faces:
            raise InvalidCycle("cycle does not separate the embedding")

    in_slots, out_slots = [], []
    for s in range(g.num_slots):
        if s in cyc_slot_set:
            in_slots.append(s)
            continue
        fa, fb = int(face_of[2 * s]), int(face_of[2 * s + 1])
        ina, inb = fa in inside_faces, fb in inside_faces
        if ina != inb:
            raise InvalidCycle("non-cycle slot straddles the cycle")
        (in_slots if ina else out_slots).append(s)

    piece1 = _build_piece(g, in_slots, verts)
    piece2 = _build_piece(g, out_slots, verts)
    if len(piece1.vertex_map) != c.inside_count \
            or len(piece2.vertex_map) != c.outside_count:
        raise InternalInconsistency("separator counts disagree with split")
    return piece1, piece2


def _flood_side(g, faces, face_of, blocked_slots, seeds) -> set[int]:
    seen = set(seeds)
    stack = list(seeds)
    while stack:
        f = stack.pop()
        for d in faces[f]:
            s = d // 2
            if s in blocked_slots:
                continue
            f2 = int(face_of[d ^ 1])
            if f2 not in seen:
                seen.add(f2)
                stack.append(f2)
    return seen


def _build_piece(g: PlanarGraph, slots: list[int],
                 boundary_parent: list[int]) -> Piece:
    in_piece = set(boundary_parent)
    for s in slots:
        in_piece.add(int(g.slot_u[s]))
        in_piece.add(int(g.slot_v[s]))
    verts = sorted(in_piece)
    vid = {v: i for i, v in enumerate(verts)}
    slot_id = {s: i for i, s in enumerate(slots)}

    ns = len(slots)
    slot_u = np.empty(ns, dtype=np.int64)
    slot_v = np.empty(ns, dtype=np.int64)
    slot_fwd = np.full(ns, -1, dtype=np.int64)
    slot_bwd = np.full(ns, -1, dtype=np.int64)
    arc_rows = []  # (tail, head, weight, original, slot, parent_arc)
    for s in slots:
        i = slot_id[s]
        slot_u[i] = vid[int(g.slot_u[s])]
        slot_v[i] = vid[int(g.slot_v[s])]
        for fwd, a in ((True, int(g.slot_fwd[s])), (False, int(g.slot_bwd[s]))):
            if a < 0:
                continue
            row = (vid[int(g.arc_tail[a])], vid[int(g.arc_head[a])],
                   g.arc_weight[a].item(), bool(g.arc_original[a]), i, a)
            if fwd:
                slot_fwd[i] = len(arc_rows)
            else:
                slot_bwd[i] = len(arc_rows)
            arc_rows.append(row)

    rot = []
    for v in verts:
        r = []
        for d in g.rot[v]:
            s, side = divmod(d, 2)
            if s in slot_id:
                r.append(2 * slot_id[s] + side)
        rot.append(r)

    graph = PlanarGraph(
        n=len(verts),
        slot_u=slot_u, slot_v=slot_v, slot_fwd=slot_fwd, slot_bwd=slot_bwd,
        arc_tail=[r[0] for r in arc_rows],
        arc_head=[r[1] for r in arc_rows],
        arc_weight=[r[2] for r in arc_rows],
        arc_original=[r[3] for r in arc_rows],
        arc_slot=[r[4] for r in arc_rows],
        rot=rot,
    )
    return Piece(
        graph=graph,
        boundary=tuple(vid[v] for v in boundary_parent),
        boundary_parent=tuple(boundary_parent),
        vertex_map=np.array(verts, dtype=np.int64),
        arc_map=np.array([r[5] for r in arc_rows], dtype=np.int64),
    )


def boundary_face_check(piece: Piece) -> bool:
    """True when all boundary vertices with any incident slot share a face."""
    g = piece.graph
    with_darts = [v for v in piece.boundary if g.rot[v]]
    if not with_darts:
        return True
    need = set(with_darts)
    for f in g.faces():
        have = {g.dart_tail(d) for d in f}
        if need <= have:
            return True
    return False

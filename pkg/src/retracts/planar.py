"""Plane graphs as rotation systems, and the retract embedding pipeline.

A rotation system fixes, per vertex, the clockwise cyclic order of its
neighbours; faces fall out of the standard next-edge walk and Euler's
count certifies planarity of the embedding.  On top of that sit the
Apollonian generator, the facial-K4 retract checker, and the four-stage
pipeline (biconnect, shrink long faces, stellate twice) that embeds any
connected plane graph isometrically into a graph the checker accepts.

All stage operations append vertices and never renumber, so input
vertices keep their ids through the whole pipeline.
"""

from typing import NamedTuple

import numpy as np

from .errors import (GraphFormatError, NotBiconnectedError,
                     NotPlanarEmbeddingError)
from .graph import Graph, dump_graph, parse_graph
from .rng import stream


class EmbeddedGraph:
    """Graph plus clockwise neighbour order per vertex."""

    __slots__ = ("base", "rotation")

    def __init__(self, base: Graph, rotation):
        if len(rotation) != base.n:
            raise ValueError("need one rotation list per vertex")
        rot = []
        for v in range(base.n):
            row = np.asarray(rotation[v], dtype=np.int64)
            expect = base.adj[base.offsets[v]:base.offsets[v + 1]]
            if not np.array_equal(np.sort(row), expect):
                raise ValueError(
                    "rotation of vertex %d is not a permutation of its "
                    "neighbours" % v)
            rot.append(row)
        self.base = base
        self.rotation = tuple(rot)

    @classmethod
    def _wrap(cls, base: Graph, rotation):
        # internal constructor for rebuilds that are correct by
        # construction; skips the permutation validation
        e = object.__new__(cls)
        e.base = base
        e.rotation = tuple(np.asarray(r, dtype=np.int64) for r in rotation)
        return e


class EmbeddingMap(NamedTuple):
    """Vertex map into the pipeline output plus per-stage size log."""

    vertex_map: np.ndarray
    stages: tuple


def trace_faces(e: EmbeddedGraph):
    """All faces of the embedding, each a list of directed edges.

    The walk leaves (u, v) along the clockwise successor of u around v,
    so every directed edge lands in exactly one face.  A face count that
    breaks Euler's formula means the rotations do not describe a plane
    embedding.
    """
    g = e.base
    if g.n == 1:
        return []
    # slot s encodes the directed edge owner[s] -> adj[s]; successor
    # slots are assembled with array ops so the walk itself touches only
    # plain integers
    deg = np.diff(g.offsets)
    owner = np.repeat(np.arange(g.n, dtype=np.int64), deg)
    rot_flat = np.concatenate(e.rotation)
    key = owner * g.n
    rot_to_csr = np.searchsorted(key + g.adj, key + rot_flat)
    csr_to_rot = np.empty(2 * g.m, dtype=np.int64)
    csr_to_rot[rot_to_csr] = np.arange(2 * g.m)
    rev = np.empty(2 * g.m, dtype=np.int64)
    rev[np.lexsort((owner, g.adj))] = np.arange(2 * g.m)
    start = g.offsets[g.adj]
    j = csr_to_rot[rev]
    nxt = rot_to_csr[start + (j - start + 1) % deg[g.adj]]
    seen = np.zeros(2 * g.m, dtype=bool)
    faces = []
    for s0 in range(2 * g.m):
        if seen[s0]:
            continue
        cyc = []
        s = s0
        while not seen[s]:
            seen[s] = True
            cyc.append(s)
            s = nxt[s]
        faces.append([(int(owner[t]), int(g.adj[t])) for t in cyc])
    if g.n - g.m + len(faces) != 2:
        raise NotPlanarEmbeddingError(
            "face count breaks Euler's formula",
            certificate={"n": g.n, "m": g.m, "faces": len(faces)})
    return faces


def _face_vertices(face):
    return [u for u, _ in face]


def _with_appended(e: EmbeddedGraph, changed, new_rows, new_edges):
    """Rebuild an EmbeddedGraph with extra vertices and edges.

    `changed` maps a vertex to its replacement rotation row; untouched
    rows are carried over without copying.
    """
    g = e.base
    heads = np.repeat(np.arange(g.n), np.diff(g.offsets))
    sel = heads < g.adj
    old = np.stack([heads[sel], g.adj[sel]], axis=1)
    allv = np.concatenate([old, np.asarray(new_edges, dtype=np.int64)]) \
        if len(new_edges) else old
    base = Graph.from_edges(g.n + len(new_rows), allv)
    rot = [changed[v] if v in changed else e.rotation[v]
           for v in range(g.n)]
    return EmbeddedGraph._wrap(base, rot + new_rows)


def _insert_after(rot, anchor, value):
    rot.insert(rot.index(anchor) + 1, value)


def _row(changed, e, v):
    """Mutable copy of vertex v's rotation row, fetched lazily."""
    row = changed.get(v)
    if row is None:
        row = list(map(int, e.rotation[v]))
        changed[v] = row
    return row


def stellate_all(e: EmbeddedGraph) -> EmbeddedGraph:
    """Add one vertex inside every face, joined to its whole boundary.

    Distances among old vertices survive when every face has length at
    most five.  A boundary that revisits a vertex cannot take an apex
    (the join would need a double edge), so that raises instead.
    """
    faces = trace_faces(e)
    changed = {}
    new_rows, new_edges = [], []
    z = e.base.n
    for face in faces:
        verts = _face_vertices(face)
        if len(set(verts)) != len(verts):
            dup = next(v for v in verts if verts.count(v) > 1)
            raise NotBiconnectedError(
                "face boundary revisits vertex %d" % dup,
                certificate={"vertex": dup})
        for u, v in face:
            _insert_after(_row(changed, e, v), u, z)
        new_rows.append(list(reversed(verts)))
        new_edges.extend((min(u, z), max(u, z)) for u in verts)
        z += 1
    return _with_appended(e, changed, new_rows, new_edges)


def _articulation_points(g: Graph):
    """Cut vertices by iterative depth-first low-links."""
    disc = np.full(g.n, -1, dtype=np.int64)
    low = np.zeros(g.n, dtype=np.int64)
    parent = np.full(g.n, -1, dtype=np.int64)
    cuts = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        stack = [(root, 0)]
        children = 0
        while stack:
            v, ptr = stack[-1]
            if ptr == 0:
                disc[v] = low[v] = timer
                timer += 1
            row = g.adj[g.offsets[v]:g.offsets[v + 1]]
            if ptr < len(row):
                stack[-1] = (v, ptr + 1)
                u = int(row[ptr])
                if disc[u] == -1:
                    parent[u] = v
                    if v == root:
                        children += 1
                    stack.append((u, 0))
                elif u != parent[v]:
                    low[v] = min(low[v], disc[u])
            else:
                stack.pop()
                p = int(parent[v])
                if p != -1:
                    low[p] = min(low[p], low[v])
                    if p != root and low[v] >= disc[p]:
                        cuts.add(p)
        if children >= 2:
            cuts.add(root)
    return cuts


def biconnect(e: EmbeddedGraph) -> EmbeddedGraph:
    """Patch cut vertices until the embedding is biconnected.

    At the smallest cut vertex u, the first clockwise-consecutive pair
    of neighbours x, y lying in different components of the graph minus
    u gains a common neighbour z with N(z) = {u, x, y}, placed in the
    face holding that corner.  x and y were at distance exactly 2
    through u, so old distances are untouched.
    """
    while True:
        cuts = _articulation_points(e.base)
        if not cuts:
            return e
        g = e.base
        u = min(cuts)
        comp = np.full(g.n, -1, dtype=np.int64)
        comp[u] = -2
        label = 0
        for s in g.adj[g.offsets[u]:g.offsets[u + 1]]:
            if comp[s] != -1:
                continue
            queue = [int(s)]
            comp[s] = label
            while queue:
                v = queue.pop()
                for w in g.adj[g.offsets[v]:g.offsets[v + 1]]:
                    if comp[w] == -1:
                        comp[w] = label
                        queue.append(int(w))
            label += 1
        row = e.rotation[u]
        pick = None
        for j in range(len(row)):
            x, y = int(row[j]), int(row[(j + 1) % len(row)])
            if comp[x] != comp[y]:
                pick = (x, y)
                break
        assert pick is not None
        x, y = pick
        changed = {}
        z = g.n
        _insert_after(_row(changed, e, u), x, z)
        rx = _row(changed, e, x)
        w = rx[rx.index(u) - 1]
        _insert_after(rx, w, z)
        _insert_after(_row(changed, e, y), u, z)
        e = _with_appended(e, changed, [[y, u, x]],
                           [(u, z), (x, z), (y, z)])


def shrink_faces(e: EmbeddedGraph) -> EmbeddedGraph:
    """Rebuild long faces until every face has length at most five.

    The first face of length >= 6 (oriented to start at its smallest
    directed edge) is lined with an inner copy of its boundary in which
    the leading three vertices are contracted to one; boundary vertices
    keep their copies at distance 1, so old distances survive.  Each
    pass shortens the total perimeter of long faces, which bounds the
    loop.
    """
    previous_big = None
    while True:
        faces = trace_faces(e)
        big_total = sum(len(f) for f in faces if len(f) >= 6)
        assert previous_big is None or big_total < previous_big
        previous_big = big_total
        target = next((f for f in faces if len(f) >= 6), None)
        if target is None:
            return e
        k = min(range(len(target)), key=lambda j: target[j])
        cyc = _face_vertices(target[k:] + target[:k])
        if len(set(cyc)) != len(cyc):
            dup = next(v for v in cyc if cyc.count(v) > 1)
            raise NotBiconnectedError(
                "face boundary revisits vertex %d" % dup,
                certificate={"vertex": dup})
        L = len(cyc)
        changed = {}
        x = e.base.n
        copies = {i: e.base.n + 1 + (i - 3) for i in range(3, L)}
        new_edges = [(cyc[0], x), (cyc[1], x), (cyc[2], x)]
        for i in range(3, L):
            _insert_after(_row(changed, e, cyc[i]), cyc[i - 1], copies[i])
            new_edges.append((cyc[i], copies[i]))
        for i in range(3, L - 1):
            new_edges.append((copies[i], copies[i + 1]))
        new_edges.append((x, copies[3]))
        new_edges.append((x, copies[L - 1]))
        _insert_after(_row(changed, e, cyc[0]), cyc[L - 1], x)
        _insert_after(_row(changed, e, cyc[1]), cyc[0], x)
        _insert_after(_row(changed, e, cyc[2]), cyc[1], x)
        new_rows = [[copies[3], cyc[2], cyc[1], cyc[0], copies[L - 1]]]
        for i in range(3, L):
            if i == 3:
                ring = [cyc[3], x, copies[4]]
            elif i == L - 1:
                ring = [cyc[L - 1], copies[L - 2], x]
            else:
                ring = [cyc[i], copies[i - 1], copies[i + 1]]
            new_rows.append(ring)
        new_edges = [(min(a, b), max(a, b)) for a, b in new_edges]
        e = _with_appended(e, changed, new_rows, new_edges)


def is_absolute_planar_retract(e: EmbeddedGraph) -> bool:
    """Facial-K4 test: triangulation whose every face extends to a K4."""
    faces = trace_faces(e)
    g = e.base
    if g.n < 3:
        return False
    adj = [set(int(u) for u in g.adj[g.offsets[v]:g.offsets[v + 1]])
           for v in range(g.n)]
    for face in faces:
        verts = _face_vertices(face)
        if len(verts) != 3 or len(set(verts)) != 3:
            return False
        a, b, c = verts
        if not (adj[a] & adj[b] & adj[c]) - {a, b, c}:
            return False
    return True


def apollonian(steps: int, seed) -> EmbeddedGraph:
    """Random stacked triangulation: K3 plus `steps` face stellations."""
    if steps < 1:
        raise ValueError("need at least one stellation")
    rng = stream(seed, "apollonian")
    e = EmbeddedGraph(Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)]),
                      [[1, 2], [2, 0], [0, 1]])
    for _ in range(steps):
        faces = trace_faces(e)
        face = faces[int(rng.integers(len(faces)))]
        changed = {}
        z = e.base.n
        for u, v in face:
            _insert_after(_row(changed, e, v), u, z)
        verts = _face_vertices(face)
        e = _with_appended(e, changed, [list(reversed(verts))],
                           [(u, z) for u in verts])
    return e


def sparsify_embedded(e: EmbeddedGraph, keep: float, seed) -> EmbeddedGraph:
    """Drop a random subset of edges while keeping the graph connected.

    Deleting edges never invalidates a rotation system, so the result is
    still a plane embedding of a (sparser) connected planar graph.
    """
    if not 0.0 <= keep <= 1.0:
        raise ValueError("keep must be in [0, 1]")
    rng = stream(seed, "sparsify")
    g = e.base
    heads = np.repeat(np.arange(g.n), np.diff(g.offsets))
    sel = heads < g.adj
    edges = [(int(a), int(b)) for a, b in zip(heads[sel], g.adj[sel])]
    alive = set(edges)
    for j in rng.permutation(len(edges)):
        a, b = edges[int(j)]
        if rng.random() < keep:
            continue
        trial = alive - {(a, b)}
        adj = {}
        for u, v in trial:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        if len(adj) < g.n:
            continue
        queue, seen = [0], {0}
        while queue:
            v = queue.pop()
            for u in adj.get(v, ()):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        if len(seen) == g.n:
            alive = trial
    gone = set(edges) - alive
    rot = [[int(u) for u in row
            if (min(int(u), v), max(int(u), v)) not in gone]
           for v, row in enumerate(e.rotation)]
    return EmbeddedGraph(Graph.from_edges(g.n, sorted(alive)), rot)


def grid_embedded(rows: int, cols: int) -> EmbeddedGraph:
    """Plane rows x cols grid; neighbours listed up, right, down, left."""
    if rows < 1 or cols < 1 or rows * cols < 1:
        raise ValueError("grid must be nonempty")
    def vid(r, c):
        return r * cols + c
    edges, rot = [], []
    for r in range(rows):
        for c in range(cols):
            order = []
            if r > 0:
                order.append(vid(r - 1, c))
            if c + 1 < cols:
                order.append(vid(r, c + 1))
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                order.append(vid(r + 1, c))
                edges.append((vid(r, c), vid(r + 1, c)))
            if c > 0:
                order.append(vid(r, c - 1))
            rot.append(order)
    return EmbeddedGraph(Graph.from_edges(rows * cols, edges), rot)


def embed_into_retract(e: EmbeddedGraph):
    """Isometrically embed a connected plane graph into a checker-passing
    host.

    Stages: biconnect, shrink long faces, stellate twice.  The first
    stellation triangulates; the second gives every facial triangle its
    K4 witness.  Inputs with fewer than three vertices map onto an edge
    of K4 directly.
    """
    n0 = e.base.n
    if n0 <= 2:
        k4 = EmbeddedGraph(
            Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3),
                                 (2, 3)]),
            _k4_rotation())
        return k4, EmbeddingMap(np.arange(n0, dtype=np.int64),
                                (("map-to-k4", 4, 6),))
    stages = []
    out = biconnect(e)
    stages.append(("biconnect", out.base.n, out.base.m))
    out = shrink_faces(out)
    stages.append(("shrink-faces", out.base.n, out.base.m))
    out = stellate_all(out)
    stages.append(("stellate-1", out.base.n, out.base.m))
    out = stellate_all(out)
    stages.append(("stellate-2", out.base.n, out.base.m))
    return out, EmbeddingMap(np.arange(n0, dtype=np.int64), tuple(stages))


def _k4_rotation():
    return [[1, 2, 3], [2, 0, 3], [0, 1, 3], [0, 2, 1]]


def parse_embedded(text: str) -> EmbeddedGraph:
    """Graph format followed by n lines "rot v: u1 u2 ... ud"."""
    lines = [ln for ln in text.splitlines()]
    cut = next((i for i, ln in enumerate(lines)
                if ln.split() and ln.split()[0] == "rot"), None)
    if cut is None:
        raise GraphFormatError("missing rotation lines")
    g = parse_graph("\n".join(lines[:cut]))
    rot_lines = [ln for ln in lines[cut:] if ln.strip()]
    if len(rot_lines) != g.n:
        raise GraphFormatError("expected %d rotation lines, got %d"
                               % (g.n, len(rot_lines)))
    rotation = [None] * g.n
    for ln in rot_lines:
        head, _, tail = ln.partition(":")
        parts = head.split()
        if len(parts) != 2 or parts[0] != "rot":
            raise GraphFormatError("malformed rotation line: %r" % ln)
        try:
            v = int(parts[1])
            order = [int(t) for t in tail.split()]
        except ValueError as exc:
            raise GraphFormatError("malformed rotation line: %r" % ln) from exc
        if not 0 <= v < g.n or rotation[v] is not None:
            raise GraphFormatError("bad or repeated rotation vertex %d" % v)
        rotation[v] = order
    try:
        return EmbeddedGraph(g, rotation)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def dump_embedded(e: EmbeddedGraph) -> str:
    out = [dump_graph(e.base)]
    for v in range(e.base.n):
        out.append("rot %d: %s\n"
                   % (v, " ".join(str(int(u)) for u in e.rotation[v])))
    return "".join(out)

"""Core graph type, traversal primitives and the plain-text format.

Graphs are simple, undirected, connected, with vertices 0..n-1, stored
as a flat CSR adjacency (offsets + neighbor array, neighbors sorted).
All validation happens at construction time; algorithms downstream
assume the invariants and never re-check them.

Text format::

    n m
    u v      (one line per edge, 0 <= u < v < n)

Duplicate edges, loops, out-of-range endpoints and disconnected inputs
are rejected.
"""

from __future__ import annotations

import hashlib
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from . import instrument
from .errors import (
    DisconnectedGraphError,
    GraphFormatError,
    NotBipartiteError,
)


class Graph:
    """Immutable simple connected undirected graph in CSR form.

    Attributes
    ----------
    n : int
        Number of vertices.
    m : int
        Number of edges.
    offsets : ndarray of int32, shape (n + 1,)
        CSR row pointers into ``adj``.
    adj : ndarray of int32, shape (2 * m,)
        Concatenated sorted neighbor lists.
    """

    __slots__ = ("n", "m", "offsets", "adj", "_csr")

    def __init__(self, n: int, offsets: np.ndarray, adj: np.ndarray):
        self.n = int(n)
        self.m = int(len(adj) // 2)
        self.offsets = offsets
        self.adj = adj
        self._csr = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build and validate a graph from an iterable of (u, v) pairs."""
        if n <= 0:
            raise GraphFormatError("graph needs at least one vertex")
        edge_arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        m = len(edge_arr)
        if m:
            lo = edge_arr.min(axis=1)
            hi = edge_arr.max(axis=1)
            if lo.min() < 0 or hi.max() >= n:
                raise GraphFormatError("edge endpoint out of range")
            if (lo == hi).any():
                raise GraphFormatError("self-loops are not allowed")
            keys = lo * n + hi
            if len(np.unique(keys)) != m:
                raise GraphFormatError("duplicate edge")
            heads = np.concatenate([lo, hi])
            tails = np.concatenate([hi, lo])
        else:
            heads = np.empty(0, dtype=np.int64)
            tails = np.empty(0, dtype=np.int64)
        order = np.lexsort((tails, heads))
        heads = heads[order]
        tails = tails[order]
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.add.at(offsets, heads + 1, 1)
        offsets = np.cumsum(offsets)
        g = cls(n, offsets.astype(np.int64), tails.astype(np.int32))
        dist = bfs(g, [0])
        if (dist < 0).any():
            raise DisconnectedGraphError(
                "graph is disconnected (%d of %d vertices unreachable from 0)"
                % (int((dist < 0).sum()), n)
            )
        return g

    def neighbors(self, v: int) -> np.ndarray:
        return self.adj[self.offsets[v] : self.offsets[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return i < len(nb) and nb[i] == v

    def edge_list(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v, lexicographically sorted."""
        heads = np.repeat(np.arange(self.n, dtype=np.int32), np.diff(self.offsets))
        mask = heads < self.adj
        return np.column_stack([heads[mask], self.adj[mask]])

    def to_scipy(self) -> csr_matrix:
        if self._csr is None:
            data = np.ones(len(self.adj), dtype=np.int8)
            self._csr = csr_matrix(
                (data, self.adj, self.offsets), shape=(self.n, self.n)
            )
        return self._csr

    def induced_subgraph(self, vertices: Sequence[int]) -> tuple["Graph", np.ndarray]:
        """Subgraph induced by ``vertices``.

        Returns the subgraph (vertices relabeled 0..k-1 in the sorted
        order of ``vertices``) and the array mapping new ids back to
        the original ones.  Raises DisconnectedGraphError if the
        induced subgraph is not connected.
        """
        keep = np.unique(np.asarray(vertices, dtype=np.int64))
        pos = np.full(self.n, -1, dtype=np.int64)
        pos[keep] = np.arange(len(keep))
        edges = self.edge_list()
        mask = (pos[edges[:, 0]] >= 0) & (pos[edges[:, 1]] >= 0)
        sub_edges = np.column_stack([pos[edges[mask, 0]], pos[edges[mask, 1]]])
        return Graph.from_edges(len(keep), sub_edges), keep


def _gather(offsets: np.ndarray, adj: np.ndarray, frontier: np.ndarray) -> np.ndarray:
    """Concatenated neighbor lists of the frontier vertices."""
    starts = offsets[frontier]
    counts = offsets[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return adj[:0]
    shift = np.cumsum(counts) - counts
    idx = np.arange(total, dtype=np.int64) + np.repeat(starts - shift, counts)
    return adj[idx]


_COMPILED_BFS_MIN_N = 4096


def bfs(g: Graph, sources: Sequence[int]) -> np.ndarray:
    """Multi-source BFS distances.

    Returns an int32 array of length n; unreached vertices hold -1.
    Small graphs run a vectorized frontier loop; past a few thousand
    vertices the per-level Python overhead loses to one compiled
    traversal, so large graphs go through scipy instead.  Either way a
    full run scans every adjacency slot once, so the instrumented edge
    count is the same.
    """
    dist = np.full(g.n, -1, dtype=np.int32)
    frontier = np.unique(np.asarray(sources, dtype=np.int64))
    if frontier.size == 0:
        return dist
    if g.n >= _COMPILED_BFS_MIN_N:
        row = dijkstra(g.to_scipy(), directed=False, indices=frontier,
                       unweighted=True, min_only=True)
        reached = np.isfinite(row)
        dist[reached] = row[reached].astype(np.int32)
        instrument.bump("bfs_edges", 2 * g.m)
        return dist
    dist[frontier] = 0
    d = 0
    scanned = 0
    while frontier.size:
        nbrs = _gather(g.offsets, g.adj, frontier)
        scanned += len(nbrs)
        fresh = nbrs[dist[nbrs] < 0]
        if fresh.size == 0:
            break
        d += 1
        dist[fresh] = d
        frontier = np.unique(fresh)
    instrument.bump("bfs_edges", scanned)
    return dist


def bfs_parents(g: Graph, sources: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """BFS distances plus a deterministic parent array.

    parent[v] is the smallest-index neighbor of v one level closer to
    the sources; sources and unreached vertices hold -1.
    """
    dist = bfs(g, sources)
    sentinel = np.iinfo(np.int64).max
    parent = np.full(g.n, sentinel, dtype=np.int64)
    heads = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(g.offsets))
    tails = g.adj.astype(np.int64)
    mask = (dist[heads] >= 0) & (dist[heads] + 1 == dist[tails])
    np.minimum.at(parent, tails[mask], heads[mask])
    parent[parent == sentinel] = -1
    src = np.asarray(sources, dtype=np.int64)
    parent[src] = -1
    return dist, parent


def batched_bfs(g: Graph, sources: Sequence[int]) -> np.ndarray:
    """BFS distance rows for many sources at once, via compiled traversal.

    Returns an int32 matrix of shape (len(sources), n).  Used by the
    oracle and by exact sampling runs where per-call Python overhead
    would dominate.
    """
    src = np.asarray(sources, dtype=np.int64)
    if src.size == 0:
        return np.empty((0, g.n), dtype=np.int32)
    out = np.empty((len(src), g.n), dtype=np.int32)
    csr = g.to_scipy()
    chunk = max(1, min(len(src), max(64, (1 << 24) // max(1, g.n))))
    for i in range(0, len(src), chunk):
        block = dijkstra(
            csr, directed=False, indices=src[i : i + chunk], unweighted=True
        )
        out[i : i + chunk] = block.astype(np.int32)
    instrument.bump("bfs_edges", 2 * g.m * len(src))
    return out


def eccentricities_oracle(g: Graph) -> np.ndarray:
    """Reference eccentricities from n independent single-source runs.

    Quadratic-time oracle used only for verification; the production
    paths never call it.
    """
    ecc = np.empty(g.n, dtype=np.int32)
    csr = g.to_scipy()
    chunk = max(1, min(g.n, max(64, (1 << 24) // max(1, g.n))))
    for i in range(0, g.n, chunk):
        block = dijkstra(
            csr,
            directed=False,
            indices=np.arange(i, min(g.n, i + chunk)),
            unweighted=True,
        )
        ecc[i : i + chunk] = block.max(axis=1).astype(np.int32)
    return ecc


def diameter_oracle(g: Graph) -> int:
    return int(eccentricities_oracle(g).max())


def bipartition(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Two-color the graph by BFS parity from vertex 0.

    Returns (V0, V1) as sorted vertex arrays with 0 in V0.  Raises
    NotBipartiteError carrying an odd-cycle vertex sequence when no
    two-coloring exists.
    """
    dist, parent = bfs_parents(g, [0])
    heads = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(g.offsets))
    tails = g.adj.astype(np.int64)
    bad = (dist[heads] % 2) == (dist[tails] % 2)
    if bad.any():
        idx = np.flatnonzero(bad & (heads < tails))
        # smallest offending edge keeps the certificate deterministic
        k = idx[np.lexsort((tails[idx], heads[idx]))[0]]
        cycle = _odd_cycle(parent, dist, int(heads[k]), int(tails[k]))
        raise NotBipartiteError(
            "graph is not bipartite (odd cycle of length %d)" % len(cycle),
            certificate=cycle,
        )
    side = dist % 2
    v0 = np.flatnonzero(side == 0).astype(np.int64)
    v1 = np.flatnonzero(side == 1).astype(np.int64)
    return v0, v1


def _odd_cycle(parent: np.ndarray, dist: np.ndarray, u: int, v: int) -> list[int]:
    """Simple odd cycle through edge (u, v) in the BFS tree."""
    pu, pv = [u], [v]
    a, b = u, v
    while dist[a] > dist[b]:
        a = int(parent[a])
        pu.append(a)
    while dist[b] > dist[a]:
        b = int(parent[b])
        pv.append(b)
    while a != b:
        a = int(parent[a])
        b = int(parent[b])
        pu.append(a)
        pv.append(b)
    return pu[:-1] + pv[::-1]


def parse_graph(text: str) -> Graph:
    """Parse the plain edge-list format."""
    tokens = text.split()
    if len(tokens) < 2:
        raise GraphFormatError("missing graph header")
    try:
        n, m = int(tokens[0]), int(tokens[1])
    except ValueError as exc:
        raise GraphFormatError("bad header: %r" % tokens[:2]) from exc
    body = tokens[2:]
    if len(body) != 2 * m:
        raise GraphFormatError("expected %d edge tokens, found %d" % (2 * m, len(body)))
    try:
        flat = np.array([int(t) for t in body], dtype=np.int64)
    except ValueError as exc:
        raise GraphFormatError("non-integer edge token") from exc
    edges = flat.reshape(-1, 2)
    if m and not (edges[:, 0] < edges[:, 1]).all():
        raise GraphFormatError("edges must be written with u < v")
    return Graph.from_edges(n, edges)


def dump_graph(g: Graph) -> str:
    lines = ["%d %d" % (g.n, g.m)]
    lines.extend("%d %d" % (u, v) for u, v in g.edge_list())
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_graph(g))


def graph_sha256(g: Graph) -> str:
    return hashlib.sha256(dump_graph(g).encode("utf-8")).hexdigest()


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return Graph.from_edges(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

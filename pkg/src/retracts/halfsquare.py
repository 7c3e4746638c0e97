"""Half-square views of bipartite graphs.

The half-square on side i has the side-i vertices with edges between pairs at
base distance 2.  It is never materialized: every query runs on the bipartite
base graph, where side-i distances are exactly twice the half-square ones.

The workhorse is a partition-refinement procedure that, given a target set T
and a hop budget k, finds every candidate vertex within base distance k of
all of T.  Groups of targets carry witness sets B (vertices within t hops of
the whole group); one refinement step pushes witnesses one hop outward and
merges groups greedily on the most-shared witness vertex.  Intersections are
only ever taken across groups sharing that vertex, which keeps the step near
linear instead of quadratic.
"""

import heapq

import numpy as np

from . import instrument
from .errors import ParityError
from .graph import Graph, bfs, bipartition


class HalfSquareView:
    """One side of a bipartite graph, with the bipartition kept around."""

    __slots__ = ("graph", "side", "sides", "vertices", "in_side")

    def __init__(self, graph: Graph, sides, side: int):
        self.graph = graph
        self.sides = sides
        self.side = side
        self.vertices = sides[side]
        mask = np.zeros(graph.n, dtype=bool)
        mask[self.vertices] = True
        self.in_side = mask

    @property
    def opposite(self):
        return self.sides[1 - self.side]


def side_views(g: Graph):
    """Both half-square views of a connected bipartite graph."""
    sides = bipartition(g)
    return HalfSquareView(g, sides, 0), HalfSquareView(g, sides, 1)


def half_bfs(view: HalfSquareView, source: int):
    """Half-square distances from source: full-length array, -1 off side."""
    if not view.in_side[source]:
        raise ValueError("source %d is not on side %d" % (source, view.side))
    base = bfs(view.graph, [source])
    out = np.full(view.graph.n, -1, dtype=np.int32)
    out[view.vertices] = base[view.vertices] // 2
    return out


class _BucketQueue:
    """Max-priority queue over vertices whose priorities only decrease.

    Entries are lazily refiled on pop, so bulk decrements stay O(1) each.
    Ties break toward the smallest vertex id.
    """

    def __init__(self, vertices, counts):
        self.current = counts
        top = int(counts[vertices].max())
        self.buckets = [[] for _ in range(top + 1)]
        for v in vertices:
            self.buckets[counts[v]].append(int(v))
        for b in self.buckets:
            heapq.heapify(b)
        self.maxptr = top

    def pop(self):
        while self.maxptr > 0:
            b = self.buckets[self.maxptr]
            if not b:
                self.maxptr -= 1
                continue
            u = heapq.heappop(b)
            c = int(self.current[u])
            if c == self.maxptr:
                return u
            if c > 0:
                heapq.heappush(self.buckets[c], u)
        return None


def greedy_merge(witness, n):
    """Cluster groups on shared witness vertices, most-shared first.

    witness is a list of int arrays.  Returns a list of (selector, member
    group indices); every group lands in exactly one cluster.
    """
    p = len(witness)
    sizes = np.array([len(w) for w in witness], dtype=np.int64)
    if (sizes == 0).any():
        raise ValueError("empty witness set passed to greedy_merge")
    verts = np.concatenate(witness)
    labels = np.repeat(np.arange(p, dtype=np.int64), sizes)
    instrument.bump("refine_pairs", len(verts))

    order = np.argsort(verts, kind="stable")
    sv, sl = verts[order], labels[order]
    uverts, vstart = np.unique(sv, return_index=True)
    vend = np.append(vstart[1:], len(sv))

    counts = np.zeros(n, dtype=np.int64)
    counts[uverts] = vend - vstart
    pos = {int(v): i for i, v in enumerate(uverts)}
    queue = _BucketQueue(uverts, counts)

    alive = np.ones(p, dtype=bool)
    remaining = p
    clusters = []
    while remaining > 0:
        u = queue.pop()
        assert u is not None, "witness sets must cover all alive groups"
        i = pos[u]
        labs = sl[vstart[i]:vend[i]]
        labs = labs[alive[labs]]
        alive[labs] = False
        remaining -= len(labs)
        dead = np.concatenate([witness[g] for g in labs])
        np.add.at(counts, dead, -1)
        clusters.append((u, labs))
    return clusters


class _Refinement:
    """Iterated witness refinement from singleton target groups."""

    def __init__(self, graph: Graph, targets):
        self.graph = graph
        self.groups = [np.array([t], dtype=np.int64) for t in targets]
        self.t = 0

    def collapsed(self):
        return len(self.groups) == 1

    def witness(self):
        return self.groups[0] if len(self.groups) == 1 else np.array([], dtype=np.int64)

    def step(self):
        g = self.graph
        instrument.bump("refine_steps", 1)
        sizes = np.array([len(b) for b in self.groups], dtype=np.int64)
        base = np.concatenate(self.groups)
        labels = np.repeat(np.arange(len(self.groups), dtype=np.int64), sizes)

        deg = g.offsets[base + 1] - g.offsets[base]
        shift = np.cumsum(deg) - deg
        idx = np.arange(int(deg.sum()), dtype=np.int64) + np.repeat(g.offsets[base] - shift, deg)
        nbrs = g.adj[idx].astype(np.int64)
        nlabels = np.repeat(labels, deg)

        keys = np.unique(nlabels * g.n + nbrs)
        w_lab = keys // g.n
        w_vert = keys % g.n
        starts = np.searchsorted(w_lab, np.arange(len(self.groups)))
        ends = np.append(starts[1:], len(w_lab))
        witness = [w_vert[starts[i]:ends[i]] for i in range(len(self.groups))]

        clusters = greedy_merge(witness, g.n)
        new_groups = []
        for u, labs in clusters:
            if len(labs) == 1:
                merged = witness[labs[0]]
            else:
                cat = np.concatenate([witness[gi] for gi in labs])
                vals, cnt = np.unique(cat, return_counts=True)
                merged = vals[cnt == len(labs)]
            # the selector shares every member witness set, so the merged
            # set is never empty on any input
            pos = np.searchsorted(merged, u)
            assert pos < len(merged) and merged[pos] == u
            new_groups.append(merged)
        self.groups = new_groups
        self.t += 1


def _target_side(view: HalfSquareView, targets):
    targets = np.asarray(targets, dtype=np.int64)
    if targets.size == 0:
        raise ValueError("need at least one target")
    on = view.in_side[targets]
    if on.all():
        return view.side
    if (~on).all():
        return 1 - view.side
    raise ValueError("targets must lie on a single side")


def within_k_of_all(view: HalfSquareView, targets, k: int, candidate_side: int):
    """Vertices of candidate_side within base distance k of every target.

    k must have the parity of candidate side vs target side: even when the
    sides agree, odd when they differ.
    """
    tside = _target_side(view, targets)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if (k % 2 == 0) != (tside == candidate_side):
        raise ParityError(
            "hop budget %d cannot reach side %d from side %d" % (k, candidate_side, tside)
        )
    targets = np.unique(np.asarray(targets, dtype=np.int64))
    if k == 0:
        return targets if len(targets) == 1 else np.array([], dtype=np.int64)

    ref = _Refinement(view.graph, targets)
    for _ in range(k):
        ref.step()
    return ref.witness()


def half_diam_small(view: HalfSquareView, cap: int):
    """Half-square diameter and peripheral set, or None past the cap.

    Runs the refinement incrementally: after 2k steps a single group whose
    witness covers the side means every vertex has half-eccentricity <= k.
    The peripheral set falls out of the previous snapshot.
    """
    side = view.vertices
    if len(side) == 1:
        return 0, side.copy()

    ref = _Refinement(view.graph, side)
    nside = len(side)
    prev_cover = np.array([], dtype=np.int64)
    for k in range(1, cap + 1):
        ref.step()
        ref.step()
        cover = ref.witness()
        if len(cover) == nside:
            peripheral = np.setdiff1d(side, prev_cover, assume_unique=True)
            return k, peripheral
        prev_cover = cover
    return None

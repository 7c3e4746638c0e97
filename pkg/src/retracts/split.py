"""Split graphs: partition, retract recognition, pruning, diameter.

A split graph partitions into a clique K and a stable set S.  The
partition comes from the degree sequence; a failed attempt yields an
induced 2K2, C4 or C5 as the non-split certificate.  Absolute retracts
of split graphs are the complete split graphs plus the graphs with a
unique partition, and prune_to_retract reduces any split graph to one
of those while preserving whether the diameter equals three.
"""

from typing import NamedTuple

import numpy as np

from . import instrument
from .errors import NotSplitError
from .graph import Graph


class SplitPartition(NamedTuple):
    """Clique + stable partition with the trichotomy tag.

    case 1: |K| = omega, |S| = alpha, partition unique.
    case 2: some y in S is adjacent to all of K (omega = |K| + 1).
    case 3: some x in K has no neighbour in S (alpha = |S| + 1).
    """

    K: np.ndarray
    S: np.ndarray
    unique: bool
    case: int

    @property
    def omega(self) -> int:
        return len(self.K) + (1 if self.case == 2 else 0)

    @property
    def alpha(self) -> int:
        return len(self.S) + (1 if self.case == 3 else 0)


def _row(g: Graph, v) -> np.ndarray:
    return g.adj[g.offsets[v]:g.offsets[v + 1]]


def _adjacent(g: Graph, u, v) -> bool:
    row = _row(g, u)
    j = np.searchsorted(row, v)
    return j < len(row) and row[j] == v


def _induced_c4(g: Graph):
    """Smallest induced 4-cycle, as [u, v, w, x] in cycle order."""
    for u in range(g.n):
        nu = set(int(a) for a in _row(g, u))
        for w in range(u + 1, g.n):
            if w in nu:
                continue
            common = [int(a) for a in _row(g, u) if _adjacent(g, w, a)]
            for ai, v in enumerate(common):
                for x in common[ai + 1:]:
                    if not _adjacent(g, v, x):
                        return [u, v, w, x]
    return None


def _induced_2k2(g: Graph):
    """Two induced disjoint edges [a, b, c, d] with edges ab and cd."""
    heads = np.repeat(np.arange(g.n), np.diff(g.offsets))
    sel = heads < g.adj
    ea, eb = heads[sel], g.adj[sel]
    closed = np.zeros(g.n, dtype=bool)
    for i in range(len(ea)):
        a, b = int(ea[i]), int(eb[i])
        closed[:] = False
        closed[[a, b]] = True
        closed[_row(g, a)] = True
        closed[_row(g, b)] = True
        clash = closed[ea] | closed[eb]
        rest = np.flatnonzero(~clash[i + 1:])
        if rest.size:
            j = i + 1 + int(rest[0])
            return [a, b, int(ea[j]), int(eb[j])]
    return None


def _induced_c5(g: Graph):
    """Smallest induced 5-cycle, as a vertex list in cycle order."""
    for v0 in range(g.n):
        n0 = set(int(a) for a in _row(g, v0))
        for v1 in _row(g, v0):
            v1 = int(v1)
            n1 = set(int(a) for a in _row(g, v1))
            for v2 in sorted(n1 - n0 - {v0}):
                n2 = set(int(a) for a in _row(g, v2))
                for v3 in sorted(n2 - n0 - n1 - {v0, v1}):
                    for v4 in sorted(n0 & set(int(a) for a in _row(g, v3))):
                        if v4 not in n1 and v4 not in n2 and v4 != v1:
                            return [v0, v1, v2, v3, v4]
    return None


def _not_split_certificate(g: Graph) -> NotSplitError:
    hit = _induced_c4(g)
    if hit is not None:
        return NotSplitError("induced 4-cycle",
                             certificate={"structure": "C4", "vertices": hit})
    hit = _induced_2k2(g)
    if hit is not None:
        return NotSplitError("induced pair of disjoint edges",
                             certificate={"structure": "2K2", "vertices": hit})
    hit = _induced_c5(g)
    if hit is not None:
        return NotSplitError("induced 5-cycle",
                             certificate={"structure": "C5", "vertices": hit})
    raise AssertionError("graph failed the split test yet has no witness")


def split_partition(g: Graph) -> SplitPartition:
    """Degree-sequence split partition, or NotSplitError with a witness.

    The candidate clique is the p highest-degree vertices, p the largest
    index with (sorted) degree >= p - 1; a split graph always validates,
    anything else contains an induced 2K2, C4 or C5.
    """
    deg = np.diff(g.offsets)
    order = np.lexsort((np.arange(g.n), -deg))
    sorted_deg = deg[order]
    p = int(np.max(np.flatnonzero(sorted_deg >= np.arange(g.n))) + 1)
    K = np.sort(order[:p])
    S = np.sort(order[p:])

    in_k = np.zeros(g.n, dtype=bool)
    in_k[K] = True
    k_deg_inside = np.array([int(in_k[_row(g, v)].sum()) for v in K])
    if np.any(k_deg_inside != len(K) - 1):
        raise _not_split_certificate(g)
    if any(in_k[_row(g, y)].sum() != deg[y] for y in S):
        raise _not_split_certificate(g)

    case = 1
    if any(deg[y] == len(K) for y in S):
        case = 2
    elif any(deg[x] == len(K) - 1 for x in K):
        case = 3
    return SplitPartition(K, S, case == 1, case)


def recognize_absolute_split(g: Graph) -> bool:
    """True iff g is a complete split graph or its partition is unique."""
    part = split_partition(g)
    deg = np.diff(g.offsets)
    universal = deg == g.n - 1
    heads = np.repeat(np.arange(g.n), deg)
    independent = not np.any(~universal[heads] & ~universal[g.adj])
    return bool(independent or part.unique)


def prune_to_retract(g: Graph):
    """Strip removable vertices until the split graph is a retract.

    Rule 1 removes x in K with deg(x) = |K| - 1, rule 2 removes y in S
    with deg(y) = |K|; both are exactly the vertices whose neighbourhood
    is the rest of the clique, so distances among survivors are
    untouched and the diameter-3 indicator is preserved.  Stops at a
    single vertex.  Returns the residual graph and the removal order.
    """
    part = split_partition(g)
    deg = np.diff(g.offsets).astype(np.int64).copy()
    alive = np.ones(g.n, dtype=bool)
    in_k = np.zeros(g.n, dtype=bool)
    in_k[part.K] = True
    ksize = len(part.K)
    n_alive = g.n

    # degree-indexed buckets, one family per side; a removal relocates
    # only the touched neighbours, so total work stays linear
    buckets_k = [set() for _ in range(g.n + 1)]
    buckets_s = [set() for _ in range(g.n + 1)]
    for v in range(g.n):
        (buckets_k if in_k[v] else buckets_s)[deg[v]].add(v)
    instrument.bump("prune_ops", g.n)

    log = []
    while n_alive > 1:
        if ksize >= 1 and buckets_k[ksize - 1]:
            v = min(buckets_k[ksize - 1])
        elif buckets_s[ksize]:
            v = min(buckets_s[ksize])
        else:
            break
        nb = [int(u) for u in _row(g, v) if alive[u]]
        assert len(nb) == deg[v] and all(in_k[u] for u in nb)
        (buckets_k if in_k[v] else buckets_s)[deg[v]].discard(v)
        alive[v] = False
        if in_k[v]:
            ksize -= 1
        n_alive -= 1
        for u in nb:
            side = buckets_k if in_k[u] else buckets_s
            side[deg[u]].discard(u)
            deg[u] -= 1
            side[deg[u]].add(u)
        instrument.bump("prune_ops", len(nb) + 1)
        log.append(int(v))

    keep = np.flatnonzero(alive)
    local = np.full(g.n, -1, dtype=np.int64)
    local[keep] = np.arange(len(keep))
    heads = np.repeat(np.arange(g.n), np.diff(g.offsets))
    sel = alive[heads] & alive[g.adj] & (heads < g.adj)
    residual = Graph.from_edges(
        len(keep), np.stack([local[heads[sel]], local[g.adj[sel]]], axis=1))
    return residual, log


def split_diameter(g: Graph) -> int:
    """Diameter of a connected split graph; always one of 0, 1, 2, 3.

    After the trivial sizes it reduces to one question: do two stable
    vertices have disjoint clique neighbourhoods?  Bit vectors over K
    answer it pair by pair.
    """
    if g.n == 1:
        return 0
    if g.m == g.n * (g.n - 1) // 2:
        return 1
    part = split_partition(g)
    pos = np.full(g.n, -1, dtype=np.int64)
    pos[part.K] = np.arange(len(part.K))
    masks = []
    for y in part.S:
        m = 0
        for u in _row(g, y):
            m |= 1 << int(pos[u])
        masks.append(m)
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if masks[i] & masks[j] == 0:
                return 3
    return 2

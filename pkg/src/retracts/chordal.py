"""Clique trees and fast eccentricities for chordal bipartite graphs.

The half-squares of a chordal bipartite absolute retract are strongly
chordal, and their maximal cliques are exactly the maximal deduplicated
neighborhoods of the opposite side.  A clique tree over those neighborhoods
drives everything else: neighborhood counters, gate lookups, a three-probe
central vertex search, center sets, and finally all base-graph
eccentricities assembled from the two half radii.

All distance work happens in the bipartite base graph (half-square hops are
base hops halved); the half-squares are never materialized.
"""

import heapq
import warnings
from typing import NamedTuple, Optional

import numpy as np

from . import instrument
from .errors import (GateMissingError, NoCentralVertexError,
                     NotDualHypertreeError, NotRetractError)
from .graph import Graph, batched_bfs, bfs
from .halfsquare import HalfSquareView, side_views, within_k_of_all

OFF_CLASS_WARNING = ("half eccentricity %d is below opposite radius %d minus "
                     "one; the input is outside the retract class")


class CliqueTree:
    """Rooted clique tree of one half-square.

    cliques live in a CSR pair (off, members) holding sorted base vertex
    ids; parent[i] is the BFS parent clique (-1 at the root) and
    in_parent_sep flags, per CSR slot, membership in the parent clique.
    vc_off/vc_ids give, per side vertex (in view.vertices order), the list
    of cliques containing it.
    """

    __slots__ = ("view", "off", "members", "parent", "in_parent_sep",
                 "vc_off", "vc_ids")

    def __init__(self, view, off, members, parent, in_parent_sep,
                 vc_off, vc_ids):
        self.view = view
        self.off = off
        self.members = members
        self.parent = parent
        self.in_parent_sep = in_parent_sep
        self.vc_off = vc_off
        self.vc_ids = vc_ids

    @property
    def n_cliques(self):
        return len(self.off) - 1

    def clique(self, i):
        return self.members[self.off[i]:self.off[i + 1]]


class GateTable(NamedTuple):
    """Half-square distances to a target set plus one gate per requested
    vertex; -1 marks slots that were not requested or have no gate."""
    dist: np.ndarray
    gate: np.ndarray


def _dedup_neighborhoods(view):
    """Distinct opposite-side neighborhoods as a CSR over base ids."""
    g = view.graph
    rows = []
    seen = set()
    for y in view.opposite:
        row = g.adj[g.offsets[y]:g.offsets[y + 1]]
        key = row.tobytes()
        if key not in seen:
            seen.add(key)
            rows.append(row.astype(np.int64))
    sizes = np.array([len(r) for r in rows], dtype=np.int64)
    off = np.zeros(len(rows) + 1, dtype=np.int64)
    np.cumsum(sizes, out=off[1:])
    return off, np.concatenate(rows), sizes


def _contains(sorted_keys, edge, verts, n):
    """Whether hyperedge ``edge`` contains every vertex in ``verts``."""
    instrument.bump("tree_ops", len(verts))
    want = edge * n + verts
    pos = np.searchsorted(sorted_keys, want)
    pos[pos >= len(sorted_keys)] = len(sorted_keys) - 1
    return bool((sorted_keys[pos] == want).all())


def clique_tree(view: HalfSquareView) -> CliqueTree:
    """Clique tree of the half-square on view's side.

    Orders the deduplicated neighborhoods by maximum covered count; each new
    hyperedge must share all its covered vertices with a single earlier one
    (running intersection), otherwise the family is not a dual hypertree and
    the offending overlap is raised as a certificate.  Non-maximal
    hyperedges are then contracted into a containing tree neighbor.
    """
    g = view.graph
    n = g.n
    off, verts, sizes = _dedup_neighborhoods(view)
    q = len(sizes)
    instrument.bump("tree_ops", len(verts))

    # vertex -> hyperedges CSR over base ids
    order_by_vert = np.argsort(verts, kind="stable")
    eid = np.repeat(np.arange(q, dtype=np.int64), sizes)
    sv, se = verts[order_by_vert], eid[order_by_vert]
    v_off = np.zeros(n + 1, dtype=np.int64)
    np.add.at(v_off, sv + 1, 1)
    np.cumsum(v_off, out=v_off)

    pair_keys = np.sort(eid * n + verts)

    counts = np.zeros(q, dtype=np.int64)
    number = np.full(q, -1, dtype=np.int64)
    covered = np.zeros(n, dtype=bool)
    cover_time = np.full(n, -1, dtype=np.int64)
    owner = np.full(n, -1, dtype=np.int64)
    parent_of = np.full(q, -1, dtype=np.int64)
    heap = [(0, e) for e in range(q)]

    for step in range(q):
        while True:
            negc, e = heapq.heappop(heap)
            if number[e] < 0 and counts[e] == -negc:
                break
        number[e] = step
        mem = verts[off[e]:off[e + 1]]
        inside = covered[mem]
        shared = mem[inside]
        fresh = mem[~inside]
        if step > 0:
            assert len(shared) > 0, "connected input must overlap prior cover"
            w_last = shared[np.argmax(cover_time[shared])]
            parent = -1
            cand = owner[w_last]
            if _contains(pair_keys, cand, shared, n):
                parent = cand
            else:
                for f in se[v_off[w_last]:v_off[w_last + 1]]:
                    f = int(f)
                    if f == cand or number[f] < 0 or number[f] >= step:
                        continue
                    if _contains(pair_keys, f, shared, n):
                        parent = f
                        break
            if parent < 0:
                raise NotDualHypertreeError(
                    "no earlier neighborhood contains the shared part",
                    certificate={"clique": mem.tolist(),
                                 "shared": shared.tolist()})
            parent_of[e] = parent
        covered[fresh] = True
        cover_time[fresh] = step
        owner[fresh] = e
        if len(fresh):
            touched = np.concatenate(
                [se[v_off[x]:v_off[x + 1]] for x in fresh])
            touched = touched[number[touched] < 0]
            instrument.bump("tree_ops", len(touched))
            np.add.at(counts, touched, 1)
            for f in np.unique(touched):
                heapq.heappush(heap, (-int(counts[f]), int(f)))

    # contract non-maximal hyperedges into a containing tree neighbor
    nbrs = [[] for _ in range(q)]
    for e in range(q):
        p = parent_of[e]
        if p >= 0:
            nbrs[e].append(int(p))
            nbrs[p].append(e)
    absorb = np.full(q, -1, dtype=np.int64)
    for e in range(q):
        mem = verts[off[e]:off[e + 1]]
        for j in sorted(nbrs[e]):
            if sizes[j] > sizes[e] and _contains(pair_keys, j, mem, n):
                absorb[e] = j
                break

    def target(e):
        while absorb[e] >= 0:
            e = absorb[e]
        return int(e)

    survivors = [e for e in range(q) if absorb[e] < 0]
    new_id = {e: i for i, e in enumerate(survivors)}
    t = len(survivors)
    adj = [set() for _ in range(t)]
    for e in range(q):
        p = parent_of[e]
        if p < 0:
            continue
        a, b = new_id[target(e)], new_id[target(int(p))]
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    assert sum(len(a) for a in adj) == 2 * (t - 1), "contracted tree is a tree"

    # BFS rooting from the contraction target of the first hyperedge
    root = new_id[target(0)]
    parent = np.full(t, -2, dtype=np.int64)
    parent[root] = -1
    bfs_order = [root]
    head = 0
    while head < len(bfs_order):
        k = bfs_order[head]
        head += 1
        for j in sorted(adj[k]):
            if parent[j] == -2:
                parent[j] = k
                bfs_order.append(j)
    assert len(bfs_order) == t

    # repack survivor cliques in BFS order
    relabel = np.full(t, -1, dtype=np.int64)
    for pos, k in enumerate(bfs_order):
        relabel[k] = pos
    new_off = np.zeros(t + 1, dtype=np.int64)
    chunks = [None] * t
    for e in survivors:
        i = int(relabel[new_id[e]])
        chunks[i] = verts[off[e]:off[e + 1]]
    csizes = np.array([len(c) for c in chunks], dtype=np.int64)
    np.cumsum(csizes, out=new_off[1:])
    members = np.concatenate(chunks)
    new_parent = np.full(t, -1, dtype=np.int64)
    for k in range(t):
        if parent[k] >= 0:
            new_parent[relabel[k]] = relabel[parent[k]]

    skeys = np.sort(np.repeat(np.arange(t, dtype=np.int64), csizes) * n + members)
    cid = np.repeat(np.arange(t, dtype=np.int64), csizes)
    par_rep = new_parent[cid]
    want = par_rep * n + members
    pos = np.clip(np.searchsorted(skeys, want), 0, len(skeys) - 1)
    in_parent_sep = (skeys[pos] == want) & (par_rep >= 0)

    # side vertex -> cliques CSR, in view.vertices order
    side_index = np.full(n, -1, dtype=np.int64)
    side_index[view.vertices] = np.arange(len(view.vertices), dtype=np.int64)
    mloc = side_index[members]
    assert (mloc >= 0).all()
    vc_off = np.zeros(len(view.vertices) + 1, dtype=np.int64)
    np.add.at(vc_off, mloc + 1, 1)
    np.cumsum(vc_off, out=vc_off)
    order2 = np.argsort(mloc * t + cid, kind="stable")
    vc_ids = cid[order2]
    assert vc_off[-1] == len(members) and (vc_off[1:] > vc_off[:-1]).all(), \
        "every side vertex lies in a maximal clique"

    return CliqueTree(view, new_off, members, new_parent, in_parent_sep,
                      vc_off, vc_ids)


def closed_nbhd_counts(tree: CliqueTree, members_mask):
    """|N_H[y] ∩ S| for every side vertex y, S given as a base-id mask.

    One scan over the clique CSR: each clique adds its S-count to all its
    members, and each parent separator subtracts its S-count from the
    separator members, which cancels the double counting exactly because
    the cliques containing a fixed vertex form a subtree.
    """
    instrument.bump("tree_ops", len(tree.members))
    inS = members_mask[tree.members]
    seg = tree.off[:-1]
    csum = np.add.reduceat(inS.astype(np.int64), seg)
    ssum = np.add.reduceat((inS & tree.in_parent_sep).astype(np.int64), seg)
    sizes = np.diff(tree.off)
    out = np.zeros(tree.view.graph.n, dtype=np.int64)
    np.add.at(out, tree.members, np.repeat(csum, sizes))
    np.subtract.at(out, tree.members[tree.in_parent_sep],
                   np.repeat(ssum, sizes)[tree.in_parent_sep])
    return out


def _best_by_clique(tree: CliqueTree, score):
    """Per side vertex, the highest-score member over its cliques.

    Ties break to the smallest id.  Scores are nonnegative ints.
    """
    n = tree.view.graph.n
    keys = score[tree.members] * np.int64(n + 1) + (n - tree.members)
    seg = tree.off[:-1]
    best_clique = np.maximum.reduceat(keys, seg)
    per_vertex = np.maximum.reduceat(best_clique[tree.vc_ids], tree.vc_off[:-1])
    winners = n - (per_vertex % (n + 1))
    out = np.full(n, -1, dtype=np.int64)
    out[tree.view.vertices] = winners
    return out


def gates(tree: CliqueTree, targets, vertices=None) -> GateTable:
    """Distances to a gated target set and one gate per requested vertex.

    The gate of v at half-square distance l >= 2 is any vertex within one
    half-square hop of every nearest target and within l-1 hops of v; on
    Helly half-squares the ball family meets, so a candidate always exists
    and its absence certifies a non-member.
    """
    view = tree.view
    g = view.graph
    targets = np.unique(np.asarray(targets, dtype=np.int64))
    if not view.in_side[targets].all():
        raise ValueError("targets must lie on the tree's side")
    dist2 = bfs(g, targets)
    hdist = np.full(g.n, -1, dtype=np.int64)
    hdist[view.vertices] = dist2[view.vertices].astype(np.int64) // 2

    if vertices is None:
        requested = view.vertices[hdist[view.vertices] > 0]
    else:
        requested = np.unique(np.asarray(vertices, dtype=np.int64))
    gate = np.full(g.n, -1, dtype=np.int64)

    lvl = hdist[requested]
    gate[requested[lvl == 1]] = requested[lvl == 1]
    deep = requested[lvl >= 2]
    if len(deep):
        rows = batched_bfs(g, deep)
        for row, v in zip(rows, deep):
            l = int(hdist[v])
            near = targets[row[targets] == 2 * l]
            cands = within_k_of_all(view, near, 2, view.side)
            cands = cands[row[cands] <= 2 * l - 2]
            if len(cands) == 0:
                raise GateMissingError(
                    "no vertex adjacent to all nearest targets within range",
                    certificate={"vertex": int(v), "targets": near.tolist()})
            gate[v] = cands[0]
    return GateTable(hdist, gate)


def central_vertex(tree: CliqueTree, view: Optional[HalfSquareView] = None):
    """A central vertex of the half-square, by three slice probes.

    Starting from a double BFS sweep (v, then furthest u, then furthest w),
    tries three radius guesses r; for each, the slice of the u-w interval
    at distance r from w is a clique, and a central vertex must be adjacent
    to every gate of the vertices at distance r from that slice.
    """
    view = view or tree.view
    g = view.graph
    side = view.vertices
    if len(side) == 1:
        return int(side[0])
    dv = bfs(g, [side[0]])
    u = int(side[np.argmax(dv[side])])
    du = bfs(g, [u])
    e_u = int(du[side].max()) // 2
    w = int(side[np.argmax(du[side])])
    dw = bfs(g, [w])
    d_wu = int(du[w]) // 2

    tried = []
    for r in ((e_u + 1) // 2, (e_u + 2) // 2, 1 + (e_u + 1) // 2):
        if r in tried or r > d_wu:
            continue
        tried.append(r)
        on_interval = du[side] + dw[side] == du[w]
        C = side[on_interval & (dw[side] // 2 == r)]
        if len(C) == 0:
            continue
        dC = bfs(g, C)
        far = side[dC[side] // 2 == r]
        far = far[dC[far] > 0]
        if len(far) == 0:
            return int(C[0])
        table = gates(tree, C, far)
        S = np.unique(table.gate[far])
        assert (S >= 0).all()
        mask = np.zeros(g.n, dtype=bool)
        mask[S] = True
        cnt = closed_nbhd_counts(tree, mask)
        ok = C[cnt[C] == len(S)]
        if len(ok):
            return int(ok[0])
    raise NoCentralVertexError(
        "no slice probe produced a dominated gate set",
        certificate={"side": int(view.side), "probes": tried})


def center_set(tree: CliqueTree, view: Optional[HalfSquareView] = None):
    """All central vertices of the half-square.

    Small radii reduce to one refinement over the whole side.  Otherwise
    the center is trapped within two hops of a short witness list: the
    central vertex, the gates of the farthest level, and for the level
    below, neighbors of their gates maximizing coverage of the unit ball.
    """
    view = view or tree.view
    g = view.graph
    side = view.vertices
    c = central_vertex(tree, view)
    dc = bfs(g, [c])
    hd = dc[side].astype(np.int64) // 2
    r = int(hd.max())
    if r == 0:
        return np.array([c], dtype=np.int64)
    if r <= 2:
        return within_k_of_all(view, side, 2 * r, view.side)

    ball = side[hd <= 1]
    a_top = side[hd == r]
    a_sub = side[hd == r - 1]
    top_gates = gates(tree, ball, a_top).gate[a_top]
    sub_gates = gates(tree, ball, a_sub).gate[a_sub]
    mask = np.zeros(g.n, dtype=bool)
    mask[ball] = True
    h = closed_nbhd_counts(tree, mask)
    best = _best_by_clique(tree, h)
    witness = np.unique(np.concatenate(
        [[c], top_gates, best[sub_gates]]))
    return within_k_of_all(view, witness, 4, view.side)


def _segment_min(g: Graph, verts, values):
    """Per vertex of ``verts``, the minimum of ``values`` over its neighbors."""
    deg = (g.offsets[verts + 1] - g.offsets[verts]).astype(np.int64)
    bounds = np.zeros(len(verts) + 1, dtype=np.int64)
    np.cumsum(deg, out=bounds[1:])
    idx = np.repeat(g.offsets[verts] - bounds[:-1], deg) + np.arange(bounds[-1])
    return np.minimum.reduceat(values[g.adj[idx]], bounds[:-1])


def _segment_all(g: Graph, verts, mask):
    deg = (g.offsets[verts + 1] - g.offsets[verts]).astype(np.int64)
    bounds = np.zeros(len(verts) + 1, dtype=np.int64)
    np.cumsum(deg, out=bounds[1:])
    idx = np.repeat(g.offsets[verts] - bounds[:-1], deg) + np.arange(bounds[-1])
    ok = mask[g.adj[idx]].astype(np.int64)
    return np.add.reduceat(ok, bounds[:-1]) == deg


def _tie_break_witness(g, tree, center, rad):
    """Vertices whose base eccentricity is 2*rad among the tie case.

    Builds the W list: a central vertex adjacent to the whole center, then
    gates toward its unit ball for the two outermost levels of the
    half-square, with coverage-maximizing neighbors standing in on the
    next-to-last level.
    """
    view = tree.view
    mask = np.zeros(g.n, dtype=bool)
    mask[center] = True
    cnt = closed_nbhd_counts(tree, mask)
    anchors = center[cnt[center] == len(center)]
    if len(anchors) == 0:
        raise NotRetractError(
            "no central vertex dominates the whole center",
            certificate={"side": int(view.side), "center": center.tolist()})
    c = int(anchors[0])
    dc = bfs(g, [c])
    side = view.vertices
    hd = dc[side].astype(np.int64) // 2
    ball = side[hd <= 1]
    a_top = side[hd == rad]
    a_sub = side[hd == rad - 1]
    parts = []
    if len(a_top):
        parts.append(gates(tree, ball, a_top).gate[a_top])
    if len(a_sub):
        mask2 = np.zeros(g.n, dtype=bool)
        mask2[ball] = True
        h = closed_nbhd_counts(tree, mask2)
        best = _best_by_clique(tree, h)
        parts.append(best[gates(tree, ball, a_sub).gate[a_sub]])
    if not parts:
        return np.array([], dtype=np.int64)
    return np.unique(np.concatenate(parts))


def all_eccentricities_chordal_bipartite(g: Graph):
    """Base-graph eccentricities of every vertex, via the two half-squares.

    Each side needs its clique tree, center set and radius; a vertex's
    eccentricity then follows from its half eccentricity and the opposite
    radius, with the tie case settled by a three-hop refinement against a
    small witness set.
    """
    if g.n <= 2:
        return np.full(g.n, g.n - 1, dtype=np.int64)
    views = side_views(g)
    trees = [clique_tree(v) for v in views]
    centers = []
    rads = []
    e_half = np.full(g.n, -1, dtype=np.int64)
    for i, view in enumerate(views):
        cen = center_set(trees[i], view)
        if len(cen) == 0:
            raise NotRetractError(
                "half-square center refinement collapsed to nothing",
                certificate={"side": i})
        centers.append(cen)
        dprobe = bfs(g, [cen[0]])
        rad = int(dprobe[view.vertices].max()) // 2
        rads.append(rad)
        dcen = bfs(g, cen)
        e_half[view.vertices] = dcen[view.vertices].astype(np.int64) // 2 + rad

    out = np.zeros(g.n, dtype=np.int64)
    for i, view in enumerate(views):
        side = view.vertices
        opp = 1 - i
        r = rads[opp]
        e = e_half[side]

        low = e <= r - 1
        if (e <= r - 2).any():
            warnings.warn(OFF_CLASS_WARNING % (int(e[e <= r - 2].min()), r),
                          RuntimeWarning, stacklevel=2)
        out[side[low]] = 2 * r - 1

        high = e >= r + 1
        if high.any():
            vs = side[high]
            nbr_min = _segment_min(g, vs, e_half)
            out[vs] = np.where(nbr_min < e[high], 2 * e[high], 2 * e[high] + 1)

        tie = e == r
        if tie.any():
            vs = side[tie]
            cmask = np.zeros(g.n, dtype=bool)
            cmask[centers[opp]] = True
            inside = _segment_all(g, vs, cmask)
            out[vs[~inside]] = 2 * r + 1
            pool = vs[inside]
            if len(pool):
                if r <= 2:
                    good = within_k_of_all(views[i], views[i].opposite,
                                           2 * r - 1, i)
                else:
                    witness = _tie_break_witness(g, trees[opp], centers[opp], r)
                    if len(witness) == 0:
                        good = pool
                    else:
                        good = within_k_of_all(views[i], witness, 3, i)
                gmask = np.zeros(g.n, dtype=bool)
                gmask[good] = True
                out[pool] = np.where(gmask[pool], 2 * r, 2 * r + 1)
    return out


def dump_clique_tree(tree: CliqueTree) -> str:
    """Serialize as one clique per line plus tree edges."""
    lines = []
    for i in range(tree.n_cliques):
        mem = tree.clique(i)
        lines.append("%d: %s" % (i, " ".join(str(int(v)) for v in mem)))
    for i in range(tree.n_cliques):
        if tree.parent[i] >= 0:
            a, b = int(tree.parent[i]), i
            lines.append("%d %d" % (min(a, b), max(a, b)))
    return "\n".join(lines) + "\n"

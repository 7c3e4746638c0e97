"""Diameter of absolute retracts of k-chromatic graphs, k >= 3.

The pipeline colours the input greedily from a maximal clique, answers
diameter <= 2 by a max-degree probe per colour class, and otherwise
reduces to colour triples whose induced subgraphs are isometric on class
members.  Within a triple, the largest in-class distance d_i is found
either by partition refinement (small d_i) or by sampled eccentricity
estimates (large d_i), and the per-class values combine into the
diameter with a +1 decided by a peripheral-neighbourhood scan.

All certificates raised here witness non-membership in the class; on
inputs outside the class a run may also return a wrong value without
raising, which callers are expected to surface as a contract note.
"""

import math
from typing import NamedTuple

import numpy as np

from . import instrument
from .errors import (DisconnectedGraphError, GraphFormatError,
                     NotRetractError, SizeLimitError)
from .graph import Graph, batched_bfs, bfs, dump_graph, parse_graph
from .halfsquare import greedy_merge
from .rng import stream
from .sampling import peripherals_by_sampling_colour
from .verify import Verdict


class ColoredGraph:
    """A graph with a proper colouring; classes are numbered 1..k.

    Construction validates properness and that every class is nonempty,
    so holding a ColoredGraph is proof of a usable colouring.
    """

    __slots__ = ("base", "k", "colour", "classes")

    def __init__(self, base: Graph, colour, k=None):
        colour = np.asarray(colour, dtype=np.int32)
        if colour.shape != (base.n,):
            raise ValueError("need one colour per vertex")
        if k is None:
            k = int(colour.max())
        if int(colour.min()) < 1 or int(colour.max()) > k:
            raise ValueError("colours must lie in 1..%d" % k)
        heads = np.repeat(np.arange(base.n), np.diff(base.offsets))
        bad = np.flatnonzero(colour[heads] == colour[base.adj])
        if bad.size:
            u, v = int(heads[bad[0]]), int(base.adj[bad[0]])
            raise ValueError("monochromatic edge %d %d" % (min(u, v), max(u, v)))
        classes = tuple(np.flatnonzero(colour == i + 1).astype(np.int64)
                        for i in range(k))
        if any(c.size == 0 for c in classes):
            raise ValueError("every colour class must be nonempty")
        self.base = base
        self.k = int(k)
        self.colour = colour
        self.classes = classes


class ColourPartitionState(NamedTuple):
    """Partition of one colour class with per-group ball witnesses.

    balls[a][i] is the set of colour-i vertices within distance t of
    every member of groups[a]; the refinement keeps these nonempty and
    pairwise disjoint per colour, which is exactly the class property
    being exploited.
    """

    groups: list
    balls: list
    t: int


class ColourTriple(NamedTuple):
    graph: ColoredGraph
    vertices: np.ndarray
    colours: tuple


def _row(g: Graph, v) -> np.ndarray:
    return g.adj[g.offsets[v]:g.offsets[v + 1]]


def _adjacent(g: Graph, u, v) -> bool:
    row = _row(g, u)
    j = np.searchsorted(row, v)
    return j < len(row) and row[j] == v


def _least_missing(used, k: int) -> int:
    """Smallest colour in 1..k absent from the boolean table, else k+1."""
    for i in range(1, k + 1):
        if not used[i]:
            return i
    return k + 1


def color_absolute_retract(g: Graph) -> ColoredGraph:
    """Greedy colouring that is proper and k-classed on class members.

    A maximal clique through vertex 0 fixes k.  Neighbours of 0 are
    coloured by falling clique overlap, distance-2 vertices with the
    root colour excluded first, and the rest in BFS order.  Any vertex
    forced past colour k certifies the input is outside the class.
    """
    colour = np.zeros(g.n, dtype=np.int32)
    clique = [0]
    for x in _row(g, 0):
        if all(_adjacent(g, x, y) for y in clique):
            clique.append(int(x))
    k = len(clique)
    for j, v in enumerate(clique):
        colour[v] = j + 1

    overlap = np.zeros(g.n, dtype=np.int64)
    for y in clique:
        overlap[_row(g, y)] += 1
    in_clique = np.zeros(g.n, dtype=bool)
    in_clique[clique] = True

    def greedy(v, skip=0):
        used = np.zeros(k + 2, dtype=bool)
        nb = _row(g, v)
        hit = colour[nb]
        used[hit[(hit >= 1) & (hit <= k)]] = True
        if skip:
            used[skip] = True
        return _least_missing(used, k)

    fringe = [int(x) for x in _row(g, 0) if not in_clique[x]]
    fringe.sort(key=lambda x: (-overlap[x], x))
    for v in fringe:
        i = greedy(v)
        if i > k:
            raise NotRetractError(
                "vertex %d needs a colour beyond %d" % (v, k),
                certificate={"vertex": v, "k": k, "stage": "neighbour"})
        colour[v] = i

    dist = bfs(g, [0])
    for v in np.flatnonzero(dist == 2):
        i = greedy(int(v), skip=int(colour[0]))
        if i > k:
            i = greedy(int(v))
            if i > k:
                raise NotRetractError(
                    "vertex %d needs a colour beyond %d" % (v, k),
                    certificate={"vertex": int(v), "k": k, "stage": "distance-2"})
        colour[v] = i

    rest = np.flatnonzero(dist >= 3)
    for v in rest[np.argsort(dist[rest], kind="stable")]:
        i = greedy(int(v))
        if i > k:
            raise NotRetractError(
                "vertex %d needs a colour beyond %d" % (v, k),
                certificate={"vertex": int(v), "k": k, "stage": "remote"})
        colour[v] = i
    return ColoredGraph(g, colour, k)


def diam_le_two(cg: ColoredGraph) -> bool:
    """Per colour, test a maximum-degree vertex against all other classes.

    On class members this probe is exact: some vertex of the class sees
    every differently coloured vertex iff the max-degree one does.
    """
    deg = np.diff(cg.base.offsets)
    for cls in cg.classes:
        z = cls[int(np.argmax(deg[cls]))]
        if deg[z] != cg.base.n - len(cls):
            return False
    return True


def _induced(g: Graph, verts: np.ndarray):
    keep = np.zeros(g.n, dtype=bool)
    keep[verts] = True
    local = np.full(g.n, -1, dtype=np.int64)
    local[verts] = np.arange(len(verts))
    heads = np.repeat(np.arange(g.n), np.diff(g.offsets))
    sel = keep[heads] & keep[g.adj] & (heads < g.adj)
    edges = np.stack([local[heads[sel]], local[g.adj[sel]]], axis=1)
    return Graph.from_edges(len(verts), edges)


def triple_split(cg: ColoredGraph):
    """Cut the colour classes into consecutive triples, padding with 1, 2.

    Returns one induced, locally 3-coloured subgraph per triple plus the
    back-map to base vertex ids.  Class members make every triple
    subgraph isometric; a disconnected triple is therefore proof the
    input is outside the class.
    """
    if cg.k < 3:
        raise ValueError("triple split needs at least three colours")
    if cg.k == 3:
        return [ColourTriple(cg, np.arange(cg.base.n, dtype=np.int64), (1, 2, 3))]
    order = list(range(1, cg.k + 1))
    if cg.k % 3 == 1:
        order += [1, 2]
    elif cg.k % 3 == 2:
        order += [1]
    out = []
    for j in range(0, len(order), 3):
        a, b, c = order[j:j + 3]
        verts = np.sort(np.concatenate(
            [cg.classes[a - 1], cg.classes[b - 1], cg.classes[c - 1]]))
        try:
            sub = _induced(cg.base, verts)
        except DisconnectedGraphError:
            raise NotRetractError(
                "triple %s induces a disconnected subgraph" % ((a, b, c),),
                certificate={"colours": [a, b, c]})
        base_col = cg.colour[verts]
        local = np.where(base_col == a, 1, np.where(base_col == b, 2, 3))
        out.append(ColourTriple(ColoredGraph(sub, local, 3), verts, (a, b, c)))
    return out


def _helper_colour(primary: int, j: int) -> int:
    """The witness colour backing colour j when refining class `primary`."""
    pool = [c for c in (1, 2, 3) if c != primary]
    if j in pool:
        pool = [c for c in pool if c != j]
    return pool[0]


def _class_neighbours(g: Graph, verts, colour, want: int) -> np.ndarray:
    if len(verts) == 0:
        return np.empty(0, dtype=np.int64)
    rows = np.concatenate([_row(g, v) for v in verts]).astype(np.int64)
    rows = rows[colour[rows] == want]
    return np.unique(rows)


def _assert_disjoint(sets, t, colour_id):
    seen = {}
    for a, s in enumerate(sets):
        for v in s:
            v = int(v)
            if v in seen:
                raise NotRetractError(
                    "ball witness %d shared by two groups" % v,
                    certificate={"claim": "disjoint", "t": t,
                                 "colour": colour_id, "vertex": v})
            seen[v] = a


def colour_ecc_at_most(cg3: ColoredGraph, i: int, D: int) -> np.ndarray:
    """Vertices of class i whose in-class eccentricity is at most D.

    Partition refinement over class i: groups carry, per colour, the set
    of vertices within distance t of the whole group, and merge on
    shared witnesses until either the partition collapses (the answer is
    the surviving distance-D ball trace) or step D ends with several
    groups (the answer is empty).  Empty or overlapping witness sets on
    the way certify the input is outside the class.
    """
    if cg3.k != 3:
        raise ValueError("refinement works on 3-coloured graphs")
    if not 1 <= i <= 3:
        raise ValueError("colour out of range")
    if D < 2:
        raise ValueError("distance bound must be at least 2")
    g, colour = cg3.base, cg3.colour
    primary = cg3.classes[i - 1]
    h_base = _helper_colour(i, i)

    witness = [_class_neighbours(g, [v], colour, h_base) for v in primary]
    for v, w in zip(primary, witness):
        if w.size == 0:
            raise NotRetractError(
                "vertex %d has no neighbour of colour %d" % (v, h_base),
                certificate={"claim": "base-cover", "vertex": int(v),
                             "colour": h_base})
    clusters = greedy_merge(witness, g.n)
    groups = [np.sort(primary[labs]) for _, labs in clusters]

    balls = []
    for grp in groups:
        closed = np.concatenate([_row(g, v) for v in grp] + [grp]).astype(np.int64)
        cnt = np.bincount(closed, minlength=g.n)
        common = np.flatnonzero(cnt == len(grp))
        per_colour = {}
        for j in (1, 2, 3):
            b = common[colour[common] == j]
            if b.size == 0 and j != i:
                raise NotRetractError(
                    "group around %d misses colour %d at distance 1"
                    % (int(grp[0]), j),
                    certificate={"claim": "ball-colour", "t": 1, "colour": j,
                                 "group": [int(x) for x in grp]})
            per_colour[j] = b
        balls.append(per_colour)
    for j in (1, 2, 3):
        _assert_disjoint([b[j] for b in balls], 1, j)
    state = ColourPartitionState(groups, balls, 1)

    while state.t < D:
        state = _refine_step(cg3, i, state)

    if len(state.groups) != 1:
        return np.empty(0, dtype=np.int64)
    return state.balls[0][i]


def _refine_step(cg3: ColoredGraph, i: int, state: ColourPartitionState):
    g, colour = cg3.base, cg3.colour
    instrument.bump("refine_steps", 1)
    reach = []
    for b in state.balls:
        per = {}
        for j in (1, 2, 3):
            per[j] = _class_neighbours(g, b[_helper_colour(i, j)], colour, j)
        reach.append(per)
    t = state.t + 1
    for grp, per in zip(state.groups, reach):
        if per[i].size == 0:
            raise NotRetractError(
                "group around %d projects to no colour-%d vertex"
                % (int(grp[0]), i),
                certificate={"claim": "projection", "t": t,
                             "group": [int(x) for x in grp]})
    clusters = greedy_merge([per[i] for per in reach], g.n)

    groups, balls = [], []
    for _, labs in clusters:
        groups.append(np.sort(np.concatenate([state.groups[a] for a in labs])))
        per_colour = {}
        for j in (1, 2, 3):
            cat = np.concatenate([reach[a][j] for a in labs])
            cnt = np.bincount(cat, minlength=g.n)
            b = np.flatnonzero(cnt == len(labs))
            if b.size == 0 and j != i:
                raise NotRetractError(
                    "merged group misses colour %d at distance %d" % (j, t),
                    certificate={"claim": "ball-colour", "t": t, "colour": j,
                                 "group": [int(x) for x in groups[-1]]})
            per_colour[j] = b
        balls.append(per_colour)
    for j in (1, 2, 3):
        _assert_disjoint([b[j] for b in balls], t, j)
    return ColourPartitionState(groups, balls, t)


def di_and_peripherals(cg3: ColoredGraph, i: int, seed, *, probability=None,
                       sampling_threshold=None):
    """Largest in-class distance of colour i and the vertices attaining it.

    A single BFS gives a 2-approximation D.  Small D binary-searches the
    refinement of colour_ecc_at_most; large D falls back to sampled
    estimates whose window keeps the class guarantee d_i >= 8w + 5.
    """
    g = cg3.base
    cls = cg3.classes[i - 1]
    if len(cls) == 1:
        return 0, cls.copy()
    row = bfs(g, [cls[0]])
    D = int(row[cls].max())
    bound = 16 * math.sqrt(g.n) + 10 if sampling_threshold is None else sampling_threshold
    if D <= bound:
        lo, hi = max(2, D), 2 * D
        while lo < hi:
            mid = (lo + hi) // 2
            if len(colour_ecc_at_most(cg3, i, mid)) == len(cls):
                hi = mid
            else:
                lo = mid + 1
        d = lo
        if d == 2:
            return d, cls.copy()
        inner = colour_ecc_at_most(cg3, i, d - 1)
        return d, np.setdiff1d(cls, inner)
    window = max(1, (D - 5) // 8)
    d, peripheral, _ = peripherals_by_sampling_colour(
        g, cls, window, seed, probability=probability)
    return d, peripheral


def diameter_k_chromatic(g: Graph, seed, *, probability=None,
                         sampling_threshold=None, colouring=None) -> int:
    """Diameter of an absolute retract of k-chromatic graphs, k >= 3.

    `colouring` may supply a ready ColoredGraph over the same base; by
    default the pipeline colours the input itself.
    """
    if g.n == 1:
        return 0
    if g.m == g.n * (g.n - 1) // 2:
        return 1
    if colouring is not None:
        if colouring.base.n != g.n or colouring.base.m != g.m:
            raise ValueError("colouring does not match the input graph")
        cg = colouring
    else:
        cg = color_absolute_retract(g)
    if cg.k < 3:
        raise NotRetractError(
            "%d-chromatic input; the class starts at three colours" % cg.k,
            certificate={"k": cg.k})
    if diam_le_two(cg):
        return 2

    dist_by_colour = {}
    periph = {}
    for tri in triple_split(cg):
        for j, orig in enumerate(tri.colours, start=1):
            if orig in dist_by_colour:
                continue
            d, local = di_and_peripherals(tri.graph, j, seed,
                                          probability=probability,
                                          sampling_threshold=sampling_threshold)
            dist_by_colour[orig] = d
            periph[orig] = tri.vertices[local]

    dmax = max(dist_by_colour.values())
    if dmax == 2:
        return 3
    top = [i for i in range(1, cg.k + 1) if dist_by_colour[i] == dmax]
    masks = {j: np.zeros(g.n, dtype=bool) for j in top}
    for j in top:
        masks[j][periph[j]] = True
    for i in top:
        for j in top:
            if i == j:
                continue
            for v in periph[i]:
                nb = _row(g, v)
                nbj = nb[cg.colour[nb] == j]
                if nbj.size and masks[j][nbj].all():
                    return dmax + 1
    return dmax


def _maximal_cliques(g: Graph):
    """All maximal cliques, via pivoted recursion over vertex bitmasks."""
    if g.n > 64:
        raise SizeLimitError("clique enumeration is limited to 64 vertices")
    adjm = [0] * g.n
    for v in range(g.n):
        for u in _row(g, v):
            adjm[v] |= 1 << int(u)
    out = []

    def bits(mask):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def expand(r, p, x):
        if not p and not x:
            out.append([v for v in bits(r)])
            return
        pivot = max(bits(p | x), key=lambda v: bin(adjm[v] & p).count("1"))
        for v in bits(p & ~adjm[pivot]):
            expand(r | (1 << v), p & adjm[v], x & adjm[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, (1 << g.n) - 1, 0)
    return out


def _ball_masks_filtered(row, positions):
    """Nonempty, nonfull colour traces of one center by growing radius."""
    full = (1 << len(positions)) - 1
    out = []
    prev = -1
    sub = row[positions]
    top = int(sub.max())
    for r in range(top + 1):
        mask = 0
        for j in np.flatnonzero(sub <= r):
            mask |= 1 << int(j)
        if mask != prev and mask != 0 and mask != full:
            out.append((r, mask))
        prev = mask
    return out


def check_characterization(cg: ColoredGraph, mode: str = "exhaustive",
                           budget: int = 2000, seed=0) -> Verdict:
    """Test the three class conditions; clique and path checks are exact.

    Condition 1 (pairwise colour intersection of ball families implies a
    common colour vertex) is enumerated outright up to 8 vertices and
    sampled with `budget` random families beyond, even under exhaustive
    mode; conditions 2 (all maximal cliques have size k) and 3 (colour-i
    neighbour on a shortest path) are always checked exactly.
    """
    if mode not in ("exhaustive", "sampled"):
        raise ValueError("mode must be exhaustive or sampled")
    g, k, colour = cg.base, cg.k, cg.colour

    for members in _maximal_cliques(g):
        if len(members) != k:
            return Verdict("fail", {"condition": 2, "clique": sorted(members),
                                    "size": len(members), "k": k})

    dist = batched_bfs(g, np.arange(g.n))
    for v in range(g.n):
        nb = _row(g, v)
        for i in range(1, k + 1):
            if colour[v] == i:
                continue
            xi = nb[colour[nb] == i].astype(np.int64)
            need = np.flatnonzero(
                (dist[v] >= 2) & ((colour != i) | (dist[v] >= 3)))
            if need.size == 0:
                continue
            if xi.size == 0:
                return Verdict("fail", {"condition": 3, "colour": i,
                                        "pair": [int(need[0]), v]})
            hit = dist[np.ix_(need, xi)] == (dist[need, v] - 1)[:, None]
            ok = hit.any(axis=1)
            if not ok.all():
                u = int(need[np.flatnonzero(~ok)[0]])
                return Verdict("fail", {"condition": 3, "colour": i,
                                        "pair": [u, v]})

    if mode == "exhaustive" and g.n <= 8:
        from .verify import _empty_common_family
        for i in range(1, k + 1):
            cls = cg.classes[i - 1]
            choices = []
            for v in range(g.n):
                opts = _ball_masks_filtered(dist[v], cls)
                if opts:
                    choices.append((v, opts))
            hit = _empty_common_family(choices, (1 << len(cls)) - 1)
            if hit is not None:
                centers, radii = hit
                return Verdict("fail", {"condition": 1, "colour": i,
                                        "centers": centers, "radii": radii})
        return Verdict("pass")

    rng = stream(seed, "kchrom-cond1")
    from itertools import combinations
    for trial in range(budget):
        i = int(rng.integers(1, k + 1))
        cls = cg.classes[i - 1]
        f = int(rng.integers(2, 7))
        centers = rng.choice(g.n, size=min(f, g.n), replace=False)
        base = dist[np.ix_(centers, cls)].min(axis=1)
        radii = base + rng.geometric(0.4, size=len(centers)) - 1
        traces = dist[np.ix_(centers, cls)] <= radii[:, None]
        meet = all((traces[a] & traces[b]).any()
                   for a, b in combinations(range(len(centers)), 2))
        if meet and not traces.all(axis=0).any():
            return Verdict("fail", {"condition": 1, "colour": i,
                                    "centers": [int(c) for c in centers],
                                    "radii": [int(r) for r in radii],
                                    "trial": trial})
    return Verdict("pass-sampled")


def parse_colored_graph(text: str) -> ColoredGraph:
    """Graph format plus one trailing "colors c_0 ... c_{n-1}" line."""
    lines = text.splitlines()
    for ln, line in enumerate(lines):
        if line.split() and line.split()[0] == "colors":
            break
    else:
        raise GraphFormatError("missing colors line")
    g = parse_graph("\n".join(lines[:ln]))
    tail = [t for line in lines[ln + 1:] for t in line.split()]
    if tail:
        raise GraphFormatError("unexpected content after colors line")
    try:
        values = [int(t) for t in lines[ln].split()[1:]]
    except ValueError as exc:
        raise GraphFormatError("colours must be integers") from exc
    if len(values) != g.n:
        raise GraphFormatError("expected %d colours, got %d" % (g.n, len(values)))
    if values and min(values) < 1:
        raise GraphFormatError("colours are 1-based")
    try:
        return ColoredGraph(g, values)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def dump_colored_graph(cg: ColoredGraph) -> str:
    return dump_graph(cg.base) + "colors " + " ".join(
        str(int(c)) for c in cg.colour) + "\n"

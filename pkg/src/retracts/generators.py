"""Seeded generators for the graph classes the solvers target.

gen_chordal_bipartite builds the clique-vertex incidence graph of a random
connected interval graph: interval vertices on one side, maximal cliques of
the interval graph on the other, edges for membership.  Incidence graphs of
interval graphs are chordal bipartite and satisfy the half-ball Helly
property, so they are valid inputs for the bipartite retract pipelines.

gen_split builds a connected split graph from an explicit clique + stable
partition and remembers that witness.
"""

from typing import NamedTuple

import numpy as np

from .graph import Graph
from .rng import stream


class SplitInstance(NamedTuple):
    graph: Graph
    clique: np.ndarray
    stable: np.ndarray


def _interval_family(n_intervals, rng):
    """Random integer intervals [a, b] whose union is overlap-connected.

    A spine of consecutively overlapping intervals is laid down first, then
    the remaining intervals are dropped anywhere inside the spanned range
    (every point of the range is spine-covered, so they cannot detach).
    Returns (starts, ends) arrays.
    """
    # style knobs drawn once per instance so different seeds give families
    # with genuinely different shapes (path-like, blocky, nested, ...)
    mean_len = rng.integers(1, 9)
    long_prob = rng.uniform(0.0, 0.15)
    long_len = rng.integers(10, 40)
    spine_frac = rng.uniform(0.35, 0.9)

    n_spine = max(1, int(round(spine_frac * n_intervals)))
    n_extra = n_intervals - n_spine

    lens = 1 + rng.geometric(1.0 / (1.0 + mean_len), size=n_spine)
    long_mask = rng.random(n_spine) < long_prob
    lens[long_mask] += rng.integers(0, long_len, size=int(long_mask.sum()))

    # advance strictly less than the previous length so consecutive spine
    # intervals share at least one point
    adv = np.empty(n_spine, dtype=np.int64)
    adv[0] = 0
    if n_spine > 1:
        adv[1:] = rng.integers(1, np.maximum(lens[:-1] - 1, 1) + 1)
    starts = np.cumsum(adv)
    ends = starts + lens - 1

    if n_extra > 0:
        span = int(ends.max())
        xlens = 1 + rng.geometric(1.0 / (1.0 + mean_len), size=n_extra)
        xstarts = rng.integers(0, span + 1, size=n_extra)
        xends = np.minimum(xstarts + xlens - 1, span)
        starts = np.concatenate([starts, xstarts])
        ends = np.concatenate([ends, xends])
    return starts, ends


def _maximal_clique_points(starts, ends):
    """Coordinates whose active interval set is a maximal clique.

    Sweep rule: a point emits a clique iff some interval ends there and the
    latest start at or before it is more recent than the latest earlier end.
    This emits every maximal clique exactly once (by the Helly property of
    intervals every maximal clique is the active set of some point).
    """
    coords = np.unique(np.concatenate([starts, ends]))
    has_start = np.zeros(len(coords), dtype=bool)
    has_end = np.zeros(len(coords), dtype=bool)
    has_start[np.searchsorted(coords, starts)] = True
    has_end[np.searchsorted(coords, ends)] = True

    idx = np.arange(len(coords))
    last_start = np.maximum.accumulate(np.where(has_start, idx, -1))
    ends_before = np.concatenate([[-1], np.maximum.accumulate(np.where(has_end, idx, -1))[:-1]])
    emit = has_end & (last_start > ends_before)
    return coords[emit]


def gen_chordal_bipartite(n_intervals, seed):
    """Incidence graph of a random connected interval graph.

    Vertices 0..n_intervals-1 are the intervals, the rest are the maximal
    cliques; edges encode membership.  Output is connected and chordal
    bipartite.  n_intervals=1 gives K2.
    """
    if n_intervals < 1:
        raise ValueError("need at least one interval")
    rng = stream(seed, "gen_chordal_bipartite")
    starts, ends = _interval_family(n_intervals, rng)
    points = _maximal_clique_points(starts, ends)

    # interval i is a member of every maximal-clique point inside [a, b]
    lo = np.searchsorted(points, starts, side="left")
    hi = np.searchsorted(points, ends, side="right")
    counts = hi - lo
    ivert = np.repeat(np.arange(n_intervals, dtype=np.int64), counts)
    shift = np.cumsum(counts) - counts
    cvert = np.arange(int(counts.sum()), dtype=np.int64) + np.repeat(lo - shift, counts)

    q = len(points)
    edges = np.stack([ivert, n_intervals + cvert], axis=1)
    return Graph.from_edges(n_intervals + q, edges)


def gen_split(n, density, seed):
    """Connected split graph with a recorded clique + stable witness.

    density in [0, 1] steers how many clique neighbours each stable vertex
    receives (always at least one, so the result is connected).  density=1
    yields a complete split graph.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must be in [0, 1]")
    rng = stream(seed, "gen_split")
    if n == 1:
        return SplitInstance(Graph.from_edges(1, []), np.array([0]), np.array([], dtype=np.int64))

    kfrac = rng.uniform(0.25, 0.7)
    k = int(np.clip(round(n * kfrac), 1, n - 1))
    clique = np.arange(k, dtype=np.int64)
    stable = np.arange(k, n, dtype=np.int64)

    edges = [(int(u), int(v)) for u in range(k) for v in range(u + 1, k)]
    for y in range(k, n):
        cnt = 1 + int(rng.binomial(k - 1, density)) if k > 1 else 1
        nbrs = np.sort(rng.choice(k, size=cnt, replace=False))
        edges.extend((int(x), y) for x in nbrs)
    return SplitInstance(Graph.from_edges(n, edges), clique, stable)

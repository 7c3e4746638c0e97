"""Diameter and eccentricities of absolute bipartite retracts.

The graph splits into two half-square factors, one per side of the
bipartition; the diameter of the whole graph is within one of twice the
larger half diameter, and the parity is settled by a peripheral-neighborhood
test.  Single eccentricities reduce to three cases against the radius of the
opposite half.
"""

import warnings
from math import isqrt
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import MissingDataError
from .graph import Graph, bfs
from .halfsquare import HalfSquareView, half_diam_small, side_views
from .sampling import peripherals_by_sampling_half


class HalfDiamData(NamedTuple):
    """Diameter and peripheral vertices of one half-square factor."""
    diam: int
    peripheral: np.ndarray
    exact: bool = True


class EccSideData(NamedTuple):
    """Per-side inputs for the eccentricity case split.

    half_ecc holds half-square eccentricities indexed by base vertex id
    (entries for the other side are ignored).  center_mask flags the central
    vertices of this side's half square.  Fields may be None when unused.
    """
    half_ecc: Optional[np.ndarray] = None
    rad: Optional[int] = None
    center_mask: Optional[np.ndarray] = None


def _neighbors_within(g: Graph, verts, mask):
    """Vertices of ``verts`` whose whole neighborhood lies inside ``mask``.

    Degrees are positive in a connected graph, so the reduceat segments are
    all nonempty.
    """
    verts = np.asarray(verts, dtype=np.int64)
    if len(verts) == 0:
        return verts
    deg = (g.offsets[verts + 1] - g.offsets[verts]).astype(np.int64)
    bounds = np.zeros(len(verts) + 1, dtype=np.int64)
    np.cumsum(deg, out=bounds[1:])
    idx = np.repeat(g.offsets[verts] - bounds[:-1], deg) + np.arange(bounds[-1])
    ok = mask[g.adj[idx]].astype(np.int64)
    return verts[np.add.reduceat(ok, bounds[:-1]) == deg]


def combine_diameter(g: Graph, sides, data):
    """Whole-graph diameter from the two half diameters (diameter >= 3 only).

    Twice the larger half diameter, plus one exactly when the halves cannot
    cover the extra step: both halves tie and some peripheral vertex has all
    its neighbors peripheral on the other side, or the larger half diameter
    is 1 (then the whole diameter is forced to 3).
    """
    d0, d1 = data[0].diam, data[1].diam
    dmax = max(d0, d1)
    if dmax <= 0:
        return 1
    if dmax == 1:
        return 3
    if d0 == d1:
        for i in (0, 1):
            mask = np.zeros(g.n, dtype=bool)
            mask[data[1 - i].peripheral] = True
            if len(_neighbors_within(g, data[i].peripheral, mask)):
                return 2 * dmax + 1
    return 2 * dmax


def diameter_absolute_bipartite(g: Graph, seed, scale=3.0, probability=None,
                                threads=1):
    """Diameter of an absolute bipartite retract.

    Small diameters go through exact half-square refinement; past sqrt(n)
    the half diameters come from sampling (probability overrides the
    log-based rate; 1.0 makes the run exact).
    """
    if g.n <= 2:
        return g.n - 1
    views = side_views(g)
    if g.m == len(views[0].vertices) * len(views[1].vertices):
        return 2
    approx = int(bfs(g, 0).max())
    if approx < isqrt(g.n) and probability is None:
        data = []
        for view in views:
            found = half_diam_small(view, approx)
            if found is None:
                break
            data.append(HalfDiamData(found[0], found[1], True))
        else:
            return combine_diameter(g, views[0].sides, data)
    window = max(1, approx // 8)
    data = []
    for view in views:
        d, periph, info = peripherals_by_sampling_half(
            view, window, seed, scale=scale, probability=probability,
            threads=threads)
        data.append(HalfDiamData(d, periph, info.probability >= 1.0))
    return combine_diameter(g, views[0].sides, data)


def eccentricity_cases(g: Graph, sides, v: int, data,
                       case2_resolver: Optional[Callable[[int], bool]] = None):
    """Eccentricity of one vertex from half-square data, by case split.

    With e the vertex's half eccentricity and r the opposite half's radius:
    e < r gives 2r - 1; e == r gives 2r when the neighborhood sits inside
    the opposite center and the resolver confirms every opposite vertex is
    within r - 1 of it, else 2r + 1; e > r gives 2e when some neighbor has
    strictly smaller half eccentricity, else 2e + 1.
    """
    side0 = sides[0]
    pos = np.searchsorted(side0, v)
    i = 0 if pos < len(side0) and side0[pos] == v else 1
    own, opp = data[i], data[1 - i]
    if own.half_ecc is None or opp.rad is None:
        raise MissingDataError("need own half eccentricities and opposite radius")
    e = int(own.half_ecc[v])
    r = opp.rad
    if e <= r - 1:
        if e <= r - 2:
            warnings.warn(
                "half eccentricity %d is below opposite radius %d minus one; "
                "the input is outside the retract class" % (e, r),
                RuntimeWarning, stacklevel=2)
        return 2 * r - 1
    if e == r:
        if opp.center_mask is None:
            raise MissingDataError("tie case needs the opposite center set")
        nbrs = g.adj[g.offsets[v]:g.offsets[v + 1]]
        if not opp.center_mask[nbrs].all():
            return 2 * r + 1
        if case2_resolver is None:
            raise MissingDataError("tie case needs a center-domination resolver")
        return 2 * r if case2_resolver(v) else 2 * r + 1
    if opp.half_ecc is None:
        raise MissingDataError("high case needs opposite half eccentricities")
    nbrs = g.adj[g.offsets[v]:g.offsets[v + 1]]
    if (opp.half_ecc[nbrs] < e).any():
        return 2 * e
    return 2 * e + 1

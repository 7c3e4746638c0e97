"""Bipartite retract diameter pipeline and the eccentricity case split."""

import numpy as np
import pytest

from helpers import complete_bipartite, cycle, path, star
from retracts import (EccSideData, HalfDiamData, bfs, bipartition,
                      combine_diameter, diameter_absolute_bipartite,
                      diameter_oracle, eccentricities_oracle,
                      eccentricity_cases, half_bfs, half_diam_small,
                      side_views)
from retracts.errors import MissingDataError


def _half_data(g, cap=64):
    views = side_views(g)
    out = []
    for view in views:
        d, per = half_diam_small(view, cap)
        out.append(HalfDiamData(d, per, True))
    return views, out


def test_combine_frozen_values():
    for g, want in [(path(8), 7), (path(7), 6)]:
        views, data = _half_data(g)
        assert combine_diameter(g, views[0].sides, data) == want
    # C6 sits outside the class, so its half data is built by hand here;
    # tied half diameters of 1 force a whole diameter of 3
    g = cycle(6)
    views = side_views(g)
    data = [HalfDiamData(1, views[0].vertices),
            HalfDiamData(1, views[1].vertices)]
    assert combine_diameter(g, views[0].sides, data) == 3


def test_diameter_small_cases():
    assert diameter_absolute_bipartite(path(1), seed=0) == 0
    assert diameter_absolute_bipartite(path(2), seed=0) == 1
    assert diameter_absolute_bipartite(complete_bipartite(3, 4), seed=0) == 2
    assert diameter_absolute_bipartite(star(5), seed=0) == 2


def test_diameter_matches_oracle_corpus(cb_corpus):
    for g in cb_corpus:
        want = diameter_oracle(g)
        for seed in (0, 1):
            assert diameter_absolute_bipartite(g, seed=seed) == want


def test_diameter_exact_when_forced(cb_corpus):
    for g in cb_corpus[::3]:
        want = diameter_oracle(g)
        assert diameter_absolute_bipartite(g, seed=5, probability=1.0) == want


def _ecc_inputs(g):
    """Truthful per-side data for the case split, built from half BFS."""
    views = side_views(g)
    half_ecc = np.full(g.n, -1, dtype=np.int64)
    rads = []
    masks = []
    for view in views:
        eccs = {int(u): int(half_bfs(view, int(u))[view.vertices].max())
                for u in view.vertices}
        for u, e in eccs.items():
            half_ecc[u] = e
        rad = min(eccs.values())
        rads.append(rad)
        mask = np.zeros(g.n, dtype=bool)
        for u, e in eccs.items():
            if e == rad:
                mask[u] = True
        masks.append(mask)
    data = [EccSideData(half_ecc=half_ecc, rad=rads[i], center_mask=masks[i])
            for i in range(2)]
    return views, data


@pytest.mark.parametrize("builder", [lambda: cycle(4), lambda: cycle(6),
                                     lambda: path(5), lambda: path(8),
                                     lambda: star(4),
                                     lambda: complete_bipartite(2, 3)])
def test_eccentricity_cases_match_oracle(builder):
    g = builder()
    views, data = _ecc_inputs(g)
    want = eccentricities_oracle(g)
    for v in range(g.n):
        resolver = lambda u: want[u] == 2 * data[1 - _side_of(views, u)].rad
        got = eccentricity_cases(g, views[0].sides, v, data,
                                 case2_resolver=resolver)
        assert got == want[v], v


def _side_of(views, v):
    return 0 if views[0].in_side[v] else 1


def test_eccentricity_corpus_spot(cb_corpus):
    for g in cb_corpus[2:10]:
        views, data = _ecc_inputs(g)
        want = eccentricities_oracle(g)
        for v in range(0, g.n, max(1, g.n // 9)):
            resolver = lambda u: want[u] == 2 * data[1 - _side_of(views, u)].rad
            assert eccentricity_cases(g, views[0].sides, v, data,
                                      case2_resolver=resolver) == want[v]


def test_missing_data_raises():
    g = cycle(4)
    views = side_views(g)
    empty = [EccSideData(), EccSideData()]
    with pytest.raises(MissingDataError):
        eccentricity_cases(g, views[0].sides, 0, empty)
    # tie case without a resolver
    _, data = _ecc_inputs(g)
    with pytest.raises(MissingDataError):
        eccentricity_cases(g, views[0].sides, 0, data)


def test_below_radius_warns():
    """Half eccentricity two under the opposite radius marks a non-member."""
    g = cycle(6)
    views = side_views(g)
    half_ecc = np.zeros(g.n, dtype=np.int64)
    data = [EccSideData(half_ecc=half_ecc, rad=3, center_mask=None),
            EccSideData(half_ecc=half_ecc, rad=3, center_mask=None)]
    with pytest.warns(RuntimeWarning):
        assert eccentricity_cases(g, views[0].sides, 0, data) == 5

"""Sampled eccentricity estimates: exactness at p=1 and bounds otherwise."""

import numpy as np
import pytest

from helpers import cycle, path
from retracts import (gen_chordal_bipartite, half_bfs,
                      peripherals_by_sampling_colour,
                      peripherals_by_sampling_half, side_views)


def _half_eccs(view):
    return {int(u): int(half_bfs(view, int(u))[view.vertices].max())
            for u in view.vertices}


def test_probability_one_exact():
    for seed in (0, 5):
        g = gen_chordal_bipartite(60, seed=seed)
        for view in side_views(g):
            eccs = _half_eccs(view)
            true_d = max(eccs.values())
            d, per, info = peripherals_by_sampling_half(
                view, 2, seed=seed, probability=1.0)
            assert info.probability == 1.0
            assert d == true_d
            assert sorted(per.tolist()) == \
                sorted(v for v, e in eccs.items() if e == true_d)


def test_estimates_never_undershoot():
    g = gen_chordal_bipartite(120, seed=2)
    view = side_views(g)[0]
    eccs = _half_eccs(view)
    d, per, info = peripherals_by_sampling_half(view, 3, seed=11)
    for v, est in zip(view.vertices, info.estimates):
        if est:
            assert eccs[int(v)] <= est <= eccs[int(v)] + 2 * info.window


def test_deterministic_per_seed():
    g = gen_chordal_bipartite(100, seed=4)
    view = side_views(g)[1]
    a = peripherals_by_sampling_half(view, 2, seed=7)
    b = peripherals_by_sampling_half(view, 2, seed=7)
    assert a[0] == b[0] and (a[1] == b[1]).all()
    assert (a[2].sample == b[2].sample).all()


def test_colour_variant_probability_one():
    g = cycle(9)
    third = np.array([0, 3, 6], dtype=np.int64)
    best, per, info = peripherals_by_sampling_colour(
        g, third, 1, seed=0, probability=1.0)
    assert best == 3  # largest pairwise distance in the class
    assert sorted(per.tolist()) == [0, 3, 6]


def test_window_must_be_positive():
    view = side_views(path(5))[0]
    with pytest.raises(ValueError):
        peripherals_by_sampling_half(view, 0, seed=0)

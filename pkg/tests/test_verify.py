"""Checkers: half-ball Helly sampling, small Helly, cycles, isometry."""

import numpy as np
import pytest

from helpers import (cycle, hypercube, path, random_tree, star)
from retracts import (Graph, bfs, bipartition, half_ball_helly_sample,
                      is_chordal_bipartite_small, is_helly_small,
                      isometric_check)
from retracts.errors import NotBipartiteError, SizeLimitError


def _replay_half_ball_witness(g, witness):
    """The witness balls intersect pairwise on the side but share nothing."""
    sides = bipartition(g)
    side = sides[witness["side"]]
    centers = witness["centers"]
    radii = witness["radii"]
    balls = []
    for c, r in zip(centers, radii):
        dist = bfs(g, [int(c)])
        balls.append({int(v) for v in side if dist[v] <= 2 * r})
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            assert balls[i] & balls[j], (i, j)
    assert not set.intersection(*balls)


def test_q3_fails_with_replayable_witness():
    v = half_ball_helly_sample(hypercube(3), trials=10000, seed=0)
    assert v.outcome == "fail"
    assert v.witness == {"side": 0, "centers": [1, 2, 4, 7],
                         "radii": [1, 1, 1, 1]}
    _replay_half_ball_witness(hypercube(3), v.witness)


def test_c6_fails_half_ball():
    v = half_ball_helly_sample(cycle(6), trials=10000, seed=0)
    assert v.outcome == "fail"
    assert v.witness == {"side": 0, "centers": [1, 3, 5], "radii": [1, 1, 1]}
    _replay_half_ball_witness(cycle(6), v.witness)


@pytest.mark.parametrize("builder", [lambda: cycle(4), lambda: path(5),
                                     lambda: path(8), lambda: star(3)])
def test_members_pass_half_ball(builder):
    assert half_ball_helly_sample(builder(), trials=10000, seed=1).ok


def test_half_ball_deterministic():
    a = half_ball_helly_sample(hypercube(3), trials=500, seed=42)
    b = half_ball_helly_sample(hypercube(3), trials=500, seed=42)
    assert a == b


def test_c4_fails_helly():
    v = is_helly_small(cycle(4))
    assert v.outcome == "fail"
    assert v.witness == {"centers": [0, 1, 2, 3], "radii": [1, 1, 1, 1]}


def test_trees_are_helly():
    for seed in range(4):
        assert is_helly_small(random_tree(7, seed)).ok


def test_helly_size_limit():
    with pytest.raises(SizeLimitError):
        is_helly_small(path(9))


def test_chordal_bipartite_small():
    v = is_chordal_bipartite_small(cycle(6))
    assert v.outcome == "fail" and v.witness == {"cycle": [0, 1, 2, 3, 4, 5]}
    assert is_chordal_bipartite_small(cycle(8)).outcome == "fail"
    chord = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5),
                                 (0, 5), (0, 2)])
    # the short chord closes a triangle, so this is no longer bipartite
    with pytest.raises(NotBipartiteError):
        is_chordal_bipartite_small(chord)
    split_even = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4),
                                      (4, 5), (0, 5), (0, 3)])
    # the long chord splits the hexagon into two quadrilaterals
    assert is_chordal_bipartite_small(split_even).ok
    fixed = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5),
                                 (0, 5), (1, 4)])
    assert is_chordal_bipartite_small(fixed).ok
    assert is_chordal_bipartite_small(cycle(4)).ok


def test_chordal_bipartite_size_limit():
    with pytest.raises(SizeLimitError):
        is_chordal_bipartite_small(cycle(16))


def test_odd_cycle_rejected():
    with pytest.raises(NotBipartiteError):
        is_chordal_bipartite_small(cycle(5))


def test_isometric_identity():
    g = random_tree(12, 0)
    v = isometric_check(g, g, np.arange(12))
    assert v.ok and v.witness is None


def test_isometric_detects_stretch():
    v = isometric_check(path(3), path(5), [0, 1, 4])
    assert v.outcome == "fail"
    assert v.witness["pair"] == [0, 2]
    assert v.witness["dist_g"] == 2 and v.witness["dist_h"] == 4
    assert isometric_check(path(3), path(5), [0, 1, 2]).ok


def test_isometric_detects_shortcut():
    # host distance shorter than guest distance
    assert isometric_check(path(3), cycle(3), [0, 1, 2]).outcome == "fail"


def test_isometric_rejects_bad_mapping():
    with pytest.raises(ValueError):
        isometric_check(path(3), path(5), [0, 0, 1])
    with pytest.raises(ValueError):
        isometric_check(path(3), path(5), [0, 1, 9])

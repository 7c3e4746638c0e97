"""Rotation systems: faces, surgery stages, checker, and the embedder."""

import numpy as np
import pytest

from helpers import (cycle, cycle_embedded, k4_embedded, octahedron_embedded,
                     path, star, tree_embedded)
from retracts import (EmbeddedGraph, Graph, apollonian, biconnect,
                      dump_embedded, embed_into_retract, grid_embedded,
                      is_absolute_planar_retract, isometric_check,
                      parse_embedded, shrink_faces, sparsify_embedded,
                      stellate_all, trace_faces)
from retracts.errors import (GraphFormatError, NotBiconnectedError,
                             NotPlanarEmbeddingError)


def test_triangle_two_faces():
    e = EmbeddedGraph(cycle(3), [[1, 2], [2, 0], [0, 1]])
    faces = trace_faces(e)
    assert len(faces) == 2
    assert all(len(f) == 3 for f in faces)


def test_k4_faces_and_checker():
    faces = trace_faces(k4_embedded())
    assert len(faces) == 4 and all(len(f) == 3 for f in faces)
    assert is_absolute_planar_retract(k4_embedded())


def test_corrupted_rotation_rejected():
    bad = EmbeddedGraph._wrap(k4_embedded().base,
                              [[1, 3, 2], [2, 0, 3], [0, 1, 3], [0, 2, 1]])
    with pytest.raises(NotPlanarEmbeddingError) as exc:
        trace_faces(bad)
    assert exc.value.certificate == {"n": 4, "m": 6, "faces": 2}


def test_constructor_validates_rotation():
    with pytest.raises(ValueError):
        EmbeddedGraph(cycle(3), [[1, 2], [2, 0], [0, 0]])
    with pytest.raises(ValueError):
        EmbeddedGraph(cycle(3), [[1, 2], [2, 0]])


def test_octahedron_rejected_by_checker():
    e = octahedron_embedded()
    assert len(trace_faces(e)) == 8
    assert not is_absolute_planar_retract(e)


def test_single_edge_not_retract():
    e = EmbeddedGraph(path(2), [[1], [0]])
    assert not is_absolute_planar_retract(e)


def test_every_directed_edge_in_one_face():
    e = grid_embedded(3, 4)
    seen = {}
    for face in trace_faces(e):
        for de in face:
            assert de not in seen
            seen[de] = True
    assert len(seen) == 2 * e.base.m


def test_stellate_cycle():
    for n in (3, 4, 5):
        e = cycle_embedded(n)
        out = stellate_all(e)
        assert out.base.n == n + 2
        assert all(len(f) == 3 for f in trace_faces(out))
        assert isometric_check(e.base, out.base, np.arange(n)).ok


def test_stellate_rejects_cut_vertex():
    g = star(3)
    e = EmbeddedGraph(g, [[1, 2, 3], [0], [0], [0]])
    with pytest.raises(NotBiconnectedError) as exc:
        stellate_all(e)
    assert exc.value.certificate == {"vertex": 0}


def test_biconnect_leaves_biconnected_alone():
    e = cycle_embedded(4)
    out = biconnect(e)
    assert out.base.n == 4 and out.base.m == 4


def test_biconnect_star():
    e = EmbeddedGraph(star(3), [[1, 2, 3], [0], [0], [0]])
    out = biconnect(e)
    # patched graph has no cut vertex and old distances survive
    assert isometric_check(e.base, out.base, np.arange(4)).ok
    stellate_all(out)  # would raise if a cut vertex remained


def test_biconnect_trees_isometric():
    for seed in range(6):
        e = tree_embedded(14, seed)
        out = biconnect(e)
        assert isometric_check(e.base, out.base, np.arange(14)).ok
        stellate_all(out)


def test_shrink_c6():
    e = cycle_embedded(6)
    out = shrink_faces(e)
    assert all(len(f) <= 5 for f in trace_faces(out))
    assert isometric_check(e.base, out.base, np.arange(6)).ok


def test_shrink_short_faces_untouched():
    e = cycle_embedded(4)
    assert shrink_faces(e).base.n == 4


def test_apollonian_first_step_is_k4():
    a = apollonian(1, seed=0)
    assert a.base.n == 4 and a.base.m == 6
    assert is_absolute_planar_retract(a)


def test_apollonian_members():
    for s in (2, 5, 17, 50):
        a = apollonian(s, seed=s)
        assert a.base.n == s + 3
        assert is_absolute_planar_retract(a)


def test_apollonian_deterministic():
    a = apollonian(9, seed=4)
    b = apollonian(9, seed=4)
    assert all((x == y).all() for x, y in zip(a.rotation, b.rotation))


def test_apollonian_needs_steps():
    with pytest.raises(ValueError):
        apollonian(0, seed=0)


def test_sparsify_stays_embedded_and_connected():
    a = apollonian(40, seed=2)
    sp = sparsify_embedded(a, 0.5, seed=2)
    assert sp.base.n == a.base.n
    assert sp.base.m <= a.base.m
    trace_faces(sp)  # Euler check passes


def test_embed_pipeline_cycles():
    for n in (4, 5, 6):
        e = cycle_embedded(n)
        host, emb = embed_into_retract(e)
        assert is_absolute_planar_retract(host)
        assert isometric_check(e.base, host.base, emb.vertex_map).ok
        names = [s[0] for s in emb.stages]
        assert names == ["biconnect", "shrink-faces", "stellate-1",
                         "stellate-2"]


def test_embed_pipeline_trees():
    for seed in range(4):
        e = tree_embedded(16, seed)
        host, emb = embed_into_retract(e)
        assert is_absolute_planar_retract(host)
        assert isometric_check(e.base, host.base, emb.vertex_map).ok


def test_embed_pipeline_grid():
    e = grid_embedded(4, 4)
    host, emb = embed_into_retract(e)
    assert is_absolute_planar_retract(host)
    assert isometric_check(e.base, host.base, emb.vertex_map).ok


def test_embed_tiny_inputs():
    for n in (1, 2):
        e = (EmbeddedGraph(path(1), [[]]) if n == 1
             else EmbeddedGraph(path(2), [[1], [0]]))
        host, emb = embed_into_retract(e)
        assert host.base.n == 4
        assert is_absolute_planar_retract(host)
        assert isometric_check(e.base, host.base, emb.vertex_map).ok


def test_embedded_format_round_trip():
    e = k4_embedded()
    again = parse_embedded(dump_embedded(e))
    assert all((r == s).all() for r, s in zip(e.rotation, again.rotation))


def test_embedded_format_rejections():
    text = dump_embedded(k4_embedded())
    for bad in [text.replace("rot 3: 0 2 1\n", ""),
                text.replace("rot 3: 0 2 1", "rot 3: 0 2 2"),
                text.replace("rot 3: 0 2 1", "rot 3: 0 2"),
                text + "rot 4: 0\n",
                text.replace("rot 0", "rot 9")]:
        with pytest.raises(GraphFormatError):
            parse_embedded(bad)

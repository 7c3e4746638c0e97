"""Shared graph builders for the test suite."""

import numpy as np

from retracts import EmbeddedGraph, Graph


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    if n == 1:
        return Graph.from_edges(1, np.empty((0, 2), dtype=np.int64))
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return Graph.from_edges(n, [(i, j) for i in range(n)
                                for j in range(i + 1, n)])


def complete_bipartite(a, b):
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a)
                                    for j in range(b)])


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i + 1) for i in range(leaves)])


def hypercube(d):
    edges = [(v, v ^ (1 << b)) for v in range(1 << d) for b in range(d)
             if v < v ^ (1 << b)]
    return Graph.from_edges(1 << d, edges)


def random_tree(n, seed):
    rng = np.random.default_rng(seed)
    return Graph.from_edges(n, [(int(rng.integers(i)), i)
                                for i in range(1, n)])


def octahedron():
    return Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2),
                                (2, 3), (3, 4), (4, 1), (1, 5), (2, 5),
                                (3, 5), (4, 5)])


# ---------------------------------------------------------- embedded builders

def cycle_embedded(n):
    rot = [[(i - 1) % n, (i + 1) % n] for i in range(n)]
    return EmbeddedGraph(cycle(n), rot)


def tree_embedded(n, seed):
    g = random_tree(n, seed)
    rot = [[] for _ in range(n)]
    heads = np.repeat(np.arange(n), np.diff(g.offsets))
    for a, b in zip(heads, g.adj):
        rot[int(a)].append(int(b))
    return EmbeddedGraph(g, rot)


def k4_embedded():
    return EmbeddedGraph(complete(4), [[1, 2, 3], [2, 0, 3], [0, 1, 3],
                                       [0, 2, 1]])


def octahedron_embedded():
    rot = [[1, 2, 3, 4], [0, 4, 5, 2], [0, 1, 5, 3], [0, 2, 5, 4],
           [0, 3, 5, 1], [1, 4, 3, 2]]
    return EmbeddedGraph(octahedron(), rot)

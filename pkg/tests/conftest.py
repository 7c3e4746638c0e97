import itertools

import numpy as np
import pytest

from retracts import Graph, diameter_oracle, gen_chordal_bipartite
from retracts.errors import GraphError
from retracts.kchromatic import check_characterization, color_absolute_retract

_CB_SIZES = [1, 2, 3, 4, 6, 9, 13, 19, 28, 40, 57, 80, 110, 150, 200, 270,
             360, 480, 640, 850]


@pytest.fixture(scope="session")
def cb_corpus():
    """Mixed-size chordal bipartite instances for the unit tests."""
    return [gen_chordal_bipartite(n, seed=1000 + i)
            for i, n in enumerate(_CB_SIZES)]


def _connected_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        if len(edges) < n - 1:
            continue
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        if len({find(v) for v in range(n)}) == 1:
            yield Graph.from_edges(n, edges)


@pytest.fixture(scope="session")
def kchrom_members():
    """Admitted k-chromatic retracts among all connected graphs, n <= 6.

    Membership is decided by the exhaustive characterization check, so
    these are ground truth, not pipeline output.  Each entry carries the
    graph, its oracle diameter, and the colouring the pipeline produced.
    """
    members = []
    for n in range(3, 7):
        for g in _connected_graphs(n):
            try:
                cg = color_absolute_retract(g)
            except GraphError:
                continue
            if cg.k < 3:
                continue
            if check_characterization(cg, mode="exhaustive").outcome == "pass":
                members.append((g, diameter_oracle(g), cg))
    assert len(members) == 2195
    return members

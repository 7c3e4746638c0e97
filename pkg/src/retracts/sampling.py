"""Random-sample eccentricity estimators.

Each sampled vertex contributes its exact eccentricity (one BFS) and every
other vertex v takes the best bound d(v,u) + ecc(u) over samples u within the
hop window; vertices seeing no sample in the window score 0.  Estimates never
undershoot, and with sampling probability 1 they collapse to the exact values,
so the maximum recovers the diameter with high probability in the intended
regime (window well below the diameter, sample rate ~ log n / window).
"""

from concurrent.futures import ThreadPoolExecutor
from math import log
from typing import NamedTuple

import numpy as np

from . import instrument
from .graph import Graph, batched_bfs
from .halfsquare import HalfSquareView
from .rng import stream

_NO_ESTIMATE = np.int64(1) << 40


class SampleEstimate(NamedTuple):
    probability: float
    sample: np.ndarray
    estimates: np.ndarray
    window: int


def _sample_rate(n_pool, window, scale):
    if n_pool <= 1:
        return 1.0
    return min(1.0, scale * log(n_pool) / max(window, 1))


def _fold(graph, samples, targets, halve, window, threads):
    """Best d+ecc bound per target over the sampled sources."""
    est = np.full(len(targets), _NO_ESTIMATE, dtype=np.int64)

    def fold_chunk(chunk):
        rows = batched_bfs(graph, chunk)[:, targets].astype(np.int64)
        if halve:
            rows //= 2
        eccs = rows.max(axis=1)
        bounded = np.where(rows <= window, rows + eccs[:, None], _NO_ESTIMATE)
        return bounded.min(axis=0)

    size = max(8, (1 << 22) // max(1, len(targets)))
    chunks = [samples[i:i + size] for i in range(0, len(samples), size)]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(fold_chunk, chunks):
                np.minimum(est, part, out=est)
    else:
        for chunk in chunks:
            np.minimum(est, fold_chunk(chunk), out=est)
    est[est == _NO_ESTIMATE] = 0
    return est


def peripherals_by_sampling_half(view: HalfSquareView, k: int, seed, scale=3.0,
                                 probability=None, threads=1):
    """Estimated half-square diameter and peripheral set of one side."""
    if k < 1:
        raise ValueError("window must be positive")
    side = view.vertices
    p = _sample_rate(len(side), k, scale) if probability is None else float(probability)
    rng = stream(seed, "sample-half-%d" % view.side)
    mask = rng.random(len(side)) < p
    if not mask.any():
        mask[0] = True
    samples = side[mask]
    instrument.bump("sample_sources", len(samples))

    est = _fold(view.graph, samples, side, True, k, threads)
    diam = int(est.max())
    peripheral = side[est == diam]
    return diam, peripheral, SampleEstimate(p, samples, est, k)


def peripherals_by_sampling_colour(g: Graph, colour, window: int, seed, scale=3.0,
                                   probability=None, threads=1):
    """Estimated largest in-class distance and class peripherals."""
    if window < 1:
        raise ValueError("window must be positive")
    colour = np.asarray(colour, dtype=np.int64)
    p = _sample_rate(g.n, window, scale) if probability is None else float(probability)
    rng = stream(seed, "sample-colour")
    mask = rng.random(len(colour)) < p
    if not mask.any():
        mask[0] = True
    samples = colour[mask]
    instrument.bump("sample_sources", len(samples))

    est = _fold(g, samples, colour, False, window, threads)
    best = int(est.max())
    peripheral = colour[est == best]
    return best, peripheral, SampleEstimate(p, samples, est, window)

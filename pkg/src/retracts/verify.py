"""Brute-force checkers the rest of the package is tested against.

Everything here favours being obviously correct over being fast: Helly
checks enumerate ball families outright (with a hard size cut-off),
cycle checks scan vertex subsets, and the isometry check compares full
distance matrices.  Sampled modes are deterministic per seed.
"""

from itertools import combinations
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import instrument
from .errors import SizeLimitError
from .graph import Graph, batched_bfs, bipartition
from .rng import stream

EXHAUSTIVE_LIMIT = 8
CYCLE_LIMIT = 14


class Verdict(NamedTuple):
    """Outcome of a checker: "pass", "fail", or "pass-sampled".

    A fail always carries a witness dict whose fields are enough to
    replay the violation from the input graph alone.
    """

    outcome: str
    witness: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.outcome != "fail"


def _ball_masks(row: np.ndarray, positions: np.ndarray, radii) -> list:
    """Bitmask of ``positions`` covered by each radius, duplicates dropped.

    ``row`` holds distances from one center; bit j of a mask stands for
    positions[j].  Radii producing the same trace keep only the smallest.
    """
    out = []
    prev = -1
    sub = row[positions]
    for r in radii:
        mask = 0
        for j in np.flatnonzero(sub <= r):
            mask |= 1 << int(j)
        if mask != prev:
            out.append((int(r), mask))
            prev = mask
    return out


def _empty_common_family(choices, universe):
    """First pairwise-intersecting ball family with empty common intersection.

    ``choices`` lists, per center, (radius, ball-bitmask) options with the
    full mask already dropped; every center may also stay out of the
    family, which is equivalent to contributing the full mask.  Returns
    (centers, radii) of a violating family, or None when every family
    that pairwise intersects also meets in a common vertex.
    """
    picked = []

    def walk(i, common):
        if common == 0:
            return True
        if i == len(choices):
            return False
        center, options = choices[i]
        for r, mask in options:
            if all(mask & m for _, _, m in picked):
                picked.append((center, r, mask))
                if walk(i + 1, common & mask):
                    return True
                picked.pop()
        return walk(i + 1, common)

    if walk(0, universe):
        return [c for c, _, _ in picked], [r for _, r, _ in picked]
    return None


def _half_ball_exhaustive(g: Graph, sides) -> Verdict:
    dist = batched_bfs(g, np.arange(g.n))
    label = np.zeros(g.n, dtype=np.int8)
    label[sides[1]] = 1
    for side_id in (0, 1):
        side = sides[side_id]
        if side.size == 0:
            continue
        choices = []
        for v in range(g.n):
            base = 0 if label[v] == side_id else 1
            full = int(dist[v, side].max())
            opts = _ball_masks(dist[v], side, range(base, full, 2))
            if opts:
                choices.append((v, opts))
        hit = _empty_common_family(choices, (1 << side.size) - 1)
        if hit is not None:
            centers, radii = hit
            return Verdict("fail", {
                "side": side_id,
                "centers": centers,
                "radii": radii,
            })
    return Verdict("pass")


def _half_ball_trials(g: Graph, sides, trials: int, seed) -> Verdict:
    rng = stream(seed, "half-ball-helly")
    label = np.zeros(g.n, dtype=np.int8)
    label[sides[1]] = 1
    dist = batched_bfs(g, np.arange(g.n)) if g.n <= 4096 else None
    for t in range(trials):
        side_id = int(rng.integers(2))
        side = sides[side_id]
        f = int(rng.integers(2, 7))
        centers = rng.choice(g.n, size=min(f, g.n), replace=False)
        base = np.where(label[centers] == side_id, 0, 1)
        radii = base + 2 * (rng.geometric(0.4, size=len(centers)) - 1)
        rows = dist[centers] if dist is not None else batched_bfs(g, centers)
        traces = rows[:, side] <= radii[:, None]
        instrument.bump("sample_sources", len(centers))
        meet = all((traces[i] & traces[j]).any()
                   for i, j in combinations(range(len(centers)), 2))
        if meet and not traces.all(axis=0).any():
            return Verdict("fail", {
                "side": side_id,
                "centers": [int(c) for c in centers],
                "radii": [int(r) for r in radii],
                "trial": t,
            })
    return Verdict("pass-sampled")


def half_ball_helly_sample(g: Graph, trials: int = 10000, seed=0) -> Verdict:
    """Check the Helly property of one-side ball traces.

    A trace is a ball of the base graph restricted to one colour class;
    the class of bipartite graphs this package targets is exactly the
    class where every pairwise-intersecting family of such traces has a
    common vertex.  Up to 8 vertices every family is enumerated; past
    that, ``trials`` random families are drawn with radii biased small,
    where violations concentrate.
    """
    sides = bipartition(g)
    if g.n <= EXHAUSTIVE_LIMIT:
        return _half_ball_exhaustive(g, sides)
    return _half_ball_trials(g, sides, trials, seed)


def is_helly_small(g: Graph) -> Verdict:
    """Exhaustively test the Helly property of ordinary balls, n <= 8."""
    if g.n > EXHAUSTIVE_LIMIT:
        raise SizeLimitError(
            "helly check is exhaustive and limited to %d vertices, got %d"
            % (EXHAUSTIVE_LIMIT, g.n))
    dist = batched_bfs(g, np.arange(g.n))
    positions = np.arange(g.n)
    choices = []
    for v in range(g.n):
        opts = _ball_masks(dist[v], positions, range(int(dist[v].max())))
        if opts:
            choices.append((v, opts))
    hit = _empty_common_family(choices, (1 << g.n) - 1)
    if hit is None:
        return Verdict("pass")
    centers, radii = hit
    return Verdict("fail", {"centers": centers, "radii": radii})


def isometric_check(g: Graph, h: Graph, mapping: Sequence[int]) -> Verdict:
    """Pass iff ``mapping`` embeds g into h with all distances preserved."""
    mp = np.asarray(mapping, dtype=np.int64)
    if mp.shape != (g.n,) or len(np.unique(mp)) != g.n:
        raise ValueError("mapping must assign a distinct image to every vertex")
    if mp.min() < 0 or mp.max() >= h.n:
        raise ValueError("mapping image out of range")
    dg = batched_bfs(g, np.arange(g.n))
    dh = batched_bfs(h, mp)[:, mp]
    bad = np.argwhere(dg != dh)
    if len(bad):
        u, v = (int(x) for x in bad[0])
        return Verdict("fail", {
            "pair": [u, v],
            "dist_g": int(dg[u, v]),
            "dist_h": int(dh[u, v]),
        })
    return Verdict("pass")


def is_chordal_bipartite_small(g: Graph, limit: int = CYCLE_LIMIT) -> Verdict:
    """Exhaustively look for an induced cycle of length 6 or more.

    Bipartiteness is checked first, so an odd cycle raises the usual
    certificate error rather than returning a verdict.
    """
    if g.n > limit:
        raise SizeLimitError(
            "induced cycle scan is limited to %d vertices, got %d"
            % (limit, g.n))
    bipartition(g)
    adj = [0] * g.n
    for v in range(g.n):
        for u in g.adj[g.offsets[v]:g.offsets[v + 1]]:
            adj[v] |= 1 << int(u)
    for mask in range(1 << g.n):
        if bin(mask).count("1") < 6:
            continue
        verts = [v for v in range(g.n) if mask >> v & 1]
        if any(bin(adj[v] & mask).count("1") != 2 for v in verts):
            continue
        # all induced degrees are 2; connectivity makes it a single cycle
        seen = 1 << verts[0]
        frontier = adj[verts[0]] & mask
        while frontier & ~seen:
            seen |= frontier
            grow = 0
            for v in verts:
                if frontier >> v & 1:
                    grow |= adj[v] & mask
            frontier = grow & ~seen
        if seen != mask:
            continue
        cycle = [verts[0]]
        prev = -1
        while len(cycle) < len(verts):
            step = adj[cycle[-1]] & mask
            if prev >= 0:
                step &= ~(1 << prev)
            prev = cycle[-1]
            cycle.append((step & -step).bit_length() - 1)
        return Verdict("fail", {"cycle": cycle})
    return Verdict("pass")

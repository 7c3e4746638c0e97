"""Deterministic randomness.

Every randomized operation draws from numpy's PCG64, seeded from the
caller's 64-bit seed plus a per-operation tag.  Two calls with the same
(seed, tag) see identical streams on every platform, and distinct
operations never share a stream even when given the same seed.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def normalize_seed(seed: int | None) -> int:
    """Clamp a caller seed to 64 bits, or draw a fresh one if None."""
    if seed is None:
        seed = int.from_bytes(np.random.SeedSequence().entropy.to_bytes(16, "little")[:8], "little")
    return int(seed) & _MASK64


def _tag_value(tag: str) -> int:
    digest = hashlib.sha256(tag.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def stream(seed: int, tag: str) -> np.random.Generator:
    """Independent PCG64 stream for one operation call."""
    ss = np.random.SeedSequence([normalize_seed(seed), _tag_value(tag)])
    return np.random.Generator(np.random.PCG64(ss))

"""Optional operation counters.

Hot paths report coarse work units (edges scanned, refinement volume,
clique-tree weight) into a module-level tally when one is active.  The
overhead is one dict update per phase, not per element, so leaving the
instrumentation off costs nothing measurable.
"""

from __future__ import annotations

from contextlib import contextmanager

_active: dict[str, int] | None = None


def bump(key: str, amount: int) -> None:
    global _active
    if _active is not None:
        _active[key] = _active.get(key, 0) + int(amount)


@contextmanager
def tally():
    """Collect operation counts for the enclosed block.

    Yields the dict that receives the counts; it stays valid after the
    block exits.  Nested tallies are not supported: the innermost wins.
    """
    global _active
    previous = _active
    counters: dict[str, int] = {}
    _active = counters
    try:
        yield counters
    finally:
        _active = previous


def total(counters: dict[str, int]) -> int:
    return sum(counters.values())

"""Global comparison tolerance for measured probability values."""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator

DEFAULT_EPS = 1e-9

_eps = DEFAULT_EPS


def get_eps() -> float:
    """Return the tolerance used by every comparison in the package."""
    return _eps


def set_eps(value: float) -> None:
    """Replace the global tolerance. Must be a positive finite number."""
    v = float(value)
    # v != v filters NaN, the upper bound filters inf and absurd settings
    if not (0.0 < v <= 0.5) or v != v:
        raise ValueError(f"eps must lie in (0, 0.5], got {value!r}")
    global _eps
    _eps = v


@contextmanager
def eps_scope(value: float) -> Iterator[None]:
    """Temporarily override the tolerance; restores the old value on exit."""
    previous = get_eps()
    set_eps(value)
    try:
        yield
    finally:
        set_eps(previous)

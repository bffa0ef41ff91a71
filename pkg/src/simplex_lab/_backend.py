"""Kernel backend selection.

The hot inner loops (restaurant seating, label aggregation, the chain
recursion, series accumulation, permutation sums) exist twice: a numba
``@njit`` implementation and a vectorized pure-numpy fallback.  Both consume
identical pre-drawn random arrays, so they realize the same distributions;
the numba path is typically 10-100x faster on large batches.

Selection, in order of precedence:

1. ``set_backend("numba" | "numpy")`` from code (tests, benchmarks);
2. the environment variable ``SIMPLEX_LAB_BACKEND`` (``numba``, ``numpy``
   or ``auto``);
3. ``auto``: numba when importable, numpy otherwise.
"""

from __future__ import annotations

import os

_VALID = ("auto", "numba", "numpy")
_forced: str | None = None
_numba_ok: bool | None = None


def _numba_available() -> bool:
    global _numba_ok
    if _numba_ok is None:
        try:
            import numba  # noqa: F401

            _numba_ok = True
        except ImportError:
            _numba_ok = False
    return _numba_ok


def set_backend(name: str | None) -> None:
    """Force the kernel backend; ``None`` restores env/auto resolution."""
    if name is not None and name not in ("numba", "numpy"):
        raise ValueError(f"backend must be 'numba' or 'numpy', got {name!r}")
    if name == "numba" and not _numba_available():
        raise RuntimeError("numba backend requested but numba is not importable")
    global _forced
    _forced = name


def active_backend() -> str:
    """Resolve the backend in effect: ``"numba"`` or ``"numpy"``."""
    if _forced is not None:
        return _forced
    env = os.environ.get("SIMPLEX_LAB_BACKEND", "auto").strip().lower()
    if env not in _VALID:
        raise ValueError(
            f"SIMPLEX_LAB_BACKEND must be one of {_VALID}, got {env!r}"
        )
    if env == "auto":
        return "numba" if _numba_available() else "numpy"
    if env == "numba" and not _numba_available():
        raise RuntimeError("SIMPLEX_LAB_BACKEND=numba but numba is not importable")
    return env


def worker_count() -> int:
    """Worker cap for fan-out work, from ``SIMPLEX_LAB_THREADS``.

    Defaults to the available parallelism.  Output of every command is
    deterministic regardless of this value (chunking is fixed; merge is
    ordered).
    """
    env = os.environ.get("SIMPLEX_LAB_THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError("SIMPLEX_LAB_THREADS must be >= 1")
        return n
    return os.cpu_count() or 1

"""Backend-dispatched hot kernels.

Import the wrappers from here; they route to the numba or numpy
implementation according to :func:`simplex_lab._backend.active_backend`.
"""

from __future__ import annotations

from .. import _backend
from . import numpy_impl

_NAMES = (
    "crp_table_sizes",
    "expand_block_labels",
    "label_sums",
    "categorical_rows",
    "chain_recursion",
    "series_accumulate",
    "energy_perm_stats",
)


def _impl():
    if _backend.active_backend() == "numba":
        from . import numba_impl

        return numba_impl
    return numpy_impl


def _make(name):
    def wrapper(*args, **kwargs):
        return getattr(_impl(), name)(*args, **kwargs)

    wrapper.__name__ = name
    wrapper.__doc__ = getattr(numpy_impl, name).__doc__
    return wrapper


crp_table_sizes = _make("crp_table_sizes")
expand_block_labels = _make("expand_block_labels")
label_sums = _make("label_sums")
categorical_rows = _make("categorical_rows")
chain_recursion = _make("chain_recursion")
series_accumulate = _make("series_accumulate")
energy_perm_stats = _make("energy_perm_stats")

__all__ = list(_NAMES)

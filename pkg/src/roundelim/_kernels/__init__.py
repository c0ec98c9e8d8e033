"""Kernel dispatch: compiled core when importable, pure Python otherwise.

Set ``ROUNDELIM_PURE_PYTHON=1`` to force the fallback.  ``BACKEND`` names
the active implementation.
"""

from __future__ import annotations

import os

from . import _fallback as fallback

compiled = None
if not os.environ.get("ROUNDELIM_PURE_PYTHON"):
    try:
        from . import _core as compiled  # type: ignore[no-redef]
    except ImportError:
        compiled = None

COMPILED_MAX_VERTICES = 64
BACKEND = "compiled" if compiled is not None else "python"

_impl = compiled if compiled is not None else fallback

sturm_count = _impl.sturm_count
tridiag_max_eig = _impl.tridiag_max_eig


def max_clique(adj, n):
    if compiled is not None and n <= COMPILED_MAX_VERTICES:
        return compiled.max_clique(adj, n)
    return fallback.max_clique(adj, n)


def chromatic_number(adj, n, lower=0):
    if compiled is not None and n <= COMPILED_MAX_VERTICES:
        return compiled.chromatic_number(adj, n, lower)
    return fallback.chromatic_number(adj, n, lower)


__all__ = [
    "BACKEND",
    "chromatic_number",
    "compiled",
    "fallback",
    "max_clique",
    "sturm_count",
    "tridiag_max_eig",
]

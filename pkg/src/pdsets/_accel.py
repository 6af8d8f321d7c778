"""Kernel backend selection.

The hot loops in :mod:`pdsets.kernels` exist twice: once as numba ``@njit``
functions and once as plain vectorised numpy. ``PDSETS_KERNELS=numpy`` in the
environment forces the numpy path; otherwise numba is used when importable.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


_VALID = ("numba", "numpy")


def _initial_backend() -> str:
    requested = os.environ.get("PDSETS_KERNELS", "").strip().lower()
    if requested == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


_backend = _initial_backend()


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in _VALID:
        raise ValueError(f"unknown kernel backend {name!r}; expected one of {_VALID}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _backend = name


@contextmanager
def using_backend(name: str):
    """Temporarily switch kernel backend (benchmarks and cross-checks)."""
    previous = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)

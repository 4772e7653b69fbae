"""Kernel backend selection: compiled Cython extension vs pure numpy.

The compiled lane (qchancap._kernels) is preferred when importable; the
pure-Python lane is always available.  Selection happens once at import and
can be forced with the QCHANCAP_BACKEND environment variable ("compiled" or
"python") or switched at runtime with use_backend(), which tests and the
benchmark use to compare lanes.
"""
from __future__ import annotations

import contextlib
import os
from typing import Iterator

from . import _kernels_py

_BACKENDS = {"python": _kernels_py}

try:  # pragma: no cover - presence depends on the build environment
    from . import _kernels as _kernels_cy

    _BACKENDS["compiled"] = _kernels_cy
except ImportError:  # pragma: no cover
    _kernels_cy = None


def _initial_backend() -> str:
    forced = os.environ.get("QCHANCAP_BACKEND")
    if forced:
        if forced not in _BACKENDS:
            raise ImportError(
                f"QCHANCAP_BACKEND={forced!r} but available backends are {sorted(_BACKENDS)}"
            )
        return forced
    return "compiled" if "compiled" in _BACKENDS else "python"


_active = _BACKENDS[_initial_backend()]


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def backend_name() -> str:
    return _active.NAME


@contextlib.contextmanager
def use_backend(name: str) -> Iterator[None]:
    """Temporarily switch the active kernel backend."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(_BACKENDS)}")
    previous = _active
    _active = _BACKENDS[name]
    try:
        yield
    finally:
        _active = previous


def kraus_apply(kraus, m):
    return _active.kraus_apply(kraus, m)


def hermitian_eigenvalues(m):
    return _active.hermitian_eigenvalues(m)


def entropy_bits(m):
    return _active.entropy_bits(m)


def coherent_info_values(kraus, rho):
    return _active.coherent_info_values(kraus, rho)

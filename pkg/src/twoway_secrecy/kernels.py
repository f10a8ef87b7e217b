"""Backend selection for the Monte Carlo block kernels.

The compiled Cython extension is used when it was built; otherwise the numpy
fallback. Set ``TWOWAY_SECRECY_BACKEND=python`` to force the fallback, or
``=cython`` to fail loudly when the extension is missing.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _fallback


def _load(choice: str) -> tuple[str, ModuleType]:
    if choice == "python":
        return "python", _fallback
    try:
        from . import _kernels
    except ImportError:
        if choice == "cython":
            raise
        return "python", _fallback
    return "cython", _kernels


def available_backends() -> list[str]:
    names = ["python"]
    try:
        from . import _kernels  # noqa: F401
    except ImportError:
        return names
    return ["cython", *names]


def get_backend(name: str | None = None) -> ModuleType:
    """Kernel module for ``name`` (``None`` means the import-time selection)."""
    if name is None:
        return _impl
    return _load(name)[1]


BACKEND, _impl = _load(os.environ.get("TWOWAY_SECRECY_BACKEND", "auto").strip().lower())

rate_stats = _impl.rate_stats
inverse_sum_stats = _impl.inverse_sum_stats

"""Selection between the compiled kernel core and the pure numpy fallback.

``FINSUM_BACKEND`` may be set to ``auto`` (default), ``compiled`` or ``pure``.
``compiled`` raises at import when the extension is unavailable; ``auto``
falls back silently.  :func:`set_backend` switches at runtime, which the
parity tests and the backend benchmark rely on.
"""

from __future__ import annotations

import os

from . import _purecore

try:
    from . import _fastcore
except ImportError:  # pragma: no cover - depends on how the wheel was built
    _fastcore = None

_impl = _purecore


def available() -> tuple[str, ...]:
    return ("pure",) if _fastcore is None else ("pure", "compiled")


def set_backend(name: str) -> str:
    """Select the active implementation; returns the name actually in use."""
    global _impl
    if name in ("auto", "compiled") and _fastcore is not None:
        _impl = _fastcore
    elif name == "compiled":
        raise RuntimeError("compiled backend requested but finsum._fastcore is not built")
    elif name in ("auto", "pure"):
        _impl = _purecore
    else:
        raise ValueError(f"unknown backend {name!r} (expected auto, compiled or pure)")
    return active()


def active() -> str:
    return _impl.NAME


def phi_grid(t, n, variant, alpha, beta):
    return _impl.phi_grid(t, n, variant, alpha, beta)


def dirichlet_grid(alpha, n):
    return _impl.dirichlet_grid(alpha, n)


def neumaier_sum(x):
    return _impl.neumaier_sum(x)


def hurwitz_head(s, a, m):
    return _impl.hurwitz_head(s, a, m)


set_backend(os.environ.get("FINSUM_BACKEND", "auto"))

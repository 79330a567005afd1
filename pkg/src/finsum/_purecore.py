"""Pure numpy implementation of the hot kernels.

Mirrors the signatures of the compiled ``_fastcore`` module; selection
happens in :mod:`finsum.backend`.  Variant codes: 0 standard, 1 alternating,
2 shifted, 3 shifted-alternating, 4 exp-factor, 5 exp-factor-alternating.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import PoleError
from .stable import power_sums

NAME = "pure"

_SERIES_CUTOFF = 1e-6
_SERIES_N_CUTOFF = 3e-3
_POLE_EPS = 1e-12


def _cexpm1(z: np.ndarray) -> np.ndarray:
    re, im = z.real, z.imag
    ex = np.expm1(re)
    s = np.sin(0.5 * im)
    return (ex * np.cos(im) - 2.0 * s * s) + 1j * ((ex + 1.0) * np.sin(im))


def _geom_sum(z: np.ndarray, n: int) -> np.ndarray:
    """sum_{k=1}^{n} exp(z k) element-wise for Re(z) <= 0."""
    out = np.empty(z.shape, dtype=np.complex128)
    az = np.abs(z)
    small = (az < _SERIES_CUTOFF) & (az * n <= _SERIES_N_CUTOFF)
    if np.any(small):
        s0, s1, s2, s3, s4 = power_sums(n)
        zs = z[small]
        out[small] = s0 + zs * (s1 + zs * (s2 / 2.0 + zs * (s3 / 6.0 + zs * (s4 / 24.0))))
    big = ~small
    if np.any(big):
        zb = z[big]
        den = _cexpm1(zb)
        bad = np.abs(den) < _POLE_EPS
        if np.any(bad):
            idx = int(np.argmax(bad))
            raise PoleError("variant kernel pole on the integration path", pole=complex(zb[idx]))
        out[big] = _cexpm1(zb * n) * (den + 1.0) / den
    return out


def _alt_sum(z: np.ndarray, n: int) -> np.ndarray:
    """sum_{k=1}^{n} (-1)^(k+1) exp(z k) element-wise."""
    ez = _cexpm1(z) + 1.0
    den = 1.0 + ez
    bad = np.abs(den) < _POLE_EPS
    if np.any(bad):
        idx = int(np.argmax(bad))
        raise PoleError("alternating kernel pole on the integration path", pole=complex(z[idx]))
    if n % 2 == 0:
        return -_cexpm1(z * n) * ez / den
    return (2.0 + _cexpm1(z * n)) * ez / den


def phi_grid(t: np.ndarray, n: int, variant: int, alpha: complex, beta: complex) -> np.ndarray:
    """Variant kernel Phi(t) on a grid of real abscissas t > 0."""
    t = np.asarray(t, dtype=np.float64)
    w = alpha * t.astype(np.complex128)
    if variant >= 4:
        w = w + beta
    if variant in (1, 3, 5):
        out = _alt_sum(-w, n)
    else:
        out = _geom_sum(-w, n)
    if variant in (2, 3):
        out = out * np.exp(-(beta * t.astype(np.complex128)))
    return out


def dirichlet_grid(alpha: np.ndarray, n: int) -> np.ndarray:
    """sum_{k=1}^{n} exp(i alpha k) on a grid of real frequencies."""
    alpha = np.asarray(alpha, dtype=np.float64)
    two_pi = 2.0 * math.pi
    d = alpha - two_pi * np.round(alpha / two_pi)
    return _geom_sum(1j * d, n)


def neumaier_sum(x: np.ndarray) -> complex:
    """Compensated sum of a complex array (exact fsum on each component)."""
    x = np.asarray(x, dtype=np.complex128)
    return complex(math.fsum(x.real.tolist()), math.fsum(x.imag.tolist()))


def hurwitz_head(s: float, a: float, m: int) -> float:
    """Compensated partial sum sum_{j=0}^{m-1} (j+a)^(-s)."""
    if m <= 0:
        return 0.0
    base = a + np.arange(m, dtype=np.float64)
    return math.fsum(np.power(base, -s).tolist())

"""Truncated-Taylor (jet) arithmetic for exact higher derivatives.

A :class:`Jet` carries the Taylor coefficients ``c[0..p]`` of a function at a
point, so composing ordinary arithmetic on jets propagates derivatives up to
order ``p`` without finite differencing.  The module-level ``exp``, ``log``,
``sin``, ``cos``, ``sqrt`` and ``expm1`` dispatch on their argument (Jet,
numpy array, plain number), which lets one closure serve the direct
summation, the quadrature grids and the derivative machinery alike.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .stable import cexpm1 as _scalar_expm1
from .stable import power_sums


class Jet:
    """Taylor coefficients of a function at a point, truncated at fixed order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(complex(c) for c in coeffs)

    @classmethod
    def variable(cls, value, order: int) -> "Jet":
        """The identity function x -> x as a jet of the given order."""
        if order < 0:
            raise ValueError("jet order must be >= 0")
        tail = (1.0,) + (0.0,) * (order - 1) if order > 0 else ()
        return cls((complex(value),) + tail)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> complex:
        return self.coeffs[0]

    def derivative(self, k: int) -> complex:
        """The k-th derivative encoded by this jet."""
        if not 0 <= k <= self.order:
            raise ValueError(f"derivative order {k} out of range 0..{self.order}")
        return self.coeffs[k] * math.factorial(k)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Jet | None":
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError("jet order mismatch")
            return other
        if isinstance(other, (int, float, complex)):
            return Jet((complex(other),) + (0.0,) * self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(a + b for a, b in zip(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return Jet(-a for a in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(a - b for a, b in zip(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        return Jet(
            sum(a[j] * b[k - j] for j in range(k + 1)) for k in range(len(a))
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if b[0] == 0:
            raise ZeroDivisionError("jet division by a jet with zero value part")
        q: list[complex] = []
        for k in range(len(a)):
            acc = a[k]
            for j in range(k):
                acc -= q[j] * b[k - j]
            q.append(acc / b[0])
        return Jet(q)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, p):
        if isinstance(p, Jet):
            return exp(log(self) * p)
        if isinstance(p, int) and p >= 0:
            out = Jet((1.0,) + (0.0,) * self.order)
            base = self
            n = p
            while n:
                if n & 1:
                    out = out * base
                base = base * base
                n >>= 1
            return out
        return exp(p * log(self))

    def __rpow__(self, base):
        o = self._coerce(base)
        if o is None:
            return NotImplemented
        return o ** self

    def __repr__(self):
        return f"Jet({list(self.coeffs)!r})"


def _jet_exp_coeffs(a: tuple, c0: complex) -> Jet:
    """Propagate exp through a jet given the (already computed) value part."""
    out = [c0]
    for k in range(1, len(a)):
        acc = 0j
        for j in range(1, k + 1):
            acc += j * a[j] * out[k - j]
        out.append(acc / k)
    return Jet(out)


def exp(x):
    if isinstance(x, Jet):
        return _jet_exp_coeffs(x.coeffs, cmath.exp(x.value))
    if isinstance(x, np.ndarray):
        return np.exp(x)
    if isinstance(x, complex):
        return cmath.exp(x)
    return math.exp(x) if x < 709.0 else math.inf


def expm1(x):
    """exp(x) - 1, accurate near 0, for jets, arrays and scalars."""
    if isinstance(x, Jet):
        j = _jet_exp_coeffs(x.coeffs, cmath.exp(x.value))
        coeffs = list(j.coeffs)
        coeffs[0] = _scalar_expm1(x.value)
        return Jet(coeffs)
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x):
            re, im = x.real, x.imag
            s = np.sin(0.5 * im)
            ex = np.expm1(re)
            return (ex * np.cos(im) - 2.0 * s * s) + 1j * ((ex + 1.0) * np.sin(im))
        return np.expm1(x)
    if isinstance(x, complex):
        return _scalar_expm1(x)
    return math.expm1(x)


def log(x):
    if isinstance(x, Jet):
        a = x.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("log of a jet with zero value part")
        out = [cmath.log(a[0])]
        for k in range(1, len(a)):
            acc = k * a[k]
            for j in range(1, k):
                acc -= j * out[j] * a[k - j]
            out.append(acc / (k * a[0]))
        return Jet(out)
    if isinstance(x, np.ndarray):
        return np.log(x)
    if isinstance(x, complex) or (isinstance(x, (int, float)) and x < 0):
        return cmath.log(x)
    return math.log(x)


def sin(x):
    if isinstance(x, Jet):
        a = x.coeffs
        s = [cmath.sin(a[0])]
        c = [cmath.cos(a[0])]
        for k in range(1, len(a)):
            sacc = 0j
            cacc = 0j
            for j in range(1, k + 1):
                sacc += j * a[j] * c[k - j]
                cacc += j * a[j] * s[k - j]
            s.append(sacc / k)
            c.append(-cacc / k)
        return Jet(s)
    if isinstance(x, np.ndarray):
        return np.sin(x)
    if isinstance(x, complex):
        return cmath.sin(x)
    return math.sin(x)


def cos(x):
    if isinstance(x, Jet):
        a = x.coeffs
        s = [cmath.sin(a[0])]
        c = [cmath.cos(a[0])]
        for k in range(1, len(a)):
            sacc = 0j
            cacc = 0j
            for j in range(1, k + 1):
                sacc += j * a[j] * c[k - j]
                cacc += j * a[j] * s[k - j]
            s.append(sacc / k)
            c.append(-cacc / k)
        return Jet(c)
    if isinstance(x, np.ndarray):
        return np.cos(x)
    if isinstance(x, complex):
        return cmath.cos(x)
    return math.cos(x)


def sqrt(x):
    if isinstance(x, Jet):
        a = x.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("sqrt of a jet with zero value part")
        r = [cmath.sqrt(a[0])]
        for k in range(1, len(a)):
            acc = a[k]
            for j in range(1, k):
                acc -= r[j] * r[k - j]
            r.append(acc / (2.0 * r[0]))
        return Jet(r)
    if isinstance(x, np.ndarray):
        return np.sqrt(x)  # evaluators hand us complex128 arrays
    if isinstance(x, complex) or (isinstance(x, (int, float)) and x < 0):
        return cmath.sqrt(x)
    return math.sqrt(x)


def value_part(x) -> complex:
    """The plain numeric value behind a jet (or the number itself)."""
    return x.value if isinstance(x, Jet) else complex(x)


def exp_power_sum(z, n: int):
    """sum_{k=1}^{n} exp(z*k), stable for scalars and jets.

    Closed form expm1(n*z)*exp(z)/expm1(z), rearranged so that only
    exponentials of non-positive real part appear when Re(z) <= 0.  Near the
    removable point z = 0 (|z| < 1e-6 with |z|*n small) a degree-4 series in
    z with Faulhaber coefficients is used; at z = 0 exactly the limit is n.
    """
    z0 = value_part(z)
    az = abs(z0)
    if az < 1e-6 and az * n <= 3e-3:
        s0, s1, s2, s3, s4 = power_sums(n)
        # sum exp(z k) = S0 + z S1 + z^2 S2/2 + z^3 S3/6 + z^4 S4/24 + O(z^5 S5)
        return s0 + z * (s1 + z * (s2 / 2.0 + z * (s3 / 6.0 + z * (s4 / 24.0))))
    if z0.real <= 0.0:
        return expm1(z * n) * exp(z) / expm1(z)
    # Growing case: factor the dominant exponential out front.
    return exp(z * n) * expm1(-z * n) / expm1(-z)


def alternating_exp_power_sum(z, n: int):
    """sum_{k=1}^{n} (-1)^(k+1) exp(z*k), stable for scalars and jets.

    Equals (1 - (-1)^n exp(n z)) * exp(z) / (1 + exp(z)); no removable point
    (the value at z = 0 is 0 for even n, 1 for odd n).
    """
    ez = exp(z)
    if n % 2 == 0:
        return -expm1(z * n) * ez / (1.0 + ez)
    return (2.0 + expm1(z * n)) * ez / (1.0 + ez)

"""Euler-Maclaurin lattice summation and its tail-estimator specialization.

The lattice sum of f over a, a+h, ..., b is the integral plus endpoint
corrections weighted by even-index Bernoulli numbers; the first omitted
correction bounds the remainder.  Derivatives are taken by jet arithmetic
unless the caller supplies them analytically.  ``em_tail`` is the one-sided
version used to finish infinite tails for the telescoping route and the
Hurwitz-zeta expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import jets
from .errors import (CapabilityError, DomainError, EvaluationError,
                     PreconditionError)
from .quadrature import integrate_finite, integrate_semi_infinite
from .series import Diagnostics, SumResult
from .special import bernoulli

_EPS = 2.220446049250313e-16
_CURVATURE_SAMPLES = 17


@dataclass(frozen=True)
class EMJob:
    """A lattice-summation request: f on [a, b] in m steps, corrections to order n.

    ``derivative(x, order)`` overrides jet differentiation when given; it must
    serve orders up to 2n (odd orders for the corrections, order 2n for the
    remainder bound).
    """

    f: Callable
    a: float
    b: float
    m: int
    n: int = 3
    derivative: Callable | None = None

    def __post_init__(self):
        if not self.b > self.a:
            raise PreconditionError(f"need b > a, got [{self.a}, {self.b}]")
        if not isinstance(self.m, int) or self.m < 1:
            raise PreconditionError(f"subinterval count must be a positive integer, got {self.m!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise PreconditionError(f"correction order must be a positive integer, got {self.n!r}")

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.m


def _derivative_at(job: EMJob, x: float, order: int) -> complex:
    if order == 0:
        return complex(job.f(x))
    if job.derivative is not None:
        return complex(job.derivative(x, order))
    try:
        jet = jets.Jet.variable(complex(x), order)
        return job.f(jet).derivative(order)
    except (TypeError, AttributeError, ZeroDivisionError) as e:
        raise CapabilityError(
            f"cannot differentiate f at x={x} to order {order}: {e}; "
            "supply derivative= analytically") from None


def em_sum(job: EMJob, quad_tol: float = 1e-13) -> SumResult:
    """Sigma of f over the lattice a, a+h, ..., b (both endpoints included)."""
    h = job.h
    quad = integrate_finite(job.f, job.a, job.b, tol=quad_tol)
    value = quad.value / h + 0.5 * (complex(job.f(job.a)) + complex(job.f(job.b)))
    for k in range(1, job.n):
        b2k = float(bernoulli(2 * k))
        diff = _derivative_at(job, job.b, 2 * k - 1) - _derivative_at(job, job.a, 2 * k - 1)
        value += b2k * h ** (2 * k - 1) * diff / math.factorial(2 * k)

    # remainder: |h^(2n) B_2n / (2n)!| per step, against the worst curvature
    b2n = abs(float(bernoulli(2 * job.n)))
    worst = 0.0
    for i in range(_CURVATURE_SAMPLES):
        x = job.a + (job.b - job.a) * i / (_CURVATURE_SAMPLES - 1)
        worst = max(worst, abs(_derivative_at(job, x, 2 * job.n)))
    error = h ** (2 * job.n) * b2n / math.factorial(2 * job.n) * job.m * worst
    error += quad.abs_error_estimate / h

    diag = Diagnostics(nodes=quad.nodes_used, converged=quad.converged,
                       notes={"lattice_points": job.m + 1})
    return SumResult(value=value, method="euler-maclaurin",
                     error_estimate=error, diagnostics=diag)


def em_tail(f: Callable, m: float, n: int = 3, quad_tol: float = 1e-13):
    """(value, bound) with value approximating Sigma_{j>=1} f(m + j).

    value = integral_m^inf f - f(m)/2 - Sigma_{k=1}^{n-1} B_2k f^(2k-1)(m)/(2k)!
    and bound is the magnitude of the first omitted correction term.  Needs f
    and its derivatives to vanish at infinity.
    """
    if not isinstance(n, int) or n < 1:
        raise PreconditionError(f"correction order must be a positive integer, got {n!r}")
    try:
        quad = integrate_semi_infinite(lambda u: f(u + m), tol=quad_tol)
    except EvaluationError as e:
        raise DomainError(f"tail integral of f from {m} failed to evaluate "
                          f"({e}); is the tail integrable?") from e
    if not quad.converged:
        raise DomainError(f"tail integral of f from {m} did not converge; "
                          "is the tail integrable?")
    job = EMJob(f, m, m + 1.0, 1, n)  # reuse the derivative plumbing
    value = quad.value - 0.5 * complex(f(m))
    for k in range(1, n):
        b2k = float(bernoulli(2 * k))
        value -= b2k * _derivative_at(job, m, 2 * k - 1) / math.factorial(2 * k)
    b2n = float(bernoulli(2 * n))
    bound = abs(b2n * _derivative_at(job, m, 2 * n - 1) / math.factorial(2 * n))
    return value, bound

"""Finite-sum evaluation through the integral representation.

The sum of g over the lattice alpha*k (k = 1..N, with the optional variant
weights) equals the integral of G(t) against a rational summation factor
built from the geometric sum of exp(-alpha*k*t).  Spike components of G hit
the factor in closed form through its derivatives; smooth components go
through adaptive quadrature with the factor evaluated in expm1-stabilized
form on the whole grid.

Also here: the dual family that evaluates Sigma G(x/k)/k directly
(``type_b_sum`` and its spike counterpart ``delta_type_b``), and the
deliberately retained divergent zeta-series rewriting of the Lorentzian sum
(``zeta_expansion_sum``) whose job is to *report* divergence, as a negative
control against the sound integral route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend, jets
from .errors import CapabilityError, PoleError, PreconditionError
from .kernels import Kernel
from .quadrature import integrate_semi_infinite
from .series import Diagnostics, SeriesSpec, SumResult, Variant
from .special import riemann_zeta
from .stable import TWO_PI

_EPS = 2.220446049250313e-16
_POLE_EPS = 1e-12
_MAX_DERIV = 4


@dataclass(frozen=True)
class VariantKernel:
    """The summation factor Phi: variant shape plus its parameters."""

    variant: Variant
    alpha: complex
    beta: complex
    n_terms: int

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if not isinstance(self.n_terms, int) or self.n_terms < 1:
            raise PreconditionError(f"n_terms must be a positive integer, got {self.n_terms!r}")
        if self.alpha.real <= 0.0:
            raise PreconditionError(f"Re(alpha) must be positive, got {self.alpha}")
        if self.variant.is_alternating and self.n_terms % 2 != 0:
            raise PreconditionError(
                f"variant {self.variant.value!r} requires even n_terms, got {self.n_terms}")
        if self.variant.is_exp_factor and self.beta.real <= 0.0:
            raise PreconditionError(
                f"variant {self.variant.value!r} requires Re(beta) > 0, got {self.beta}")

    @classmethod
    def from_spec(cls, spec: SeriesSpec) -> "VariantKernel":
        return cls(spec.variant, spec.alpha, spec.beta, spec.n_terms)


def _check_pole(vk: VariantKernel, w: complex) -> None:
    """Reject w within _POLE_EPS of a zero of the kernel denominator.

    Non-alternating kernels: exp(w) = 1 at w = 2*pi*i*m; the m = 0 point is
    removable and served by the series branch, so only m != 0 counts.
    Alternating kernels: exp(w) = -1 at w = i*pi*(2m+1), every m.
    """
    if vk.variant.is_alternating:
        m = round((w.imag / math.pi - 1.0) / 2.0)
        pole_w = complex(0.0, math.pi * (2 * m + 1))
    else:
        m = round(w.imag / TWO_PI)
        if m == 0:
            return
        pole_w = complex(0.0, TWO_PI * m)
    if abs(w - pole_w) < _POLE_EPS:
        shift = vk.beta if vk.variant.is_exp_factor else 0.0
        pole_t = (pole_w - shift) / vk.alpha
        raise PoleError(
            f"summation factor has a pole at t = {pole_t} "
            f"(denominator exponent {pole_w})", pole=pole_t)


def _phi_any(vk: VariantKernel, t):
    """Phi at a complex point or a jet; shared by phi and phi_derivative."""
    w = vk.alpha * t
    if vk.variant.is_exp_factor:
        w = w + vk.beta
    _check_pole(vk, jets.value_part(w))
    if vk.variant.is_alternating:
        s = jets.alternating_exp_power_sum(-w, vk.n_terms)
    else:
        s = jets.exp_power_sum(-w, vk.n_terms)
    if vk.variant.is_shifted:
        # the shift factor is part of the kernel, so derivatives see it too
        s = s * jets.exp(-vk.beta * t)
    return s


def phi(vk: VariantKernel, t) -> complex:
    """The summation factor at complex t (removable point at t=0 included)."""
    return complex(_phi_any(vk, complex(t)))


def phi_derivative(vk: VariantKernel, t, order: int) -> complex:
    """d^order/dt^order of the summation factor, by jet arithmetic."""
    if not 1 <= order <= _MAX_DERIV:
        raise PreconditionError(f"derivative order {order} outside 1..{_MAX_DERIV}")
    jet = jets.Jet.variable(complex(t), order)
    return _phi_any(vk, jet).derivative(order)


def _growth_limit(vk: VariantKernel) -> float:
    limit = vk.alpha.real
    if vk.variant.is_shifted:
        limit += vk.beta.real
    return limit


def sum_via_integral(spec: SeriesSpec, kernel: Kernel, tol: float = 1e-10) -> SumResult:
    """Evaluate the finite sum of spec through its integral representation.

    The kernel must be the density of spec.g alone -- variant weights enter
    through the summation factor, not the kernel.  Spike terms are closed
    form; smooth terms are integrated against the factor on [0, inf).
    """
    vk = VariantKernel.from_spec(spec)
    value = 0j
    delta_scale = 0.0
    for d in kernel.deltas:
        if d.deriv_order == 0:
            contrib = d.weight * phi(vk, d.location)
        else:
            contrib = d.weight * (-1.0) ** d.deriv_order \
                * phi_derivative(vk, d.location, d.deriv_order)
        value += contrib
        delta_scale += abs(contrib)
    error = 2.0 * _EPS * delta_scale
    nodes = 0
    converged = True

    if kernel.smooth:
        limit = _growth_limit(vk)
        for s in kernel.smooth:
            if s.growth_bound >= limit:
                raise PreconditionError(
                    f"density {s.label!r} grows like exp({s.growth_bound}*t) "
                    f"but the summation factor only decays like exp(-{limit}*t)")
        code = vk.variant.code

        def integrand(t):
            t = np.asarray(t, dtype=float)
            factor = backend.phi_grid(t, vk.n_terms, code, vk.alpha, vk.beta)
            total = kernel.smooth[0].fn(t) * factor
            for s in kernel.smooth[1:]:
                total = total + s.fn(t) * factor
            return total

        quad = integrate_semi_infinite(integrand, tol=tol)
        value += quad.value
        error += quad.abs_error_estimate
        nodes = quad.nodes_used
        converged = quad.converged

    diag = Diagnostics(nodes=nodes, converged=converged,
                       notes={"delta_terms": len(kernel.deltas),
                              "smooth_terms": len(kernel.smooth)})
    return SumResult(value=value, method="laplace", error_estimate=error,
                     diagnostics=diag)


# ---------------------------------------------------------------------------
# the dual family: direct evaluation of Sigma G(x/k)/k

def type_b_sum(kernel: Kernel, x: float, n_terms: int,
               variant: Variant = Variant.STANDARD, beta: complex = 0j) -> complex:
    """Sigma_{k=1}^{N} w_k * (variant factor) * G(x/k) / k for smooth G.

    Variant factors: alternating weight (-1)^(k+1); shifted factor
    exp(beta*x/k); exponential-factor weight exp(-beta*k).
    """
    if kernel.deltas:
        raise CapabilityError(
            "spike kernels produce a point-mass comb, not a function; "
            "use delta_type_b")
    variant = Variant(variant)
    beta = complex(beta)
    if x <= 0:
        raise PreconditionError(f"x must be positive, got {x}")
    if not isinstance(n_terms, int) or n_terms < 1:
        raise PreconditionError(f"n_terms must be a positive integer, got {n_terms!r}")
    if variant.is_alternating and n_terms % 2 != 0:
        raise PreconditionError(
            f"variant {variant.value!r} requires even n_terms, got {n_terms}")
    if variant.is_exp_factor and beta.real <= 0.0:
        raise PreconditionError(
            f"variant {variant.value!r} requires Re(beta) > 0, got {beta}")

    ks = np.arange(1, n_terms + 1, dtype=float)
    u = x / ks
    g_vals = np.zeros_like(u, dtype=complex)
    for s in kernel.smooth:
        g_vals = g_vals + np.asarray(s.fn(u), dtype=complex)
    weights = np.ones(n_terms, dtype=complex)
    if variant.is_alternating:
        weights[1::2] = -1.0
    if variant.is_shifted:
        weights = weights * np.exp(beta * u)
    if variant.is_exp_factor:
        weights = weights * np.exp(-beta * ks)
    terms = weights * g_vals / ks
    return complex(backend.neumaier_sum(np.ascontiguousarray(terms, dtype=complex)))


@dataclass(frozen=True)
class DeltaComb:
    """A finite train of point masses -- the dual image of a spike kernel."""

    atoms: tuple[tuple[float, float], ...]  # (weight, location), locations increasing

    def __post_init__(self):
        locs = [loc for _, loc in self.atoms]
        if any(b <= a for a, b in zip(locs, locs[1:])):
            raise PreconditionError("comb locations must be strictly increasing")
        if not all(math.isfinite(w) and math.isfinite(loc) for w, loc in self.atoms):
            raise PreconditionError("comb atoms must be finite")

    def transform(self, alpha: complex) -> complex:
        """Sigma weight * exp(-alpha*location) -- the arrow back to f(alpha)."""
        alpha = complex(alpha)
        return sum((w * jets.exp(-alpha * loc) for w, loc in self.atoms), 0j)


def delta_type_b(a: float, n_terms: int):
    """The dual image of the spike density delta(t - a): a unit-mass comb.

    delta(a - x/n)/n rescales to delta(x - n*a), so the comb carries unit
    weights at x = a, 2a, ..., Na; every point mass beyond Na cancels
    pairwise against the infinite tail.  Returns (comb, f) where f(alpha) is
    the geometric closed form (1 - exp(-alpha*N*a)) / (exp(a*alpha) - 1).
    """
    if not a > 0:
        raise PreconditionError(f"a must be positive, got {a}")
    if not isinstance(n_terms, int) or n_terms < 1:
        raise PreconditionError(f"n_terms must be a positive integer, got {n_terms!r}")
    comb = DeltaComb(tuple((1.0, n * a) for n in range(1, n_terms + 1)))

    def closed_form(alpha) -> complex:
        return complex(jets.exp_power_sum(-a * complex(alpha), n_terms))

    return comb, closed_form


# ---------------------------------------------------------------------------
# negative control: the divergent zeta rewriting of the Lorentzian sum

_GROWTH_RUN = 5
_PARTIAL_CAP = 1e6


def zeta_expansion_sum(a: float, alpha: float, n_terms: int,
                       max_terms: int = 60) -> SumResult:
    """Partial sums of the zeta-series rewriting of Sigma a/(k^2+a^2).

    The rewriting interchanges integration with an infinite summation whose
    convergence was never established, and for most parameters the terms
    grow without bound.  The divergence flag is set after _GROWTH_RUN
    consecutive terms that exceed magnitude 1 while growing, or when the
    partial sum passes _PARTIAL_CAP; the value is then the last partial sum
    and carries no authority.
    """
    if a == 0:
        raise PreconditionError("a must be nonzero")
    if alpha <= 0:
        raise PreconditionError(f"alpha must be positive, got {alpha}")
    if not isinstance(n_terms, int) or n_terms < 1:
        raise PreconditionError(f"n_terms must be a positive integer, got {n_terms!r}")
    if not isinstance(max_terms, int) or max_terms < 1:
        raise PreconditionError(f"max_terms must be a positive integer, got {max_terms!r}")

    ia = 1j * a
    edge = alpha * n_terms
    partial = 0j
    prev_mag = math.inf
    growth = 0
    divergent = False
    onset = 0
    used = 0
    last_mag = 0.0
    for n in range(1, max_terms + 1):
        term = (alpha ** (n - 1)) * riemann_zeta(n + 1) * (
            ia ** n - (-ia) ** n - (edge + ia) ** n + (-edge - ia) ** n
        ) / 2j
        partial += term
        used = n
        last_mag = abs(term)
        if last_mag > 1.0 and last_mag > prev_mag:
            growth += 1
            if growth >= _GROWTH_RUN:
                divergent = True
                onset = n
                break
        else:
            growth = 0
        prev_mag = last_mag
        if abs(partial) > _PARTIAL_CAP:
            divergent = True
            onset = n
            break

    notes = {"terms_evaluated": used}
    if divergent:
        notes["onset_index"] = onset
    diag = Diagnostics(truncation_index=used, divergent=divergent, notes=notes)
    return SumResult(value=partial, method="zeta-expansion",
                     error_estimate=last_mag, diagnostics=diag)

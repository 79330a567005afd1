"""Core finite-series types and the direct-summation oracle.

The direct sum is the reference every other engine is judged against, so it
is kept boring: evaluate each term, weight it for the variant, and reduce
with compensated summation.  Variant weighting lives here and only here;
the integral engines import these helpers instead of re-deriving signs.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from . import backend, jets
from .errors import CapabilityError, EvaluationError, PreconditionError

_EPS = 2.220446049250313e-16


class Variant(str, Enum):
    STANDARD = "standard"
    ALTERNATING = "alternating"
    SHIFTED = "shifted"
    SHIFTED_ALTERNATING = "shifted-alternating"
    EXP_FACTOR = "exp-factor"
    EXP_FACTOR_ALTERNATING = "exp-factor-alternating"

    @property
    def is_alternating(self) -> bool:
        return self in (Variant.ALTERNATING, Variant.SHIFTED_ALTERNATING,
                        Variant.EXP_FACTOR_ALTERNATING)

    @property
    def is_shifted(self) -> bool:
        return self in (Variant.SHIFTED, Variant.SHIFTED_ALTERNATING)

    @property
    def is_exp_factor(self) -> bool:
        return self in (Variant.EXP_FACTOR, Variant.EXP_FACTOR_ALTERNATING)

    @property
    def code(self) -> int:
        """Integer code used by the grid backends."""
        return ("standard", "alternating", "shifted", "shifted-alternating",
                "exp-factor", "exp-factor-alternating").index(self.value)


@dataclass(frozen=True)
class SeriesSpec:
    """A finite series sum_{k=1}^{n} weight_k * g(argument_k).

    ``g`` is the bare term function; the variant contributes the weights
    (alternating signs, exp(-beta*k) damping) and the argument shift.
    """

    g: Callable
    n_terms: int
    alpha: complex = 1.0 + 0j
    variant: Variant = Variant.STANDARD
    beta: complex = 0j

    def __post_init__(self):
        if not isinstance(self.n_terms, (int, np.integer)) or isinstance(self.n_terms, bool):
            raise PreconditionError(f"n_terms must be an integer, got {self.n_terms!r}")
        if self.n_terms < 1:
            raise PreconditionError(f"n_terms must be >= 1, got {self.n_terms}")
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.alpha.real <= 0.0:
            raise PreconditionError(f"Re(alpha) must be positive, got {self.alpha}")
        if self.variant.is_alternating and self.n_terms % 2 != 0:
            raise PreconditionError(
                f"variant {self.variant.value!r} requires an even number of terms, got {self.n_terms}")
        if self.variant.is_exp_factor and self.beta.real <= 0.0:
            raise PreconditionError(
                f"variant {self.variant.value!r} requires Re(beta) > 0, got {self.beta}")


@dataclass
class Diagnostics:
    nodes: int = 0
    truncation_index: int = 0
    divergent: bool = False
    converged: bool = True
    runtime_ns: int = 0
    notes: dict = field(default_factory=dict)


@dataclass
class SumResult:
    value: complex
    method: str
    error_estimate: float
    diagnostics: Diagnostics = field(default_factory=Diagnostics)

    @property
    def flags(self) -> list[str]:
        out = []
        if self.diagnostics.divergent:
            out.append("divergent")
        if not self.diagnostics.converged:
            out.append("non-converged")
        return out


def term_argument(spec: SeriesSpec, k):
    """The argument handed to g at index k (scalar, array or jet)."""
    if spec.variant.is_shifted:
        return spec.alpha * k + spec.beta
    return spec.alpha * k


def term_weight(spec: SeriesSpec, k):
    """The variant weight at index k (scalar or array of indices)."""
    w = 1.0 + 0j
    if spec.variant.is_exp_factor:
        w = jets.exp(-spec.beta * k) if not isinstance(k, np.ndarray) else np.exp(-spec.beta * k)
    if spec.variant.is_alternating:
        if isinstance(k, np.ndarray):
            sign = np.where(np.asarray(k).astype(np.int64) % 2 == 1, 1.0, -1.0)
        else:
            sign = 1.0 if int(k) % 2 == 1 else -1.0
        w = w * sign
    return w


def smooth_weight(spec: SeriesSpec, x):
    """Variant weight extended smoothly off the integer lattice.

    Only defined for the non-alternating variants; the sign factor
    (-1)^(k+1) has no real-smooth extension, so alternating variants raise.
    """
    if spec.variant.is_alternating:
        raise CapabilityError(
            f"variant {spec.variant.value!r} has no smooth off-lattice weight")
    if spec.variant.is_exp_factor:
        return jets.exp(-spec.beta * x)
    return 1.0


def effective_term(spec: SeriesSpec) -> Callable:
    """h with sum(spec) = sum_{k=1}^{n} h(k), extended off the lattice.

    Used by the telescoping and lattice-sum routes; raises a capability
    error for alternating variants (see :func:`smooth_weight`).
    """
    if spec.variant.is_alternating:
        raise CapabilityError(
            f"variant {spec.variant.value!r} cannot be extended smoothly off the integer lattice")

    def h(x):
        return smooth_weight(spec, x) * spec.g(term_argument(spec, x))

    return h


def _probe_vectorized(g: Callable) -> bool:
    """True when g maps a complex128 array to a matching array of values."""
    probe = np.array([1.0 + 0j, 2.0 + 0j])
    try:
        out = g(probe)
    except Exception:
        return False
    if not isinstance(out, np.ndarray) or np.shape(out) != probe.shape:
        return False
    try:
        a = complex(g(probe[0].item()))
        b = complex(g(probe[1].item()))
    except Exception:
        return False
    ref = np.array([a, b])
    scale = np.maximum(np.abs(ref), 1.0)
    return bool(np.all(np.abs(np.asarray(out, dtype=complex) - ref) <= 1e-12 * scale))


def direct_sum(spec: SeriesSpec) -> SumResult:
    """Compensated direct evaluation of the series (the oracle).

    Terms are evaluated one by one (or vectorized when g supports arrays)
    and reduced with Neumaier summation; the error estimate bounds the
    rounding accumulation by eps * sum(|terms|).
    """
    t0 = time.perf_counter_ns()
    n = spec.n_terms
    if _probe_vectorized(spec.g):
        ks = np.arange(1, n + 1, dtype=np.complex128)
        args = spec.alpha * ks + (spec.beta if spec.variant.is_shifted else 0.0)
        vals = np.asarray(spec.g(args), dtype=np.complex128)
        weights = np.asarray(term_weight(spec, np.arange(1, n + 1)), dtype=np.complex128)
        terms = vals * weights
        finite = np.isfinite(terms.real) & np.isfinite(terms.imag)
        if not np.all(finite):
            k_bad = int(np.argmin(finite)) + 1
            raise EvaluationError("series term is not finite", at=f"k={k_bad}")
        value = backend.neumaier_sum(terms)
        abs_sum = float(np.sum(np.abs(terms)))
    else:
        acc_r = comp_r = acc_i = comp_i = 0.0
        abs_sum = 0.0
        for k in range(1, n + 1):
            try:
                term = complex(spec.g(term_argument(spec, k))) * complex(term_weight(spec, k))
            except Exception as exc:
                raise EvaluationError(f"series term failed to evaluate: {exc}", at=f"k={k}") from exc
            if not (math.isfinite(term.real) and math.isfinite(term.imag)):
                raise EvaluationError("series term is not finite", at=f"k={k}")
            abs_sum += abs(term)
            v = term.real
            tmp = acc_r + v
            comp_r += (acc_r - tmp) + v if abs(acc_r) >= abs(v) else (v - tmp) + acc_r
            acc_r = tmp
            v = term.imag
            tmp = acc_i + v
            comp_i += (acc_i - tmp) + v if abs(acc_i) >= abs(v) else (v - tmp) + acc_i
            acc_i = tmp
        value = complex(acc_r + comp_r, acc_i + comp_i)
    diag = Diagnostics(nodes=n, runtime_ns=time.perf_counter_ns() - t0)
    return SumResult(value=value, method="oracle", error_estimate=2.0 * _EPS * abs_sum,
                     diagnostics=diag)


def antidifference_sum(u: Callable, n: int) -> SumResult:
    """Evaluate sum_{k=1}^{n} g(k) from an antidifference u with u(k+1)-u(k) = g(k).

    Telescopes to u(n+1) - u(1); both endpoint values must be finite.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise PreconditionError(f"n must be a positive integer, got {n!r}")
    t0 = time.perf_counter_ns()
    hi, lo = complex(u(n + 1)), complex(u(1))
    for name, v in (("u(n+1)", hi), ("u(1)", lo)):
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise EvaluationError("antidifference endpoint is not finite", at=name)
    value = hi - lo
    diag = Diagnostics(runtime_ns=time.perf_counter_ns() - t0)
    return SumResult(value=value, method="antidifference", error_estimate=_EPS * (abs(hi) + abs(lo)),
                     diagnostics=diag)

"""Recognition of summands with a known integral representation.

A summand g(k) is rewritten, when possible, as a Laplace transform

    g(x) = integral_0^inf G(t) exp(-x t) dt

where G is a combination of distributional spikes (delta functions and their
derivatives, possibly at complex locations) and smooth densities.  The spike
{weight w, location c, order m} contributes ``w * x**m * exp(-x*c)`` to g and
is evaluated against the summation factor in closed form; smooth densities go
through quadrature.

``linear_terms`` normalizes an expression tree into a sum of terms, each a
coefficient times a product of atomic factors in k (powers, exponentials,
sines/cosines of theta*k, Lorentzian denominators, Gaussian exponents); the
catalog in ``recognize_pair`` maps each term to its transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import expr as ex
from .errors import PreconditionError, RecognitionError
from .quadrature import integrate_semi_infinite
from .special import gamma_fn
from .stable import cexp

# factor-dictionary keys: (kind, parameter)
KPOW = ("kpow", None)    # value: exponent of k
EXP = ("exp", None)      # value: c in exp(c*k)
GAUSS = ("gauss", None)  # value: c in exp(c*k^2)
_MAX_DELTA_ORDER = 4


@dataclass(frozen=True)
class DeltaTerm:
    """Spike w * delta^(m)(t - c); contributes w * k^m * exp(-k c) to g(k)."""

    weight: complex
    location: complex
    deriv_order: int = 0

    def __post_init__(self):
        if self.location.real < -1e-12:
            raise PreconditionError(
                f"spike location {self.location} has negative real part")
        if not 0 <= self.deriv_order <= _MAX_DELTA_ORDER:
            raise PreconditionError(
                f"spike derivative order {self.deriv_order} outside 0..{_MAX_DELTA_ORDER}")


@dataclass(frozen=True)
class SmoothTerm:
    """Density fn(t) on t >= 0 with |fn(t)| <= C * exp(growth_bound * t)."""

    fn: Callable
    growth_bound: float = 0.0
    label: str = ""


@dataclass(frozen=True)
class Kernel:
    deltas: tuple[DeltaTerm, ...] = ()
    smooth: tuple[SmoothTerm, ...] = ()

    def __add__(self, other: "Kernel") -> "Kernel":
        return Kernel(self.deltas + other.deltas, self.smooth + other.smooth)


@dataclass(frozen=True)
class Recognition:
    g: Callable
    kernel: Kernel
    parts: tuple[str, ...] = field(default=())


def laplace_of_kernel(kernel: Kernel, x: complex, tol: float = 1e-10) -> complex:
    """Reconstruct g(x) from its density -- the consistency check for recognition."""
    x = complex(x)
    total = 0j
    for d in kernel.deltas:
        total += d.weight * x ** d.deriv_order * cexp(-x * d.location)
    for s in kernel.smooth:
        if x.real <= s.growth_bound:
            raise PreconditionError(
                f"evaluation point {x} inside growth bound {s.growth_bound} of {s.label!r}")
        res = integrate_semi_infinite(lambda t: s.fn(t) * np.exp(-x * t), tol=tol)
        total += res.value
    return total


class _Unrecognized(Exception):
    def __init__(self, why: str):
        self.why = why
        super().__init__(why)


def _merge(f1: dict, f2: dict) -> dict:
    out = dict(f1)
    for key, val in f2.items():
        cur = out.get(key)
        if cur is None:
            out[key] = val
        else:
            new = cur + val
            if new == 0:
                del out[key]
            else:
                out[key] = new
    return out


def _cross(terms1, terms2):
    return [(c1 * c2, _merge(f1, f2)) for c1, f1 in terms1 for c2, f2 in terms2]


def _padded_poly(node: ex.Node, degree: int):
    p = ex.poly_coefficients(node, degree)
    if p is None:
        return None
    return p + [0j] * (degree + 1 - len(p))


def _exp_terms(arg: ex.Node):
    p = _padded_poly(arg, 2)
    if p is None:
        raise _Unrecognized("exponent is not a polynomial of degree <= 2 in k")
    c0, c1, c2 = p
    factors = {}
    if c1 != 0:
        factors[EXP] = c1
    if c2 != 0:
        factors[GAUSS] = c2
    return [(cexp(c0), factors)]


def _trig_frequency(arg: ex.Node, fn: str) -> tuple[float, complex]:
    """(theta, sign factor) for sin/cos of a homogeneous linear argument."""
    p = _padded_poly(arg, 1)
    if p is None or p[0] != 0:
        raise _Unrecognized(f"{fn} argument must be a multiple of k")
    c1 = p[1]
    if abs(c1.imag) > 1e-14 * max(1.0, abs(c1)):
        raise _Unrecognized(f"{fn} frequency must be real")
    theta = c1.real
    if theta < 0:
        return -theta, (-1 if fn == "sin" else 1)
    return theta, 1


def _invert(node: ex.Node):
    """Terms of 1/node, for the denominators the catalog understands."""
    if ex.is_constant(node):
        return [(1.0 / ex.constant_value(node), {})]
    p = ex.poly_coefficients(node, 2)
    if p is not None:
        p = p + [0j] * (3 - len(p))
        c0, c1, c2 = p
        if c2 == 0 and c0 == 0:
            return [(1.0 / c1, {KPOW: -1.0})]
        if c1 == 0 and c2 != 0:
            if c0 == 0:
                return [(1.0 / c2, {KPOW: -2.0})]
            ratio = c0 / c2
            if abs(ratio.imag) <= 1e-14 * abs(ratio) or ratio.imag == 0:
                if ratio.real > 0:
                    a = math.sqrt(ratio.real)
                    return [(1.0 / c2, {("lorentz", a): 1})]
            raise _Unrecognized(f"denominator k^2 + {ratio} is not a positive Lorentzian")
        raise _Unrecognized("denominator polynomial is not of a recognized shape")
    inner = linear_terms(node)
    if len(inner) != 1:
        raise _Unrecognized("cannot invert a multi-term denominator")
    coeff, factors = inner[0]
    return [(1.0 / coeff, {key: -val for key, val in factors.items()})]


def linear_terms(node: ex.Node) -> list[tuple[complex, dict]]:
    """Decompose into [(coefficient, {factor-key: value})] or raise _Unrecognized."""
    if ex.is_constant(node):
        return [(ex.constant_value(node), {})]
    match node:
        case ex.Var():
            return [(1 + 0j, {KPOW: 1.0})]
        case ex.Neg(arg=a):
            return [(-c, f) for c, f in linear_terms(a)]
        case ex.Add(left=l, right=r):
            return linear_terms(l) + linear_terms(r)
        case ex.Sub(left=l, right=r):
            return linear_terms(l) + [(-c, f) for c, f in linear_terms(r)]
        case ex.Mul(left=l, right=r):
            return _cross(linear_terms(l), linear_terms(r))
        case ex.Div(left=l, right=r):
            return _cross(linear_terms(l), _invert(r))
        case ex.Call(fn="exp", arg=a):
            return _exp_terms(a)
        case ex.Call(fn="sin", arg=a):
            theta, sign = _trig_frequency(a, "sin")
            if theta == 0:
                return []
            return [(complex(sign), {("sin", theta): 1})]
        case ex.Call(fn="cos", arg=a):
            theta, sign = _trig_frequency(a, "cos")
            if theta == 0:
                return [(complex(sign), {})]
            return [(complex(sign), {("cos", theta): 1})]
        case ex.Call(fn="sqrt", arg=a):
            if isinstance(a, ex.Var):
                return [(1 + 0j, {KPOW: 0.5})]
            raise _Unrecognized("sqrt of a non-trivial argument")
        case ex.Call(fn="log"):
            raise _Unrecognized("log(k) has no integral representation here")
        case ex.Pow(base=b, exponent=e):
            if isinstance(b, ex.Const) and b.name == "e":
                return _exp_terms(e)
            if ex.is_constant(e):
                ev = ex.constant_value(e)
                if ev.imag == 0 and ev.real == int(ev.real):
                    n = int(ev.real)
                    if n >= 0:
                        out = [(1 + 0j, {})]
                        base_terms = linear_terms(b)
                        for _ in range(n):
                            out = _cross(out, base_terms)
                        return out
                    inv = _invert(b)
                    out = [(1 + 0j, {})]
                    for _ in range(-n):
                        out = _cross(out, inv)
                    return out
                if ev.imag == 0:
                    # fractional power: only of k itself or of a bare k-power
                    if isinstance(b, ex.Var):
                        return [(1 + 0j, {KPOW: ev.real})]
                    inner = linear_terms(b)
                    if len(inner) == 1 and set(inner[0][1]) <= {KPOW}:
                        c, f = inner[0]
                        if c.imag == 0 and c.real > 0:
                            scale = complex(c.real**ev.real)
                            return [(scale, {KPOW: f.get(KPOW, 0.0) * ev.real})]
                    raise _Unrecognized("fractional power of a composite base")
                raise _Unrecognized("complex exponent")
            # k in the exponent with a constant base: rewrite through exp
            if ex.is_constant(b):
                bv = ex.constant_value(b)
                if bv.imag == 0 and bv.real > 0:
                    p = _padded_poly(e, 2)
                    if p is None:
                        raise _Unrecognized("exponent is not a polynomial of degree <= 2 in k")
                    lc = math.log(bv.real)
                    factors = {}
                    if p[1] != 0:
                        factors[EXP] = p[1] * lc
                    if p[2] != 0:
                        factors[GAUSS] = p[2] * lc
                    return [(cexp(p[0] * lc), factors)]
                raise _Unrecognized("base of a k-dependent power must be a positive constant")
    raise _Unrecognized(f"no decomposition for {ex.pretty(node)!r}")


# ---------------------------------------------------------------------------
# the catalog

def _as_order(p: float) -> int:
    n = round(p)
    if abs(p - n) > 1e-12 or not 0 <= n <= _MAX_DELTA_ORDER:
        raise _Unrecognized(f"k-power {p} is not an integer order in 0..{_MAX_DELTA_ORDER}")
    return int(n)


def _trig_deltas(coeff: complex, kind: str, theta: float, shift: complex,
                 order: int) -> tuple[DeltaTerm, ...]:
    # exp(ck) sin/cos(theta k) splits over exp(-k(-c -+ i theta))
    lo = -shift - 1j * theta
    hi = -shift + 1j * theta
    if kind == "cos":
        half = coeff / 2
        return (DeltaTerm(half, lo, order), DeltaTerm(half, hi, order))
    half = coeff / 2j
    return (DeltaTerm(half, lo, order), DeltaTerm(-half, hi, order))


def _term_kernel(coeff: complex, factors: dict) -> tuple[Kernel, str]:
    if GAUSS in factors:
        raise _Unrecognized(
            "Gaussian factor exp(c*k^2) has no representation on this route; "
            "use the Fourier route")
    trig = [(kind, param, mult) for (kind, param), mult in factors.items()
            if kind in ("sin", "cos")]
    lorentz = [(param, mult) for (kind, param), mult in factors.items()
               if kind == "lorentz"]
    kpow = factors.get(KPOW, 0.0)
    shift = factors.get(EXP, 0j)

    if lorentz:
        if trig or shift != 0 or len(lorentz) != 1 or lorentz[0][1] != 1:
            raise _Unrecognized("Lorentzian factor only combines with a single power of k")
        a, _ = lorentz[0]
        if kpow == 0:
            fn = (lambda t, c=coeff, a=a: c * np.sin(a * t) / a)
            return Kernel(smooth=(SmoothTerm(fn, 0.0, f"lorentzian(a={a})"),)), "smooth:lorentzian"
        if kpow == 1:
            fn = (lambda t, c=coeff, a=a: c * np.cos(a * t))
            return Kernel(smooth=(SmoothTerm(fn, 0.0, f"k-lorentzian(a={a})"),)), "smooth:k-lorentzian"
        raise _Unrecognized(f"k^{kpow} over a Lorentzian is not in the catalog")

    if trig:
        if len(trig) != 1 or trig[0][2] != 1:
            raise _Unrecognized("products or powers of trigonometric factors")
        kind, theta, _ = trig[0]
        if (-shift).real < -1e-12:
            raise _Unrecognized(f"growing exponential factor exp({shift}*k)")
        order = _as_order(kpow)
        return (Kernel(deltas=_trig_deltas(coeff, kind, theta, shift, order)),
                f"delta:{'k-' * min(order, 1)}{kind}")

    if shift != 0:
        if (-shift).real < -1e-12:
            raise _Unrecognized(f"growing exponential factor exp({shift}*k)")
        order = _as_order(kpow)
        return (Kernel(deltas=(DeltaTerm(coeff, -shift, order),)),
                "delta:exponential")

    if kpow < 0:
        s = -kpow
        fn = (lambda t, c=coeff, s=s: c * t ** (s - 1.0) / gamma_fn(s))
        return Kernel(smooth=(SmoothTerm(fn, 0.0, f"power(s={s})"),)), "smooth:power"
    order = _as_order(kpow)
    return Kernel(deltas=(DeltaTerm(coeff, 0j, order),)), "delta:monomial"


def recognize_pair(expression) -> Recognition:
    """Build the transform pair for an expression (text or tree) in k.

    Raises RecognitionError when some term has no entry in the catalog; the
    telescoping route and the direct oracle handle general summands.
    """
    node = ex.parse_expression(expression) if isinstance(expression, str) else expression
    try:
        terms = linear_terms(node)
    except _Unrecognized as e:
        raise RecognitionError(
            f"cannot normalize summand: {e.why}; "
            "the telescoping route or the direct oracle handles it") from None
    kernel = Kernel()
    parts = []
    for coeff, factors in terms:
        if coeff == 0:
            continue
        try:
            piece, label = _term_kernel(coeff, factors)
        except _Unrecognized as e:
            raise RecognitionError(
                f"no transform for term: {e.why}; "
                "the telescoping route or the direct oracle handles it") from None
        kernel = kernel + piece
        parts.append(label)
    return Recognition(g=ex.as_function(node), kernel=kernel, parts=tuple(parts))

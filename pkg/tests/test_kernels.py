"""Summand-recognition tests: expression -> point masses + smooth density.

Each recognized kernel is validated through its defining property: applying
the exponential-decay transform to the kernel must reproduce the summand.
"""

import cmath
import math

import numpy as np
import pytest

from finsum import expr as ex
from finsum.errors import RecognitionError
from finsum.kernels import (EXP, KPOW, DeltaTerm, Kernel, SmoothTerm,
                            laplace_of_kernel, linear_terms, recognize_pair)


def _check_round_trip(text, xs=(0.5, 1.0, 2.0, 3.7), tol=1e-9):
    """laplace_of_kernel(kernel, x) must equal g(x) pointwise."""
    node = ex.parse_expression(text)
    rec = recognize_pair(node)
    for x in xs:
        want = complex(ex.evaluate(node, x))
        got = laplace_of_kernel(rec.kernel, x)
        assert got == pytest.approx(want, rel=tol, abs=tol), (text, x)


class TestLinearTerms:
    def test_single_power(self):
        [(c, f)] = linear_terms(ex.parse_expression("3/k^2"))
        assert c == 3
        assert f == {KPOW: -2.0}

    def test_scaled_fractional_power(self):
        """(4k)^(-1.5) = 4^(-1.5) k^(-1.5): the scale folds into the weight."""
        [(c, f)] = linear_terms(ex.parse_expression("(4*k)^(-1.5)"))
        assert c == pytest.approx(4.0**-1.5)
        assert f == {KPOW: -1.5}

    def test_exponential_product(self):
        [(c, f)] = linear_terms(ex.parse_expression("2*exp(-0.7*k)"))
        assert c == 2
        assert f == {EXP: -0.7 + 0j}

    def test_sum_splits(self):
        terms = linear_terms(ex.parse_expression("1/k + exp(-k)"))
        assert len(terms) == 2

    def test_base_power_rewrites_through_exp(self):
        """2^(-k) carries the same factor dict as exp(-k ln 2)."""
        [(c, f)] = linear_terms(ex.parse_expression("2^(-k)"))
        assert c == 1
        assert f[EXP] == pytest.approx(-math.log(2.0))


class TestDeltaRecognition:
    def test_exponential_spike(self):
        rec = recognize_pair("exp(-0.7*k)")
        assert len(rec.kernel.deltas) == 1
        d = rec.kernel.deltas[0]
        assert d.location == pytest.approx(0.7)
        assert d.weight == 1
        assert d.deriv_order == 0
        assert rec.kernel.smooth == ()

    def test_sine_splits_into_conjugate_pair(self):
        rec = recognize_pair("sin(1.3*k)")
        locs = sorted((d.location for d in rec.kernel.deltas),
                      key=lambda z: z.imag)
        assert locs[0] == pytest.approx(-1.3j)
        assert locs[1] == pytest.approx(+1.3j)
        weights = {d.location: d.weight for d in rec.kernel.deltas}
        assert weights[locs[0]] == pytest.approx(1 / 2j)
        assert weights[locs[1]] == pytest.approx(-1 / 2j)

    def test_damped_cosine_shifts_locations(self):
        rec = recognize_pair("exp(-0.4*k)*cos(2*k)")
        locs = sorted((d.location for d in rec.kernel.deltas),
                      key=lambda z: z.imag)
        assert locs[0] == pytest.approx(0.4 - 2j)
        assert locs[1] == pytest.approx(0.4 + 2j)

    def test_k_factor_raises_derivative_order(self):
        rec = recognize_pair("k*cos(2.2*k)")
        assert {d.deriv_order for d in rec.kernel.deltas} == {1}

    def test_monomial_is_a_derivative_spike_at_zero(self):
        rec = recognize_pair("k^2")
        [d] = rec.kernel.deltas
        assert d.location == 0
        assert d.deriv_order == 2

    def test_constant_is_an_order_zero_spike_at_zero(self):
        rec = recognize_pair("3")
        [d] = rec.kernel.deltas
        assert (d.location, d.deriv_order) == (0, 0)
        assert d.weight == 3

    def test_round_trips(self):
        _check_round_trip("exp(-0.7*k)")
        _check_round_trip("2*exp(-1.2*k) - 0.5*exp(-0.3*k)")


class TestSmoothRecognition:
    def test_lorentzian_density(self):
        """1/(k^2+a^2) has density sin(a t)/a."""
        rec = recognize_pair("1/(k^2+4)")
        assert rec.kernel.deltas == ()
        [s] = rec.kernel.smooth
        ts = np.linspace(0.1, 5.0, 9)
        np.testing.assert_allclose(np.asarray(s.fn(ts), dtype=complex),
                                   np.sin(2 * ts) / 2, rtol=1e-13)
        assert s.growth_bound == 0.0

    def test_k_lorentzian_density(self):
        """k/(k^2+a^2) has density cos(a t)."""
        rec = recognize_pair("k/(k^2+9)")
        [s] = rec.kernel.smooth
        ts = np.linspace(0.1, 5.0, 9)
        np.testing.assert_allclose(np.asarray(s.fn(ts), dtype=complex),
                                   np.cos(3 * ts), rtol=1e-13)

    def test_power_density(self):
        """k^{-s} has density t^{s-1}/Gamma(s)."""
        rec = recognize_pair("1/k^3")
        [s] = rec.kernel.smooth
        ts = np.linspace(0.5, 4.0, 7)
        np.testing.assert_allclose(np.asarray(s.fn(ts), dtype=complex),
                                   ts**2 / 2.0, rtol=1e-13)

    def test_harmonic_density_is_flat(self):
        rec = recognize_pair("1/k")
        [s] = rec.kernel.smooth
        np.testing.assert_allclose(np.asarray(s.fn(np.array([0.3, 2.0])),
                                              dtype=complex), 1.0, rtol=1e-14)

    def test_round_trips(self):
        _check_round_trip("1/(k^2+4)", tol=1e-8)
        _check_round_trip("1/k^2", tol=1e-8)
        _check_round_trip("1/k + exp(-k)", tol=1e-8)

    def test_mixed_summand_keeps_both_parts(self):
        rec = recognize_pair("sin(0.5*k) + 1/(k^2+1)")
        assert len(rec.kernel.deltas) == 2
        assert len(rec.kernel.smooth) == 1


class TestRejection:
    @pytest.mark.parametrize("text", ["log(k)", "sin(k^2)", "1/(k^3+1)",
                                      "exp(k)*sin(k)", "sqrt(k)*cos(k)",
                                      "exp(0.2*k)"])
    def test_unsupported_shapes_raise(self, text):
        with pytest.raises(RecognitionError):
            recognize_pair(text)

    def test_gaussian_points_to_transform_route(self):
        with pytest.raises(RecognitionError, match="[Ff]ourier"):
            recognize_pair("exp(-k^2)")

    def test_error_names_the_alternatives(self):
        with pytest.raises(RecognitionError, match="telescoping|oracle"):
            recognize_pair("log(k)")


class TestKernelAlgebra:
    def test_addition_merges_parts(self):
        a = Kernel(deltas=(DeltaTerm(1 + 0j, 0.5 + 0j, 0),))
        b = Kernel(smooth=(SmoothTerm(fn=lambda t: t, growth_bound=0.0,
                                      label="linear"),))
        both = a + b
        assert len(both.deltas) == 1 and len(both.smooth) == 1

    def test_delta_validation(self):
        with pytest.raises(Exception):
            DeltaTerm(1 + 0j, -0.5 + 0j, 0)   # decaying transform needs Re >= 0
        with pytest.raises(Exception):
            DeltaTerm(1 + 0j, 0.5 + 0j, 7)    # derivative order is capped

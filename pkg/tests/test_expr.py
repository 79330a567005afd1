"""Parser and evaluator tests for the summand grammar."""

import math

import numpy as np
import pytest

from finsum import expr as ex
from finsum.errors import ParseError


class TestParsing:
    def test_number_forms(self):
        for text, want in [("3", 3.0), ("3.5", 3.5), (".5", 0.5),
                           ("2e3", 2000.0), ("1.5E-2", 0.015)]:
            node = ex.parse_expression(text)
            assert ex.evaluate(node, 1.0) == want

    def test_constants(self):
        assert ex.evaluate(ex.parse_expression("pi"), 0.0) == math.pi
        assert ex.evaluate(ex.parse_expression("e"), 0.0) == math.e

    def test_precedence_and_associativity(self):
        """1+2*3^2 groups as 1+(2*(3^2)); a-b-c groups left; a^b^c right."""
        assert ex.evaluate(ex.parse_expression("1+2*3^2"), 0.0) == 19.0
        assert ex.evaluate(ex.parse_expression("10-4-3"), 0.0) == 3.0
        assert ex.evaluate(ex.parse_expression("2^3^2"), 0.0) == 512.0
        assert ex.evaluate(ex.parse_expression("-2^2"), 0.0) == -4.0

    def test_unary_minus_binds_looser_than_power(self):
        assert ex.evaluate(ex.parse_expression("-k^2"), 3.0) == -9.0

    def test_function_calls(self):
        k = 0.7
        node = ex.parse_expression("sin(k)*cos(k) + exp(-k) + log(k) + sqrt(k)")
        want = math.sin(k) * math.cos(k) + math.exp(-k) + math.log(k) + math.sqrt(k)
        assert ex.evaluate(node, k) == pytest.approx(want, rel=1e-15)

    def test_whitespace_is_free(self):
        a = ex.parse_expression("1/(k^2+1)")
        b = ex.parse_expression(" 1 / ( k ^ 2 + 1 ) ")
        assert ex.evaluate(a, 3.0) == ex.evaluate(b, 3.0)

    @pytest.mark.parametrize("bad", ["", "1+", "sin", "sin()", "2**3", "(1",
                                     "k k", "foo(2)", "1..2", "^2"])
    def test_rejects_malformed(self, bad):
        with pytest.raises(ParseError):
            ex.parse_expression(bad)

    def test_error_carries_offset(self):
        with pytest.raises(ParseError) as info:
            ex.parse_expression("1/(k^2+1")
        assert info.value.offset == 8


class TestEvaluation:
    def test_matches_direct_python(self):
        """Sweep a grid of k against an independently coded closure."""
        node = ex.parse_expression("exp(-0.3*k)*cos(1.1*k) + k/(k^2+4)")
        for k in np.linspace(0.5, 20.0, 79):
            want = math.exp(-0.3 * k) * math.cos(1.1 * k) + k / (k * k + 4)
            assert ex.evaluate(node, float(k)) == pytest.approx(want, rel=5e-15)

    def test_vectorized_evaluation(self):
        node = ex.parse_expression("1/(k^2+1)")
        ks = np.linspace(1.0, 9.0, 17)
        np.testing.assert_allclose(ex.evaluate(node, ks), 1.0 / (ks**2 + 1),
                                   rtol=1e-15)

    def test_complex_argument(self):
        node = ex.parse_expression("exp(-k)")
        z = 0.3 + 0.4j
        assert ex.evaluate(node, z) == pytest.approx(np.exp(-z), rel=1e-15)

    def test_as_function_keeps_source(self):
        fn = ex.as_function(ex.parse_expression("1/k"))
        assert fn(4.0) == 0.25
        assert fn.expression == "1/k"


class TestStructureHelpers:
    def test_poly_coefficients(self):
        node = ex.parse_expression("3 + 2*k - 0.5*k^2")
        assert ex.poly_coefficients(node) == pytest.approx([3.0, 2.0, -0.5])
        assert ex.poly_coefficients(ex.parse_expression("sin(k)")) is None
        assert ex.poly_coefficients(ex.parse_expression("k^3")) is None

    def test_substitute_index(self):
        """Replacing k by 2k halves the effective lattice of any summand."""
        node = ex.parse_expression("sin(0.4*k) + k^2")
        doubled = ex.substitute_index(node, ex.Mul(ex.Num(2.0), ex.Var()))
        for k in (0.5, 1.0, 3.25):
            assert ex.evaluate(doubled, k) == pytest.approx(
                ex.evaluate(node, 2 * k), rel=1e-15)

    def test_pretty_round_trips(self):
        rng = np.random.default_rng(7)
        for text in ["1/(k^2+1)", "-k^2", "2^3^2", "k*(k+1)/2",
                     "exp(-0.7*k)*sin(2*k)", "1 - 1/k", "(1+k)^2"]:
            node = ex.parse_expression(text)
            again = ex.parse_expression(ex.pretty(node))
            for k in rng.uniform(0.5, 5.0, size=8):
                assert ex.evaluate(again, float(k)) == pytest.approx(
                    ex.evaluate(node, float(k)), rel=1e-14)

"""
COLOR ALGEBRA ENGINE - CYCLOTOMIC SCALAR TESTS
==============================================
Run with: pytest tests/test_scalar.py -v
"""

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from errors import DivisionByZero, MixedRootOrder
from scalar import (
    CycloScalar,
    cyclotomic_polynomial,
    euler_phi,
    root_of_unity,
    scalar_arithmetic,
)


class TestCyclotomicPolynomial:
    """Phi_L by recursive division"""

    def test_small_cases(self):
        assert cyclotomic_polynomial(1) == (-1, 1)
        assert cyclotomic_polynomial(3) == (1, 1, 1)
        assert cyclotomic_polynomial(4) == (1, 0, 1)

    @pytest.mark.parametrize("L", range(1, 31))
    def test_matches_sympy(self, L):
        x = sympy.Symbol("x")
        expected = sympy.Poly(sympy.cyclotomic_poly(L, x), x).all_coeffs()
        assert cyclotomic_polynomial(L) == tuple(int(c) for c in reversed(expected))

    def test_degree_is_totient(self):
        for L in range(1, 40):
            assert euler_phi(L) == int(sympy.totient(L))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            cyclotomic_polynomial(0)


class TestRootOfUnity:
    """Reduced powers of zeta_L"""

    def test_examples(self):
        assert root_of_unity(3, 0) == 1
        assert root_of_unity(3, 4) == root_of_unity(3, 1)
        assert root_of_unity(2, 1) == -1

    def test_power_law_exhaustive(self):
        for L in range(1, 13):
            for k in range(L):
                for m in range(L):
                    assert root_of_unity(L, k) * root_of_unity(L, m) == root_of_unity(L, k + m)

    def test_geometric_sum_vanishes(self):
        for L in range(2, 13):
            total = CycloScalar.zero(L)
            for k in range(L):
                total = total + root_of_unity(L, k)
            assert total.is_zero()

    def test_negative_exponent(self):
        assert root_of_unity(5, -1) == root_of_unity(5, 4)


class TestFieldOperations:
    """Arithmetic in Q(zeta_L)"""

    def test_spec_examples(self):
        z3 = root_of_unity(3, 1)
        assert scalar_arithmetic("mul", z3, z3 * z3) == 1
        assert scalar_arithmetic("add", CycloScalar.one(3), z3 + z3 * z3).is_zero()
        z4 = root_of_unity(4, 1)
        assert scalar_arithmetic("inv", z4) == -z4

    def test_inverse_of_zero(self):
        with pytest.raises(DivisionByZero):
            CycloScalar.zero(5).inverse()
        with pytest.raises(ZeroDivisionError):
            CycloScalar.one(5) / CycloScalar.zero(5)

    def test_mixed_root_orders(self):
        with pytest.raises(MixedRootOrder):
            root_of_unity(3, 1) + root_of_unity(4, 1)
        with pytest.raises(MixedRootOrder):
            scalar_arithmetic("eq", root_of_unity(3, 1), root_of_unity(4, 1))

    def test_rational_coercion(self):
        z = root_of_unity(6, 1)
        assert (z + 1) - 1 == z
        assert (2 * z) * Fraction(1, 2) == z
        assert CycloScalar.rational(6, Fraction(3, 4)) == Fraction(3, 4)

    def test_field_axioms_on_random_samples(self):
        rng = random.Random(7)
        for L in (3, 5, 8, 12):
            n = euler_phi(L)

            def sample():
                return CycloScalar(L, [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)])

            for _ in range(20):
                x, y, z = sample(), sample(), sample()
                assert (x * y) * z == x * (y * z)
                assert x * (y + z) == x * y + x * z
                if x:
                    assert x * x.inverse() == 1
                    assert (y / x) * x == y

    def test_power(self):
        z = root_of_unity(7, 1)
        assert z ** 7 == 1
        assert z ** -2 == root_of_unity(7, 5)
        assert z ** 0 == 1

    def test_wrong_coefficient_count(self):
        with pytest.raises(ValueError):
            CycloScalar(5, [1, 2])


class TestLiftAndTerms:
    """Field embeddings and the serialized term form"""

    def test_lift_preserves_roots(self):
        assert root_of_unity(3, 1).lift(6) == root_of_unity(6, 2)
        assert root_of_unity(2, 1).lift(12) == -1

    def test_lift_to_non_multiple(self):
        with pytest.raises(MixedRootOrder):
            root_of_unity(3, 1).lift(4)

    def test_terms_roundtrip(self):
        x = CycloScalar.from_terms(12, [(Fraction(1, 3), 1), (-2, 5), (7, 0)])
        assert CycloScalar.from_terms(12, [(Fraction(t["num"], t["den"]), t["zeta_pow"]) for t in x.to_terms()]) == x

    def test_terms_reduce_on_load(self):
        # 1 + z3 + z3^2 = 0
        assert CycloScalar.from_terms(3, [(1, 0), (1, 1), (1, 2)]).is_zero()
        assert CycloScalar.from_terms(4, [(1, 2)]) == -1

    def test_string_form(self):
        assert str(CycloScalar.zero(3)) == "0"
        assert str(root_of_unity(3, 1)) == "z3"
        assert str(-root_of_unity(4, 1) + 2) == "2 - z4"

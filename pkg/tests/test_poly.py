"""Unit tests for the exact polynomial and map arithmetic core."""

from fractions import Fraction

import pytest

from nilmap import NilmapError, PolyMap, Polynomial, univariate_gcd
from nilmap.errors import DimensionMismatch, ShapeError


def P(text, n=3):
    from nilmap import parse_polynomial

    return parse_polynomial(text, n)


class TestConstruction:
    def test_zero_is_zero(self):
        assert Polynomial.zero(2).is_zero()
        assert Polynomial.zero(2).total_degree() == -1

    def test_zero_coefficients_are_dropped(self):
        p = Polynomial(2, {(1, 0): Fraction(0), (0, 1): Fraction(2)})
        assert p.terms == {(0, 1): Fraction(2)}

    def test_const_and_constant_value(self):
        c = Polynomial.const(3, Fraction(5, 2))
        assert c.is_constant()
        assert c.constant_value() == Fraction(5, 2)
        assert c.total_degree() == 0

    def test_variable(self):
        y = Polynomial.variable(3, 2)
        assert y.terms == {(0, 1, 0): Fraction(1)}
        with pytest.raises(ShapeError):
            Polynomial.variable(3, 4)

    def test_monomial(self):
        m = Polynomial.monomial(2, (1, 2), 3)
        assert m.coefficient((1, 2)) == 3
        assert m.total_degree() == 3

    def test_immutability(self):
        p = Polynomial.variable(2, 1)
        with pytest.raises(AttributeError):
            p.n = 5
        # `terms` hands out a copy, not the internal dict
        p.terms[(0, 1)] = Fraction(7)
        assert p == Polynomial.variable(2, 1)


class TestArithmetic:
    def test_add_sub(self):
        p = P("x + 2*y")
        q = P("x - 2*y")
        assert p + q == P("2*x")
        assert p - p == Polynomial.zero(3)

    def test_mul(self):
        assert P("x + y") * P("x - y") == P("x^2 - y^2")

    def test_pow(self):
        assert P("x + 1") ** 3 == P("x^3 + 3*x^2 + 3*x + 1")
        assert P("x") ** 0 == Polynomial.const(3, 1)

    def test_scale(self):
        assert P("2*x").scale(Fraction(1, 2)) == P("x")
        assert P("x").scale(0).is_zero()

    def test_neg(self):
        assert -P("x - y") == P("y - x")

    def test_mixed_arity_rejected(self):
        with pytest.raises(DimensionMismatch):
            P("x", 2) + P("x", 3)

    def test_rational_coefficients_stay_exact(self):
        p = Polynomial.monomial(1, (1,), Fraction(1, 3))
        assert (p + p + p) == Polynomial.variable(1, 1)


class TestCalculus:
    def test_partial(self):
        p = P("x^2*y + z^3")
        assert p.partial(1) == P("2*x*y")
        assert p.partial(2) == P("x^2")
        assert p.partial(3) == P("3*z^2")

    def test_mixed_partials_commute(self):
        p = P("x^3*y^2*z + x*y - z^4")
        assert p.partial(1).partial(2) == p.partial(2).partial(1)

    def test_integrate_then_partial(self):
        p = P("x^2*y + 3*z")
        assert p.integrate(2).partial(2) == p

    def test_integrate_golden(self):
        assert P("2*x").integrate(1) == P("x^2")


class TestSubstitution:
    def test_identity_substitution(self):
        p = P("x^2 + y*z")
        bindings = {i: Polynomial.variable(3, i) for i in (1, 2, 3)}
        assert p.substitute(bindings) == p

    def test_point_evaluation(self):
        p = P("x^2 + y")
        val = p.substitute(
            {
                1: Polynomial.const(3, 2),
                2: Polynomial.const(3, -1),
                3: Polynomial.zero(3),
            }
        )
        assert val == Polynomial.const(3, 3)

    def test_composition(self):
        p = P("x^2")
        assert p.substitute({1: P("x + y")}) == P("x^2 + 2*x*y + y^2")

    def test_substitution_is_a_ring_morphism(self):
        p, q = P("x*y + z"), P("x - z^2")
        b = {1: P("y + 1"), 2: P("x*z"), 3: P("z - y")}
        assert (p * q).substitute(b) == p.substitute(b) * q.substitute(b)
        assert (p + q).substitute(b) == p.substitute(b) + q.substitute(b)


class TestStructure:
    def test_degree_in(self):
        p = P("x^2*z + y^3")
        assert p.degree_in(1) == 2
        assert p.degree_in(2) == 3
        assert p.degree_in(3) == 1
        assert Polynomial.zero(3).degree_in(1) == -1

    def test_variables_used(self):
        assert P("x*z + 1").variables_used() == {1, 3}

    def test_coefficients_in_reconstruct(self):
        p = P("x^2*z^2 + y*z + x - 4")
        coeffs = p.coefficients_in(3)
        z = Polynomial.variable(3, 3)
        acc = Polynomial.zero(3)
        for k, c in enumerate(coeffs):
            assert 3 not in c.variables_used()
            acc = acc + c * z ** k
        assert acc == p

    def test_homogeneous_parts_reconstruct(self):
        p = P("x^2*y + x*z + z^2 + y")
        parts = p.homogeneous_parts([1, 2])
        assert sum(parts, Polynomial.zero(3)) == p
        # part k is exactly the degree-k slice in (x, y)
        assert parts[0] == P("z^2")
        assert parts[1] == P("x*z + y")

    def test_truncate(self):
        p = P("x^3 + x*y + z")
        assert p.truncate(2) == P("x*y + z")
        assert p.truncate(10) == p
        assert p.truncate(0).is_zero()

    def test_restrict_lift_round_trip(self):
        p = P("x^2 + x*z + z^3")
        r = p.restrict([1, 3])
        assert r.n == 2
        assert r.lift(3, [1, 3]) == p

    def test_restrict_rejects_used_variable_outside_selection(self):
        with pytest.raises(NilmapError):
            P("x*y").restrict([1])

    def test_leading_term_graded_lex(self):
        p = P("x*y^2 + x^2*y + z^3")
        exps, coeff = p.leading_term()
        assert exps == (2, 1, 0)
        assert coeff == 1
        with pytest.raises(NilmapError):
            Polynomial.zero(2).leading_term()

    def test_exact_div(self):
        p = P("x^2 - y^2")
        assert p.exact_div(P("x - y")) == P("x + y")
        with pytest.raises(NilmapError):
            P("x^2 + 1").exact_div(P("x + y"))
        with pytest.raises(NilmapError):
            P("x").exact_div(Polynomial.zero(3))

    def test_div_mul_round_trip(self):
        p, q = P("x*y + z^2"), P("x - 2*y + 1")
        assert (p * q).exact_div(q) == p


class TestUnivariateGcd:
    def test_common_factor(self):
        x = Polynomial.variable(1, 1)
        p = (x + Polynomial.const(1, 1)) * x
        q = (x + Polynomial.const(1, 1)) * (x - Polynomial.const(1, 2))
        g = univariate_gcd(p, q)
        assert g == x + Polynomial.const(1, 1)

    def test_result_is_monic(self):
        x = Polynomial.variable(1, 1)
        g = univariate_gcd(x.scale(4), x.scale(6))
        assert g == x

    def test_coprime(self):
        x = Polynomial.variable(1, 1)
        g = univariate_gcd(x + Polynomial.const(1, 1), x)
        assert g == Polynomial.const(1, 1)


class TestPolyMap:
    def test_identity(self):
        F = PolyMap.identity(3)
        assert F.is_identity()
        assert F.dimension == 3

    def test_compose_golden(self):
        from nilmap import parse_map

        F = parse_map("x + y^2; y")
        G = parse_map("x - y^2; y")
        assert F.compose(G).is_identity()
        assert G.compose(F).is_identity()

    def test_compose_not_commutative(self):
        from nilmap import parse_map

        F = parse_map("x + y^2; y")
        G = parse_map("x; y + x^2")
        assert F.compose(G) != G.compose(F)

    def test_add_sub_zero(self):
        from nilmap import parse_map

        F = parse_map("x + y; y")
        assert (F - F).is_zero()
        assert F + PolyMap.zero(2) == F

    def test_value_at_zero(self):
        from nilmap import parse_map

        F = parse_map("x + 1; y - 2")
        assert F.value_at_zero() == [1, -2]

    def test_max_total_degree_and_truncate(self):
        from nilmap import parse_map

        F = parse_map("x^3 + y; y")
        assert F.max_total_degree() == 3
        assert F.truncate(1) == parse_map("y; y")

    def test_dimension_checks(self):
        with pytest.raises(NilmapError):
            PolyMap([Polynomial.variable(2, 1), Polynomial.variable(3, 1)])

"""Property-based tests of the algebraic identities the library relies on."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from nilmap import (
    PolyMap,
    Polynomial,
    format_polynomial,
    is_nilpotent,
    is_nilpotent_bruteforce,
    jacobian,
    parse_polynomial,
    poly_det,
)
from nilmap.linalg import PolyMatrix

settings.register_profile("suite", max_examples=30, deadline=None)
settings.load_profile("suite")


def polynomials(n=2, max_exp=3, max_terms=4):
    coeff = st.fractions(
        min_value=Fraction(-4), max_value=Fraction(4), max_denominator=3
    )
    exps = st.tuples(*(st.integers(0, max_exp) for _ in range(n)))
    return st.dictionaries(exps, coeff, max_size=max_terms).map(
        lambda terms: Polynomial(n, terms)
    )


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polynomials())
def test_additive_inverse(p):
    assert (p - p).is_zero()
    assert p + Polynomial.zero(2) == p


@given(polynomials(), polynomials())
def test_product_rule(p, q):
    for i in (1, 2):
        assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)


@given(polynomials())
def test_mixed_partials_commute(p):
    assert p.partial(1).partial(2) == p.partial(2).partial(1)


@given(polynomials())
def test_coefficients_reconstruct(p):
    y = Polynomial.variable(2, 2)
    acc = Polynomial.zero(2)
    for k, c in enumerate(p.coefficients_in(2)):
        acc = acc + c * y ** k
    assert acc == p


@given(polynomials())
def test_homogeneous_parts_reconstruct(p):
    acc = Polynomial.zero(2)
    for part in p.homogeneous_parts([1, 2]):
        acc = acc + part
    assert acc == p


@given(polynomials())
def test_format_parse_round_trip(p):
    assert parse_polynomial(format_polynomial(p), 2) == p


@given(polynomials(), polynomials())
def test_substitution_morphism(p, q):
    bindings = {1: q, 2: Polynomial.variable(2, 1)}
    lhs = (p * p + p).substitute(bindings)
    ps = p.substitute(bindings)
    assert lhs == ps * ps + ps


@given(polynomials(max_exp=2, max_terms=3))
def test_truncation_splits_degrees(p):
    low = p.truncate(2)
    assert all(sum(e) <= 2 for e in low.terms)
    assert all(sum(e) > 2 for e in (p - low).terms)


@given(st.lists(polynomials(max_exp=1, max_terms=2), min_size=4, max_size=4))
def test_det_is_multiplicative(entries):
    a = PolyMatrix([[entries[0], entries[1]], [entries[2], entries[3]]])
    b = PolyMatrix([[entries[3], entries[1]], [entries[2], entries[0]]])
    assert poly_det(a * b) == poly_det(a) * poly_det(b)


@given(
    st.lists(polynomials(max_exp=1, max_terms=2), min_size=2, max_size=2)
)
def test_nilpotency_oracles_agree(components):
    H = PolyMap(components)
    assert is_nilpotent(H) == is_nilpotent_bruteforce(H)


@given(polynomials(max_exp=2, max_terms=3))
def test_chain_rule_for_maps(p):
    # d/dx of p(x + y, y) equals p_1(x + y, y) by the chain rule
    shifted = p.substitute(
        {1: Polynomial.variable(2, 1) + Polynomial.variable(2, 2)}
    )
    assert shifted.partial(1) == p.partial(1).substitute(
        {1: Polynomial.variable(2, 1) + Polynomial.variable(2, 2)}
    )


@given(st.lists(polynomials(max_exp=1, max_terms=2), min_size=2, max_size=2))
def test_jacobian_of_composition(components):
    # the determinant of a composed map's Jacobian is the product of the
    # factors' determinants with the inner map substituted
    F = PolyMap.identity(2) + PolyMap(
        [p.truncate(3) for p in components]
    )
    G = PolyMap.identity(2)
    comp = F.compose(G)
    assert poly_det(jacobian(comp)) == poly_det(jacobian(F))

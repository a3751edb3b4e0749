"""Unit tests for Jacobian analysis: nilpotency, dependence, conjugation."""

import random
from fractions import Fraction

import pytest

from nilmap import (
    DependenceCertificate,
    LinearMap,
    PreconditionError,
    check_divergence_coefficients,
    coefficient_system,
    conjugate,
    elementary_permutation,
    is_nilpotent,
    is_nilpotent_bruteforce,
    jacobian,
    linear_dependence,
    nilpotency_equations,
    parse_map,
    parse_polynomial,
    poly_matrix_rank,
)
from nilmap import generators
from nilmap.errors import ShapeError


class TestJacobian:
    def test_entries(self):
        H = parse_map("x^2 + y; y*z; 0")
        J = jacobian(H)
        assert J[0, 0] == parse_polynomial("2*x", 3)
        assert J[0, 1] == parse_polynomial("1", 3)
        assert J[1, 2] == parse_polynomial("y", 3)
        assert J[2, 0].is_zero()


class TestNilpotency:
    def test_strictly_triangular_shift_is_nilpotent(self):
        H = parse_map("y + z^2; z; 0")
        assert is_nilpotent(H)
        assert is_nilpotent_bruteforce(H)

    def test_simple_nilpotent_example(self):
        H = parse_map("z^2; x*z; 0")
        assert is_nilpotent(H)
        assert is_nilpotent_bruteforce(H)

    def test_rank_two_nilpotent_example(self):
        H = parse_map("(z*x + y)^2; -z*(z*x + y)^2; 0")
        report = nilpotency_equations(H)
        assert report.nilpotent
        assert report.sigma[1].is_zero()
        assert is_nilpotent_bruteforce(H)
        # the three Jacobian rows span a rank-2 space: the second row is
        # -z times the first minus (0, 0, (z*x + y)^2)
        assert poly_matrix_rank(jacobian(H)) == 2

    def test_non_nilpotent_witness(self):
        H = parse_map("x; y")
        report = nilpotency_equations(H)
        assert not report.nilpotent
        k, sigma_k = report.witness
        assert k == 1
        assert sigma_k == parse_polynomial("2", 2)
        assert not is_nilpotent(H)
        assert not is_nilpotent_bruteforce(H)

    def test_report_serializes(self):
        doc = nilpotency_equations(parse_map("x; y")).to_json()
        assert doc["nilpotent"] is False
        assert doc["witness"]["k"] == 1

    def test_oracles_agree_on_random_maps(self):
        rng = random.Random(2024)
        for _ in range(60):
            n = rng.choice([2, 3, 4])
            H = generators.random_map(rng, n, 3, terms=3)
            assert is_nilpotent(H) == is_nilpotent_bruteforce(H)


class TestDependence:
    def test_certificate_golden(self):
        H = parse_map("x + y; 2*x + 2*y; x")
        cert = linear_dependence(H.components)
        assert cert is not None
        assert cert.coefficients == (
            Fraction(1),
            Fraction(-1, 2),
            Fraction(0),
        )
        assert cert.verify(H.components)

    def test_independent_returns_none(self):
        H = parse_map("x; y; x*y")
        assert linear_dependence(H.components) is None

    def test_all_zero_components(self):
        H = parse_map("0; 0")
        cert = linear_dependence(H.components)
        assert cert is not None
        assert cert.verify(H.components)

    def test_certificate_normalization(self):
        c = DependenceCertificate([0, -2, 4])
        assert c.coefficients == (Fraction(0), Fraction(1), Fraction(-2))

    def test_all_zero_certificate_rejected(self):
        with pytest.raises(ShapeError):
            DependenceCertificate([0, 0])

    def test_verify_rejects_wrong_length(self):
        c = DependenceCertificate([1, -1])
        with pytest.raises(Exception):
            c.verify(parse_map("x; y; 0").components)


class TestConjugation:
    def test_swap_golden(self):
        H = parse_map("y; 0")
        T = elementary_permutation(2, 1, 2)
        assert conjugate(H, T) == parse_map("0; x")

    def test_identity_conjugation(self):
        H = parse_map("x*y + z; y^2; z")
        assert conjugate(H, LinearMap.identity(3)) == H

    def test_conjugation_composes(self):
        rng = random.Random(3)
        H = generators.random_map(rng, 3, 2, terms=3)
        T1 = generators.random_invertible(rng, 3)
        T2 = generators.random_invertible(rng, 3)
        assert conjugate(conjugate(H, T1), T2) == conjugate(H, T1 * T2)

    def test_preserves_nilpotency(self):
        rng = random.Random(4)
        for _ in range(10):
            n = rng.choice([2, 3])
            H = generators.random_nilpotent_map(rng, n)
            T = generators.random_invertible(rng, n)
            assert is_nilpotent(conjugate(H, T))

    def test_preserves_dependence_presence(self):
        rng = random.Random(5)
        for _ in range(10):
            H = generators.random_map(rng, 3, 2, terms=2)
            T = generators.random_invertible(rng, 3)
            before = linear_dependence(H.components) is not None
            after = linear_dependence(conjugate(H, T).components) is not None
            assert before == after


class TestCoefficientSystem:
    def test_expansion(self):
        p = parse_polynomial("x*z^2 + y*z + x", 3)
        system = coefficient_system([p], 3)
        assert system.variable == 3
        assert system.equations == (
            parse_polynomial("x", 3),
            parse_polynomial("y", 3),
            parse_polynomial("x", 3),
        )
        assert not system.all_zero()

    def test_all_zero(self):
        from nilmap import Polynomial

        assert coefficient_system([Polynomial.zero(3)], 3).all_zero()


class TestDivergenceCoefficients:
    def test_constructed_pairs_pass(self):
        rng = random.Random(6)
        for _ in range(15):
            u, v = generators.divergence_pair(rng)
            assert check_divergence_coefficients(u, v)

    def test_nonzero_divergence_rejected(self):
        u = parse_polynomial("x*z", 3)
        v = parse_polynomial("y", 3)
        with pytest.raises(PreconditionError):
            check_divergence_coefficients(u, v)

    def test_excess_z_degree_rejected(self):
        # u_x + v_y = 0 holds but deg_z v > deg_z u
        u = parse_polynomial("z", 3)
        v = parse_polynomial("z^2", 3)
        with pytest.raises(PreconditionError):
            check_divergence_coefficients(u, v)

    def test_hand_built_pair(self):
        # u = x*y + z^3, v = -y^2/2 + x*z
        u = parse_polynomial("x*y + z^3", 3)
        v = parse_polynomial("-1/2*y^2 + x*z", 3)
        assert check_divergence_coefficients(u, v)

"""Unit tests for exact rational and polynomial linear algebra."""

import random
from fractions import Fraction

import pytest

from nilmap import (
    LinearMap,
    NilmapError,
    PolyMatrix,
    Polynomial,
    elementary_permutation,
    elementary_row_add,
    kernel,
    parse_polynomial,
    poly_det,
    poly_matrix_rank,
    principal_minor_sum,
)
from nilmap.linalg import RationalMatrix, _det_bareiss, _det_cofactor


def Q(rows):
    return RationalMatrix([[Fraction(v) for v in row] for row in rows])


class TestRationalMatrix:
    def test_identity(self):
        assert Q([[1, 0], [0, 1]]).is_identity()
        assert RationalMatrix.identity(3).is_identity()

    def test_multiplication_golden(self):
        a = Q([[1, 2], [3, 4]])
        b = Q([[0, 1], [1, 0]])
        assert a * b == Q([[2, 1], [4, 3]])

    def test_inverse_round_trip(self):
        m = Q([[2, 1], [1, 1]])
        assert (m * m.inverse()).is_identity()
        assert (m.inverse() * m).is_identity()

    def test_inverse_golden(self):
        m = Q([[2, 0], [0, 4]])
        assert m.inverse() == Q([["1/2", 0], [0, "1/4"]])

    def test_singular_raises(self):
        with pytest.raises(NilmapError):
            Q([[1, 2], [2, 4]]).inverse()

    def test_apply(self):
        m = Q([[1, 2], [0, 1]])
        assert m.apply([Fraction(1), Fraction(1)]) == [Fraction(3), Fraction(1)]

    def test_transpose(self):
        assert Q([[1, 2], [3, 4]]).transpose() == Q([[1, 3], [2, 4]])

    def test_rref_pivots(self):
        m = Q([[0, 1, 2], [0, 2, 4]])
        reduced, pivots = m.rref()
        assert pivots == [1]
        assert reduced == Q([[0, 1, 2], [0, 0, 0]])

    def test_json_round_trip(self):
        m = Q([["1/2", 3], [-1, 0]])
        assert RationalMatrix.from_json(m.to_json()) == m


class TestKernel:
    def test_trivial_kernel(self):
        assert kernel(Q([[1, 0], [0, 1]])) == []

    def test_kernel_vectors_annihilate(self):
        m = Q([[1, 2, 3], [2, 4, 6]])
        basis = kernel(m)
        assert len(basis) == 2
        for v in basis:
            assert m.apply(v) == [Fraction(0)] * 2

    def test_kernel_golden(self):
        basis = kernel(Q([[1, 1, 1]]))
        assert len(basis) == 2
        for v in basis:
            assert sum(v) == 0


class TestLinearMap:
    def test_validates_inverse_pair(self):
        m = Q([[2, 0], [0, 1]])
        with pytest.raises(NilmapError):
            LinearMap(m, Q([[1, 0], [0, 1]]))

    def test_compose_and_invert(self):
        a = LinearMap.from_matrix([[1, 1], [0, 1]])
        b = LinearMap.from_matrix([[2, 0], [0, 1]])
        ab = a * b
        assert ab.matrix == a.matrix * b.matrix
        assert (ab.matrix * ab.inverse).is_identity()
        assert ab.inverted().matrix == ab.inverse

    def test_identity(self):
        assert LinearMap.identity(4).is_identity()

    def test_elementary_permutation(self):
        t = elementary_permutation(3, 1, 2)
        assert t.matrix.apply([Fraction(5), Fraction(7), Fraction(9)]) == [
            Fraction(7),
            Fraction(5),
            Fraction(9),
        ]
        assert (t.matrix * t.matrix).is_identity()

    def test_elementary_row_add(self):
        # adds a * (coordinate i) to coordinate j
        t = elementary_row_add(3, 1, Fraction(2), 2)
        assert t.matrix.apply([Fraction(1), Fraction(0), Fraction(0)]) == [
            Fraction(1),
            Fraction(2),
            Fraction(0),
        ]
        assert (t.matrix * t.inverse).is_identity()


class TestPolyMatrix:
    def J(self, texts, n=3):
        return PolyMatrix(
            [[parse_polynomial(t, n) for t in row] for row in texts]
        )

    def test_multiplication_and_power(self):
        m = self.J([["0", "z"], ["0", "0"]])
        assert not m.is_zero()
        assert m.power(2).is_zero()

    def test_det_2x2(self):
        m = self.J([["x", "y"], ["z", "x"]])
        assert poly_det(m) == parse_polynomial("x^2 - y*z", 3)

    def test_det_methods_agree(self):
        rng = random.Random(11)
        for _ in range(10):
            size = rng.choice([2, 3, 4])
            m = PolyMatrix(
                [
                    [
                        Polynomial.monomial(
                            2,
                            (rng.randint(0, 1), rng.randint(0, 1)),
                            rng.randint(-2, 2),
                        )
                        for _ in range(size)
                    ]
                    for _ in range(size)
                ]
            )
            assert _det_cofactor(m) == _det_bareiss(m)

    def test_det_multiplicative(self):
        rng = random.Random(5)
        for _ in range(5):
            mats = []
            for _ in range(2):
                mats.append(
                    PolyMatrix(
                        [
                            [
                                Polynomial.monomial(
                                    2,
                                    (rng.randint(0, 1), rng.randint(0, 1)),
                                    rng.randint(-2, 2),
                                )
                                for _ in range(3)
                            ]
                            for _ in range(3)
                        ]
                    )
                )
            a, b = mats
            assert poly_det(a * b) == poly_det(a) * poly_det(b)

    def test_principal_minor_sums_vs_hand_count(self):
        m = self.J([["x", "1", "0"], ["0", "y", "1"], ["1", "0", "z"]])
        assert principal_minor_sum(m, 1) == parse_polynomial("x + y + z", 3)
        assert principal_minor_sum(m, 2) == parse_polynomial(
            "x*y + x*z + y*z", 3
        )
        assert principal_minor_sum(m, 3) == poly_det(m)

    def test_rank_examples(self):
        assert poly_matrix_rank(self.J([["x", "y"], ["2*x", "2*y"]])) == 1
        assert poly_matrix_rank(self.J([["x", "y"], ["y", "x"]])) == 2
        assert (
            poly_matrix_rank(self.J([["0", "0"], ["0", "0"]])) == 0
        )

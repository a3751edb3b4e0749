"""Jacobian analysis: nilpotency certificates, linear dependence, conjugation.

A square matrix is nilpotent exactly when all of its principal-minor sums
sigma_1..sigma_n vanish (these are, up to sign, the characteristic
polynomial's coefficients).  `nilpotency_equations` computes those sums as
explicit polynomials; `is_nilpotent_bruteforce` independently checks
J(H)^n = 0 by exact matrix powering, so the two definitions guard each
other in the test suite.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, PreconditionError, ShapeError
from .linalg import (
    LinearMap,
    PolyMatrix,
    RationalMatrix,
    kernel,
    principal_minor_sum,
)
from .poly import Polynomial, PolyMap


class NilpotencyReport:
    """Sigma polynomials of a Jacobian plus the verdict they imply."""

    __slots__ = ("sigma", "nilpotent", "witness")

    def __init__(self, sigma: Sequence[Polynomial]):
        sigma = tuple(sigma)
        witness = None
        for k, s in enumerate(sigma, start=1):
            if not s.is_zero():
                witness = (k, s)
                break
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "nilpotent", witness is None)
        object.__setattr__(self, "witness", witness)

    def __setattr__(self, *args):
        raise AttributeError("NilpotencyReport instances are immutable")

    def to_json(self) -> dict:
        from .parsing import format_polynomial

        doc = {
            "sigma": [format_polynomial(s) for s in self.sigma],
            "nilpotent": self.nilpotent,
        }
        if self.witness is not None:
            k, s = self.witness
            doc["witness"] = {"k": k, "sigma_k": format_polynomial(s)}
        return doc


class DependenceCertificate:
    """Rational vector lambda, not all zero, with sum(lambda_i * H_i) = 0.

    Certificates are normalized so the first nonzero entry is 1, making
    them deterministic for golden tests.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence[Fraction]):
        coeffs = [Fraction(c) for c in coefficients]
        lead = next((c for c in coeffs if c != 0), None)
        if lead is None:
            raise ShapeError("a dependence certificate cannot be all zero")
        object.__setattr__(
            self, "coefficients", tuple(c / lead for c in coeffs)
        )

    def __setattr__(self, *args):
        raise AttributeError("DependenceCertificate instances are immutable")

    def __eq__(self, other):
        if not isinstance(other, DependenceCertificate):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def verify(self, components: Sequence[Polynomial]) -> bool:
        """Check sum(lambda_i * components_i) = 0 exactly."""
        if len(components) != len(self.coefficients):
            raise DimensionMismatch("certificate length does not match components")
        acc = Polynomial.zero(components[0].n)
        for lam, p in zip(self.coefficients, components):
            acc = acc + p.scale(lam)
        return acc.is_zero()

    def to_json(self) -> dict:
        return {"coefficients": [str(c) for c in self.coefficients]}

    def __repr__(self):
        return f"DependenceCertificate({[str(c) for c in self.coefficients]})"


class CoefficientSystem:
    """Equations obtained by comparing coefficients of powers of one variable."""

    __slots__ = ("variable", "equations")

    def __init__(self, variable: int, equations: Sequence[Polynomial]):
        for eq in equations:
            if variable in eq.variables_used():
                raise ShapeError(
                    f"equation still involves variable {variable}"
                )
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "equations", tuple(equations))

    def __setattr__(self, *args):
        raise AttributeError("CoefficientSystem instances are immutable")

    def all_zero(self) -> bool:
        return all(eq.is_zero() for eq in self.equations)

    def to_json(self) -> dict:
        from .parsing import format_polynomial

        return {
            "variable": self.variable,
            "equations": [format_polynomial(eq) for eq in self.equations],
        }


def jacobian(H: PolyMap) -> PolyMatrix:
    """The matrix of partial derivatives, entry (i,j) = d H_i / d x_j."""
    n = H.dimension
    return PolyMatrix(
        [[H[i].partial(j) for j in range(1, n + 1)] for i in range(n)]
    )


def nilpotency_equations(H: PolyMap) -> NilpotencyReport:
    """All principal-minor sums sigma_1..sigma_n of J(H)."""
    J = jacobian(H)
    return NilpotencyReport(
        [principal_minor_sum(J, k) for k in range(1, H.dimension + 1)]
    )


def is_nilpotent(H: PolyMap) -> bool:
    """True iff every sigma_k of J(H) vanishes."""
    J = jacobian(H)
    for k in range(1, H.dimension + 1):
        if not principal_minor_sum(J, k).is_zero():
            return False
    return True


def is_nilpotent_bruteforce(H: PolyMap) -> bool:
    """Independent oracle: J(H)^n computed by exact matrix powering."""
    return jacobian(H).power(H.dimension).is_zero()


def conjugate(H: PolyMap, T: LinearMap) -> PolyMap:
    """The conjugated map x -> T^-1 (H(T x)), computed exactly."""
    n = H.dimension
    if T.dimension != n:
        raise DimensionMismatch(
            f"conjugating a {n}-dimensional map by a {T.dimension}x{T.dimension} matrix"
        )
    bindings = {}
    for j in range(1, n + 1):
        row = Polynomial.zero(n)
        for m in range(1, n + 1):
            c = T.matrix[j - 1, m - 1]
            if c:
                row = row + Polynomial.variable(n, m).scale(c)
        bindings[j] = row
    composed = [p.substitute(bindings) for p in H.components]
    out = []
    for i in range(n):
        acc = Polynomial.zero(n)
        for k in range(n):
            c = T.inverse[i, k]
            if c:
                acc = acc + composed[k].scale(c)
        out.append(acc)
    return PolyMap(out)


def linear_dependence(
    components: Sequence[Polynomial],
) -> DependenceCertificate | None:
    """Exact kernel computation over the monomial coefficient vectors.

    Returns a normalized certificate if the components are linearly
    dependent over the rationals, else None.
    """
    components = list(components)
    if not components:
        raise ShapeError("linear_dependence needs at least one polynomial")
    n = components[0].n
    for p in components:
        if p.n != n:
            raise DimensionMismatch("components live in different rings")
    monomials = sorted({e for p in components for e in p.terms})
    if not monomials:
        # All components are zero; any unit vector certifies dependence.
        return DependenceCertificate(
            [Fraction(1)] + [Fraction(0)] * (len(components) - 1)
        )
    matrix = RationalMatrix(
        [[p.coefficient(e) for p in components] for e in monomials]
    )
    basis = kernel(matrix)
    if not basis:
        return None
    return DependenceCertificate(basis[0])


def coefficient_system(
    source: Sequence[Polynomial], i: int
) -> CoefficientSystem:
    """Expand each source identity into coefficients of powers of x_i."""
    equations: list[Polynomial] = []
    for p in source:
        equations.extend(p.coefficients_in(i))
    return CoefficientSystem(i, equations)


def check_divergence_coefficients(
    u: Polynomial, v: Polynomial, zvar: int = 3
) -> bool:
    """Coefficient consequences of u_x + v_y = 0 with deg_z v <= deg_z u.

    Writing u = sum u_j z^j (degree d) and v = sum v_j z^j (degree l), the
    divergence identity forces u_{jx} = 0 for l < j <= d and
    u_{ix} + v_{iy} = 0 for 0 <= i <= l.  Those consequences are provable,
    so a False return signals a bug rather than bad input; precondition
    failures raise instead.
    """
    if u.n != v.n:
        raise DimensionMismatch("u and v live in different rings")
    if not (u.partial(1) + v.partial(2)).is_zero():
        raise PreconditionError("u_x + v_y must vanish identically")
    if not v.degree_in(zvar) <= u.degree_in(zvar):
        raise PreconditionError("deg_z v must not exceed deg_z u")
    ucoeffs = u.coefficients_in(zvar)
    vcoeffs = v.coefficients_in(zvar)
    d = len(ucoeffs) - 1
    l = len(vcoeffs) - 1
    for j in range(l + 1, d + 1):
        if not ucoeffs[j].partial(1).is_zero():
            return False
    for i in range(l + 1):
        if not (ucoeffs[i].partial(1) + vcoeffs[i].partial(2)).is_zero():
            return False
    return True

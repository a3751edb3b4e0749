"""Keller checks, formal inversion, and tame factorization.

A map F = x + H whose variable-dependency digraph (edge i -> j when H_i
involves x_j, self-loops included) is acyclic factors into one elementary
map per nonzero component, applied in topological order.  When the digraph
has cycles, a linear conjugation found by `classify_and_decompose` may
break them: it repeatedly zeroes linearly dependent components and, when
the first two components share a constant gradient direction, mixes them
so their contribution collapses.
"""

from __future__ import annotations

import graphlib
from fractions import Fraction
from typing import Sequence, Union

from .analysis import conjugate, jacobian
from .errors import (
    ConstructionMismatch,
    DimensionMismatch,
    NotTriangularizable,
    ShapeError,
)
from .linalg import LinearMap, RationalMatrix, kernel, poly_det
from .poly import Polynomial, PolyMap

Factor = Union["ElementaryMap", LinearMap]


class ElementaryMap:
    """The map adding Q (free of x_i) to the i-th coordinate."""

    __slots__ = ("dimension", "index", "shift")

    def __init__(self, dimension: int, index: int, shift: Polynomial):
        if shift.n != dimension:
            raise DimensionMismatch("shift polynomial has the wrong arity")
        if not 1 <= index <= dimension:
            raise ShapeError(f"index {index} out of range 1..{dimension}")
        if index in shift.variables_used():
            raise ShapeError("the shift must not involve the shifted variable")
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "shift", shift)

    def __setattr__(self, *args):
        raise AttributeError("ElementaryMap instances are immutable")

    def realize(self) -> PolyMap:
        comps = [
            Polynomial.variable(self.dimension, i)
            for i in range(1, self.dimension + 1)
        ]
        comps[self.index - 1] = comps[self.index - 1] + self.shift
        return PolyMap(comps)

    def inverted(self) -> "ElementaryMap":
        return ElementaryMap(self.dimension, self.index, -self.shift)

    def __eq__(self, other):
        if not isinstance(other, ElementaryMap):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.index == other.index
            and self.shift == other.shift
        )

    def to_json(self) -> dict:
        from .parsing import format_polynomial

        return {
            "kind": "elementary",
            "i": self.index,
            "Q": format_polynomial(self.shift),
        }

    def __repr__(self):
        from .parsing import format_polynomial

        return (
            f"ElementaryMap({self.dimension}, {self.index}, "
            f"{format_polynomial(self.shift)!r})"
        )


class TameFactorization:
    """Ordered factors whose composition (first factor outermost) is the map."""

    __slots__ = ("dimension", "factors")

    def __init__(self, factors: Sequence[Factor], dimension: int | None = None):
        factors = tuple(factors)
        if dimension is None:
            if not factors:
                raise ShapeError(
                    "an empty factorization needs an explicit dimension"
                )
            dimension = factors[0].dimension
        for f in factors:
            if f.dimension != dimension:
                raise DimensionMismatch("factor dimensions disagree")
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "factors", factors)

    def __setattr__(self, *args):
        raise AttributeError("TameFactorization instances are immutable")

    def to_json(self) -> dict:
        out = []
        for f in self.factors:
            if isinstance(f, ElementaryMap):
                out.append(f.to_json())
            else:
                out.append({"kind": "linear", "matrix": f.matrix.to_json()})
        return {"dimension": self.dimension, "factors": out}


def _realize(factor: Factor) -> PolyMap:
    if isinstance(factor, ElementaryMap):
        return factor.realize()
    n = factor.dimension
    comps = []
    for i in range(n):
        p = Polynomial.zero(n)
        for j in range(n):
            c = factor.matrix[i, j]
            if c:
                p = p + Polynomial.variable(n, j + 1).scale(c)
        comps.append(p)
    return PolyMap(comps)


def compose_factorization(f: TameFactorization) -> PolyMap:
    """Exact composition of the factors, first factor outermost."""
    result = PolyMap.identity(f.dimension)
    for factor in f.factors:
        result = result.compose(_realize(factor))
    return result


def keller_check(F: PolyMap) -> bool:
    """True iff the Jacobian determinant is a nonzero constant."""
    det = poly_det(jacobian(F))
    return det.is_constant() and not det.is_zero()


def _shift_part(F: PolyMap) -> PolyMap:
    """H with F = x + H and H(0) = 0; raises on any other shape."""
    H = F - PolyMap.identity(F.dimension)
    if any(c != 0 for c in H.value_at_zero()):
        raise ShapeError("the shift part must vanish at the origin")
    return H


def formal_inverse(
    F: PolyMap, degree_bound: int | None = None
) -> PolyMap | None:
    """Polynomial inverse of F = x + H by truncated fixpoint iteration.

    Iterates G <- x - H(G) with truncation at the degree bound (default
    (deg F)^(n-1), the classical automorphism-inverse bound).  An exact
    fixpoint is verified by composing both ways; None means no polynomial
    inverse was found within the bound.
    """
    n = F.dimension
    H = _shift_part(F)
    if H.is_zero():
        return PolyMap.identity(n)
    if degree_bound is None:
        degree_bound = max(F.max_total_degree(), 1) ** max(n - 1, 1)
    identity = PolyMap.identity(n)
    G = identity
    max_rounds = (degree_bound + 2) * n
    for _ in range(max_rounds):
        R = identity - H.compose(G)
        if R == G:
            break
        G_next = R.truncate(degree_bound)
        if G_next == G:
            return None
        G = G_next
    else:
        return None
    if F.compose(G) == identity and G.compose(F) == identity:
        return G
    return None


def _dependency_order(H: PolyMap) -> list[int] | None:
    """Topological order of components: i precedes j when H_i uses x_j."""
    sorter = graphlib.TopologicalSorter()
    for i in range(1, H.dimension + 1):
        sorter.add(i)
        for j in H.components[i - 1].variables_used():
            sorter.add(j, i)
    try:
        return list(sorter.static_order())
    except graphlib.CycleError:
        return None


def tame_decompose(
    F: PolyMap, conjugation: LinearMap | None = None
) -> TameFactorization:
    """Factor F = x + H into elementary maps, optionally in conjugated
    coordinates.

    The conjugation (from the classification pipeline) brackets the
    elementary chain: F = T o (elementary chain) o T^{-1}.  The chain
    requires the dependency digraph of the conjugated shift to be acyclic;
    otherwise NotTriangularizable is raised.  The recomposition identity
    is checked before returning.
    """
    H = _shift_part(F)
    if conjugation is not None:
        H = conjugate(H, conjugation)
    order = _dependency_order(H)
    if order is None:
        raise NotTriangularizable(
            "the dependency digraph of the shift part has a cycle"
        )
    chain: list[Factor] = []
    for i in reversed(order):
        Q = H.components[i - 1]
        if not Q.is_zero():
            chain.append(ElementaryMap(H.dimension, i, Q))
    factors: list[Factor] = []
    if conjugation is not None and not conjugation.is_identity():
        factors.append(conjugation)
        factors.extend(chain)
        factors.append(conjugation.inverted())
    else:
        factors.extend(chain)
    result = TameFactorization(factors, F.dimension)
    if compose_factorization(result) != F:
        raise ConstructionMismatch("factorization does not recompose to F")
    return result


def _component_mixing_kernel(H: PolyMap) -> list[Fraction] | None:
    """(s1, s2) != 0 making s1*H_1 + s2*H_2 free of x1 and x2, if any."""
    equations = [
        (H.components[0].partial(k), H.components[1].partial(k))
        for k in (1, 2)
    ]
    monomials = sorted(
        {e for pair in equations for p in pair for e in p.terms}
    )
    if not monomials:
        return [Fraction(1), Fraction(0)]
    rows = []
    for e in monomials:
        for p1, p2 in equations:
            rows.append([p1.coefficient(e), p2.coefficient(e)])
    basis = kernel(RationalMatrix(rows))
    return basis[0] if basis else None


def _zeroing_conjugation(H: PolyMap) -> LinearMap | None:
    """Conjugation replacing one nonzero dependent component by zero."""
    n = H.dimension
    nonzero = [i for i in range(1, n + 1) if not H.components[i - 1].is_zero()]
    if not nonzero:
        return None
    from .analysis import linear_dependence

    cert = linear_dependence([H.components[i - 1] for i in nonzero])
    if cert is None:
        return None
    lam = [Fraction(0)] * n
    for idx, c in zip(nonzero, cert.coefficients):
        lam[idx - 1] = c
    target = max(i for i in nonzero if lam[i - 1] != 0)
    rows = [
        [Fraction(int(r == c)) for c in range(n)] for r in range(n)
    ]
    rows[target - 1] = lam
    m = RationalMatrix(rows)
    return LinearMap(m.inverse(), m)


def _block_mixing_conjugation(H: PolyMap) -> LinearMap | None:
    """Conjugation collapsing the (x1, x2)-dependence of the second slot."""
    s = _component_mixing_kernel(H)
    if s is None:
        return None
    n = H.dimension
    rows = [
        [Fraction(int(r == c)) for c in range(n)] for r in range(n)
    ]
    rows[1] = [s[0], s[1]] + [Fraction(0)] * (n - 2)
    if s[1] == 0:
        # (s1, 0) is parallel to the first unit row; pivot on x2 instead.
        rows[0] = [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 2)
    m = RationalMatrix(rows)
    return LinearMap(m.inverse(), m)


def classify_and_decompose(F: PolyMap) -> TameFactorization:
    """Search for a linear conjugation making F = x + H triangularizable.

    Alternates two moves until the dependency digraph is acyclic: zero a
    linearly dependent component, or mix the first two components along a
    shared constant gradient direction.  Raises NotTriangularizable when
    no move applies.
    """
    H = _shift_part(F)
    n = F.dimension
    T = LinearMap.identity(n)
    current = H
    block_used = False
    for _ in range(n + 2):
        if _dependency_order(current) is not None:
            return tame_decompose(F, conjugation=None if T.is_identity() else T)
        step = _zeroing_conjugation(current)
        if step is None and not block_used:
            step = _block_mixing_conjugation(current)
            block_used = True
        if step is None:
            break
        T = T * step
        current = conjugate(H, T)
    raise NotTriangularizable(
        "no linear conjugation found that breaks the dependency cycles"
    )

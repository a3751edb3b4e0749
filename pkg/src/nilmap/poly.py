"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial in n variables is a mapping from exponent tuples (one
non-negative integer per variable) to nonzero Fraction coefficients.  The
empty mapping is the zero polynomial.  All values are immutable after
construction and every operation is a pure function, so polynomials can be
shared freely between threads.

Variable indices in the public API are 1-based (x1..xn), matching the usual
mathematical notation; exponent tuples are indexed from 0 internally.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, NilmapError, ShapeError

Exponent = tuple[int, ...]


def _grlex_key(exps: Exponent):
    # Graded lexicographic: compare total degree first, then the exponent
    # vector itself.  Used for canonical term ordering when printing.
    return (sum(exps), exps)


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, Fraction] | None = None):
        if n < 1:
            raise ShapeError(f"ambient variable count must be >= 1, got {n}")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise DimensionMismatch(
                        f"monomial {exps} has {len(exps)} exponents, expected {n}"
                    )
                if any(e < 0 for e in exps):
                    raise ShapeError(f"negative exponent in monomial {exps}")
                coeff = Fraction(coeff)
                if coeff != 0:
                    clean[exps] = coeff
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("Polynomial instances are immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n)

    @classmethod
    def const(cls, n: int, value) -> "Polynomial":
        return cls(n, {(0,) * n: Fraction(value)})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        """The polynomial x_i (1-based index)."""
        _check_index(n, i)
        exps = [0] * n
        exps[i - 1] = 1
        return cls(n, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, n: int, exps: Sequence[int], coeff=1) -> "Polynomial":
        return cls(n, {tuple(exps): Fraction(coeff)})

    # -- basic queries -----------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self._terms)

    def constant_value(self) -> Fraction:
        """The coefficient of the constant monomial (0 for absent)."""
        return self._terms.get((0,) * self.n, Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def total_degree(self) -> int:
        """Max total degree over terms; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(exps) for exps in self._terms)

    def degree_in(self, i: int) -> int:
        """Max exponent of x_i over terms; -1 for the zero polynomial."""
        _check_index(self.n, i)
        if not self._terms:
            return -1
        return max(exps[i - 1] for exps in self._terms)

    def variables_used(self) -> set[int]:
        """1-based indices of variables that actually occur."""
        used: set[int] = set()
        for exps in self._terms:
            for k, e in enumerate(exps):
                if e:
                    used.add(k + 1)
        return used

    # -- ring operations ---------------------------------------------------

    def _require_same_ring(self, other: "Polynomial"):
        if self.n != other.n:
            raise DimensionMismatch(
                f"polynomials in {self.n} and {other.n} variables"
            )

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        self._require_same_ring(other)
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            new = out.get(exps, Fraction(0)) + coeff
            if new:
                out[exps] = new
            else:
                out.pop(exps, None)
        return Polynomial(self.n, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        self._require_same_ring(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                new = out.get(exps, Fraction(0)) + ca * cb
                if new:
                    out[exps] = new
                else:
                    out.pop(exps, None)
        return Polynomial(self.n, out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise NilmapError("negative polynomial powers are not defined")
        result = Polynomial.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.n)
        return Polynomial(self.n, {e: c * v for e, v in self._terms.items()})

    def _coerce(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, (int, Fraction)):
            return Polynomial.const(self.n, value)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, tuple(sorted(self._terms.items()))))
            object.__setattr__(self, "_hash", h)
        return h

    # -- calculus and structural operations --------------------------------

    def partial(self, i: int) -> "Polynomial":
        """Formal partial derivative with respect to x_i."""
        _check_index(self.n, i)
        k = i - 1
        out: dict[Exponent, Fraction] = {}
        for exps, coeff in self._terms.items():
            e = exps[k]
            if e == 0:
                continue
            new = list(exps)
            new[k] = e - 1
            out[tuple(new)] = coeff * e
        return Polynomial(self.n, out)

    def integrate(self, i: int) -> "Polynomial":
        """Antiderivative with respect to x_i, constant of integration 0."""
        _check_index(self.n, i)
        k = i - 1
        out: dict[Exponent, Fraction] = {}
        for exps, coeff in self._terms.items():
            new = list(exps)
            new[k] += 1
            out[tuple(new)] = coeff / new[k]
        return Polynomial(self.n, out)

    def substitute(self, bindings: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Simultaneous substitution x_i -> bindings[i].

        All bound polynomials must share one ambient dimension m, which
        becomes the dimension of the result.  Variables without a binding are
        carried over unchanged, which requires m to equal this polynomial's
        dimension.
        """
        if not bindings:
            return self
        dims = {p.n for p in bindings.values()}
        if len(dims) > 1:
            raise DimensionMismatch(
                f"bound polynomials live in different rings: {sorted(dims)}"
            )
        m = dims.pop()
        for i in bindings:
            _check_index(self.n, i)
        unbound = [i for i in range(1, self.n + 1) if i not in bindings]
        if unbound and m != self.n:
            raise DimensionMismatch(
                f"variables {unbound} are unbound but the target ring has "
                f"{m} != {self.n} variables"
            )
        images: dict[int, Polynomial] = dict(bindings)
        for i in unbound:
            images[i] = Polynomial.variable(m, i)
        # Cache powers of each image to avoid recomputing them per term.
        powers: dict[int, list[Polynomial]] = {
            i: [Polynomial.const(m, 1)] for i in images
        }

        def image_power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            while len(cache) <= e:
                cache.append(cache[-1] * images[i])
            return cache[e]

        result = Polynomial.zero(m)
        for exps, coeff in self._terms.items():
            term = Polynomial.const(m, coeff)
            for k, e in enumerate(exps):
                if e:
                    term = term * image_power(k + 1, e)
            result = result + term
        return result

    def coefficients_in(self, i: int) -> list["Polynomial"]:
        """Ascending coefficient list [p_0, ..., p_d] with p = sum p_j x_i^j.

        Each p_j lives in the full ambient ring with exponent 0 in x_i, so
        the reconstruction identity holds exactly.  The zero polynomial
        yields the empty list.
        """
        _check_index(self.n, i)
        if not self._terms:
            return []
        k = i - 1
        d = self.degree_in(i)
        buckets: list[dict[Exponent, Fraction]] = [{} for _ in range(d + 1)]
        for exps, coeff in self._terms.items():
            e = exps[k]
            flat = list(exps)
            flat[k] = 0
            buckets[e][tuple(flat)] = coeff
        return [Polynomial(self.n, b) for b in buckets]

    def homogeneous_parts(self, subset: Iterable[int]) -> list["Polynomial"]:
        """Split by total degree in the given variables.

        Returns [p^(0), ..., p^(d)] where p^(i) collects the terms of total
        degree i in the subset variables; the parts sum back to p.
        """
        indices = sorted(set(subset))
        if not indices:
            raise ShapeError("homogeneous_parts requires a non-empty subset")
        for i in indices:
            _check_index(self.n, i)
        if not self._terms:
            return [Polynomial.zero(self.n)]
        graded: dict[int, dict[Exponent, Fraction]] = {}
        for exps, coeff in self._terms.items():
            deg = sum(exps[i - 1] for i in indices)
            graded.setdefault(deg, {})[exps] = coeff
        top = max(graded)
        return [
            Polynomial(self.n, graded.get(d, {})) for d in range(top + 1)
        ]

    def truncate(self, max_total_degree: int) -> "Polynomial":
        """Drop all terms of total degree above the bound."""
        return Polynomial(
            self.n,
            {e: c for e, c in self._terms.items() if sum(e) <= max_total_degree},
        )

    def restrict(self, variables: Sequence[int]) -> "Polynomial":
        """Re-express in the smaller ring spanned by the given variables.

        Raises if the polynomial involves any other variable.
        """
        variables = list(variables)
        allowed = set(variables)
        extra = self.variables_used() - allowed
        if extra:
            raise ShapeError(
                f"polynomial involves variables {sorted(extra)} outside {variables}"
            )
        m = len(variables)
        out: dict[Exponent, Fraction] = {}
        for exps, coeff in self._terms.items():
            out[tuple(exps[i - 1] for i in variables)] = coeff
        return Polynomial(m, out)

    def lift(self, n: int, positions: Sequence[int]) -> "Polynomial":
        """Embed into an n-variable ring, sending variable k to positions[k-1]."""
        positions = list(positions)
        if len(positions) != self.n:
            raise DimensionMismatch("need one target position per variable")
        out: dict[Exponent, Fraction] = {}
        for exps, coeff in self._terms.items():
            new = [0] * n
            for k, e in enumerate(exps):
                new[positions[k] - 1] = e
            out[tuple(new)] = coeff
        return Polynomial(n, out)

    # -- leading terms and exact division ----------------------------------

    def leading_term(self) -> tuple[Exponent, Fraction]:
        """Graded-lex maximal term; error on the zero polynomial."""
        if not self._terms:
            raise NilmapError("the zero polynomial has no leading term")
        exps = max(self._terms, key=_grlex_key)
        return exps, self._terms[exps]

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        """Exact quotient self / divisor; raises if the division has a remainder."""
        self._require_same_ring(divisor)
        if divisor.is_zero():
            raise NilmapError("division by the zero polynomial")
        quotient = Polynomial.zero(self.n)
        rem = self
        de, dc = divisor.leading_term()
        while not rem.is_zero():
            re, rc = rem.leading_term()
            qe = tuple(a - b for a, b in zip(re, de))
            if any(e < 0 for e in qe):
                raise NilmapError("polynomial division is not exact")
            t = Polynomial.monomial(self.n, qe, rc / dc)
            quotient = quotient + t
            rem = rem - t * divisor
        return quotient

    def __repr__(self):
        from .parsing import format_polynomial

        return f"Polynomial({self.n}, {format_polynomial(self)!r})"


def _check_index(n: int, i: int):
    if not 1 <= i <= n:
        raise ShapeError(f"variable index {i} out of range 1..{n}")


# -- module-level operation aliases ----------------------------------------

def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    return p.partial(i)


def substitute(p: Polynomial, bindings: Mapping[int, Polynomial]) -> Polynomial:
    return p.substitute(bindings)


def degree_in(p: Polynomial, i: int) -> int:
    return p.degree_in(i)


def coefficients_in(p: Polynomial, i: int) -> list[Polynomial]:
    return p.coefficients_in(i)


def homogeneous_parts(p: Polynomial, subset: Iterable[int]) -> list[Polynomial]:
    return p.homogeneous_parts(subset)


# -- univariate helpers -----------------------------------------------------

def univariate_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd of two univariate polynomials (Euclid over the rationals)."""
    if p.n != 1 or q.n != 1:
        raise ShapeError("univariate_gcd needs polynomials in one variable")
    a, b = p, q
    while not b.is_zero():
        a, b = b, _univariate_rem(a, b)
    if a.is_zero():
        return a
    _, lead = a.leading_term()
    return a.scale(Fraction(1) / lead)


def _univariate_rem(a: Polynomial, b: Polynomial) -> Polynomial:
    (de,), dc = b.leading_term()
    rem = a
    while not rem.is_zero():
        (re,), rc = rem.leading_term()
        if re < de:
            break
        rem = rem - Polynomial.monomial(1, (re - de,), rc / dc) * b
    return rem


class PolyMap:
    """An ordered tuple of n polynomials in n variables."""

    __slots__ = ("dimension", "components")

    def __init__(self, components: Sequence[Polynomial]):
        components = tuple(components)
        if not components:
            raise ShapeError("a polynomial map needs at least one component")
        n = len(components)
        for p in components:
            if p.n != n:
                raise DimensionMismatch(
                    f"component in {p.n} variables inside a {n}-dimensional map"
                )
        object.__setattr__(self, "dimension", n)
        object.__setattr__(self, "components", components)

    def __setattr__(self, *args):
        raise AttributeError("PolyMap instances are immutable")

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        return cls([Polynomial.variable(n, i) for i in range(1, n + 1)])

    @classmethod
    def zero(cls, n: int) -> "PolyMap":
        return cls([Polynomial.zero(n)] * n)

    def __getitem__(self, i: int) -> Polynomial:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return self.dimension

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def compose(self, other: "PolyMap") -> "PolyMap":
        """(self o other)_i = self_i(other_1, ..., other_n)."""
        if self.dimension != other.dimension:
            raise DimensionMismatch(
                f"composing maps of dimension {self.dimension} and {other.dimension}"
            )
        bindings = {i + 1: p for i, p in enumerate(other.components)}
        return PolyMap([p.substitute(bindings) for p in self.components])

    def __add__(self, other: "PolyMap") -> "PolyMap":
        if self.dimension != other.dimension:
            raise DimensionMismatch("adding maps of different dimensions")
        return PolyMap([p + q for p, q in zip(self, other)])

    def __sub__(self, other: "PolyMap") -> "PolyMap":
        if self.dimension != other.dimension:
            raise DimensionMismatch("subtracting maps of different dimensions")
        return PolyMap([p - q for p, q in zip(self, other)])

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components)

    def is_identity(self) -> bool:
        return self == PolyMap.identity(self.dimension)

    def value_at_zero(self) -> list[Fraction]:
        return [p.constant_value() for p in self.components]

    def max_total_degree(self) -> int:
        return max(p.total_degree() for p in self.components)

    def truncate(self, max_total_degree: int) -> "PolyMap":
        return PolyMap([p.truncate(max_total_degree) for p in self.components])

    def __repr__(self):
        from .parsing import format_map

        return f"PolyMap({format_map(self)!r})"


def compose_map(f: PolyMap, g: PolyMap) -> PolyMap:
    return f.compose(g)

"""Top-level acceptance suite.

Each test exercises one headline guarantee at full scale on seeded random
instances and prints a single pass/fail line.  Frozen expected values were
computed independently before being recorded here.
"""

import random
import time
from fractions import Fraction

from nilmap import (
    FormAInstance,
    PolyMap,
    TheoremViolation,
    build_canonical_pair,
    certify_dependence,
    check_divergence_coefficients,
    classify_and_decompose,
    compose_factorization,
    conjugate,
    formal_inverse,
    is_nilpotent,
    is_nilpotent_bruteforce,
    keller_parameterized_check,
    linear_dependence,
    nilpotency_equations,
    nilpotency_system,
    recognize_canonical_pair,
    split_dependent_4d,
)
from nilmap import generators

SEED = 20240824


def report(name):
    def wrap(fn):
        def inner():
            try:
                fn()
            except BaseException:
                print(f"[FAIL] {name}")
                raise
            print(f"[PASS] {name}")

        inner.__name__ = fn.__name__
        return inner

    return wrap


@report("nilpotency oracle agreement (700 maps, < 60 s)")
def test_01_nilpotency_oracle_agreement():
    rng = random.Random(SEED)
    start = time.monotonic()
    for _ in range(500):
        n = rng.choice([2, 3, 4])
        H = generators.random_map(rng, n, 3, terms=4)
        assert is_nilpotent(H) == is_nilpotent_bruteforce(H)
    for _ in range(200):
        n = rng.choice([2, 3, 4])
        H = generators.random_nilpotent_map(rng, n)
        assert is_nilpotent(H)
        assert is_nilpotent_bruteforce(H)
    assert time.monotonic() - start < 60


@report("three-variable minor equations match hand-coded forms (100 maps)")
def test_02_three_variable_equations():
    rng = random.Random(SEED + 1)
    zero3 = None
    for _ in range(100):
        u = generators.random_polynomial(rng, 3, 3, terms=4)
        v = generators.random_polynomial(rng, 3, 3, terms=4)
        h = generators.random_polynomial(rng, 3, 3, terms=4)
        if zero3 is None:
            from nilmap import Polynomial

            zero3 = Polynomial.zero(3)
        h = h.substitute({3: zero3})  # third component free of z
        H = PolyMap([u, v, h])
        sigma = nilpotency_equations(H).sigma
        ux, uy, uz = (u.partial(i) for i in (1, 2, 3))
        vx, vy, vz = (v.partial(i) for i in (1, 2, 3))
        hx, hy = h.partial(1), h.partial(2)
        assert sigma[0] == ux + vy
        assert sigma[1] == ux * vy - vx * uy - hx * uz - hy * vz
        assert sigma[2] == vx * hy * uz - hx * vy * uz + hx * uy * vz - ux * hy * vz


@report("divergence-free coefficient identities (100 pairs)")
def test_03_divergence_coefficients():
    rng = random.Random(SEED + 2)
    for _ in range(100):
        u, v = generators.divergence_pair(rng, max_z_degree=4)
        assert check_divergence_coefficients(u, v), (u, v)


@report("guaranteed dependence certificates (100 conjugated instances)")
def test_04_dependence_certificates():
    rng = random.Random(SEED + 3)
    violations = 0
    for _ in range(100):
        H = build_canonical_pair(generators.random_canonical_params(rng))
        T0 = generators.random_form_a_conjugator(rng)
        Hc = conjugate(H, T0)
        assert Hc.components[0].degree_in(3) >= 2
        assert Hc.components[1].degree_in(3) == 1
        try:
            cert = certify_dependence(FormAInstance(Hc))
        except TheoremViolation:
            violations += 1
            continue
        assert cert.verify(Hc.components)
    assert violations == 0


@report("canonical pair recognition round trip (100 draws)")
def test_05_canonical_round_trip():
    rng = random.Random(SEED + 4)
    for _ in range(100):
        params = generators.random_canonical_params(rng)
        H = build_canonical_pair(params)
        T0 = generators.random_form_a_conjugator(rng)
        Hc = conjugate(H, T0)
        result = recognize_canonical_pair(Hc)
        assert result is not None
        T, found = result
        assert conjugate(Hc, T) == build_canonical_pair(found)


@report("generalized four-equation system equals nilpotency (200 instances)")
def test_06_generalized_equivalence():
    rng = random.Random(SEED + 5)
    seen = {True: 0, False: 0}
    for _ in range(200):
        n = rng.choice([4, 5])
        draw = rng.random()
        if draw < 0.35:
            inst = generators.nilpotent_generalized(rng, n)
        elif draw < 0.55:
            inst = generators.nilpotent_generalized_coupled(rng, n)
        else:
            inst = generators.random_generalized(rng, n)
        system = nilpotency_system(inst)
        verdict = all(e.is_zero() for e in system)
        assert verdict == is_nilpotent(inst.map)
        seen[verdict] += 1
    assert seen[True] >= 40 and seen[False] >= 40


@report("parameterized unit-Jacobian test equals nilpotency (200 cores)")
def test_07_keller_equivalence():
    rng = random.Random(SEED + 6)
    seen = {True: 0, False: 0}
    for _ in range(200):
        core = (
            generators.nilpotent_reduced4d(rng)[0]
            if rng.random() < 0.4
            else generators.random_reduced4d(rng)
        )
        verdict = keller_parameterized_check(core)
        assert verdict == is_nilpotent(core.realize())
        seen[verdict] += 1
    assert seen[True] >= 40 and seen[False] >= 40


@report("dependent fourth component splits away (100 draws)")
def test_08_split_dependent_core():
    rng = random.Random(SEED + 7)
    nilpotent_seen = 0
    for _ in range(100):
        core, lam = generators.dependent_reduced4d(rng)
        T, result = split_dependent_4d(core, lam)
        assert result.components[3].is_zero()
        if is_nilpotent(core.realize()):
            nilpotent_seen += 1
            assert is_nilpotent(result)
    assert nilpotent_seen >= 20


@report("tame factorization and exact inversion (50 maps, < 120 s)")
def test_09_tame_and_inverse():
    rng = random.Random(SEED + 8)
    start = time.monotonic()
    identity_cache = {}
    for _ in range(50):
        n = rng.choice([3, 4, 5])
        H = generators.decomposable_shift(rng, n)
        if n not in identity_cache:
            identity_cache[n] = PolyMap.identity(n)
        F = identity_cache[n] + H
        factorization = classify_and_decompose(F)
        assert compose_factorization(factorization) == F
        G = formal_inverse(F)
        assert G is not None
        assert F.compose(G) == identity_cache[n]
        assert G.compose(F) == identity_cache[n]
    assert time.monotonic() - start < 120


@report("conjugation invariance of nilpotency and dependence (100 draws)")
def test_10_conjugation_invariance():
    rng = random.Random(SEED + 9)
    for _ in range(100):
        n = rng.choice([2, 3, 4])
        if rng.random() < 0.5:
            H = generators.random_nilpotent_map(rng, n)
        else:
            H = generators.random_map(rng, n, 2, terms=3)
        T = generators.random_invertible(rng, n)
        Hc = conjugate(H, T)
        assert is_nilpotent(H) == is_nilpotent(Hc)
        before = linear_dependence(H.components) is not None
        after = linear_dependence(Hc.components) is not None
        assert before == after

"""Command-line interface.

One verb per library capability.  Exit codes: 0 success (or checked
property true), 1 checked property false, 2 parse/validation error,
3 violated structural guarantee.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import analysis, classify, generators, tame
from .errors import (
    NilmapError,
    NotTriangularizable,
    ParseError,
    TheoremViolation,
)
from .linalg import LinearMap, RationalMatrix, poly_matrix_rank
from .parsing import (
    format_map,
    format_polynomial,
    load_map_text,
    map_to_document,
    parse_polynomial,
)
from .poly import PolyMap

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INVALID = 2
EXIT_VIOLATION = 3

DEFAULT_SEED = 20240824


def _read_map(args) -> PolyMap:
    with open(args.file, "r", encoding="utf-8") as fh:
        return load_map_text(fh.read(), aliases=args.var_alias)


def _emit(args, doc: dict, plain: str | None = None):
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(plain if plain is not None else json.dumps(doc, sort_keys=True))


def _cmd_jacobian(args) -> int:
    H = _read_map(args)
    J = analysis.jacobian(H)
    rows = J.to_json()
    _emit(args, {"jacobian": rows}, "\n".join("  ".join(r) for r in rows))
    return EXIT_OK


def _cmd_nilpotent(args) -> int:
    H = _read_map(args)
    report = analysis.nilpotency_equations(H)
    doc = report.to_json()
    _emit(
        args,
        doc,
        "nilpotent" if report.nilpotent else
        f"not nilpotent: sigma_{report.witness[0]} = "
        f"{format_polynomial(report.witness[1])}",
    )
    return EXIT_OK if report.nilpotent else EXIT_FALSE


def _cmd_rank(args) -> int:
    H = _read_map(args)
    r = poly_matrix_rank(analysis.jacobian(H))
    _emit(args, {"rank": r}, f"rank {r}")
    return EXIT_OK


def _cmd_depend(args) -> int:
    H = _read_map(args)
    cert = analysis.linear_dependence(H.components)
    if cert is None:
        _emit(args, {"dependent": False}, "independent")
        return EXIT_FALSE
    doc = {"dependent": True, **cert.to_json()}
    _emit(
        args,
        doc,
        "dependent: " + ", ".join(str(c) for c in cert.coefficients),
    )
    return EXIT_OK


def _parse_matrix(text: str) -> LinearMap:
    data = json.loads(text)
    return LinearMap(RationalMatrix.from_json(data))


def _cmd_conjugate(args) -> int:
    H = _read_map(args)
    T = _parse_matrix(args.matrix)
    result = analysis.conjugate(H, T)
    _emit(args, map_to_document(result), format_map(result))
    return EXIT_OK


def _cmd_classify(args) -> int:
    H = _read_map(args)
    report = analysis.nilpotency_equations(H)
    if not report.nilpotent:
        k, s = report.witness
        _emit(
            args,
            {"nilpotent": False, "witness": {"k": k, "sigma_k": format_polynomial(s)}},
            f"not nilpotent: sigma_{k} = {format_polynomial(s)}",
        )
        return EXIT_FALSE
    doc: dict = {"nilpotent": True}
    if H.dimension == 3:
        recognized = classify.recognize_canonical_pair(H)
        if recognized is not None:
            T, params = recognized
            doc.update(
                {
                    "route": "canonical-pair",
                    "T": T.matrix.to_json(),
                    "params": params.to_json(),
                }
            )
            _emit(args, doc, "canonical pair form recognized")
            return EXIT_OK
        try:
            instance = classify.FormAInstance(H)
        except NilmapError:
            instance = None
        if instance is not None and analysis.linear_dependence(H.components) is None:
            T, reduced, status = classify.normalize_low_z_degree(instance)
            doc.update(
                {
                    "route": "low-z-normalization",
                    "T": T.matrix.to_json(),
                    "status": status.value,
                    "map": map_to_document(reduced),
                }
            )
            _emit(args, doc, f"normalized: {status.value}")
            return EXIT_OK
    try:
        instance_b = classify.GeneralizedFormB(H)
    except NilmapError:
        instance_b = None
    if instance_b is not None and analysis.linear_dependence(H.components) is None:
        T, reduced, status = classify.reduce_generalized(instance_b)
        doc.update(
            {
                "route": "generalized-reduction",
                "T": T.matrix.to_json(),
                "status": status.value,
                "map": map_to_document(reduced),
            }
        )
        _emit(args, doc, f"reduced: {status.value}")
        return EXIT_OK
    doc["route"] = "unclassified"
    _emit(args, doc, "nilpotent, but no classification route applies")
    return EXIT_OK


def _cmd_build_canonical(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    params = classify.CanonicalFormA(
        parse_polynomial(doc["a1"], 1, aliases="z"),
        parse_polynomial(doc["a2"], 1, aliases="z"),
        parse_polynomial(doc["c1"], 1, aliases="z"),
        parse_polynomial(doc["c2"], 1, aliases="z"),
        parse_polynomial(doc["h"], 2, aliases="tz"),
    )
    H = classify.build_canonical_pair(params)
    _emit(args, map_to_document(H), format_map(H))
    return EXIT_OK


def _cmd_invert(args) -> int:
    F = _read_map(args)
    G = tame.formal_inverse(F, args.degree_bound)
    if G is None:
        _emit(args, {"inverse": None}, "no polynomial inverse found")
        return EXIT_FALSE
    _emit(args, {"inverse": map_to_document(G)}, format_map(G))
    return EXIT_OK


def _cmd_decompose(args) -> int:
    F = _read_map(args)
    try:
        factorization = tame.classify_and_decompose(F)
    except NotTriangularizable as exc:
        _emit(args, {"tame": False, "reason": str(exc)}, f"not decomposed: {exc}")
        return EXIT_FALSE
    _emit(
        args,
        factorization.to_json(),
        f"{len(factorization.factors)} factors",
    )
    return EXIT_OK


def _cmd_keller4d(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        parts = [p for p in fh.read().split(";") if p.strip()]
    if len(parts) != 4:
        raise ParseError(f"expected 4 components, found {len(parts)}")
    polys = [parse_polynomial(p, 2, aliases="xy") for p in parts]
    h = classify.ReducedForm4D(*polys)
    keller = classify.keller_parameterized_check(h)
    nilp = analysis.is_nilpotent(h.realize())
    doc = {"keller_parameterized": keller, "realized_nilpotent": nilp}
    _emit(args, doc, f"keller: {keller}, realized nilpotent: {nilp}")
    return EXIT_OK if keller else EXIT_FALSE


def _verify_suites(rng: random.Random) -> list[tuple[str, bool, str]]:
    results = []

    def run(name, fn):
        try:
            fn()
            results.append((name, True, ""))
        except TheoremViolation:
            raise
        except (AssertionError, NilmapError) as exc:
            results.append((name, False, str(exc)))

    def oracle_agreement():
        for _ in range(50):
            n = rng.choice([2, 3, 4])
            H = generators.random_map(rng, n, 3, terms=3)
            assert analysis.is_nilpotent(H) == analysis.is_nilpotent_bruteforce(H)
        for _ in range(20):
            H = generators.random_nilpotent_map(rng, rng.choice([2, 3, 4]))
            assert analysis.is_nilpotent(H) and analysis.is_nilpotent_bruteforce(H)

    def conjugation_invariance():
        for _ in range(20):
            n = rng.choice([2, 3])
            H = (
                generators.random_nilpotent_map(rng, n)
                if rng.random() < 0.5
                else generators.random_map(rng, n, 2, terms=3)
            )
            T = generators.random_invertible(rng, n)
            assert analysis.is_nilpotent(H) == analysis.is_nilpotent(
                analysis.conjugate(H, T)
            )

    def canonical_round_trip():
        for _ in range(10):
            params = generators.random_canonical_params(rng)
            H = classify.build_canonical_pair(params)
            T0 = generators.random_form_a_conjugator(rng)
            Hc = analysis.conjugate(H, T0)
            recognized = classify.recognize_canonical_pair(Hc)
            assert recognized is not None
            T, found = recognized
            assert analysis.conjugate(Hc, T) == classify.build_canonical_pair(found)

    def generalized_equivalence():
        for _ in range(20):
            n = rng.choice([4, 5])
            draw = rng.random()
            if draw < 0.4:
                inst = generators.nilpotent_generalized(rng, n)
            elif draw < 0.6:
                inst = generators.nilpotent_generalized_coupled(rng, n)
            else:
                inst = generators.random_generalized(rng, n)
            system = classify.nilpotency_system(inst)
            assert all(e.is_zero() for e in system) == analysis.is_nilpotent(
                inst.map
            )

    def keller_equivalence():
        for _ in range(20):
            h = (
                generators.nilpotent_reduced4d(rng)[0]
                if rng.random() < 0.4
                else generators.random_reduced4d(rng)
            )
            assert classify.keller_parameterized_check(h) == analysis.is_nilpotent(
                h.realize()
            )

    def divergence_coefficients():
        for _ in range(20):
            u, v = generators.divergence_pair(rng)
            assert analysis.check_divergence_coefficients(u, v)

    def tame_round_trip():
        for _ in range(6):
            n = rng.choice([3, 4, 5])
            H = generators.decomposable_shift(rng, n)
            F = PolyMap.identity(n) + H
            factorization = tame.classify_and_decompose(F)
            assert tame.compose_factorization(factorization) == F
            G = tame.formal_inverse(F)
            assert G is not None

    run("oracle agreement", oracle_agreement)
    run("conjugation invariance", conjugation_invariance)
    run("canonical round trip", canonical_round_trip)
    run("generalized equivalence", generalized_equivalence)
    run("parameterized Keller equivalence", keller_equivalence)
    run("divergence coefficients", divergence_coefficients)
    run("tame round trip", tame_round_trip)
    return results


def _cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    results = _verify_suites(rng)
    doc = {
        "seed": args.seed,
        "suites": [
            {"name": name, "passed": ok, "detail": detail}
            for name, ok, detail in results
        ],
    }
    lines = [
        f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else "")
        for name, ok, detail in results
    ]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilmap",
        description="Exact toolkit for polynomial maps with nilpotent Jacobians",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, needs_file=True, **kwargs):
        p = sub.add_parser(name, **kwargs)
        if needs_file:
            p.add_argument("-f", "--file", required=True, help="input file")
        p.add_argument("--json", action="store_true", help="JSON output")
        p.add_argument(
            "--var-alias",
            default="xyzw",
            help="single-letter variable aliases (default xyzw)",
        )
        p.set_defaults(handler=fn)
        return p

    add("jacobian", _cmd_jacobian, help="print the Jacobian matrix")
    add("nilpotent", _cmd_nilpotent, help="nilpotency certificate")
    add("rank", _cmd_rank, help="symbolic rank of the Jacobian")
    add("depend", _cmd_depend, help="linear dependence certificate")
    p = add("conjugate", _cmd_conjugate, help="conjugate by a linear map")
    p.add_argument(
        "-m",
        "--matrix",
        required=True,
        help='matrix as JSON rows of rational strings, e.g. [["1","0"],["0","1"]]',
    )
    add("classify", _cmd_classify, help="run the classification pipeline")
    add(
        "build-canonical",
        _cmd_build_canonical,
        help="build the canonical pair form from a JSON parameter file",
    )
    p = add("invert", _cmd_invert, help="formal polynomial inverse")
    p.add_argument("--degree-bound", type=int, default=None)
    add("decompose", _cmd_decompose, help="tame factorization")
    add("keller4d", _cmd_keller4d, help="parameterized Keller check")
    p = add("verify", _cmd_verify, needs_file=False, help="randomized suites")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except TheoremViolation as exc:
        print(f"guarantee violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (NilmapError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()

"""The acceptance matrix: every exit criterion of the library as a runnable
check.  `run_all` powers both the CLI selftest and tests/test_acceptance.py.

Each criterion returns a CriterionResult; ok=False anywhere means the build
fails, and the detail string carries the replay seed of the first failure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import chow, covering, harness
from .chow import Divisor, IntersectionQuery
from .covering import LatticeModel
from .polytope import construct_standard, cube_facet_id, generic_normals_check, perturb


@dataclass(frozen=True)
class CriterionResult:
    name: str
    ok: bool
    detail: str


def _cube_axis_class(p, axis):
    """The divisor of the lower facet of an axis: the axis class c_{axis}."""
    return Divisor.on_facet(p, cube_facet_id(axis, "-"))


def ring_golden() -> CriterionResult:
    """presentation(Q^n) carries the relations of Z[c_1..c_n]/(c_i^2 = 0):
    antiparallel pairs are identified by principal divisors and are exactly
    the minimal non-faces; the squarefree top product is 1 and any product
    with a repeated axis is 0.  Exact, n = 1..4."""
    for n in range(1, 5):
        q = construct_standard("cube", n)
        pres = chow.presentation(q)
        expected_nonfaces = {
            frozenset({cube_facet_id(j, "-"), cube_facet_id(j, "+")})
            for j in range(n)
        }
        if set(pres.minimal_nonfaces) != expected_nonfaces:
            return CriterionResult("ring_golden", False, f"nonfaces wrong at n={n}")
        for j in range(n):
            pair = Divisor.on_facet(q, cube_facet_id(j, "+")) - Divisor.on_facet(
                q, cube_facet_id(j, "-")
            )
            v = chow.is_principal(q, pair)
            if v is None:
                return CriterionResult(
                    "ring_golden", False, f"pair {j} not principal at n={n}"
                )
        full = IntersectionQuery(q, tuple(_cube_axis_class(q, j) for j in range(n)))
        if chow.intersection_number(full) != 1:
            return CriterionResult("ring_golden", False, f"top product != 1 at n={n}")
        if n >= 2:
            repeated = IntersectionQuery(
                q,
                (_cube_axis_class(q, 0),)
                + tuple(_cube_axis_class(q, j) for j in range(n - 1)),
            )
            if chow.intersection_number(repeated) != 0:
                return CriterionResult(
                    "ring_golden", False, f"repeated axis != 0 at n={n}"
                )
    return CriterionResult("ring_golden", True, "n=1..4 exact")


def volume_link() -> CriterionResult:
    """self_intersection_top of the ample divisor equals n! * volume, which is
    n! for Q^n and 1 for the simplex, n = 1..4."""
    fact = 1
    for n in range(1, 5):
        fact *= n
        for kind, expected_vol in (("cube", Fraction(1)), ("simplex", Fraction(1, fact))):
            p = construct_standard(kind, n)
            vol = chow.volume(p)
            if vol != expected_vol:
                return CriterionResult(
                    "volume_link", False, f"vol({kind},{n}) = {vol}"
                )
            top = chow.self_intersection_top(p, chow.ample_from_offsets(p))
            if top != fact * vol:
                return CriterionResult(
                    "volume_link", False, f"selfint({kind},{n}) = {top}"
                )
    return CriterionResult("volume_link", True, "n=1..4 exact")


def principal_identity() -> CriterionResult:
    """sum_j (F_j^- + F_j^+) is linearly equivalent to sum_j 2 F_j^- on Q^n."""
    for n in range(1, 5):
        q = construct_standard("cube", n)
        all_facets = Divisor(tuple(Fraction(1) for _ in range(q.num_facets)))
        doubled = Divisor.from_map(
            q, {cube_facet_id(j, "-"): Fraction(2) for j in range(n)}
        )
        v = chow.is_principal(q, all_facets - doubled)
        if v is None:
            return CriterionResult("principal_identity", False, f"n={n}")
        if not chow.linearly_equivalent(q, all_facets, doubled):
            return CriterionResult("principal_identity", False, f"n={n} pairwise")
    return CriterionResult("principal_identity", True, "n=1..4 exact")


def flux_certificates(instances: int = 50) -> CriterionResult:
    """On seeded perturbed cubes and simplices (n = 2, 3) with generic
    normals, an avoidance certificate exists for every facet subset of size
    at most n."""
    shapes = [("cube", 2), ("cube", 3), ("simplex", 2), ("simplex", 3)]
    for seed in range(instances):
        kind, n = shapes[seed % len(shapes)]
        base = construct_standard(kind, n)
        p = perturb(base, Fraction(1, 64), seed=seed)
        if not generic_normals_check(p):
            return CriterionResult("flux_certificates", False, f"seed {seed} not generic")
        h = chow.ample_from_offsets(p)
        for size in range(n + 1):
            for touched in itertools.combinations(p.facet_ids(), size):
                cert = chow.avoidance_certificate(p, h, touched)
                if cert is None or any(cert.coeffs[f] != 0 for f in touched):
                    return CriterionResult(
                        "flux_certificates", False, f"seed {seed} subset {touched}"
                    )
    return CriterionResult("flux_certificates", True, f"{instances} seeded polytopes")


def palais_suite(instances: int = 200) -> CriterionResult:
    """Colorings of seeded random covers satisfy refinement, within-color
    disjointness, and union preservation for (n,r) in {(2,16),(3,12)} and
    multiplicity targets 2 and 3."""
    for n, r in ((2, 16), (3, 12)):
        model = LatticeModel("cube", n, r)
        for i in range(instances):
            seed = 1000 * n + i
            k = 2 + (i % 2)
            stamped = harness.random_low_multiplicity_cover(model, k, seed)
            classes = covering.palais_coloring(stamped.cover)
            if not harness._validate_coloring(stamped.cover, classes):
                return CriterionResult("palais_suite", False, f"n={n} seed={seed}")
    return CriterionResult("palais_suite", True, f"{instances} covers per config")


def lebesgue_suite(instances: int = 200) -> CriterionResult:
    """Seeded full covers with multiplicity <= n always yield a spanning
    witness; the shifted-brick control is flagged hypothesis_violated with
    multiplicity n+1."""
    for n, r in ((2, 16), (3, 12)):
        config = harness.SuiteConfig(
            verifier="lebesgue", kind="cube", n=n, r=r,
            instances=instances, seed=2000 * n, multiplicity=n,
        )
        report = harness.run_property_suite(config)
        if not report["ok"]:
            return CriterionResult(
                "lebesgue_suite", False,
                f"n={n} failures at instances {report['failures'][:5]}",
            )
        control = harness.run_property_suite(
            harness.SuiteConfig(
                verifier="bricks_control", kind="cube", n=n, r=r, instances=1, seed=0
            )
        )
        if not control["ok"]:
            return CriterionResult("lebesgue_suite", False, f"bricks control n={n}")
    return CriterionResult("lebesgue_suite", True, f"{instances} covers per config")


def kkm_suite(instances: int = 100) -> CriterionResult:
    """Seeded facet-missing families on the simplex with multiplicity <= k
    always leave a complement component meeting every k-face (n = 2, 3,
    r = 12, k = 1..n)."""
    for n in (2, 3):
        for k in range(1, n + 1):
            config = harness.SuiteConfig(
                verifier="kkm", kind="simplex", n=n, r=12,
                instances=instances, seed=3000 * n + 100 * k, k=k,
            )
            report = harness.run_property_suite(config)
            if not report["ok"]:
                return CriterionResult(
                    "kkm_suite", False,
                    f"n={n} k={k} failures {report['failures'][:5]}",
                )
    return CriterionResult("kkm_suite", True, f"{instances} families per (n,k)")


def axes_suite(instances: int = 100) -> CriterionResult:
    """Seeded n-set full covers of the cube always contain a component of the
    i-th set spanning the i-th axis pair (n = 2, 3)."""
    for n, r in ((2, 16), (3, 12)):
        config = harness.SuiteConfig(
            verifier="axes", kind="cube", n=n, r=r,
            instances=instances, seed=4000 * n,
        )
        report = harness.run_property_suite(config)
        if not report["ok"]:
            return CriterionResult(
                "axes_suite", False, f"n={n} failures {report['failures'][:5]}"
            )
    return CriterionResult("axes_suite", True, f"{instances} covers per config")


def kkm_lebesgue_suite(instances: int = 50) -> CriterionResult:
    """On seeded sample covers of perturbed Q^3 and the perturbed simplex, a
    set touching at least n+1 facets is always found and every set with at
    most n touched facets carries an inessentiality certificate."""
    for kind, seed0 in (("cube", 5000), ("simplex", 6000)):
        config = harness.SuiteConfig(
            verifier="kkm_lebesgue", kind=kind, n=3, r=6,
            instances=instances, seed=seed0, multiplicity=2,
        )
        report = harness.run_property_suite(config)
        if not report["ok"]:
            return CriterionResult(
                "kkm_lebesgue_suite", False,
                f"{kind} failures at instances {report['failures'][:5]}",
            )
    return CriterionResult("kkm_lebesgue_suite", True, f"{instances} covers per shape")


def oracle() -> CriterionResult:
    """The tiny exhaustive enumeration reports zero violations and full
    agreement with the lebesgue verifier."""
    report = harness.exhaustive_oracle_tiny()
    ok = report["violations"] == 0 and report["verifier_mismatches"] == 0
    return CriterionResult(
        "oracle", ok,
        f"{report['instances']} covers, {report['checked_low_multiplicity']} checked",
    )


ALL_CRITERIA = (
    ring_golden,
    volume_link,
    principal_identity,
    flux_certificates,
    palais_suite,
    lebesgue_suite,
    kkm_suite,
    axes_suite,
    kkm_lebesgue_suite,
    oracle,
)


def run_all(quick: bool = False):
    """Run every acceptance criterion; quick mode shrinks the seeded suites
    (smoke use only, the real gate is the full run)."""
    results = []
    for fn in ALL_CRITERIA:
        if quick and fn in (palais_suite, lebesgue_suite, kkm_suite, axes_suite):
            results.append(fn(20))
        elif quick and fn in (flux_certificates, kkm_lebesgue_suite):
            results.append(fn(8))
        else:
            results.append(fn())
    return results

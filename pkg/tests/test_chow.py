import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricover import (
    Divisor,
    IntersectionQuery,
    ample_from_offsets,
    avoidance_certificate,
    construct_standard,
    cube_facet_id,
    from_halfspaces,
    inessential_touch_set,
    intersection_number,
    is_principal,
    linearly_equivalent,
    perturb,
    polytope_of_divisor,
    presentation,
    principal_divisor,
    self_intersection_top,
    volume,
)

small_rationals = st.fractions(
    min_value=Fraction(-3), max_value=Fraction(3), max_denominator=6
)


def axis_class(q, j):
    """On the cube, the class of the lower facet of axis j."""
    return Divisor.on_facet(q, cube_facet_id(j, "-"))


def cube_ring_oracle(axes):
    """Evaluate a monomial of axis classes in Z[c_1..c_n]/(c_i^2 = 0): the
    squarefree full product is 1, anything with a repeat is 0.  Independent of
    the mixed-volume route."""
    return 1 if len(set(axes)) == len(axes) else 0


class TestPresentation:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_cube_nonfaces_are_antiparallel_pairs(self, n):
        q = construct_standard("cube", n)
        pres = presentation(q)
        expected = {
            frozenset({cube_facet_id(j, "-"), cube_facet_id(j, "+")})
            for j in range(n)
        }
        assert set(pres.minimal_nonfaces) == expected

    def test_cube_relations_identify_pairs(self, q2):
        pres = presentation(q2)
        # relation i reads sum_F u_F[i] c_F = 0, i.e. c_{F_i^-} = c_{F_i^+}
        assert pres.linear_relations == ((1, -1, 0, 0), (0, 0, 1, -1))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_simplex_single_full_nonface(self, n):
        p = construct_standard("simplex", n)
        pres = presentation(p)
        assert pres.minimal_nonfaces == (frozenset(range(n + 1)),)

    def test_segment(self, segment):
        pres = presentation(segment)
        assert pres.minimal_nonfaces == (frozenset({0, 1}),)
        assert pres.linear_relations == ((1, -1),)


class TestPrincipal:
    def test_cube_pair_difference(self, q3):
        for j in range(3):
            d = Divisor.on_facet(q3, cube_facet_id(j, "+")) - Divisor.on_facet(
                q3, cube_facet_id(j, "-")
            )
            v = is_principal(q3, d)
            assert v == tuple(-1 if i == j else 0 for i in range(3))

    def test_zero_divisor(self, d2):
        assert is_principal(d2, Divisor.zero(d2)) == (0, 0)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_hyperplane_identity(self, n):
        # sum of all facets  ~  twice the lower facets
        q = construct_standard("cube", n)
        total = Divisor(tuple(Fraction(1) for _ in range(2 * n)))
        doubled = Divisor.from_map(
            q, {cube_facet_id(j, "-"): 2 for j in range(n)}
        )
        v = is_principal(q, total - doubled)
        assert v == tuple(Fraction(-1) for _ in range(n))
        assert linearly_equivalent(q, total, doubled)

    def test_not_principal(self, q2):
        assert is_principal(q2, Divisor.on_facet(q2, 0)) is None

    @settings(max_examples=30, deadline=None)
    @given(st.tuples(small_rationals, small_rationals))
    def test_flux_divisors_always_principal(self, v):
        q = construct_standard("cube", 2)
        assert is_principal(q, principal_divisor(q, v)) == v


class TestAmpleAndRegions:
    def test_simplex_offsets_positive(self, d3):
        h = ample_from_offsets(d3)
        assert all(c > 0 for c in h.coeffs)

    def test_centered_cube_half_offsets(self):
        normals = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        centered = from_halfspaces(normals, [Fraction(1, 2)] * 4)
        h = ample_from_offsets(centered)
        assert h.coeffs == (Fraction(1, 2),) * 4

    def test_unit_cube_recenters(self, q2):
        assert ample_from_offsets(q2).coeffs == (Fraction(1, 2),) * 4

    def test_region_of_ample_is_translated_polytope(self, q2):
        h = ample_from_offsets(q2)
        region = polytope_of_divisor(q2, h)
        centered = q2.translate(q2.vertex_centroid())
        assert {v.coords for v in region.vertices} == {
            v.coords for v in centered.vertices
        }
        assert region.incidence_pattern() == q2.incidence_pattern()

    def test_region_of_zero_is_origin(self, q2):
        region = polytope_of_divisor(q2, Divisor.zero(q2))
        assert [v.coords for v in region.vertices] == [(0, 0)]
        assert not region.is_full_dim
        assert volume(region) == 0

    def test_region_upper_facets_unit_cube(self, q2):
        d = Divisor.from_map(q2, {cube_facet_id(j, "+"): 1 for j in range(2)})
        region = polytope_of_divisor(q2, d)
        assert {v.coords for v in region.vertices} == {
            v.coords for v in q2.vertices
        }


class TestVolume:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_cube(self, n):
        assert volume(construct_standard("cube", n)) == 1

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_simplex(self, n):
        assert volume(construct_standard("simplex", n)) == Fraction(
            1, factorial(n)
        )

    @pytest.mark.parametrize("t", [Fraction(1, 2), 2, Fraction(5, 3)])
    def test_scaled_cube(self, t):
        normals, offsets = [], []
        for j in range(3):
            e = tuple(1 if i == j else 0 for i in range(3))
            normals += [e, tuple(-x for x in e)]
            offsets += [0, t]
        assert volume(from_halfspaces(normals, offsets)) == t ** 3


class TestIntersectionNumbers:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_simplex_hyperplane_power(self, n):
        p = construct_standard("simplex", n)
        h = Divisor.on_facet(p, 0)
        assert self_intersection_top(p, h) == 1

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_cube_squarefree_top_product(self, n):
        q = construct_standard("cube", n)
        q_classes = tuple(axis_class(q, j) for j in range(n))
        assert intersection_number(IntersectionQuery(q, q_classes)) == 1

    @pytest.mark.parametrize("n", [2, 3])
    def test_cube_repeated_axis_vanishes(self, n):
        q = construct_standard("cube", n)
        divisors = (axis_class(q, 0),) + tuple(
            axis_class(q, j) for j in range(n - 1)
        )
        assert intersection_number(IntersectionQuery(q, divisors)) == 0

    def test_cube_monomials_match_ring_oracle(self, q3):
        for axes in itertools.product(range(3), repeat=3):
            value = intersection_number(
                IntersectionQuery(q3, tuple(axis_class(q3, j) for j in axes))
            )
            assert value == cube_ring_oracle(axes), axes

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_cube_upper_facet_sum_selfint(self, n):
        # H = sum of upper facets has H^n = n!, the ring oracle multinomial
        q = construct_standard("cube", n)
        h = Divisor.from_map(q, {cube_facet_id(j, "+"): 1 for j in range(n)})
        assert self_intersection_top(q, h) == factorial(n)

    def test_zero_divisor(self, q2):
        assert self_intersection_top(q2, Divisor.zero(q2)) == 0

    def test_query_arity_enforced(self, q2):
        with pytest.raises(ValueError):
            IntersectionQuery(q2, (Divisor.zero(q2),) * 3)

    def test_nef_lift_cap_is_honest(self, q2):
        # a coefficient beyond the documented shift cap is reported, never
        # silently approximated
        from toricover import NefLiftFailedError

        huge = Divisor.on_facet(q2, 0, -(2 ** 20))
        with pytest.raises(NefLiftFailedError):
            self_intersection_top(q2, huge)

    def test_ample_selfint_is_scaled_volume(self, d3):
        h = ample_from_offsets(d3)
        assert self_intersection_top(d3, h) == factorial(3) * volume(
            polytope_of_divisor(d3, h)
        )

    def test_nef_selfint_is_scaled_volume(self, q2):
        # nef but not a recentred ample: stretch one facet of the cube
        d = ample_from_offsets(q2) + Divisor.on_facet(q2, 0, Fraction(3, 2))
        region = polytope_of_divisor(q2, d)
        assert region.incidence_pattern() == q2.incidence_pattern()
        assert self_intersection_top(q2, d) == 2 * volume(region)

    def test_simplex_classes_pairwise_equivalent(self, d3):
        divisors = [Divisor.on_facet(d3, f) for f in d3.facet_ids()]
        for i, a in enumerate(divisors):
            for b in divisors[i + 1:]:
                assert linearly_equivalent(d3, a, b)

    @settings(max_examples=15, deadline=None)
    @given(st.sampled_from(["cube2", "simplex2", "cube3"]), st.data())
    def test_symmetry_and_multilinearity(self, shape, data):
        kind, n = ("cube", 2) if shape == "cube2" else (
            ("simplex", 2) if shape == "simplex2" else ("cube", 3)
        )
        p = construct_standard(kind, n)
        divisors = [
            Divisor(
                tuple(data.draw(small_rationals) for _ in range(p.num_facets))
            )
            for _ in range(n + 1)
        ]
        a, b, rest = divisors[0], divisors[1], tuple(divisors[2:n])
        c = divisors[n]
        ab = intersection_number(IntersectionQuery(p, (a, b) + rest))
        ba = intersection_number(IntersectionQuery(p, (b, a) + rest))
        assert ab == ba
        scale = data.draw(small_rationals)
        combined = intersection_number(
            IntersectionQuery(p, (a + scale * c, b) + rest)
        )
        cb = intersection_number(IntersectionQuery(p, (c, b) + rest))
        assert combined == ab + scale * cb

    @settings(max_examples=15, deadline=None)
    @given(
        st.tuples(small_rationals, small_rationals),
        st.lists(small_rationals, min_size=4, max_size=4),
    )
    def test_principal_invariance(self, v, coeffs):
        q = construct_standard("cube", 2)
        d = Divisor(tuple(coeffs))
        other = Divisor.on_facet(q, 2)
        base = intersection_number(IntersectionQuery(q, (d, other)))
        shifted = intersection_number(
            IntersectionQuery(q, (d + principal_divisor(q, v), other))
        )
        assert shifted == base

    def test_simplex_triple_product_orbifold_friendly(self):
        # perturbed simplex: still simple, rational numbers come out exact
        p = perturb(construct_standard("simplex", 2), Fraction(1, 100), seed=5)
        h = ample_from_offsets(p)
        assert self_intersection_top(p, h) == 2 * volume(polytope_of_divisor(p, h))


class TestAvoidanceCertificates:
    def test_empty_touched_returns_h(self, q2):
        h = ample_from_offsets(q2)
        assert avoidance_certificate(q2, h, []) == h

    def test_generic_subsets_have_certificates(self, q3):
        p = perturb(q3, Fraction(1, 100), seed=9)
        h = ample_from_offsets(p)
        for size in range(1, 4):
            for touched in itertools.combinations(p.facet_ids(), size):
                cert = avoidance_certificate(p, h, touched)
                assert cert is not None
                assert all(cert.coeffs[f] == 0 for f in touched)

    def test_opposite_pair_obstruction(self, q2):
        # coefficient 1 on both facets of an axis forces v_j = -1 and v_j = 1
        h = Divisor.from_map(q2, {0: 1, 1: 1})
        assert avoidance_certificate(q2, h, [0, 1]) is None
        assert not inessential_touch_set(q2, h, [0, 1])

    def test_segment_all_but_lower_facet(self, segment):
        # in dimension 1 missing a single facet already gives a certificate
        h = ample_from_offsets(segment)
        cert = avoidance_certificate(segment, h, [cube_facet_id(0, "+")])
        assert cert is not None and cert.coeffs[1] == 0

    @pytest.mark.parametrize("n", [2, 3])
    def test_cube_one_missed_facet_per_axis(self, n):
        # a set that misses one facet of every antiparallel pair is avoided by
        # the divisor doubled on the missed sides; spanning no pair is exactly
        # what makes the certificate solvable on the cube
        q = construct_standard("cube", n)
        h = ample_from_offsets(q)
        for signs in itertools.product("-+", repeat=n):
            touched = [cube_facet_id(j, s) for j, s in enumerate(signs)]
            cert = avoidance_certificate(q, h, touched)
            assert cert is not None
            assert all(cert.coeffs[f] == 0 for f in touched)
            assert inessential_touch_set(q, h, touched)

    @pytest.mark.parametrize("n", [2, 3])
    def test_simplex_proper_subsets_inessential(self, n):
        p = construct_standard("simplex", n)
        h = ample_from_offsets(p)
        for size in range(1, n + 1):
            for touched in itertools.combinations(p.facet_ids(), size):
                assert inessential_touch_set(p, h, touched)

    @settings(max_examples=20, deadline=None)
    @given(
        st.fractions(
            min_value=Fraction(1, 4), max_value=Fraction(4), max_denominator=8
        )
    )
    def test_certificate_scales_linearly(self, scale):
        p = perturb(construct_standard("cube", 2), Fraction(1, 64), seed=11)
        h = ample_from_offsets(p)
        touched = [0, 2]
        cert = avoidance_certificate(p, h, touched)
        scaled = avoidance_certificate(p, scale * h, touched)
        assert cert is not None and scaled is not None
        assert scaled.coeffs == tuple(scale * c for c in cert.coeffs)

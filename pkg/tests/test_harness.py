import pytest

from toricover import (
    BadResolutionError,
    LatticeModel,
    SuiteConfig,
    kkm_standard_cover,
    multiplicity,
    run_property_suite,
    shifted_brick_cover,
    spans_pair,
    touches_facet,
)
from toricover import harness


class TestShiftedBricks:
    def test_intervals(self):
        cover = shifted_brick_cover(1, 4)
        assert multiplicity(cover) == 2
        # closed intervals meet only at shared endpoints
        for name, pts in cover.sets.items():
            xs = sorted(x for (x,) in pts)
            assert xs == list(range(xs[0], xs[-1] + 1))

    @pytest.mark.parametrize("n,r,mult", [(1, 4, 2), (2, 8, 3), (3, 12, 4)])
    def test_multiplicity_exact(self, n, r, mult):
        cover = shifted_brick_cover(n, r)
        assert multiplicity(cover) == mult

    @pytest.mark.parametrize("n,r", [(2, 8), (2, 16), (3, 12)])
    def test_no_brick_spans(self, n, r):
        cover = shifted_brick_cover(n, r)
        assert not any(
            spans_pair(cover, name, axis)
            for name in cover.sets
            for axis in range(n)
        )

    def test_cover_is_full(self):
        cover = shifted_brick_cover(2, 8)
        assert cover.union() == set(cover.model.points())

    def test_bad_resolution(self):
        with pytest.raises(BadResolutionError):
            shifted_brick_cover(2, 6)
        with pytest.raises(BadResolutionError):
            shifted_brick_cover(3, 4)


class TestKKMStandard:
    def test_two_half_segments(self):
        cover = kkm_standard_cover(1, 4)
        assert multiplicity(cover) == 2
        assert cover.sets["star_0"] & cover.sets["star_1"] == {(2, 2)}

    def test_barycenter_attains(self):
        cover = kkm_standard_cover(2, 9)
        assert multiplicity(cover) == 3
        assert all((3, 3, 3) in pts for pts in cover.sets.values())

    @pytest.mark.parametrize("n,r", [(1, 4), (2, 9), (3, 12)])
    def test_each_star_misses_exactly_its_facet(self, n, r):
        cover = kkm_standard_cover(n, r)
        for i in range(n + 1):
            name = f"star_{i}"
            missed = [
                f
                for f in cover.model.facets()
                if not touches_facet(cover, name, f)
            ]
            assert missed == [i]


class TestRandomLowMultiplicity:
    def test_partition_when_m_is_one(self):
        model = LatticeModel("cube", 2, 8)
        stamped = harness.random_low_multiplicity_cover(model, 1, 3)
        assert stamped.multiplicity == 1
        assert stamped.cover.union() == set(model.points())

    @pytest.mark.parametrize("seed", range(6))
    def test_measured_multiplicity_within_target(self, seed):
        model = LatticeModel("cube", 2, 16)
        stamped = harness.random_low_multiplicity_cover(model, 2, seed)
        assert stamped.multiplicity == multiplicity(stamped.cover)
        assert 1 <= stamped.multiplicity <= 2
        assert stamped.cover.union() == set(model.points())

    def test_deterministic_from_seed(self):
        model = LatticeModel("simplex", 2, 9)
        a = harness.random_low_multiplicity_cover(model, 2, 42)
        b = harness.random_low_multiplicity_cover(model, 2, 42)
        assert a.cover.sets == b.cover.sets
        assert a.multiplicity == b.multiplicity


class TestRandomSmallSetFamily:
    @pytest.mark.parametrize("seed", range(5))
    def test_each_set_misses_a_facet(self, seed):
        model = LatticeModel("simplex", 2, 12)
        cover = harness.random_small_set_family(model, 2, seed)
        assert multiplicity(cover) <= 2
        for name in cover.sets:
            assert any(
                not touches_facet(cover, name, f) for f in model.facets()
            )

    @pytest.mark.parametrize("seed", range(5))
    def test_cube_family_never_spans(self, seed):
        model = LatticeModel("cube", 2, 16)
        cover = harness.random_small_set_family(model, 2, seed)
        assert not any(
            spans_pair(cover, name, axis)
            for name in cover.sets
            for axis in range(2)
        )


class TestDilatedPartition:
    def test_union_and_arity(self):
        model = LatticeModel("cube", 3, 6)
        cover = harness.dilated_partition_cover(model, 3, 0)
        assert len(cover.sets) == 3
        assert cover.union() == set(model.points())


class TestOracle:
    def test_zero_violations_and_frozen_count(self):
        report = harness.exhaustive_oracle_tiny()
        # 1 + (3^4 - 2) + (7^4 - 3*81 + 3) labeled covers, by inclusion-exclusion
        assert report["instances"] == 2241
        assert report["violations"] == 0
        assert report["verifier_mismatches"] == 0


class TestPropertySuite:
    def test_deterministic_report(self):
        config = SuiteConfig(
            verifier="lebesgue", kind="cube", n=2, r=8, instances=5, seed=17,
            multiplicity=2,
        )
        assert run_property_suite(config) == run_property_suite(config)

    def test_lebesgue_mini_suite(self):
        config = SuiteConfig(
            verifier="lebesgue", kind="cube", n=2, r=8, instances=10, seed=0,
            multiplicity=2,
        )
        report = run_property_suite(config)
        assert report["ok"]
        assert report["counts"] == {"witness_found": 10}
        assert [rec["seed"] for rec in report["instances"]] == list(range(10))

    def test_bricks_control_suite(self):
        config = SuiteConfig(
            verifier="bricks_control", kind="cube", n=2, r=8, instances=1, seed=0
        )
        report = run_property_suite(config)
        assert report["ok"]
        assert report["counts"] == {"hypothesis_violated": 1}

    def test_kkm_mini_suite(self):
        config = SuiteConfig(
            verifier="kkm", kind="simplex", n=2, r=12, instances=10, seed=5, k=2
        )
        report = run_property_suite(config)
        assert report["ok"]

    def test_palais_mini_suite(self):
        config = SuiteConfig(
            verifier="palais", kind="cube", n=2, r=8, instances=10, seed=1,
            multiplicity=3,
        )
        report = run_property_suite(config)
        assert report["ok"]

    def test_kkm_lebesgue_mini_suite(self):
        config = SuiteConfig(
            verifier="kkm_lebesgue", kind="simplex", n=3, r=6, instances=5,
            seed=2, multiplicity=2,
        )
        report = run_property_suite(config)
        assert report["ok"]
        assert report["counts"] == {"witness_found": 5}

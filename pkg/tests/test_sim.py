import math
from dataclasses import replace

import pytest

from radloc.errors import ConfigError, MetricUndefinedError
from radloc.geom import Circle, Point
from radloc.locate import Branch, Estimate, Method, centroid_estimate, rla_estimate
from radloc.sim import (
    Anchor,
    Deployment,
    ScenarioConfig,
    SensorRecord,
    TrialResult,
    contacts,
    error_metric,
    generate_deployment,
    localize_deployment,
    run_scenario,
    run_trial,
)

SMALL = ScenarioConfig(num_sensors=40, num_anchors=20, num_trials=3, master_seed=99)


def est_at(x, y):
    return Estimate(Point(x, y), Method.CA, Branch.CENTROID, 0.0)


def record(true, est):
    return SensorRecord(Point(*true), 1, est_at(*est), est_at(*est))


class TestConfig:
    def test_defaults(self):
        cfg = ScenarioConfig()
        assert (cfg.field_width, cfg.field_height, cfg.num_sensors, cfg.r_max) == (100, 100, 100, 45)
        assert (cfg.doi, cfg.num_trials, cfg.test_points, cfg.mixed_ranges) == (0, 100, 4, False)

    @pytest.mark.parametrize(
        "kwargs, field",
        [
            ({"doi": 1.0}, "doi"),
            ({"doi": -0.1}, "doi"),
            ({"num_trials": 0}, "num_trials"),
            ({"r_max": 0.0}, "r_max"),
            ({"num_anchors": 2.5}, "num_anchors"),
            ({"mixed_ranges": 1}, "mixed_ranges"),
            ({"master_seed": -1}, "master_seed"),
            ({"field_width": float("nan")}, "field_width"),
        ],
    )
    def test_validation_names_field(self, kwargs, field):
        with pytest.raises(ConfigError) as info:
            ScenarioConfig(**kwargs)
        assert info.value.field == field


class TestDeployment:
    def test_deterministic(self):
        assert generate_deployment(SMALL, 5) == generate_deployment(SMALL, 5)

    def test_trials_differ(self):
        assert generate_deployment(SMALL, 0).sensors != generate_deployment(SMALL, 1).sensors

    def test_mixed_ranges_split(self):
        dep = generate_deployment(ScenarioConfig(num_anchors=5, mixed_ranges=True), 0)
        assert [a.nominal_range for a in dep.anchors] == [45, 45, 45, 22.5, 22.5]

    def test_uniform_ranges(self):
        dep = generate_deployment(ScenarioConfig(num_anchors=7), 0)
        assert {a.nominal_range for a in dep.anchors} == {45}

    def test_points_inside_field(self):
        cfg = ScenarioConfig(field_width=30, field_height=70, num_sensors=500, num_anchors=50)
        dep = generate_deployment(cfg, 2)
        for p in [a.position for a in dep.anchors] + list(dep.sensors):
            assert 0 <= p.x <= 30 and 0 <= p.y <= 70

    def test_uniform_mean(self):
        dep = generate_deployment(ScenarioConfig(num_sensors=10_000), 0)
        mx = sum(p.x for p in dep.sensors) / 10_000
        my = sum(p.y for p in dep.sensors) / 10_000
        # std of the mean is 100 / sqrt(12 * 1e4) ~ 0.29
        assert abs(mx - 50) < 2 and abs(my - 50) < 2

    def test_geometry_shared_across_doi_and_range_regime(self):
        a = generate_deployment(SMALL, 1)
        b = generate_deployment(replace(SMALL, doi=0.3, mixed_ranges=True), 1)
        assert a.sensors == b.sensors
        assert [x.position for x in a.anchors] == [x.position for x in b.anchors]


class TestContacts:
    def dep(self, x):
        return Deployment((Anchor(Point(x, 0), 45.0),), (Point(0, 0),))

    def test_in_range(self):
        assert len(contacts(Point(0, 0), self.dep(40), 0.0)) == 1

    def test_shrunk_out_of_range(self):
        assert contacts(Point(0, 0), self.dep(40), 0.2) == []

    def test_boundary_keeps_nominal_radius(self):
        (c,) = contacts(Point(0, 0), self.dep(36), 0.2)
        assert c.radius == 45

    def test_order_follows_deployment(self):
        dep = Deployment(
            (Anchor(Point(5, 0), 10.0), Anchor(Point(100, 0), 10.0), Anchor(Point(0, 5), 10.0)),
            (Point(0, 0),),
        )
        assert [c.center for c in contacts(Point(0, 0), dep, 0.0)] == [Point(5, 0), Point(0, 5)]


class TestRunTrial:
    def test_single_anchor_covers_field(self):
        cfg = ScenarioConfig(field_width=10, field_height=10, num_anchors=1, num_sensors=25, num_trials=1)
        trial = run_trial(cfg, 0)
        anchor = generate_deployment(cfg, 0).anchors[0].position
        for r in trial.records:
            assert r.n_contacts == 1
            assert r.ca.point == r.rla.point == anchor

    def test_deterministic(self):
        cfg = replace(SMALL, doi=0.1, mixed_ranges=True)
        assert run_trial(cfg, 2) == run_trial(cfg, 2)

    def test_estimates_none_iff_no_contact(self):
        cfg = ScenarioConfig(num_anchors=3, r_max=10, num_sensors=200, num_trials=1)
        trial = run_trial(cfg, 0)
        assert any(r.n_contacts == 0 for r in trial.records)
        for r in trial.records:
            assert (r.ca is None) == (r.rla is None) == (r.n_contacts == 0)
        assert trial.localized_count == sum(r.n_contacts > 0 for r in trial.records)

    def test_hand_built_radical_center(self):
        dep = Deployment(
            tuple(Anchor(Point(x, y), 3.0) for x, y in ((0, 0), (4, 0), (0, 4))),
            (Point(2, 2),),
        )
        (rec,) = localize_deployment(dep, 0.0, 4).records
        assert rec.n_contacts == 3
        assert rec.rla.branch is Branch.RADICAL_CENTER
        assert math.hypot(rec.rla.point.x - 2, rec.rla.point.y - 2) < 1e-12

    def test_doi_aware_rescales_estimator_radii(self):
        dep = Deployment(
            tuple(Anchor(Point(x, y), 10.0) for x, y in ((0, 0), (9, 0), (0, 9), (9, 9), (4, 1))),
            (Point(3, 3),),
        )
        nominal = contacts(Point(3, 3), dep, 0.3)
        shrunk = [Circle(c.center, c.radius * 0.7) for c in nominal]
        aware = localize_deployment(dep, 0.3, 4, doi_aware=True).records[0]
        blind = localize_deployment(dep, 0.3, 4, doi_aware=False).records[0]
        assert aware.n_contacts == blind.n_contacts == len(nominal) == 4
        assert aware.rla == rla_estimate(shrunk) and aware.ca == centroid_estimate(shrunk)
        assert blind.rla == rla_estimate(nominal) and blind.ca == centroid_estimate(nominal)
        assert aware.rla != blind.rla

    def test_candidate_optimality_in_trials(self):
        cfg = replace(SMALL, num_trials=1, doi=0.1, mixed_ranges=True)
        for t in range(5):
            for r in run_trial(cfg, t).records:
                if r.n_contacts > 3:
                    assert r.rla.score <= r.ca.score

    def test_coverage_monotone_in_doi(self):
        cfg = replace(SMALL, mixed_ranges=True, num_anchors=10)
        for t in range(5):
            counts = [run_trial(replace(cfg, doi=d), t).localized_count for d in (0.0, 0.1, 0.3, 0.6, 0.9)]
            assert counts == sorted(counts, reverse=True)


class TestErrorMetric:
    def test_single(self):
        trial = TrialResult((record((0, 0), (9, 0)),))
        s = error_metric([trial], 45)
        assert math.isclose(s.e_ca, 0.2) and math.isclose(s.e_rla, 0.2)
        assert s.localized_fraction == 1

    def test_exact_estimates(self):
        trial = TrialResult(tuple(record((x, x), (x, x)) for x in range(5)))
        assert error_metric([trial], 45).e_rla == 0

    def test_mean_over_trials(self):
        t1 = TrialResult((record((0, 0), (9, 0)),))
        t2 = TrialResult((record((0, 0), (18, 0)),))
        assert math.isclose(error_metric([t1, t2], 45).e_ca, 0.3)

    def test_unlocalized_sensors(self):
        lost = SensorRecord(Point(1, 1), 0, None, None)
        trial = TrialResult((record((0, 0), (9, 0)), lost))
        s = error_metric([trial], 45)
        assert math.isclose(s.e_ca, 0.2)
        assert math.isclose(s.raw_e_ca, 0.1)
        assert s.localized_fraction == 0.5

    def test_undefined(self):
        lost = TrialResult((SensorRecord(Point(1, 1), 0, None, None),))
        with pytest.raises(MetricUndefinedError):
            error_metric([lost, lost], 45)
        with pytest.raises(MetricUndefinedError):
            error_metric([], 45)


class TestRunScenario:
    def test_single_value_single_trial(self):
        cfg = replace(SMALL, num_trials=1)
        (res,) = run_scenario(cfg, "num_anchors", [20])
        s = error_metric([run_trial(cfg, 0)], cfg.r_max)
        assert (res.e_ca, res.e_rla, res.localized_fraction) == (s.e_ca, s.e_rla, s.localized_fraction)

    def test_sorted_and_order_independent(self):
        a = run_scenario(SMALL, "num_sensors", [30, 10, 20])
        b = run_scenario(SMALL, "num_sensors", [10, 20, 30])
        assert [r.value for r in a] == [10, 20, 30]
        assert a == b

    def test_sweep_value_result_does_not_depend_on_neighbours(self):
        (alone,) = run_scenario(SMALL, "num_anchors", [25])
        in_sweep = run_scenario(SMALL, "num_anchors", [15, 25, 35])[1]
        assert alone == in_sweep

    def test_parallel_equals_serial(self):
        values = [15, 20, 25]
        assert run_scenario(SMALL, "num_anchors", values, workers=3) == run_scenario(SMALL, "num_anchors", values)

    def test_bad_param(self):
        with pytest.raises(ConfigError):
            run_scenario(SMALL, "doi", [1])

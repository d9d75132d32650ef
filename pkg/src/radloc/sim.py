"""Seeded Monte Carlo deployments and the normalized localization error.

Each trial draws its anchors and sensors from its own PCG64 stream derived
with :class:`numpy.random.SeedSequence` from ``master_seed`` and the spawn
key ``(trial_index, num_anchors, num_sensors)``. The anchor and sensor
counts are the two sweep parameters, so a trial's geometry depends only on
the seed, its index and its sweep value, never on execution order. DOI and
the range regime do not enter the key: scenarios that differ only in those
see the same geometry.

Contact is decided against the shrunk range ``R * (1 - doi)``. With
``doi_aware`` (the default) the estimators are also given that shrunk range;
otherwise they work with the nominal ``R``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigError, MetricUndefinedError
from .geom import Circle, Point, distance
from .locate import DEFAULT_TEST_POINTS, Estimate, centroid_estimate, rla_estimate

SWEEP_PARAMS = ("num_anchors", "num_sensors")
_U64 = 2**64


@dataclass(frozen=True)
class ScenarioConfig:
    field_width: float = 100.0
    field_height: float = 100.0
    num_sensors: int = 100
    num_anchors: int = 30
    r_max: float = 45.0
    mixed_ranges: bool = False
    doi: float = 0.0
    doi_aware: bool = True
    num_trials: int = 100
    test_points: int = DEFAULT_TEST_POINTS
    master_seed: int = 0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.type == "bool":
                if not isinstance(value, bool):
                    raise ConfigError(f"{f.name} must be a boolean, got {value!r}", f.name)
            elif f.type == "int":
                if isinstance(value, bool) or not isinstance(value, int):
                    raise ConfigError(f"{f.name} must be an integer, got {value!r}", f.name)
            elif isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ConfigError(f"{f.name} must be a finite number, got {value!r}", f.name)
        for name in ("field_width", "field_height", "r_max"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be > 0", name)
        for name in ("num_sensors", "num_anchors", "num_trials", "test_points"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1", name)
        if not 0.0 <= self.doi < 1.0:
            raise ConfigError(f"doi must lie in [0, 1), got {self.doi}", "doi")
        if not 0 <= self.master_seed < _U64:
            raise ConfigError("master_seed must be an unsigned 64-bit integer", "master_seed")


@dataclass(frozen=True)
class Anchor:
    position: Point
    nominal_range: float


@dataclass(frozen=True)
class Deployment:
    anchors: tuple[Anchor, ...]
    sensors: tuple[Point, ...]
    trial_index: int = 0


@dataclass(frozen=True)
class SensorRecord:
    true_position: Point
    n_contacts: int
    ca: Optional[Estimate]
    rla: Optional[Estimate]


@dataclass(frozen=True)
class TrialResult:
    records: tuple[SensorRecord, ...]

    @property
    def localized_count(self) -> int:
        return sum(1 for r in self.records if r.n_contacts > 0)


@dataclass(frozen=True)
class ErrorSummary:
    e_ca: float
    e_rla: float
    localized_fraction: float
    raw_e_ca: float
    raw_e_rla: float


@dataclass(frozen=True)
class ScenarioResult:
    sweep_param: str
    value: int
    e_ca: float
    e_rla: float
    localized_fraction: float
    raw_e_ca: float
    raw_e_rla: float
    # mean error per trial in meters, NaN where nothing was localized
    trial_errors_ca: tuple[float, ...] = field(repr=False, default=())
    trial_errors_rla: tuple[float, ...] = field(repr=False, default=())

    @property
    def improvement_pct(self) -> float:
        return 100.0 * (self.e_ca - self.e_rla) / self.e_ca


def trial_rng(cfg: ScenarioConfig, trial_index: int) -> np.random.Generator:
    seq = np.random.SeedSequence(
        cfg.master_seed, spawn_key=(trial_index, cfg.num_anchors, cfg.num_sensors)
    )
    return np.random.Generator(np.random.PCG64(seq))


def generate_deployment(cfg: ScenarioConfig, trial_index: int) -> Deployment:
    """Uniform random anchors then sensors over the field for one trial.

    With ``mixed_ranges`` the first ``ceil(num_anchors / 2)`` anchors get
    ``r_max`` and the rest ``r_max / 2``.
    """
    rng = trial_rng(cfg, trial_index)
    size = np.array([cfg.field_width, cfg.field_height])
    anchor_xy = rng.random((cfg.num_anchors, 2)) * size
    sensor_xy = rng.random((cfg.num_sensors, 2)) * size
    n_long = math.ceil(cfg.num_anchors / 2) if cfg.mixed_ranges else cfg.num_anchors
    anchors = tuple(
        Anchor(Point(float(x), float(y)), cfg.r_max if k < n_long else 0.5 * cfg.r_max)
        for k, (x, y) in enumerate(anchor_xy)
    )
    sensors = tuple(Point(float(x), float(y)) for x, y in sensor_xy)
    return Deployment(anchors, sensors, trial_index)


def contacts(sensor: Point, deployment: Deployment, doi: float) -> list[Circle]:
    """Anchors heard by ``sensor`` when every range shrinks to ``R * (1 - doi)``.

    The returned circles carry the nominal range; callers decide whether the
    estimators see the shrunk one.
    """
    shrink = 1.0 - doi
    return [
        Circle(a.position, a.nominal_range)
        for a in deployment.anchors
        if distance(sensor, a.position) <= a.nominal_range * shrink
    ]


def localize_deployment(
    deployment: Deployment, doi: float, test_points: int, doi_aware: bool = True
) -> TrialResult:
    records = []
    shrink = 1.0 - doi
    for sensor in deployment.sensors:
        anchors = contacts(sensor, deployment, doi)
        if doi_aware and doi > 0.0:
            anchors = [Circle(c.center, c.radius * shrink) for c in anchors]
        if anchors:
            ca = centroid_estimate(anchors)
            rla = rla_estimate(anchors, test_points)
        else:
            ca = rla = None
        records.append(SensorRecord(sensor, len(anchors), ca, rla))
    return TrialResult(tuple(records))


def run_trial(cfg: ScenarioConfig, trial_index: int) -> TrialResult:
    deployment = generate_deployment(cfg, trial_index)
    return localize_deployment(deployment, cfg.doi, cfg.test_points, cfg.doi_aware)


def _trial_errors(trial: TrialResult) -> tuple[float, float, int]:
    err_ca = err_rla = 0.0
    n = 0
    for r in trial.records:
        if r.n_contacts == 0:
            continue
        err_ca += distance(r.true_position, r.ca.point)
        err_rla += distance(r.true_position, r.rla.point)
        n += 1
    return err_ca, err_rla, n


def error_metric(trials: Sequence[TrialResult], r_max: float) -> ErrorSummary:
    """Mean per-trial localization error as a fraction of ``r_max``.

    ``e_ca``/``e_rla`` average over localized sensors only and skip trials
    that localized nobody; ``raw_e_*`` divide by the full sensor count, as if
    unlocalized sensors had zero error.
    """
    if not trials:
        raise MetricUndefinedError("error metric needs at least one trial")
    sum_ca = sum_rla = raw_ca = raw_rla = coverage = 0.0
    used = 0
    for trial in trials:
        err_ca, err_rla, n = _trial_errors(trial)
        total = len(trial.records)
        coverage += n / total if total else 0.0
        if total:
            raw_ca += err_ca / total
            raw_rla += err_rla / total
        if n:
            sum_ca += err_ca / n
            sum_rla += err_rla / n
            used += 1
    if used == 0:
        raise MetricUndefinedError("no sensor was localized in any trial")
    k = len(trials)
    return ErrorSummary(
        e_ca=sum_ca / used / r_max,
        e_rla=sum_rla / used / r_max,
        localized_fraction=coverage / k,
        raw_e_ca=raw_ca / k / r_max,
        raw_e_rla=raw_rla / k / r_max,
    )


def _run_point(cfg: ScenarioConfig) -> list[TrialResult]:
    return [run_trial(cfg, t) for t in range(cfg.num_trials)]


def _summarize(cfg: ScenarioConfig, param: str, trials: list[TrialResult]) -> ScenarioResult:
    summary = error_metric(trials, cfg.r_max)
    per_ca, per_rla = [], []
    for trial in trials:
        err_ca, err_rla, n = _trial_errors(trial)
        per_ca.append(err_ca / n if n else math.nan)
        per_rla.append(err_rla / n if n else math.nan)
    return ScenarioResult(
        sweep_param=param,
        value=getattr(cfg, param),
        e_ca=summary.e_ca,
        e_rla=summary.e_rla,
        localized_fraction=summary.localized_fraction,
        raw_e_ca=summary.raw_e_ca,
        raw_e_rla=summary.raw_e_rla,
        trial_errors_ca=tuple(per_ca),
        trial_errors_rla=tuple(per_rla),
    )


def run_scenario(
    cfg: ScenarioConfig, param: str, values: Sequence[int], workers: int = 1
) -> list[ScenarioResult]:
    """Run ``cfg.num_trials`` trials at each value of ``param`` and aggregate.

    ``workers > 1`` spreads sweep points over processes; results are
    identical to a serial run because every trial owns its random stream
    and aggregation is done in trial-index order.
    """
    if param not in SWEEP_PARAMS:
        raise ConfigError(f"cannot sweep {param!r}; choose one of {SWEEP_PARAMS}", param)
    cfgs = [replace(cfg, **{param: v}) for v in sorted(values)]
    if workers > 1 and len(cfgs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            all_trials = list(pool.map(_run_point, cfgs))
    else:
        all_trials = [_run_point(c) for c in cfgs]
    return [_summarize(c, param, trials) for c, trials in zip(cfgs, all_trials)]

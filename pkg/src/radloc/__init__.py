"""Range-free localization with the radical line (RLA) and the centroid baseline (CA)."""

from .errors import (
    ConfigError,
    DegenerateGeometryError,
    MetricUndefinedError,
    NoIntersectionError,
    PreconditionError,
    RadlocError,
)
from .geom import (
    Circle,
    Point,
    RadicalFoot,
    RadicalSegment,
    distance,
    max_separation_pair,
    radical_center,
    radical_foot,
    radical_segment,
    residual,
    sample_segment,
)
from .locate import Branch, Estimate, Method, centroid_estimate, rla_estimate
from .sim import (
    Deployment,
    ScenarioConfig,
    ScenarioResult,
    TrialResult,
    contacts,
    error_metric,
    generate_deployment,
    run_scenario,
    run_trial,
)

__version__ = "0.1.0"

"""firefront: wildfire spread simulation on an inclined plane.

Fire growth is modeled with direction-dependent rate-of-spread metrics:
slope-driven limacon profiles and wind-driven elliptic profiles, either
uniform over the plane (homogeneous) or varying from point to point
(field models).  Fronts are marched by geodesic fire rays or by Huygens
envelope stepping, and the spread parameters can be derived from fuel
and environment descriptions via the Rothermel model.
"""

from ._version import __version__
from .errors import (
    DegenerateFrameError,
    EvalError,
    FireModelError,
    FrontGeometryError,
    IntegrationError,
    InvalidInputError,
    ModelValidityError,
    NoOrthogonalDirectionError,
    ParseError,
    ScenarioValidationError,
)
from .fields import (
    ConstantField,
    ExprField,
    FuncField,
    GridField,
    ScalarField,
    as_field,
    eval_gradient,
    parse_expr,
)
from .fronts import (
    FrontPolyline,
    encloses,
    hausdorff_distance,
    resample,
    untangle,
)
from .geodesics import (
    RayTrajectory,
    exponential_front_point,
    integrate_geodesic,
    straight_ray,
)
from .metrics import (
    SlopeMetric,
    ValidityCheck,
    ValidityReport,
    WindMetric,
    fundamental_form,
    indicatrix_speed,
    metric_value,
    orthogonal_unit_vectors,
    orthogonality_residual,
    spray_coefficients,
    unit_vector_at_angle,
    validity_check,
)
from .propagation import (
    RunResult,
    Scenario,
    Stage,
    front_normals,
    huygens_step,
    propagate_rays,
    run_scenario,
    spherical_front,
)
from .rothermel import (
    Environment,
    FuelBed,
    SpreadParams,
    frame_from_rates,
    no_wind_spread_rate,
    slope_factor,
    spread_chain,
    spread_params,
    wind_factor,
)
from .units import convert_speed, convert_time

__all__ = [
    "__version__",
    # errors
    "FireModelError", "InvalidInputError", "DegenerateFrameError",
    "ModelValidityError", "ParseError", "EvalError", "IntegrationError",
    "FrontGeometryError", "NoOrthogonalDirectionError",
    "ScenarioValidationError",
    # fields
    "ScalarField", "ConstantField", "ExprField", "GridField", "FuncField",
    "as_field", "parse_expr", "eval_gradient",
    # fronts
    "FrontPolyline", "resample", "untangle", "hausdorff_distance", "encloses",
    # geodesics
    "RayTrajectory", "integrate_geodesic", "straight_ray",
    "exponential_front_point",
    # metrics
    "SlopeMetric", "WindMetric", "ValidityCheck", "ValidityReport",
    "indicatrix_speed", "metric_value", "unit_vector_at_angle",
    "fundamental_form", "spray_coefficients", "validity_check",
    "orthogonality_residual", "orthogonal_unit_vectors",
    # propagation
    "Stage", "Scenario", "RunResult", "spherical_front", "front_normals",
    "propagate_rays", "huygens_step", "run_scenario",
    # rothermel
    "FuelBed", "Environment", "SpreadParams", "spread_params", "spread_chain",
    "no_wind_spread_rate", "wind_factor", "slope_factor", "frame_from_rates",
    # units
    "convert_speed", "convert_time",
]

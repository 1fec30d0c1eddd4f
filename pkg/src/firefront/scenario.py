"""Scenario file loading: schema validation and model construction.

Scenario files are YAML (``schema: 1``) with strict keys — anything
unrecognized is rejected by name.  Layout::

    schema: 1
    name: my-fire                 # optional
    plane_unit: km                # ft | m | km, default ft (fuel models only)
    resolution: 0.5               # optional target vertex spacing, plane units
    initial:
      point: [0.0, 0.0]           # or front: [[x, y], ...] or front_csv: path
    outputs:                      # optional; defaults shown
      fronts_csv: true
      rays_csv: false
      svg: false
      report: true
    stages:
      - duration: {value: 10, unit: h}
        dt: {value: 2, unit: h}   # output cadence; default = duration
        method: rays              # rays | huygens
        untangle: true
        model:
          direct:
            R0: "1.8-0.6*cos(x+y)"   # number or expression in x, y
            phi_s: 0.45
            phi_w: 0.0
            U: {value: 7, unit: km/h}   # constant; presence of wind
            theta_hat_deg: 135
          # or: fuel: {sigma, w_o, delta, M_x, M_f, ...} + env: {U, tan_phi,
          #           theta_hat_deg}

Geometry is in plane units per hour.  Direct rate values are taken to be
plane units per hour already; fuel-derived rates come out of the spread
chain in ft/min and are converted using ``plane_unit``.  Wind speed U is
always converted to ft/min before it enters any formula (eccentricity,
frame, validity bound).
"""

from __future__ import annotations

import csv
import math
import os

import numpy as np
import yaml

from .errors import FireModelError, ParseError, ScenarioValidationError
from .fields import FuncField, as_field, parse_expr
from .fronts import FrontPolyline
from .metrics import SlopeMetric, WindMetric
from .propagation import Scenario, Stage
from .rothermel import Environment, FuelBed, spread_params
from .units import SPEED_UNITS, TIME_UNITS, convert_speed, convert_time

SCHEMA_VERSION = 1

# feet per plane unit, for converting fuel-chain rates (ft/min) to plane
# units per hour
_FT_PER_UNIT = {"ft": 1.0, "m": 3.28084, "km": 3280.84}

_TOP_KEYS = {"schema", "name", "plane_unit", "resolution", "initial",
             "outputs", "stages"}
_INITIAL_KEYS = {"point", "front", "front_csv"}
_OUTPUT_KEYS = {"fronts_csv", "rays_csv", "svg", "report"}
_STAGE_KEYS = {"duration", "dt", "method", "untangle", "n_sphere", "label",
               "model"}
_MODEL_KEYS = {"direct", "fuel", "env"}
_DIRECT_KEYS = {"R0", "phi_s", "phi_w", "U", "theta_hat_deg"}
_FUEL_KEYS = {"sigma", "w_o", "delta", "M_x", "M_f", "h", "S_T", "S_e",
              "rho_p"}
_ENV_KEYS = {"U", "tan_phi", "theta_hat_deg"}

DEFAULT_OUTPUTS = {"fronts_csv": True, "rays_csv": False, "svg": False,
                   "report": True}


def _fail(msg):
    raise ScenarioValidationError(msg)


def _mapping(obj, where):
    if not isinstance(obj, dict):
        _fail(f"{where} must be a mapping, got {type(obj).__name__}")
    return obj


def _check_keys(obj, allowed, where):
    _mapping(obj, where)
    for key in obj:
        if key not in allowed:
            _fail(f"unknown key {key!r} in {where}")


def _number(obj, where, minimum=None, strict_min=False):
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        _fail(f"{where} must be a number, got {obj!r}")
    val = float(obj)
    if not math.isfinite(val):
        _fail(f"{where} must be finite, got {obj!r}")
    if minimum is not None:
        if strict_min and val <= minimum:
            _fail(f"{where} must be > {minimum}, got {val}")
        if not strict_min and val < minimum:
            _fail(f"{where} must be >= {minimum}, got {val}")
    return val


def _boolean(obj, where):
    if not isinstance(obj, bool):
        _fail(f"{where} must be true or false, got {obj!r}")
    return obj


def _quantity(obj, units, where):
    _check_keys(obj, {"value", "unit"}, where)
    if "value" not in obj or "unit" not in obj:
        _fail(f"{where} needs both 'value' and 'unit'")
    value = _number(obj["value"], f"{where}.value")
    unit = obj["unit"]
    if unit not in units:
        _fail(f"{where}.unit must be one of {sorted(units)}, got {unit!r}")
    return value, unit


def _time_hours(obj, where):
    value, unit = _quantity(obj, TIME_UNITS, where)
    return convert_time(value, unit, "h")


def _speed_ftmin(obj, where):
    value, unit = _quantity(obj, SPEED_UNITS, where)
    if value < 0:
        _fail(f"{where}.value must be >= 0, got {value}")
    return convert_speed(value, unit, "ft/min")


def _field_value(obj, where):
    """A number or an expression string, as (field, is_constant)."""
    if isinstance(obj, str):
        try:
            field = as_field(parse_expr(obj))
        except ParseError as exc:
            _fail(f"{where}: {exc}")
        return field
    return as_field(_number(obj, where))


def build_model(block, plane_unit="ft", standard=False):
    """Construct a metric model from a scenario 'model' block.

    Either ``direct`` (rates in plane units per hour, possibly expression
    fields) or ``fuel`` + ``env`` (Table-style inputs, rates converted
    from ft/min).  Wind presence (U > 0) selects the wind family;
    otherwise the slope family is used and phi_w must be absent or zero.
    """
    _check_keys(block, _MODEL_KEYS, "model")
    has_direct = "direct" in block
    has_fuel = "fuel" in block or "env" in block
    if has_direct == has_fuel:
        _fail("model needs exactly one of 'direct' or 'fuel'+'env'")
    try:
        if has_direct:
            return _model_from_direct(block["direct"])
        return _model_from_fuel(block, plane_unit, standard)
    except ScenarioValidationError:
        raise
    except FireModelError as exc:
        _fail(f"model: {exc}")


def _model_from_direct(block):
    _check_keys(block, _DIRECT_KEYS, "model.direct")
    if "R0" not in block:
        _fail("model.direct needs R0")
    R0 = _field_value(block["R0"], "model.direct.R0")
    phi_s = _field_value(block.get("phi_s", 0.0), "model.direct.phi_s")
    phi_w = _field_value(block.get("phi_w", 0.0), "model.direct.phi_w")
    theta_hat = math.radians(
        _number(block.get("theta_hat_deg", 0.0), "model.direct.theta_hat_deg"))
    U = 0.0
    if "U" in block:
        U = _speed_ftmin(block["U"], "model.direct.U")

    if U == 0.0:
        if not (phi_w.is_constant and phi_w.eval(0.0, 0.0) == 0.0):
            _fail("model.direct.phi_w requires wind (a nonzero U)")
        if R0.is_constant and phi_s.is_constant:
            return SlopeMetric(float(R0.eval(0.0, 0.0)),
                               float(phi_s.eval(0.0, 0.0)))
        return SlopeMetric(R0, phi_s)

    # wind family: head rate from the factor form, back rate from the
    # wind-driven eccentricity e = sqrt(z^2 - 1)/z, z = 1 + 0.25 U (ft/min)
    zed = 1.0 + 0.25 * U
    ecc = math.sqrt(zed * zed - 1.0) / zed
    back = (1.0 - ecc) / (1.0 + ecc)
    constant = R0.is_constant and phi_s.is_constant and phi_w.is_constant

    def head(x, y):
        return R0.eval(x, y) * (1.0 + phi_w.eval(x, y) + phi_s.eval(x, y))

    if constant:
        R_H = float(head(0.0, 0.0))
        return WindMetric.from_rates(R_H, R_H * back, U, theta_hat=theta_hat)
    RH = FuncField(head, False)
    RB = FuncField(lambda x, y: head(x, y) * back, False)
    return WindMetric.from_rate_fields(RH, RB, U, theta_hat=theta_hat)


def _model_from_fuel(block, plane_unit, standard):
    if "fuel" not in block or "env" not in block:
        _fail("fuel models need both 'fuel' and 'env' blocks")
    if plane_unit not in _FT_PER_UNIT:
        _fail(f"plane_unit must be one of {sorted(_FT_PER_UNIT)}, got {plane_unit!r}")
    fblock = block["fuel"]
    _check_keys(fblock, _FUEL_KEYS, "model.fuel")
    for key in ("sigma", "w_o", "delta", "M_x", "M_f"):
        if key not in fblock:
            _fail(f"model.fuel needs {key}")
    kwargs = {k: _number(v, f"model.fuel.{k}") for k, v in fblock.items()}
    fuel = FuelBed(**kwargs)

    eblock = block["env"]
    _check_keys(eblock, _ENV_KEYS, "model.env")
    U = _speed_ftmin(eblock["U"], "model.env.U") if "U" in eblock else 0.0
    tan_phi = _number(eblock.get("tan_phi", 0.0), "model.env.tan_phi", minimum=0.0)
    theta_hat = math.radians(
        _number(eblock.get("theta_hat_deg", 0.0), "model.env.theta_hat_deg"))
    env = Environment(U=U, tan_phi=tan_phi, theta_hat=theta_hat)

    params = spread_params(fuel, env, standard=standard)
    to_plane = 60.0 / _FT_PER_UNIT[plane_unit]   # ft/min -> plane units/h
    if U == 0.0:
        return SlopeMetric(params.R0 * to_plane, params.phi_s)
    return WindMetric.from_rates(params.R_H * to_plane, params.R_B * to_plane,
                                 U, theta_hat=theta_hat)


def _load_front_csv(path):
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        _fail(f"initial.front_csv: cannot read {path}: {exc}")
    pts = []
    for i, row in enumerate(rows):
        if not row:
            continue
        if i == 0 and row[0].strip().lower() in ("x", "vertex_index", "stage"):
            continue  # header row
        if len(row) < 2:
            _fail(f"initial.front_csv: row {i + 1} has fewer than 2 columns")
        try:
            pts.append((float(row[-2]), float(row[-1])))
        except ValueError:
            _fail(f"initial.front_csv: row {i + 1} is not numeric: {row!r}")
    if len(pts) < 3:
        _fail("initial.front_csv: need at least 3 vertices")
    return pts


def _parse_initial(block, base_dir):
    _check_keys(block, _INITIAL_KEYS, "initial")
    given = [k for k in _INITIAL_KEYS if k in block]
    if len(given) != 1:
        _fail("initial needs exactly one of 'point', 'front', 'front_csv'")
    key = given[0]
    if key == "point":
        pt = block["point"]
        if not isinstance(pt, (list, tuple)) or len(pt) != 2:
            _fail("initial.point must be [x, y]")
        return (_number(pt[0], "initial.point[0]"),
                _number(pt[1], "initial.point[1]")), None
    if key == "front":
        rows = block["front"]
        if not isinstance(rows, list) or len(rows) < 3:
            _fail("initial.front must be a list of at least 3 [x, y] pairs")
        pts = []
        for i, row in enumerate(rows):
            if not isinstance(row, (list, tuple)) or len(row) != 2:
                _fail(f"initial.front[{i}] must be [x, y]")
            pts.append((_number(row[0], f"initial.front[{i}][0]"),
                        _number(row[1], f"initial.front[{i}][1]")))
        return None, _front_from_points(pts)
    path = block["front_csv"]
    if not isinstance(path, str):
        _fail("initial.front_csv must be a path string")
    if not os.path.isabs(path):
        path = os.path.join(base_dir, path)
    return None, _front_from_points(_load_front_csv(path))


def _front_from_points(pts):
    try:
        return FrontPolyline(pts, closed=True)
    except FireModelError as exc:
        _fail(f"initial front: {exc}")


def _parse_stage(block, index, plane_unit, standard):
    where = f"stages[{index}]"
    _check_keys(block, _STAGE_KEYS, where)
    for key in ("duration", "model"):
        if key not in block:
            _fail(f"{where} needs {key}")
    duration = _time_hours(block["duration"], f"{where}.duration")
    if duration <= 0:
        _fail(f"{where}.duration must be positive")
    dt = duration
    if "dt" in block:
        dt = _time_hours(block["dt"], f"{where}.dt")
        if not 0 < dt <= duration:
            _fail(f"{where}.dt must lie in (0, duration]")
    method = block.get("method", "rays")
    if method not in ("rays", "huygens"):
        _fail(f"{where}.method must be 'rays' or 'huygens', got {method!r}")
    do_untangle = _boolean(block.get("untangle", True), f"{where}.untangle")
    n_sphere = int(_number(block.get("n_sphere", 64), f"{where}.n_sphere",
                           minimum=16))
    label = block.get("label", "")
    if not isinstance(label, str):
        _fail(f"{where}.label must be a string")
    try:
        model = build_model(block["model"], plane_unit, standard)
    except ScenarioValidationError as exc:
        _fail(f"{where}.{exc}")
    return Stage(duration=duration, model=model, method=method, dt=dt,
                 untangle=do_untangle, n_sphere=n_sphere, label=label)


def parse_scenario(doc, base_dir=".", standard=False):
    """Validate a parsed YAML document into (Scenario, outputs dict)."""
    _check_keys(doc, _TOP_KEYS, "scenario")
    if doc.get("schema") != SCHEMA_VERSION:
        _fail(f"schema must be {SCHEMA_VERSION}, got {doc.get('schema')!r}")
    if "initial" not in doc:
        _fail("scenario needs 'initial'")
    if "stages" not in doc:
        _fail("scenario needs 'stages'")
    name = doc.get("name", "")
    if not isinstance(name, str):
        _fail("name must be a string")
    plane_unit = doc.get("plane_unit", "ft")
    if plane_unit not in _FT_PER_UNIT:
        _fail(f"plane_unit must be one of {sorted(_FT_PER_UNIT)}, got {plane_unit!r}")
    resolution = None
    if "resolution" in doc:
        resolution = _number(doc["resolution"], "resolution", minimum=0.0,
                             strict_min=True)
    point, front = _parse_initial(_mapping(doc["initial"], "initial"), base_dir)
    stages_doc = doc["stages"]
    if not isinstance(stages_doc, list) or not stages_doc:
        _fail("stages must be a non-empty list")
    stages = [_parse_stage(_mapping(s, f"stages[{i}]"), i, plane_unit, standard)
              for i, s in enumerate(stages_doc)]
    outputs = dict(DEFAULT_OUTPUTS)
    if "outputs" in doc:
        _check_keys(doc["outputs"], _OUTPUT_KEYS, "outputs")
        for key, val in doc["outputs"].items():
            outputs[key] = _boolean(val, f"outputs.{key}")
    scenario = Scenario(stages=stages, initial_point=point,
                        initial_front=front, resolution=resolution, name=name)
    return scenario, outputs


def load_scenario(path, standard=False):
    """Read and validate a scenario file; returns (Scenario, outputs)."""
    try:
        with open(path) as fh:
            doc = yaml.safe_load(fh)
    except OSError as exc:
        _fail(f"cannot read scenario file {path}: {exc}")
    except yaml.YAMLError as exc:
        _fail(f"scenario file {path} is not valid YAML: {exc}")
    if not isinstance(doc, dict):
        _fail("scenario file must contain a mapping at the top level")
    return parse_scenario(doc, base_dir=os.path.dirname(os.path.abspath(path)),
                          standard=standard)

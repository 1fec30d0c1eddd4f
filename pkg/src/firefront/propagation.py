"""Front marching: geodesic ray families and Huygens envelope stepping.

Two routes to the same fronts (and a cross-check of each other):

* rays — seed one outward F-orthogonal unit ray per front vertex and
  integrate the family; the front at time t is the polyline of ray
  positions in the original vertex order.

* huygens — grow the burned region by the union of small spherical
  fronts planted at every vertex, take the outer boundary, resample,
  repeat.  Spherical fronts are the closed-form polar curve for
  homogeneous models and short geodesic fans for field models.

`run_scenario` drives multi-stage simulations: each stage carries its own
metric model, marching method, output cadence dt and untangle flag.
Point ignitions are seeded with a small spherical front at t0 = dt/10 and
the first step is shortened so outputs land on the dt grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from shapely.geometry import Polygon
from shapely.ops import unary_union
from shapely import make_valid

from ._version import __version__
from .errors import (
    FireModelError,
    FrontGeometryError,
    IntegrationError,
    InvalidInputError,
    NoOrthogonalDirectionError,
)
from .fronts import FrontPolyline, _outer_ring, resample, untangle
from .geodesics import DEFAULT_STEP, RayTrajectory, _integrate_batch
from .metrics import orthogonal_unit_vectors, unit_vector_at_angle

TWO_PI = 2.0 * math.pi

MIN_SPHERE_POINTS = 16
POINT_SOURCE_FLOOR = 64
# a Huygens substep may not move the front more than this many vertex
# spacings at once (sphere-radius precondition)
HUYGENS_RADIUS_FACTOR = 5.0
RAY_FAILURE_LIMIT = 0.2


def _max_speed(model, x, y, n=360):
    """max over theta of W(p, theta), vectorized over points."""
    theta = np.linspace(0.0, TWO_PI, n, endpoint=False)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    W = model._speed_raw(x[..., None], y[..., None], theta)
    return float(np.max(W))


def _sphere_step_count(dt):
    """Internal integration step count for Huygens sphere fans."""
    return int(min(200, max(4, math.ceil(dt / 0.05))))


def _sphere_points(model, centers, T, n, h=None):
    """Spherical front points of radius-T around each center.

    Returns (pts (N, n, 2), ok (N, n)).  Homogeneous models use the
    closed-form polar curve; field models integrate a geodesic fan.
    """
    centers = np.asarray(centers, dtype=float).reshape(-1, 2)
    N = centers.shape[0]
    theta = np.arange(n) * (TWO_PI / n)
    if model.is_homogeneous:
        W = model._speed_raw(centers[:, 0:1], centers[:, 1:2], theta[None, :])
        dirs = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        pts = centers[:, None, :] + float(T) * W[:, :, None] * dirs[None, :, :]
        return pts, np.ones((N, n), dtype=bool)
    x = np.repeat(centers[:, 0], n)
    y = np.repeat(centers[:, 1], n)
    th = np.tile(theta, N)
    W = model.speed(x, y, th)
    V0 = np.stack([W * np.cos(th), W * np.sin(th)], axis=-1)
    X0 = np.stack([x, y], axis=-1)
    if h is None:
        h = min(DEFAULT_STEP, float(T))
    XS, _, alive, _, _, _ = _integrate_batch(model, X0, V0, [0.0, float(T)], h=h)
    return XS[-1].reshape(N, n, 2), alive.reshape(N, n)


def spherical_front(model, p, T, n=POINT_SOURCE_FLOOR, h=None):
    """The fire front of a point ignition at p after time T, as a polygon.

    For homogeneous models this is exactly p + T*W(theta)(cos, sin)
    sampled at n uniform angles; for field models each direction is a
    geodesic ray.  n must be at least 16.
    """
    if n < MIN_SPHERE_POINTS:
        raise InvalidInputError(
            f"n = {n} is too coarse for a spherical front (n >= {MIN_SPHERE_POINTS})"
        )
    if T <= 0:
        raise InvalidInputError(f"T must be positive, got {T}")
    x, y = p
    model.speed(x, y, 0.0)  # pointwise validity check at the center
    pts, ok = _sphere_points(model, [(float(x), float(y))], T, n, h=h)
    good = pts[0][ok[0]]
    if good.shape[0] < max(3, n // 2):
        raise IntegrationError(
            f"spherical front at {tuple(p)} lost {n - good.shape[0]} of {n} rays"
        )
    return FrontPolyline(good, closed=True)


def front_normals(model, front):
    """Outward F-orthogonal unit vectors at every vertex of a closed front.

    Tangents are central differences of neighboring vertices; among the
    orthogonal unit directions, the one with positive Euclidean dot
    against the outward Euclidean normal is selected.
    """
    if not front.closed:
        raise FrontGeometryError("front_normals requires a closed front")
    pts = front.points
    tang = np.roll(pts, -1, axis=0) - np.roll(pts, 1, axis=0)
    out = np.empty_like(pts)
    for i in range(pts.shape[0]):
        u = tang[i]
        n_euclid = np.array([u[1], -u[0]])  # outward for a CCW ring
        try:
            candidates = orthogonal_unit_vectors(model, pts[i], u)
        except NoOrthogonalDirectionError as exc:
            raise NoOrthogonalDirectionError(
                f"vertex {i} at ({pts[i][0]:g}, {pts[i][1]:g}): {exc}"
            ) from exc
        dots = [float(np.dot(v, n_euclid)) for v in candidates]
        best = int(np.argmax(dots))
        if dots[best] <= 0.0:
            raise NoOrthogonalDirectionError(
                f"vertex {i}: no outward orthogonal direction "
                f"(best Euclidean dot {dots[best]:g})"
            )
        out[i] = candidates[best]
    return out


def propagate_rays(model, front, T, output_times, h=DEFAULT_STEP):
    """March a closed front by its family of outward fire rays.

    Returns (fronts, trajectories, failures): ``fronts`` is a list of
    (t, FrontPolyline) at the requested output times, built from rays
    still alive at that time in original vertex order; ``failures`` are
    indices of rays that died before T.  More than 20% failures is an
    error.
    """
    output_times = sorted(float(t) for t in output_times)
    if not output_times or output_times[0] <= 0 or output_times[-1] > T + 1e-9:
        raise InvalidInputError("output_times must be positive and within [0, T]")
    V0 = front_normals(model, front)
    X0 = front.points
    n = X0.shape[0]
    capture = np.concatenate([[0.0], output_times])
    if model.is_homogeneous:
        # straight rays, exact
        XS = X0[None, :, :] + capture[:, None, None] * V0[None, :, :]
        VS = np.broadcast_to(V0, XS.shape).copy()
        alive = np.ones(n, dtype=bool)
        t_end = np.full(n, capture[-1])
        drift = np.zeros(n)
        notes = np.array([""] * n, dtype=object)
    else:
        XS, VS, alive, t_end, drift, notes = _integrate_batch(
            model, X0, V0, capture, h=h)
    failures = [i for i in range(n) if not alive[i]]
    if len(failures) > RAY_FAILURE_LIMIT * n:
        raise IntegrationError(
            f"{len(failures)} of {n} rays failed (> {RAY_FAILURE_LIMIT:.0%}); "
            f"first failure: ray {failures[0]} ({notes[failures[0]]})"
        )
    fronts = []
    for k, t in enumerate(output_times, start=1):
        keep = t_end >= t - 1e-12
        if np.count_nonzero(keep) < 3:
            raise IntegrationError(
                f"fewer than 3 rays alive at t = {t:g}; cannot form a front")
        fronts.append((t, FrontPolyline(XS[k][keep], closed=True)))
    trajectories = []
    for i in range(n):
        keep = capture <= t_end[i] + 1e-12
        trajectories.append(RayTrajectory(
            t=capture[keep],
            points=XS[keep, i, :],
            velocities=VS[keep, i, :],
            model_kind=model.kind,
            f_drift=float(drift[i]),
            truncated=bool(not alive[i]),
            note=str(notes[i]),
        ))
    return fronts, trajectories, failures


def huygens_step(model, front, dt, n_sphere=64, resolution=None, h=None):
    """One Huygens step: burned region grown by per-vertex spherical fronts.

    The new front is the outer boundary of the union of the current
    region with every vertex's radius-dt spherical front, resampled to
    ``resolution`` when given.  Requires the sphere radius to stay below
    5 vertex spacings (dt * max speed <= 5 * resolution).
    """
    if not front.closed:
        raise FrontGeometryError("huygens_step requires a closed front")
    if dt <= 0:
        raise InvalidInputError(f"dt must be positive, got {dt}")
    if n_sphere < MIN_SPHERE_POINTS:
        raise InvalidInputError(
            f"n_sphere = {n_sphere} is too coarse (n >= {MIN_SPHERE_POINTS})")
    pts = front.points
    if resolution is not None:
        vmax = _max_speed(model, pts[:, 0], pts[:, 1])
        if dt * vmax > HUYGENS_RADIUS_FACTOR * resolution * (1.0 + 1e-9):
            raise InvalidInputError(
                f"Huygens step too large: dt*max speed = {dt * vmax:g} exceeds "
                f"{HUYGENS_RADIUS_FACTOR:g} x resolution = "
                f"{HUYGENS_RADIUS_FACTOR * resolution:g}")
    spheres, ok = _sphere_points(model, pts, dt, n_sphere, h=h)
    region = make_valid(Polygon(pts))
    geoms = [region]
    for i in range(pts.shape[0]):
        good = spheres[i][ok[i]]
        if good.shape[0] >= 3:
            geoms.append(make_valid(Polygon(good)))
    merged = unary_union(geoms)
    xmin, ymin, xmax, ymax = front.bbox
    scale = float(np.hypot(xmax - xmin, ymax - ymin))
    ring = _outer_ring(merged, scale)
    new_front = FrontPolyline(np.asarray(ring.coords)[:-1], closed=True)
    if resolution is not None:
        new_front = _maybe_resample(new_front, resolution)
    return new_front


def _maybe_resample(front, spacing):
    """Resample unless the front is too small to carry 16 vertices."""
    if front.perimeter / spacing < MIN_SPHERE_POINTS:
        return front
    return resample(front, spacing)


# ---------------------------------------------------------------------------
# scenarios
# ---------------------------------------------------------------------------

@dataclass
class Stage:
    """One leg of a simulation with a fixed model and marching method."""

    duration: float                 # hours
    model: object                   # SlopeMetric | WindMetric
    method: str = "rays"            # "rays" | "huygens"
    dt: float | None = None         # output cadence (hours); None -> duration
    untangle: bool = True
    h: float = DEFAULT_STEP
    n_sphere: int = 64
    label: str = ""

    def __post_init__(self):
        if self.duration <= 0:
            raise InvalidInputError(f"stage duration must be positive, got {self.duration}")
        if self.method not in ("rays", "huygens"):
            raise InvalidInputError(f"unknown method {self.method!r}; use 'rays' or 'huygens'")
        if self.dt is None:
            self.dt = self.duration
        if not 0 < self.dt <= self.duration:
            raise InvalidInputError(
                f"dt must lie in (0, duration], got dt={self.dt}, duration={self.duration}")


@dataclass
class Scenario:
    """A full simulation: an initial front (or ignition point) and stages."""

    stages: list
    initial_point: tuple | None = None
    initial_front: FrontPolyline | None = None
    resolution: float | None = None
    name: str = ""

    def __post_init__(self):
        if (self.initial_point is None) == (self.initial_front is None):
            raise InvalidInputError(
                "exactly one of initial_point / initial_front is required")
        if not self.stages:
            raise InvalidInputError("scenario needs at least one stage")


@dataclass
class RunResult:
    """Everything a scenario run produced (possibly partial on abort)."""

    fronts: list = field(default_factory=list)   # (stage_no, t_abs, FrontPolyline)
    rays: list = field(default_factory=list)     # (ray_id, stage_no, t_abs0, RayTrajectory)
    report: dict = field(default_factory=dict)
    status: str = "ok"


def _default_resolution(scenario):
    if scenario.initial_front is not None:
        xmin, ymin, xmax, ymax = scenario.initial_front.bbox
        return float(np.hypot(xmax - xmin, ymax - ymin)) / 200.0
    model = scenario.stages[0].model
    x, y = scenario.initial_point
    vmax = _max_speed(model, float(x), float(y))
    total = sum(s.duration for s in scenario.stages)
    return vmax * total / 100.0


def _stage_output_times(duration, dt):
    times = []
    k = 1
    while k * dt < duration - 1e-9:
        times.append(k * dt)
        k += 1
    times.append(duration)
    return times


def run_scenario(scenario, untangle_override=None):
    """Run all stages; returns RunResult with fronts, rays and a report.

    A hard validity failure or marching error aborts the run, flushing
    whatever was computed (status "aborted", error recorded in the
    report).  Soft validity violations are recorded per stage but do not
    stop the run.
    """
    resolution = scenario.resolution or _default_resolution(scenario)
    result = RunResult()
    result.report = {
        "generator": f"firefront {__version__}",
        "status": "ok",
        "resolution": resolution,
        "stages": [],
    }
    current = scenario.initial_front
    t_clock = 0.0
    ray_id = 0

    for si, stage in enumerate(scenario.stages, start=1):
        model = stage.model
        do_untangle = stage.untangle if untangle_override is None else untangle_override
        stage_rep = {
            "stage": si,
            "label": stage.label,
            "model": model.kind,
            "method": stage.method,
            "duration_h": stage.duration,
            "dt_h": stage.dt,
            "untangle": bool(do_untangle),
            "ray_count": 0,
            "ray_failures": 0,
            "fronts": [],
        }
        result.report["stages"].append(stage_rep)
        try:
            if current is not None:
                px, py = current.points[:, 0], current.points[:, 1]
            else:
                px, py = scenario.initial_point
            validity = model.validity_report((px, py))
            stage_rep["validity"] = validity.as_dict()
            if not validity.ok:
                raise FireModelError(
                    "model validity failed: "
                    + "; ".join(c.detail for c in validity.hard_failures))

            elapsed = 0.0
            if current is None:
                t0 = stage.dt / 10.0
                vmax = _max_speed(model, float(px), float(py))
                n_seed = int(min(4096, max(
                    POINT_SOURCE_FLOOR,
                    math.ceil(TWO_PI * vmax * (t0 + stage.duration) / resolution))))
                current = spherical_front(model, (px, py), t0, n=n_seed, h=stage.h)
                elapsed = t0
                _emit(result, stage_rep, si, t_clock + t0, current)

            out_local = _stage_output_times(stage.duration, stage.dt)

            if stage.method == "rays":
                rel_times = [t - elapsed for t in out_local if t - elapsed > 1e-9]
                fronts_t, trajs, failures = propagate_rays(
                    model, current, stage.duration - elapsed, rel_times, h=stage.h)
                stage_rep["ray_count"] = len(trajs)
                stage_rep["ray_failures"] = len(failures)
                emitted = None
                for t_rel, raw in fronts_t:
                    f = raw
                    if do_untangle:
                        f = _maybe_resample(untangle(raw), resolution)
                    _emit(result, stage_rep, si, t_clock + elapsed + t_rel, f)
                    emitted = f
                for traj in trajs:
                    result.rays.append((ray_id, si, t_clock + elapsed, traj))
                    ray_id += 1
                current = emitted
            else:
                t_local = elapsed
                for target in out_local:
                    seg = target - t_local
                    if seg <= 1e-9:
                        continue
                    vmax = _max_speed(model, current.points[:, 0], current.points[:, 1])
                    nsub = max(1, math.ceil(
                        seg * vmax / (HUYGENS_RADIUS_FACTOR * resolution)))
                    sub = seg / nsub
                    h_sphere = sub / _sphere_step_count(sub)
                    for _ in range(nsub):
                        current = huygens_step(
                            model, current, sub, n_sphere=stage.n_sphere,
                            resolution=resolution, h=h_sphere)
                    t_local = target
                    _emit(result, stage_rep, si, t_clock + target, current)

            t_clock += stage.duration
        except FireModelError as exc:
            result.status = "aborted"
            result.report["status"] = "aborted"
            result.report["error"] = f"stage {si}: {exc}"
            break
    return result


def _emit(result, stage_rep, stage_no, t_abs, front):
    result.fronts.append((stage_no, t_abs, front))
    stage_rep["fronts"].append({
        "t_h": t_abs,
        "vertices": front.n,
        "area": front.signed_area,
        "simple": front.is_simple,
    })

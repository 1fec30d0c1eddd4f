"""Fire rays: geodesics of the spread metric, integrated or closed-form.

Rays are unit-Finsler-speed geodesics (F(x, v) = 1 along the whole
trajectory), solutions of

    x'' + 2 G(x, x') = 0

with the spray coefficients G from :mod:`firefront.metrics`.  For
homogeneous metrics G vanishes identically and rays are straight lines;
the integrator reproduces that exactly (the spray differences are exact
zeros), but :func:`straight_ray` is provided for the closed form.

Integration is classical fixed-step RK4 (default h = 0.01 time units) on
the first-order system (x, v)' = (v, -2G).  After every step the velocity
is renormalized to the indicatrix (v <- v/F) by default; with
renormalization off, a speed drift |F - 1| > 1e-3 aborts the ray.  The
batch engine advances many rays at once and freezes rays individually
when they leave the model's validity region instead of failing the whole
family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IntegrationError, InvalidInputError
from .metrics import _spray_many

DEFAULT_STEP = 0.01
DRIFT_LIMIT = 1e-3
UNIT_TOL = 1e-9


@dataclass
class RayTrajectory:
    """A sampled fire ray.

    ``t`` is strictly increasing with t[0] = 0; ``points[k]`` and
    ``velocities[k]`` are the state at t[k].  ``f_drift`` is the largest
    |F - 1| observed at committed samples; ``truncated`` marks rays that
    stopped early (validity violation), with the reason in ``note``.
    """

    t: np.ndarray
    points: np.ndarray
    velocities: np.ndarray
    model_kind: str = ""
    f_drift: float = 0.0
    truncated: bool = False
    note: str = ""

    @property
    def samples(self):
        """Ordered (t, x, y, v1, v2) tuples."""
        return [
            (float(tk), float(p[0]), float(p[1]), float(v[0]), float(v[1]))
            for tk, p, v in zip(self.t, self.points, self.velocities)
        ]

    @property
    def end_point(self):
        return float(self.points[-1, 0]), float(self.points[-1, 1])


def _as_times(T, sample_times, h):
    T = float(T)
    if T <= 0:
        raise InvalidInputError(f"T must be positive, got {T}")
    if sample_times is None:
        n = max(1, math.ceil(T / h - 1e-12))
        times = np.linspace(0.0, T, n + 1)
    else:
        times = np.asarray(sample_times, dtype=float)
        if times.ndim != 1 or times.size == 0 or np.any(np.diff(times) <= 0):
            raise InvalidInputError("sample_times must be strictly increasing")
        if times[0] < 0 or times[-1] > T + 1e-12:
            raise InvalidInputError("sample_times must lie in [0, T]")
        if times[0] != 0.0:
            times = np.concatenate([[0.0], times])
    return times


def straight_ray(p, v, T, sample_times=None):
    """The ray t -> p + t v of a homogeneous model; samples lie exactly on it."""
    times = _as_times(T, sample_times, DEFAULT_STEP * max(1.0, float(T)))
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    pts = p[None, :] + times[:, None] * v[None, :]
    vel = np.broadcast_to(v, pts.shape).copy()
    return RayTrajectory(t=times, points=pts, velocities=vel)


def _rk4_rhs(model, X, V):
    G, ok = _spray_many(model, X, V)
    return V, -2.0 * G, ok


def _integrate_batch(model, X0, V0, capture_times, h=DEFAULT_STEP,
                     renormalize=True):
    """Advance rays (X0, V0) through the sorted capture_times grid.

    Returns (XS, VS, alive, t_end, drift, notes): XS/VS have shape
    (len(capture_times), N, 2) and hold, for rays that died earlier, the
    frozen last-valid state.  ``t_end[i]`` is the time up to which ray i
    actually advanced.
    """
    X = np.array(X0, dtype=float)
    V = np.array(V0, dtype=float)
    n = X.shape[0]
    capture_times = np.asarray(capture_times, dtype=float)

    alive = np.ones(n, dtype=bool)
    t_end = np.full(n, capture_times[-1])
    drift = np.zeros(n)
    notes = np.array([""] * n, dtype=object)

    XS = np.empty((capture_times.size, n, 2))
    VS = np.empty((capture_times.size, n, 2))
    out_i = 0
    t_now = 0.0
    if capture_times[0] == 0.0:
        XS[0], VS[0] = X, V
        out_i = 1

    for target in capture_times[out_i:]:
        while t_now < target - 1e-12:
            step = min(h, target - t_now)
            if not np.any(alive):
                t_now = target
                break
            rows = np.nonzero(alive)[0]
            Xa, Va = X[rows], V[rows]

            with np.errstate(all="ignore"):
                k1x, k1v, ok1 = _rk4_rhs(model, Xa, Va)
                k2x, k2v, ok2 = _rk4_rhs(model, Xa + 0.5 * step * k1x, Va + 0.5 * step * k1v)
                k3x, k3v, ok3 = _rk4_rhs(model, Xa + 0.5 * step * k2x, Va + 0.5 * step * k2v)
                k4x, k4v, ok4 = _rk4_rhs(model, Xa + step * k3x, Va + step * k3v)
                ok = ok1 & ok2 & ok3 & ok4

                Xn = Xa + (step / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
                Vn = Va + (step / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)

                W = model._speed_raw(Xn[:, 0], Xn[:, 1], np.arctan2(Vn[:, 1], Vn[:, 0]))
                F = np.hypot(Vn[:, 0], Vn[:, 1]) / np.where(W > 0, W, 1.0)
                ok &= np.atleast_1d(model.validity_mask(Xn[:, 0], Xn[:, 1]))
                ok &= np.atleast_1d(W > 0) & np.isfinite(F) & (F > 0)
                ok &= np.all(np.isfinite(Xn), axis=1) & np.all(np.isfinite(Vn), axis=1)

                step_drift = np.where(ok, np.abs(F - 1.0), 0.0)
                dead_drift = np.zeros(rows.size, dtype=bool)
                if renormalize:
                    Vn = np.where(ok[:, None], Vn / np.where(ok, F, 1.0)[:, None], Vn)
                else:
                    dead_drift = ok & (step_drift > DRIFT_LIMIT)
                    ok &= ~dead_drift
                dead_other = ~ok & ~dead_drift

            X[rows[ok]] = Xn[ok]
            V[rows[ok]] = Vn[ok]
            drift[rows[ok]] = np.maximum(drift[rows[ok]], step_drift[ok])

            for rel in np.nonzero(dead_drift)[0]:
                j = rows[rel]
                alive[j] = False
                t_end[j] = t_now
                notes[j] = f"F drift exceeded {DRIFT_LIMIT:g}"
            for rel in np.nonzero(dead_other)[0]:
                j = rows[rel]
                alive[j] = False
                t_end[j] = t_now
                notes[j] = "left the model validity region"
            t_now += step
        XS[out_i], VS[out_i] = X, V
        out_i += 1
    return XS, VS, alive, t_end, drift, notes


def integrate_geodesic(model, p, v, T, h=DEFAULT_STEP, renormalize=True,
                       sample_times=None):
    """Integrate one fire ray from (p, v) for time T.

    ``v`` must be a unit vector (F(p, v) = 1 within 1e-9).  Returns a
    RayTrajectory sampled at ``sample_times`` (default: every step).  A
    validity violation truncates the trajectory (``truncated=True``); a
    speed drift beyond 1e-3 with renormalization off raises
    IntegrationError.
    """
    from .metrics import metric_value

    if h <= 0:
        raise InvalidInputError(f"step h must be positive, got {h}")
    F0 = float(metric_value(model, p, v))
    if abs(F0 - 1.0) > UNIT_TOL:
        raise InvalidInputError(
            f"initial velocity is not unit: F(p, v) = {F0!r} (|F-1| > {UNIT_TOL:g})"
        )
    times = _as_times(T, sample_times, h)
    X0 = np.asarray(p, dtype=float)[None, :]
    V0 = np.asarray(v, dtype=float)[None, :]
    XS, VS, alive, t_end, drift, notes = _integrate_batch(
        model, X0, V0, times, h=h, renormalize=renormalize)
    note = str(notes[0])
    if not alive[0] and "drift" in note:
        raise IntegrationError(
            f"geodesic aborted at t = {t_end[0]:g}: {note}", t=float(t_end[0]))
    keep = times <= t_end[0] + 1e-12
    return RayTrajectory(
        t=times[keep],
        points=XS[keep, 0, :],
        velocities=VS[keep, 0, :],
        model_kind=model.kind,
        f_drift=float(drift[0]),
        truncated=bool(not alive[0]),
        note=note,
    )


def exponential_front_point(model, p, theta, T, h=DEFAULT_STEP):
    """Endpoint at time T of the unit-speed ray leaving p at angle theta."""
    from .metrics import unit_vector_at_angle

    v = unit_vector_at_angle(model, p, float(theta))
    ray = integrate_geodesic(model, p, v, T, h=h, sample_times=[float(T)])
    if ray.truncated:
        raise IntegrationError(
            f"ray from {tuple(p)} at angle {float(theta):g} {ray.note} "
            f"at t = {ray.t[-1]:g}", t=float(ray.t[-1]))
    return float(ray.points[-1, 0]), float(ray.points[-1, 1])

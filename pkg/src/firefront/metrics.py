"""Anisotropic fire-spread metrics and their differential machinery.

All four models share the polar form

    F(p, v) = ||v|| / W(p, theta_v),

where W(p, theta) is the direction-dependent spread speed and theta_v the
angle of v counterclockwise from +x (the uphill axis).  The unit sphere
{F = 1} at p — the indicatrix — is the fire front reached in unit time
from p, so W is exactly the polar radius of that front.

Two families:

* SlopeMetric (no wind): W = R0 (1 + phi_s cos theta), a limacon.
  Homogeneous parameters => model kind "M1"; field-valued => "M3".
  Valid iff 0 <= phi_s < 1/2 (strict convexity of the limacon).

* WindMetric (wind): W = a b / sqrt(a^2 cos^2 psi + b^2 sin^2 psi)
  + c cos psi with psi = theta - theta_hat; b + c is the head rate R_H,
  b - c the backing rate R_B, a the flank rate.  Homogeneous => "M2";
  field-valued => "M4".  Hard validity bound R_H^2 < (9/8)(1 + 0.25 U)
  (U in ft/min) when U is known; the convexity chain 2c < b < a + c is
  checked and reported but does not block construction (realistic
  wind-driven frames are eccentric enough to violate it while remaining
  positive and usable).

The fundamental form g_ij = 1/2 d^2(F^2)/dv_i dv_j is available both by
central finite differences in v (the reference path) and in closed form:
in the polar frame with w = 1/W^2,

    g = w e_r⊗e_r + (w'/2)(e_r⊗e_theta + e_theta⊗e_r)
        + (w + w''/2) e_theta⊗e_theta,

primes denoting d/dtheta.  det g = (W^2 - W W'' + 2 W'^2)/W^6, so g is
positive definite exactly where the indicatrix is strictly convex.

Orthogonality: a unit vector v = W(theta)(cos theta, sin theta) is
F-orthogonal to a front tangent u iff u is parallel to the indicatrix
tangent at v, i.e.

    res(theta; u) = (W' cos - W sin) u2 - (W' sin + W cos) u1 = 0,

which is equivalent to g_v(v, u) = 0 on the indicatrix (property-tested
against the finite-difference fundamental form).  For the wind family the
residual is exposed in two algebraically proportional shapes, "normalized"
(divided by ab, the M2 convention) and "scaled" (the M4 convention); their
root sets coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidInputError,
    ModelValidityError,
    NoOrthogonalDirectionError,
)
from .fields import FuncField, as_field

TWO_PI = 2.0 * math.pi

# sampling density for angular sweeps (validity scans, root bracketing)
_SWEEP_N = 720


# ---------------------------------------------------------------------------
# validity reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidityCheck:
    """One validity condition: ok is True/False, or None when unevaluable."""

    name: str
    severity: str  # "hard" | "soft"
    ok: bool | None
    detail: str


@dataclass(frozen=True)
class ValidityReport:
    model_kind: str
    checks: tuple

    @property
    def ok(self):
        """True when no hard condition is violated."""
        return not self.hard_failures

    @property
    def hard_failures(self):
        return [c for c in self.checks if c.severity == "hard" and c.ok is False]

    @property
    def soft_failures(self):
        return [c for c in self.checks if c.severity == "soft" and c.ok is False]

    def as_dict(self):
        return {
            "model": self.model_kind,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "severity": c.severity, "ok": c.ok, "detail": c.detail}
                for c in self.checks
            ],
        }


def _first_bad(x, y, mask):
    """Coordinates of the first point where a boolean mask is False."""
    bad = np.argwhere(~np.atleast_1d(mask))
    idx = tuple(bad[0]) if bad.size else ()
    xv = np.atleast_1d(np.broadcast_to(x, np.shape(mask)))[idx] if idx else np.ravel(x)[0]
    yv = np.atleast_1d(np.broadcast_to(y, np.shape(mask)))[idx] if idx else np.ravel(y)[0]
    return float(xv), float(yv)


# ---------------------------------------------------------------------------
# metric models
# ---------------------------------------------------------------------------

class _PolarMetric:
    """Shared machinery for metrics of the form F = ||v||/W(p, theta)."""

    family = "?"

    # -- implemented by subclasses -------------------------------------
    def _speed_raw(self, x, y, theta):
        raise NotImplementedError

    def _speed_derivs_raw(self, x, y, theta):
        """(W, dW/dtheta, d2W/dtheta2), no validity checking."""
        raise NotImplementedError

    def validity_mask(self, x, y):
        """Boolean mask of points satisfying the hard conditions."""
        raise NotImplementedError

    def validity_report(self, p=None):
        raise NotImplementedError

    # -- common --------------------------------------------------------
    @property
    def kind(self):
        if self.family == "slope":
            return "M1" if self.is_homogeneous else "M3"
        return "M2" if self.is_homogeneous else "M4"

    def _require_valid(self, x, y):
        if self.is_homogeneous and self._construction_checked:
            return
        mask = self.validity_mask(x, y)
        if not np.all(mask):
            px, py = _first_bad(x, y, mask)
            raise ModelValidityError(
                f"{self.kind} validity violated at ({px:g}, {py:g})",
                condition="pointwise",
                report=self.validity_report((px, py)),
            )

    def speed(self, x, y, theta):
        """Directional spread speed W(p, theta); checks validity pointwise."""
        self._require_valid(x, y)
        W = self._speed_raw(x, y, theta)
        if not np.all(W > 0):
            raise ModelValidityError(
                f"{self.kind} spread speed is non-positive for a requested direction",
                condition="speed_positive",
            )
        return W

    def orthogonality_residual(self, p, theta, u, form="default"):
        """Residual of the orthogonality condition at angle theta.

        Zero exactly when v = W(theta)(cos theta, sin theta) is
        F-orthogonal to the front-tangent u.  ``form`` selects the wind
        family's shape: "normalized" (divided by ab) or "scaled"; the
        slope family has a single shape.
        """
        x, y = p
        u1, u2 = float(u[0]), float(u[1])
        if u1 == 0.0 and u2 == 0.0:
            raise InvalidInputError("front tangent u must be nonzero")
        W, Wt, _ = self._speed_derivs_raw(x, y, theta)
        ct, st = np.cos(theta), np.sin(theta)
        res = (Wt * ct - W * st) * u2 - (Wt * st + W * ct) * u1
        if self.family == "wind" and form != "scaled":
            a, b = self._ab_at(x, y)
            res = res / (a * b)
        return res


def _phi_s_detail(psmin, psmax):
    if psmax >= 0.5:
        return f"phi_s in [{psmin:g}, {psmax:g}] violates phi_s < 0.5"
    if psmin < 0:
        return f"phi_s in [{psmin:g}, {psmax:g}] violates phi_s >= 0"
    return f"phi_s in [{psmin:g}, {psmax:g}], within [0, 0.5)"


class SlopeMetric(_PolarMetric):
    """No-wind fire metric with limacon indicatrix W = R0 (1 + phi_s cos theta).

    R0 and phi_s may be constants or ScalarFields; all-constant parameters
    give the homogeneous model (kind "M1", validated at construction),
    field-valued parameters the smooth-variation model (kind "M3",
    validated pointwise at evaluation sites).
    """

    family = "slope"

    def __init__(self, R0, phi_s, validate=True):
        self.R0 = as_field(R0)
        self.phi_s = as_field(phi_s)
        self.is_homogeneous = self.R0.is_constant and self.phi_s.is_constant
        self._validate = bool(validate)
        self._construction_checked = False
        if self.is_homogeneous and self._validate:
            report = self.validity_report((0.0, 0.0))
            if not report.ok:
                failed = report.hard_failures[0]
                raise ModelValidityError(
                    f"cannot construct {self.kind}: {failed.detail}",
                    condition=failed.name,
                    report=report,
                )
            self._construction_checked = True

    def _params(self, x, y):
        return self.R0.eval(x, y), self.phi_s.eval(x, y)

    def _speed_raw(self, x, y, theta):
        R0, ps = self._params(x, y)
        return R0 * (1.0 + ps * np.cos(theta))

    def _speed_derivs_raw(self, x, y, theta):
        R0, ps = self._params(x, y)
        ct = np.cos(theta)
        st = np.sin(theta)
        W = R0 * (1.0 + ps * ct)
        return W, -R0 * ps * st, -R0 * ps * ct

    def validity_mask(self, x, y):
        if not self._validate:
            return np.broadcast_to(True, np.broadcast(np.asarray(x), np.asarray(y)).shape)
        R0, ps = self._params(x, y)
        return (R0 > 0) & (ps >= 0) & (ps < 0.5)

    def validity_report(self, p=None):
        if p is None:
            if not self.is_homogeneous:
                raise InvalidInputError("field-valued model: validity_report needs a point p")
            p = (0.0, 0.0)
        R0, ps = self._params(*p)
        R0max, R0min = float(np.max(R0)), float(np.min(R0))
        psmax, psmin = float(np.max(ps)), float(np.min(ps))
        checks = (
            ValidityCheck("R0_positive", "hard", bool(R0min > 0),
                          f"R0 in [{R0min:g}, {R0max:g}], must be > 0"),
            ValidityCheck("phi_s_bound", "hard", bool(0 <= psmin and psmax < 0.5),
                          _phi_s_detail(psmin, psmax)),
        )
        return ValidityReport(self.kind, checks)


class WindMetric(_PolarMetric):
    """Wind-driven fire metric with ellipse-plus-offset indicatrix.

    W = a b / sqrt(a^2 cos^2 psi + b^2 sin^2 psi) + c cos psi, where
    psi = theta - theta_hat.  Head rate R_H = b + c (along theta_hat),
    backing rate R_B = b - c, flank rate a.  ``U`` is the mid-flame wind
    speed in ft/min; when it is None (frame given directly without a wind
    speed) the wind validity bound cannot be evaluated and is skipped.
    """

    family = "wind"

    def __init__(self, a, b, c, theta_hat=0.0, U=None, validate=True):
        self.a = as_field(a)
        self.b = as_field(b)
        self.c = as_field(c)
        self.theta_hat = as_field(theta_hat)
        self.U = None if U is None else float(U)
        if self.U is not None and self.U < 0:
            raise InvalidInputError(f"U must be >= 0, got {self.U}")
        self.is_homogeneous = all(
            f.is_constant for f in (self.a, self.b, self.c, self.theta_hat)
        )
        self._validate = bool(validate)
        self._construction_checked = False
        if self.is_homogeneous and self._validate:
            report = self.validity_report((0.0, 0.0))
            if not report.ok:
                failed = report.hard_failures[0]
                raise ModelValidityError(
                    f"cannot construct {self.kind}: {failed.detail}",
                    condition=failed.name,
                    report=report,
                )
            self._construction_checked = True

    @classmethod
    def from_rates(cls, R_H, R_B, U, theta_hat=0.0, validate=True):
        """Build the homogeneous frame from head/back rates and U (ft/min)."""
        from .rothermel import frame_from_rates

        a, b, c = frame_from_rates(R_H, R_B, U)
        return cls(a, b, c, theta_hat=theta_hat, U=U, validate=validate)

    @classmethod
    def from_rate_fields(cls, R_H, R_B, U, theta_hat=0.0, validate=True):
        """Build a field-valued frame from rate fields and constant U (ft/min).

        a, b, c are derived pointwise: b = (R_H + R_B)/2, c = (R_H - R_B)/2,
        a = (1 + 0.25 U)/(2 (R_B + R_H)).
        """
        RH = as_field(R_H)
        RB = as_field(R_B)
        U = float(U)
        if U < 0:
            raise InvalidInputError(f"U must be >= 0, got {U}")
        zed = 1.0 + 0.25 * U
        constant = RH.is_constant and RB.is_constant
        a = FuncField(lambda x, y: zed / (2.0 * (RH.eval(x, y) + RB.eval(x, y))), constant)
        b = FuncField(lambda x, y: 0.5 * (RH.eval(x, y) + RB.eval(x, y)), constant)
        c = FuncField(lambda x, y: 0.5 * (RH.eval(x, y) - RB.eval(x, y)), constant)
        return cls(a, b, c, theta_hat=theta_hat, U=U, validate=validate)

    def _params(self, x, y):
        return (self.a.eval(x, y), self.b.eval(x, y), self.c.eval(x, y),
                self.theta_hat.eval(x, y))

    def _ab_at(self, x, y):
        return self.a.eval(x, y), self.b.eval(x, y)

    def _speed_raw(self, x, y, theta):
        a, b, c, th = self._params(x, y)
        psi = theta - th
        cp = np.cos(psi)
        D = b * b + (a * a - b * b) * cp * cp
        return a * b / np.sqrt(D) + c * cp

    def _speed_derivs_raw(self, x, y, theta):
        a, b, c, th = self._params(x, y)
        psi = theta - th
        cp = np.cos(psi)
        sp = np.sin(psi)
        a2b2 = a * a - b * b
        D = b * b + a2b2 * cp * cp
        Dp = -a2b2 * np.sin(2.0 * psi)
        Dpp = -2.0 * a2b2 * np.cos(2.0 * psi)
        rootD = np.sqrt(D)
        ab = a * b
        W = ab / rootD + c * cp
        Wt = -0.5 * ab * Dp / (D * rootD) - c * sp
        Wtt = ab * (0.75 * Dp * Dp / (D * D * rootD) - 0.5 * Dpp / (D * rootD)) - c * cp
        return W, Wt, Wtt

    def validity_mask(self, x, y):
        shape = np.broadcast(np.asarray(x), np.asarray(y)).shape
        if not self._validate:
            return np.broadcast_to(True, shape)
        a, b, c, _ = self._params(x, y)
        ok = (a > 0) & (b > 0) & (c >= 0) & (b - c > 0)
        if self.U is not None:
            R_H = b + c
            ok = ok & (R_H * R_H < 1.125 * (1.0 + 0.25 * self.U))
        return np.broadcast_to(ok, shape)

    def _min_speed(self, p):
        theta = np.linspace(0.0, TWO_PI, _SWEEP_N, endpoint=False)
        x, y = p
        W = self._speed_raw(np.asarray(x, dtype=float)[..., None] if np.ndim(x) else x,
                            np.asarray(y, dtype=float)[..., None] if np.ndim(y) else y,
                            theta)
        return float(np.min(W))

    def validity_report(self, p=None):
        if p is None:
            if not self.is_homogeneous:
                raise InvalidInputError("field-valued model: validity_report needs a point p")
            p = (0.0, 0.0)
        a, b, c, _ = self._params(*p)
        amin = float(np.min(a))
        bmin, bmax = float(np.min(b)), float(np.max(b))
        cmin, cmax = float(np.min(c)), float(np.max(c))
        R_H = b + c
        rhmax = float(np.max(R_H))
        checks = [
            ValidityCheck("rates_positive", "hard",
                          bool(amin > 0 and bmin > 0 and cmin >= 0 and np.min(b - c) > 0),
                          f"need a > 0, b > 0, 0 <= c < b; got a>={amin:g}, "
                          f"b in [{bmin:g}, {bmax:g}], c in [{cmin:g}, {cmax:g}]"),
        ]
        if self.U is None:
            checks.append(ValidityCheck(
                "rh_wind_bound", "hard", None,
                "R_H^2 < (9/8)(1 + 0.25 U) not evaluable: U unknown for this frame"))
        else:
            bound = 1.125 * (1.0 + 0.25 * self.U)
            checks.append(ValidityCheck(
                "rh_wind_bound", "hard", bool(rhmax * rhmax < bound),
                f"R_H^2 = {rhmax * rhmax:g} must be < (9/8)(1 + 0.25 U) = {bound:g}"))
        checks.append(ValidityCheck(
            "convexity_2c_lt_b", "soft", bool(np.max(2.0 * c - b) < 0),
            f"2c < b: max(2c - b) = {float(np.max(2.0 * c - b)):g}"))
        checks.append(ValidityCheck(
            "convexity_b_lt_a_plus_c", "soft", bool(np.max(b - a - c) < 0),
            f"b < a + c: max(b - a - c) = {float(np.max(b - a - c)):g}"))
        minW = self._min_speed(p)
        checks.append(ValidityCheck(
            "speed_positive", "hard", bool(minW > 0),
            f"min_theta W = {minW:g} must be > 0"))
        return ValidityReport(self.kind, tuple(checks))


# ---------------------------------------------------------------------------
# metric evaluation
# ---------------------------------------------------------------------------

def indicatrix_speed(model, p, theta):
    """Spread speed W(p, theta): the polar radius of the unit-time front."""
    x, y = p
    return model.speed(x, y, theta)


def metric_value(model, p, v):
    """F(p, v) = ||v|| / W(p, theta_v); positively 1-homogeneous in v."""
    x, y = p
    v1 = np.asarray(v[0], dtype=float)
    v2 = np.asarray(v[1], dtype=float)
    r = np.hypot(v1, v2)
    if not np.all(r > 0):
        raise InvalidInputError("metric_value undefined at the zero vector")
    theta = np.arctan2(v2, v1)
    return r / model.speed(x, y, theta)


def unit_vector_at_angle(model, p, theta):
    """The unit vector (F = 1) pointing at angle theta: W(theta)(cos, sin)."""
    x, y = p
    W = model.speed(x, y, theta)
    return np.stack(np.broadcast_arrays(W * np.cos(theta), W * np.sin(theta)), axis=-1)


def _g_components_raw(model, x, y, theta):
    """Closed-form fundamental form components (g11, g12, g22), unchecked."""
    W, Wt, Wtt = model._speed_derivs_raw(x, y, theta)
    iW2 = 1.0 / (W * W)
    w = iW2
    wp = -2.0 * Wt * iW2 / W
    wpp = (-2.0 * Wtt * W + 6.0 * Wt * Wt) * iW2 * iW2
    ct = np.cos(theta)
    st = np.sin(theta)
    A = w
    B = 0.5 * wp
    C = w + 0.5 * wpp
    g11 = A * ct * ct - 2.0 * B * ct * st + C * st * st
    g12 = (A - C) * ct * st + B * (ct * ct - st * st)
    g22 = A * st * st + 2.0 * B * ct * st + C * ct * ct
    return g11, g12, g22


def fundamental_form(model, p, v, method="fd", step=1e-4):
    """Fundamental form g at (p, v) as a symmetric 2x2 array.

    ``method="fd"`` (default) takes central second differences of F^2/2
    in v with the given step; ``method="analytic"`` uses the closed-form
    polar expression (validated against the difference path in tests).
    Raises a validity error if the result is not positive definite.
    """
    x, y = p
    v1, v2 = float(v[0]), float(v[1])
    if v1 == 0.0 and v2 == 0.0:
        raise InvalidInputError("fundamental form undefined at the zero vector")
    model._require_valid(x, y)
    if method == "analytic":
        theta = math.atan2(v2, v1)
        g11, g12, g22 = _g_components_raw(model, x, y, theta)
    elif method == "fd":
        def phi(w1, w2):
            r = math.hypot(w1, w2)
            W = model._speed_raw(x, y, math.atan2(w2, w1))
            F = r / W
            return 0.5 * F * F

        h = float(step)
        g11 = (phi(v1 + h, v2) - 2.0 * phi(v1, v2) + phi(v1 - h, v2)) / (h * h)
        g22 = (phi(v1, v2 + h) - 2.0 * phi(v1, v2) + phi(v1, v2 - h)) / (h * h)
        g12 = (phi(v1 + h, v2 + h) - phi(v1 + h, v2 - h)
               - phi(v1 - h, v2 + h) + phi(v1 - h, v2 - h)) / (4.0 * h * h)
    else:
        raise InvalidInputError(f"unknown method {method!r}; use 'fd' or 'analytic'")
    g = np.array([[g11, g12], [g12, g22]], dtype=float)
    det = g11 * g22 - g12 * g12
    if not (g11 > 0 and det > 0):
        raise ModelValidityError(
            f"fundamental form is not positive definite at (p={tuple(p)}, v={(v1, v2)}): "
            f"g11={g11:g}, det={det:g}",
            condition="positive_definite",
        )
    return g


def _spray_many(model, X, V, x_step=1e-4):
    """Spray coefficients G^i for rows of X (N,2), V (N,2).

    Returns (G (N,2), ok (N,) bool); rows with singular or non-finite
    fundamental form are flagged rather than raised, so the integrator
    can truncate individual rays.
    """
    X = np.asarray(X, dtype=float)
    V = np.asarray(V, dtype=float)
    x = X[:, 0]
    y = X[:, 1]
    theta = np.arctan2(V[:, 1], V[:, 0])
    h = float(x_step)

    g11, g12, g22 = _g_components_raw(model, x, y, theta)

    # position derivatives of g by central differences (exactly zero for
    # homogeneous models: the shifted field evaluations coincide)
    def gshift(dx, dy):
        return _g_components_raw(model, x + dx, y + dy, theta)

    gx = [(p - m) / (2.0 * h) for p, m in zip(gshift(h, 0.0), gshift(-h, 0.0))]
    gy = [(p - m) / (2.0 * h) for p, m in zip(gshift(0.0, h), gshift(0.0, -h))]

    v1 = V[:, 0]
    v2 = V[:, 1]

    def quad(c11, c12, c22):
        return c11 * v1 * v1 + 2.0 * c12 * v1 * v2 + c22 * v2 * v2

    def matvec(c11, c12, c22):
        return c11 * v1 + c12 * v2, c12 * v1 + c22 * v2

    # term_l = 2 sum_k v^k (d_k g v)_l - (v^T d_l g v)
    mx1, mx2 = matvec(*gx)
    my1, my2 = matvec(*gy)
    t1 = 2.0 * (v1 * mx1 + v2 * my1) - quad(*gx)
    t2 = 2.0 * (v1 * mx2 + v2 * my2) - quad(*gy)

    det = g11 * g22 - g12 * g12
    scale = g11 * g11 + 2.0 * g12 * g12 + g22 * g22
    ok = np.isfinite(det) & (np.abs(det) > 1e-14 * np.maximum(scale, 1e-300))
    ok &= np.isfinite(t1) & np.isfinite(t2)
    safe = np.where(ok, det, 1.0)
    G1 = 0.25 * (g22 * t1 - g12 * t2) / safe
    G2 = 0.25 * (-g12 * t1 + g11 * t2) / safe
    G = np.stack([np.where(ok, G1, 0.0), np.where(ok, G2, 0.0)], axis=-1)
    return G, ok


def spray_coefficients(model, p, v, x_step=1e-4):
    """Geodesic spray coefficients (G1, G2) at (p, v).

    G^i = 1/4 g^{il} (2 d_k g_{jl} v^j v^k - d_l g_{jk} v^j v^k), with the
    positional derivatives of g taken by central differences of step
    ``x_step``.  Exactly (0, 0) for homogeneous models.
    """
    x, y = p
    v1, v2 = float(v[0]), float(v[1])
    if v1 == 0.0 and v2 == 0.0:
        raise InvalidInputError("spray coefficients undefined at the zero vector")
    model._require_valid(x, y)
    G, ok = _spray_many(model, np.array([[float(x), float(y)]]),
                        np.array([[v1, v2]]), x_step=x_step)
    if not ok[0]:
        raise ModelValidityError(
            f"singular fundamental form at (p={tuple(p)}, v={(v1, v2)})",
            condition="singular_g",
        )
    return float(G[0, 0]), float(G[0, 1])


def validity_check(model, p=None):
    """Validity report for the model (evaluated at p for field models)."""
    return model.validity_report(p)


# ---------------------------------------------------------------------------
# orthogonality solver
# ---------------------------------------------------------------------------

def orthogonality_residual(model, p, theta, u, form="default"):
    """Residual of the model's orthogonality condition (see module docs)."""
    return model.orthogonality_residual(p, theta, u, form=form)


def orthogonal_unit_vectors(model, p, u, form="default"):
    """All unit vectors F-orthogonal to the front tangent u at p.

    Parametrizes v(theta) = W(theta)(cos theta, sin theta) — unitary by
    construction — and root-finds the orthogonality residual over
    [0, 2 pi) by sign-change bracketing on a 720-sample sweep followed by
    bisection to 1e-12 in theta.  Typically two roots (inward/outward).
    """
    x, y = p
    u = np.asarray(u, dtype=float)
    if u.shape != (2,) or (u[0] == 0.0 and u[1] == 0.0):
        raise InvalidInputError("front tangent u must be a nonzero 2-vector")
    model._require_valid(x, y)

    thetas = np.linspace(0.0, TWO_PI, _SWEEP_N, endpoint=False)
    res = np.asarray(model.orthogonality_residual(p, thetas, u, form=form), dtype=float)
    res_next = np.roll(res, -1)

    roots = list(thetas[res == 0.0])
    lo_idx = np.nonzero((res * res_next < 0.0))[0]
    if lo_idx.size:
        lo = thetas[lo_idx]
        hi = lo + TWO_PI / _SWEEP_N
        flo = res[lo_idx]
        for _ in range(50):  # (2pi/720)/2^50 << 1e-12
            mid = 0.5 * (lo + hi)
            fmid = np.asarray(model.orthogonality_residual(p, mid, u, form=form), dtype=float)
            take_left = flo * fmid <= 0.0
            hi = np.where(take_left, mid, hi)
            lo = np.where(take_left, lo, mid)
            flo = np.where(take_left, flo, fmid)
        roots.extend(0.5 * (lo + hi))

    if not roots:
        raise NoOrthogonalDirectionError(
            f"no orthogonality sign change found on a {_SWEEP_N}-sample sweep "
            f"for u={tuple(u)} at p={tuple(p)}"
        )
    roots = sorted(th % TWO_PI for th in roots)
    deduped = []
    for th in roots:
        if not deduped or (th - deduped[-1]) > 1e-9:
            deduped.append(th)
    if len(deduped) > 1 and (deduped[0] + TWO_PI - deduped[-1]) <= 1e-9:
        deduped.pop()
    return [unit_vector_at_angle(model, p, th) for th in deduped]

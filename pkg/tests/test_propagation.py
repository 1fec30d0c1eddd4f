"""Front marching: spherical fronts, ray propagation, Huygens, scenarios."""

import math

import numpy as np
import pytest

from firefront.errors import (
    FrontGeometryError,
    IntegrationError,
    InvalidInputError,
    ModelValidityError,
)
from firefront.fronts import FrontPolyline, hausdorff_distance, resample
from firefront.metrics import SlopeMetric, WindMetric, metric_value
from firefront.propagation import (
    RunResult,
    Scenario,
    Stage,
    front_normals,
    huygens_step,
    propagate_rays,
    run_scenario,
    spherical_front,
)


def _circle_front(r=1.0, n=256, spacing=None):
    th = np.linspace(0, 2 * np.pi, n, endpoint=False)
    f = FrontPolyline(np.column_stack([r * np.cos(th), r * np.sin(th)]))
    return resample(f, spacing) if spacing else f


# ---------------------------------------------------------------------------
# spherical fronts
# ---------------------------------------------------------------------------

def test_limacon_front_is_exact():
    m = SlopeMetric(1.0, 0.45)
    f = spherical_front(m, (0.0, 0.0), 1.0, n=256)
    r = np.hypot(f.points[:, 0], f.points[:, 1])
    th = np.arctan2(f.points[:, 1], f.points[:, 0])
    assert np.max(np.abs(r - (1.0 + 0.45 * np.cos(th)))) < 1e-12
    uphill = float(np.max(f.points[:, 0]))
    downhill = float(-np.min(f.points[:, 0]))
    assert uphill / downhill == pytest.approx(1.45 / 0.55, rel=1e-9)


def test_spherical_front_scales_linearly_in_time():
    m = SlopeMetric(2.0, 0.3)
    f1 = spherical_front(m, (1.0, -2.0), 0.5, n=64)
    f2 = spherical_front(m, (1.0, -2.0), 1.5, n=64)
    center = np.array([1.0, -2.0])
    np.testing.assert_allclose(f2.points - center,
                               3.0 * (f1.points - center), atol=1e-12)


def test_round_wind_metric_gives_circle():
    m = WindMetric(2.0, 2.0, 0.0)
    f = spherical_front(m, (0.0, 0.0), 1.5, n=64)
    r = np.hypot(f.points[:, 0], f.points[:, 1])
    np.testing.assert_allclose(r, 3.0, atol=1e-12)


def test_field_path_matches_closed_form_for_constant_field():
    # "1+0*x" has a free variable, forcing the geodesic path; the rays of
    # a constant field are straight, so the two routes agree tightly.
    m_field = SlopeMetric("1+0*x", 0.3)
    m_const = SlopeMetric(1.0, 0.3)
    assert not m_field.is_homogeneous
    a = spherical_front(m_field, (0.0, 0.0), 2.0, n=64)
    b = spherical_front(m_const, (0.0, 0.0), 2.0, n=64)
    assert np.max(np.linalg.norm(a.points - b.points, axis=1)) < 1e-9


def test_spherical_front_argument_validation():
    m = SlopeMetric(1.0, 0.2)
    with pytest.raises(InvalidInputError, match="n >= 16"):
        spherical_front(m, (0, 0), 1.0, n=15)
    with pytest.raises(InvalidInputError):
        spherical_front(m, (0, 0), 0.0)
    bad_center = SlopeMetric(1.0, "0.1+0.2*x")
    with pytest.raises(ModelValidityError):
        spherical_front(bad_center, (3.0, 0.0), 0.5)


def test_spherical_front_raises_when_most_rays_die():
    # Valid only in a tiny disc: every direction exits almost at once.
    m = SlopeMetric(1.0, "0.1+10*(x^2+y^2)")
    with pytest.raises(IntegrationError, match="lost"):
        spherical_front(m, (0.0, 0.0), 1.0, n=32)


def test_rotation_equivariance_of_wind_spheres():
    base = WindMetric(2.0, 1.5, 0.5, theta_hat=0.0)
    rot = WindMetric(2.0, 1.5, 0.5, theta_hat=math.pi / 2)
    fa = spherical_front(base, (0, 0), 1.0, n=512)
    fb = spherical_front(rot, (0, 0), 1.0, n=512)
    R = np.array([[0.0, -1.0], [1.0, 0.0]])
    rotated = FrontPolyline(fa.points @ R.T)
    assert hausdorff_distance(rotated, fb) < 1e-3


# ---------------------------------------------------------------------------
# front normals
# ---------------------------------------------------------------------------

def test_normals_radial_for_circular_metric():
    m = SlopeMetric(2.0, 0.0)
    f = spherical_front(m, (0.0, 0.0), 1.0, n=64)
    V = front_normals(m, f)
    radial = f.points / np.linalg.norm(f.points, axis=1, keepdims=True)
    np.testing.assert_allclose(V, 2.0 * radial, atol=1e-9)


def test_normals_unitary_and_outward_on_limacon():
    m = SlopeMetric(1.0, 0.45)
    f = spherical_front(m, (0.0, 0.0), 1.0, n=128)
    V = front_normals(m, f)
    tang = np.roll(f.points, -1, axis=0) - np.roll(f.points, 1, axis=0)
    for i in range(f.n):
        assert float(metric_value(m, f.points[i], V[i])) == pytest.approx(
            1.0, rel=1e-9)
        outward = np.array([tang[i][1], -tang[i][0]])
        assert float(V[i] @ outward) > 0


def test_normals_require_closed_front():
    m = SlopeMetric(1.0, 0.2)
    with pytest.raises(FrontGeometryError):
        front_normals(m, FrontPolyline([(0, 0), (1, 0)], closed=False))


# ---------------------------------------------------------------------------
# ray marching
# ---------------------------------------------------------------------------

def test_rays_reproduce_spherical_fronts():
    # Marching the time-1 sphere for one more hour must land on the
    # time-2 sphere (rays from a point cross its spheres orthogonally).
    m = WindMetric(1.6, 1.5, 0.2, theta_hat=0.5)
    s1 = spherical_front(m, (0, 0), 1.0, n=512)
    fronts, trajs, failures = propagate_rays(m, s1, 1.0, [0.5, 1.0])
    assert failures == []
    assert [t for t, _ in fronts] == [0.5, 1.0]
    s2 = spherical_front(m, (0, 0), 2.0, n=512)
    assert hausdorff_distance(fronts[-1][1], s2) < 1e-5
    assert all(not tr.truncated for tr in trajs)


def test_homogeneous_rays_are_exactly_straight():
    m = WindMetric(2.0, 1.5, 0.5, theta_hat=0.3)
    f = spherical_front(m, (0, 0), 1.0, n=64)
    fronts, trajs, _ = propagate_rays(m, f, 2.0, [1.0, 2.0])
    for tr in trajs:
        dev = tr.points - (tr.points[0] + tr.t[:, None] * tr.velocities[0])
        assert np.max(np.abs(dev)) < 1e-12


def test_propagate_rays_validates_output_times():
    m = SlopeMetric(1.0, 0.2)
    f = _circle_front()
    for bad in ([], [0.0], [-1.0], [3.0]):
        with pytest.raises(InvalidInputError):
            propagate_rays(m, f, 2.0, bad)


def test_partial_ray_failure_freezes_and_reports():
    m = SlopeMetric(1.0, "0.1+0.15*x")
    f = _circle_front(r=0.3, n=64)
    fronts, trajs, failures = propagate_rays(m, f, 0.5, [0.5])
    assert 0 < len(failures) <= 0.2 * 64
    assert [i for i, tr in enumerate(trajs) if tr.truncated] == failures
    for i in failures:
        assert "validity" in trajs[i].note
        assert trajs[i].t[-1] < 0.5
    # survivors still form the output front
    assert fronts[0][1].n == 64 - len(failures)


def test_excessive_ray_failures_raise():
    m = SlopeMetric(1.0, "0.1+0.15*x")
    f = _circle_front(r=0.3, n=64)
    with pytest.raises(IntegrationError, match="rays failed"):
        propagate_rays(m, f, 0.6, [0.6])


# ---------------------------------------------------------------------------
# Huygens stepping
# ---------------------------------------------------------------------------

def test_huygens_grows_circle_by_radius():
    m = SlopeMetric(1.0, 0.0)
    f = _circle_front(r=1.0, spacing=0.05)
    g = huygens_step(m, f, 0.2, resolution=0.05)
    r = np.hypot(g.points[:, 0], g.points[:, 1])
    assert np.max(np.abs(r - 1.2)) < 5e-3


def test_huygens_step_size_precondition():
    m = SlopeMetric(1.0, 0.45)  # max speed 1.45
    f = _circle_front(r=1.0, spacing=0.05)
    with pytest.raises(InvalidInputError, match="too large"):
        huygens_step(m, f, 1.0, resolution=0.05)
    huygens_step(m, f, 0.17, resolution=0.05)  # 0.2465 <= 0.25: fine


def test_huygens_argument_validation():
    m = SlopeMetric(1.0, 0.2)
    f = _circle_front()
    with pytest.raises(InvalidInputError):
        huygens_step(m, f, 0.0)
    with pytest.raises(InvalidInputError, match="too coarse"):
        huygens_step(m, f, 0.1, n_sphere=8)
    with pytest.raises(FrontGeometryError):
        huygens_step(m, FrontPolyline([(0, 0), (1, 0)], closed=False), 0.1)


def test_huygens_semigroup_small_vs_large_steps():
    m = SlopeMetric(1.0, 0.45)
    start = _circle_front(r=1.0, spacing=0.1)
    a = start
    for _ in range(4):
        a = huygens_step(m, a, 0.08, resolution=0.1)
    b = huygens_step(m, start, 0.32, resolution=0.1)
    assert hausdorff_distance(a, b) < 2 * 0.1


def test_huygens_expands_the_region():
    m = WindMetric(1.6, 1.5, 0.2, theta_hat=1.0)
    f = _circle_front(r=1.0, spacing=0.1)
    g = huygens_step(m, f, 0.2, resolution=0.1)
    from firefront.fronts import encloses
    assert encloses(g, f, tol=1e-9)
    assert g.area > f.area


# ---------------------------------------------------------------------------
# scenarios
# ---------------------------------------------------------------------------

def test_stage_and_scenario_validation():
    m = SlopeMetric(1.0, 0.2)
    with pytest.raises(InvalidInputError):
        Stage(duration=0.0, model=m)
    with pytest.raises(InvalidInputError):
        Stage(duration=1.0, model=m, method="teleport")
    with pytest.raises(InvalidInputError):
        Stage(duration=1.0, model=m, dt=2.0)
    st = Stage(duration=2.0, model=m)
    assert st.dt == 2.0  # defaults to the duration
    with pytest.raises(InvalidInputError):
        Scenario(stages=[st])  # no initial condition
    with pytest.raises(InvalidInputError):
        Scenario(stages=[st], initial_point=(0, 0),
                 initial_front=_circle_front())
    with pytest.raises(InvalidInputError):
        Scenario(stages=[], initial_point=(0, 0))


def test_point_scenario_times_nesting_and_report():
    from firefront.fronts import encloses
    sc = Scenario(
        stages=[Stage(duration=2.0, model=SlopeMetric(1.0, 0.45), dt=0.5)],
        initial_point=(0.0, 0.0), resolution=0.05, name="point-growth")
    res = run_scenario(sc)
    assert res.status == "ok"
    times = [t for _, t, _ in res.fronts]
    assert times == pytest.approx([0.05, 0.5, 1.0, 1.5, 2.0])
    for (_, _, inner), (_, _, outer) in zip(res.fronts, res.fronts[1:]):
        assert outer.area > inner.area
        assert encloses(outer, inner, tol=1e-9)
    rep = res.report["stages"][0]
    assert rep["model"] == "M1" and rep["method"] == "rays"
    assert rep["ray_failures"] == 0 and rep["ray_count"] > 0
    assert rep["validity"]["ok"] is True
    assert len(rep["fronts"]) == 5
    assert all(f["simple"] for f in rep["fronts"])


def test_output_grid_includes_ragged_tail():
    sc = Scenario(
        stages=[Stage(duration=2.0, model=SlopeMetric(1.0, 0.2), dt=0.8)],
        initial_point=(0.0, 0.0), resolution=0.05)
    res = run_scenario(sc)
    times = [t for _, t, _ in res.fronts]
    assert times == pytest.approx([0.08, 0.8, 1.6, 2.0])


def test_initial_front_scenario_and_huygens_method():
    from firefront.fronts import encloses
    square = FrontPolyline([(-1, -1), (1, -1), (1, 1), (-1, 1)])
    sc = Scenario(
        stages=[Stage(duration=1.0, model=SlopeMetric(1.0, 0.3), dt=0.5,
                      method="huygens")],
        initial_front=square, resolution=0.05)
    res = run_scenario(sc)
    assert res.status == "ok"
    assert [t for _, t, _ in res.fronts] == pytest.approx([0.5, 1.0])
    for _, _, f in res.fronts:
        assert f.is_simple
        assert encloses(f, square, tol=1e-9)


def test_multi_stage_chaining_keeps_clock():
    m1 = SlopeMetric(1.0, 0.3)
    m2 = WindMetric(1.6, 1.5, 0.2)
    sc = Scenario(
        stages=[Stage(duration=1.0, model=m1, dt=0.5, label="calm"),
                Stage(duration=1.0, model=m2, dt=0.5, label="windy")],
        initial_point=(0.0, 0.0), resolution=0.1)
    res = run_scenario(sc)
    assert res.status == "ok"
    stamps = [(s, round(t, 3)) for s, t, _ in res.fronts]
    assert stamps == [(1, 0.05), (1, 0.5), (1, 1.0), (2, 1.5), (2, 2.0)]
    assert [r["label"] for r in res.report["stages"]] == ["calm", "windy"]


def test_abort_on_second_stage_keeps_first_stage_output():
    sc = Scenario(
        stages=[
            Stage(duration=2.0, model=SlopeMetric(2.0, 0.3), dt=1.0),
            Stage(duration=1.0, model=SlopeMetric("1-0.3*x", 0.3), dt=1.0),
        ],
        initial_point=(0.0, 0.0), resolution=0.1)
    res = run_scenario(sc)
    assert res.status == "aborted"
    assert res.report["status"] == "aborted"
    assert res.report["error"].startswith("stage 2: model validity failed")
    assert all(s == 1 for s, _, _ in res.fronts)
    assert len(res.fronts) == 3  # seed + two cadence outputs
    assert res.report["stages"][1]["validity"]["ok"] is False


def test_untangle_off_emits_raw_self_intersecting_fronts():
    model = lambda: SlopeMetric("1.8-0.6*cos(x+y)", 0.45)
    sc = lambda: Scenario(
        stages=[Stage(duration=4.0, model=model(), dt=1.0)],
        initial_point=(0.0, 0.0), resolution=0.25)
    raw = run_scenario(sc(), untangle_override=False)
    assert raw.status == "ok"
    assert any(not f.is_simple for _, _, f in raw.fronts)
    assert all(rep["untangle"] is False for rep in raw.report["stages"])
    tidy = run_scenario(sc())
    assert all(f.is_simple for _, _, f in tidy.fronts)


def test_methods_agree_on_homogeneous_wind_model():
    mk = lambda: WindMetric(1.6, 1.5, 0.2, theta_hat=0.5)
    res = 0.03
    out = {}
    for method in ("rays", "huygens"):
        sc = Scenario(
            stages=[Stage(duration=1.5, model=mk(), dt=0.5, method=method)],
            initial_point=(0.0, 0.0), resolution=res)
        out[method] = run_scenario(sc)
        assert out[method].status == "ok"
    d = hausdorff_distance(out["rays"].fronts[-1][2],
                           out["huygens"].fronts[-1][2])
    assert d < 3 * res


def test_run_result_records_rays_with_stage_offsets():
    sc = Scenario(
        stages=[Stage(duration=1.0, model=SlopeMetric(1.0, 0.3), dt=0.5)],
        initial_point=(0.0, 0.0), resolution=0.1)
    res = run_scenario(sc)
    assert res.rays
    ids = [rid for rid, _, _, _ in res.rays]
    assert ids == list(range(len(ids)))
    for _, stage_no, t0, traj in res.rays:
        assert stage_no == 1
        assert t0 == pytest.approx(0.05)  # rays start at the seed front
        assert traj.t[0] == 0.0

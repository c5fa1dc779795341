"""Bump pair, orbit curves, tangent certification and quotient closure."""

import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatctc import (
    CausalKind,
    MPoint,
    MVec,
    NotClosedError,
    NotTimelikeDisplacementError,
    ORIGIN,
    TangentNotTimelikeError,
    bilinear,
    bump_pair,
    causal_class,
    certify_closed_in_quotient,
    curve_to_csv,
    piecewise_orbit_curve,
    smooth_orbit_curve,
    smooth_orbit_point,
    translation_isometry,
)
from flatctc.curves import CurveSample
from conftest import random_poincare, random_point

SQRT2 = math.sqrt(2.0)


# -- bump pair ---------------------------------------------------------------


def test_bump_plateaus():
    bp = bump_pair(0.1)
    assert bp.d(-1.0) == 1.0 and bp.d(0.0) == 1.0
    assert bp.d(0.1) == 0.0 and bp.d(1.1) == 0.0
    assert bp.u(-0.5) == 0.0 and bp.u(0.1) == 1.0
    assert bp.u(0.05) + bp.d(0.05) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        bump_pair(0.0)


def test_bump_derivative_against_finite_differences():
    bp = bump_pair(0.2)
    h = 1e-6
    for t in (0.03, 0.1, 0.17):
        fd = (bp.u(t + h) - bp.u(t - h)) / (2 * h)
        assert bp.u_prime(t) == pytest.approx(fd, rel=1e-6)
        assert bp.d_prime(t) == pytest.approx(-bp.u_prime(t), abs=1e-15)
    assert bp.u_prime(0.1) > 0.0
    assert bp.u_prime(-0.1) == 0.0 and bp.u_prime(0.3) == 0.0


def test_bump_flat_contact_at_edges():
    # second differences vanish at the plateau edges (smooth contact)
    bp = bump_pair(0.1)
    h = 1e-3
    for edge in (0.0, 0.1):
        inner = bp.u(edge + h) - 2 * bp.u(edge) + bp.u(edge - h)
        assert abs(inner) < 1e-5


# -- piecewise curve ---------------------------------------------------------


def test_piecewise_examples(gamma1):
    p = MPoint(0, SQRT2, 0)
    assert piecewise_orbit_curve(gamma1, p, 0.0) == p
    c1 = piecewise_orbit_curve(gamma1, p, 1.0)
    assert (c1 - gamma1(p)).norm() < 1e-12
    mid = piecewise_orbit_curve(gamma1, p, 0.5)
    expected = np.asarray(p) + 0.5 * (np.asarray(gamma1(p)) - np.asarray(p))
    assert np.allclose(np.asarray(mid), expected, atol=1e-12)


def test_piecewise_requires_timelike(gamma1):
    with pytest.raises(NotTimelikeDisplacementError):
        piecewise_orbit_curve(gamma1, MPoint(0, 0, 2), 0.5)


# -- smooth curve ------------------------------------------------------------


def test_smooth_curve_fixture(gamma1):
    p = MPoint(0, SQRT2, 0)
    samples = smooth_orbit_curve(gamma1, p, 0.1, 200)
    assert len(samples) == 201
    orient = causal_class(samples[0].tangent).orientation
    for s in samples:
        cc = causal_class(s.tangent, 1e-12)
        assert cc.kind is CausalKind.TIMELIKE
        assert cc.orientation is orient
    assert (samples[0].position - p).norm() == 0.0
    assert (samples[-1].position - gamma1(p)).norm() < 1e-12


def test_smooth_agrees_with_piecewise_outside_window(gamma1):
    p = MPoint(0, SQRT2, 0)
    eps = 0.1
    for t in (0.06, 0.3, 0.5, 0.8, 0.94):
        pos, tan = smooth_orbit_point(gamma1, p, eps, t)
        ref = piecewise_orbit_curve(gamma1, p, t)
        assert (pos - ref).norm() < 1e-12
        w = gamma1(p) - p
        assert (tan - w).norm() < 1e-12


def test_smooth_blends_inside_window(gamma1):
    p = MPoint(0, SQRT2, 0)
    pos, tan = smooth_orbit_point(gamma1, p, 0.1, 0.02)
    ref = piecewise_orbit_curve(gamma1, p, 0.02)
    assert (pos - ref).norm() > 1e-9  # genuinely off the corner path
    # the tangent interpolates between the incoming and outgoing edges
    w_plus = gamma1(p) - p
    w_minus = p - gamma1.inverse()(p)
    assert (tan - w_plus).norm() > 1e-6 and (tan - w_minus).norm() > 1e-6


def test_time_translation_curve_constant_tangent():
    iso = translation_isometry((0, 0, 1))
    samples = smooth_orbit_curve(iso, ORIGIN, 0.2, 50)
    for s in samples:
        assert (s.tangent - MVec(0, 0, 1)).norm() < 1e-12


def test_smooth_curve_rejects_sharp_corner():
    # a strong boost at a point whose displacement hugs the cone: the
    # incoming and outgoing edges turn farther than the blend margin
    from flatctc import boost_isometry, eigenframe

    iso = boost_isometry(3.0, 0.0)
    frame = eigenframe(iso.linear)
    p = ORIGIN + 1.0 * frame.x_minus + (-0.01) * frame.x_plus
    d = iso(p) - p
    assert causal_class(d).kind is CausalKind.TIMELIKE
    with pytest.raises(TangentNotTimelikeError) as err:
        smooth_orbit_curve(iso, p, 0.1, 100)
    assert 0.0 <= err.value.t <= 1.0


def test_smooth_curve_validates_arguments(gamma1):
    p = MPoint(0, SQRT2, 0)
    with pytest.raises(ValueError):
        smooth_orbit_curve(gamma1, p, 0.6, 100)
    with pytest.raises(ValueError):
        smooth_orbit_curve(gamma1, p, 0.1, 0)
    with pytest.raises(NotTimelikeDisplacementError):
        smooth_orbit_curve(gamma1, MPoint(0, 0, 2), 0.1, 100)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_blend_timelike_whenever_margin_allows(seed):
    # the blended tangent is w- + phi (w+ - w-) with phi in
    # [-0.206, 1.206]; when that whole segment is timelike the curve
    # must certify, and the sampled tangents stay in the cone
    rng = np.random.default_rng(seed)
    iso = random_poincare(rng)
    p = random_point(rng, 2.0)
    d = iso(p) - p
    if causal_class(d).kind is not CausalKind.TIMELIKE:
        return
    w_plus = np.asarray(d)
    w_minus = np.linalg.solve(iso.linear, w_plus)
    delta = w_plus - w_minus
    ok = True
    for phi in np.linspace(-0.21, 1.21, 143):
        v = w_minus + phi * delta
        if v[0] ** 2 + v[1] ** 2 - v[2] ** 2 >= -1e-12:
            ok = False
            break
    if not ok:
        return
    samples = smooth_orbit_curve(iso, p, 0.1, 60)
    for s in samples:
        assert causal_class(s.tangent, 1e-12).kind is CausalKind.TIMELIKE


# -- junction smoothness -----------------------------------------------------


def second_difference(fn, t, h, side):
    if side > 0:
        return (fn(t) - 2 * fn(t + h) + fn(t + 2 * h)) / (h * h)
    return (fn(t) - 2 * fn(t - h) + fn(t - 2 * h)) / (h * h)


@pytest.mark.parametrize("eps", [0.05, 0.1, 0.2])
def test_junction_second_differences_match(gamma1, eps):
    p = MPoint(0, SQRT2, 0)

    def position(t):
        return np.asarray(smooth_orbit_point(gamma1, p, eps, t)[0])

    h = 1e-3
    scale = np.linalg.norm(np.asarray(gamma1(p)) - np.asarray(p)) / eps
    for junction in (eps / 2, 1 - eps / 2):
        left = second_difference(position, junction, h, -1)
        right = second_difference(position, junction, h, +1)
        gap = np.linalg.norm(left - right)
        assert gap <= 1e-4 * max(1.0, scale)


# -- closure certification ---------------------------------------------------


def test_certification_and_negative_control(gamma1):
    p = MPoint(0, SQRT2, 0)
    samples = smooth_orbit_curve(gamma1, p, 0.1, 100)
    report = certify_closed_in_quotient(gamma1, samples)
    assert report.position_residual < 1e-9
    assert report.tangent_residual < 1e-9
    assert report.worst_tangent_b < 0

    corrupted = samples[:-1] + [
        CurveSample(
            samples[-1].t,
            samples[-1].position + MVec(1e-3, 0, 0),
            samples[-1].tangent,
        )
    ]
    with pytest.raises(NotClosedError):
        certify_closed_in_quotient(gamma1, corrupted)


def test_curve_csv_format(gamma1):
    p = MPoint(0, SQRT2, 0)
    samples = smooth_orbit_curve(gamma1, p, 0.1, 10)
    report = certify_closed_in_quotient(gamma1, samples)
    buf = io.StringIO()
    curve_to_csv(samples, buf, report)
    lines = buf.getvalue().splitlines()
    assert lines[0].startswith("# closed-in-quotient:")
    assert lines[2] == "t,x,y,z,tx,ty,tz,B_tangent"
    assert len(lines) == 3 + 11
    cells = lines[3].split(",")
    assert float(cells[0]) == 0.0
    assert float(cells[-1]) == pytest.approx(
        bilinear(samples[0].tangent, samples[0].tangent)
    )

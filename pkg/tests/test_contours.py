"""Contour geometry, branch lifts, and the Laplace-integral engine."""

import cmath
import math

import pytest

from airyprod import (
    ContourConfig,
    ContourKind,
    DegenerateGeometry,
    EndpointSingularity,
    InvalidKindForSector,
    NonFiniteInput,
    Sector,
    ShiftedArgs,
    ToleranceNotMet,
    build_contour,
    classify_sector,
    laplace_integral,
    saddle_hint,
)
from airyprod.contours import VALLEY_SECTORS, ContourPath, _effective_shift_angle
from airyprod.quadrature import DecayLeg, RayLeg, path_is_connected

PI = math.pi


def _integral(kind, z, z0, tol=1e-11, config=ContourConfig()):
    args = ShiftedArgs.make(z, z0)
    return laplace_integral(build_contour(kind, args, config), args, tol, config)


# ----------------------------------------------------------------------
# sector classification
# ----------------------------------------------------------------------

@pytest.mark.parametrize("z0,expected", [
    (1.0, Sector.INNER),
    (-1.0, Sector.OUTER),
    (0.0, Sector.ZERO),
    (2j, Sector.BOUNDARY),
    (-3j, Sector.BOUNDARY),
    (1e-8 + 1j, Sector.INNER),
    (-1e-8 + 1j, Sector.OUTER),
    (cmath.rect(2.0, PI / 2 + 5e-13), Sector.BOUNDARY),
])
def test_classify_sector(z0, expected):
    assert classify_sector(z0) is expected


def test_classify_rejects_nonfinite():
    with pytest.raises(NonFiniteInput):
        classify_sector(complex("nan"))


def test_zero_sector_threshold():
    assert classify_sector(1e-305) is Sector.ZERO
    assert classify_sector(1e-295) is Sector.INNER


# ----------------------------------------------------------------------
# path structure invariants
# ----------------------------------------------------------------------

def _in_valley(theta, valley):
    lo, hi = valley
    return lo < theta < hi


@pytest.mark.parametrize("z0", [0.9, 0.4 + 0.6j, -1.2, 2j, 0.0, -0.3 + 1.1j])
def test_path_invariants_all_kinds(z0):
    args = ShiftedArgs.make(0.8 - 0.3j, z0)
    a_eff = _effective_shift_angle(args)
    for kind in ContourKind:
        path = build_contour(kind, args)
        assert isinstance(path, ContourPath)
        assert path.cut_angle == pytest.approx(PI / 2 + a_eff)
        assert path_is_connected(path.segments)
        assert path.truncation_radius > 0
        assert path.endpoint_scale > 0

        legs = path.segments
        if kind in (ContourKind.L_PLUS, ContourKind.L_MINUS):
            start_valley = VALLEY_SECTORS[2] if kind is ContourKind.L_PLUS else VALLEY_SECTORS[0]
            assert _in_valley(legs[0].theta, start_valley)
            assert _in_valley(legs[-1].theta, VALLEY_SECTORS[1])
            assert legs[0].r_start == pytest.approx(path.truncation_radius, rel=0.3)
        elif kind in (ContourKind.R_MINUS, ContourKind.R_PLUS):
            inner = legs[0]
            assert isinstance(inner, DecayLeg)
            # start direction is the essential factor's steepest descent,
            # lifted to the side of the cut this contour starts on
            lift = 0.0 if kind is ContourKind.R_MINUS else -2.0 * PI
            assert inner.theta == pytest.approx(2 * a_eff + PI / 2 + lift)
            mod = inner.theta % (2.0 * PI)
            lo = (2.0 * a_eff) % (2.0 * PI)
            assert (mod - lo) % (2.0 * PI) < PI  # inside internal valley
            tail = VALLEY_SECTORS[0] if kind is ContourKind.R_MINUS else VALLEY_SECTORS[2]
            assert _in_valley(legs[-1].theta, tail)
        else:
            first, last = legs[0], legs[-1]
            assert isinstance(first, DecayLeg) and isinstance(last, DecayLeg)
            # both ends at k ~ 0, lifts a full turn apart (opposite cut
            # sides), both inside the internal valley mod 2 pi
            assert first.r_inner < 1e-2 * path.endpoint_scale
            assert last.r_inner < 1e-2 * path.endpoint_scale
            assert first.theta - last.theta == pytest.approx(2.0 * PI)
            for th in (first.theta, last.theta):
                frac = (th - 2.0 * a_eff) % (2.0 * PI)
                assert 0.0 < frac < PI or frac == pytest.approx(PI / 2)


def test_lift_offsets_between_r_contours():
    args = ShiftedArgs.make(1.0, 0.5 + 0.2j)
    up = build_contour(ContourKind.R_MINUS, args).segments[0].theta
    low = build_contour(ContourKind.R_PLUS, args).segments[0].theta
    assert up - low == pytest.approx(2.0 * PI)


def test_invalid_kind_rejected():
    args = ShiftedArgs.make(1.0, 1.0)
    with pytest.raises(InvalidKindForSector):
        build_contour("loop", args)


def test_degenerate_geometry_ceiling():
    cfg = ContourConfig(truncation_ceiling=6.0)
    args = ShiftedArgs.make(40.0, 0.0)
    with pytest.raises(DegenerateGeometry):
        build_contour(ContourKind.L_PLUS, args, cfg)


# ----------------------------------------------------------------------
# integral values
# ----------------------------------------------------------------------

def test_frozen_zero_arg_value():
    # independent closed form: both tails of the valley-to-valley path
    # reduce to Gamma integrals, giving e^{i pi/12} 12^(1/6) Gamma(1/6)/3
    expect = cmath.exp(1j * PI / 12) * 12.0 ** (1.0 / 6.0) * math.gamma(1.0 / 6.0) / 3.0
    res = _integral(ContourKind.L_PLUS, 0.0, 0.0)
    assert abs(res.value - expect) <= 1e-13 * abs(expect)
    assert res.abs_err_est <= 1e-10
    assert res.nodes > 0


def test_linear_relation_reference_point():
    vals = {k: _integral(k, 1 + 0.3j, 0.7) for k in ContourKind}
    lhs = vals[ContourKind.O].value
    rhs = (vals[ContourKind.R_MINUS].value + vals[ContourKind.L_MINUS].value
           - vals[ContourKind.L_PLUS].value - vals[ContourKind.R_PLUS].value)
    budget = 10.0 * sum(v.abs_err_est for v in vals.values())
    assert abs(lhs - rhs) <= budget


@pytest.mark.parametrize("z,z0", [
    (0.6, 1.1),             # inner
    (1.2 - 0.8j, -0.9),     # outer
    (0.4 + 0.2j, 1.7j),     # boundary
    (-1.5, 0.0),            # zero
])
def test_linear_relation_by_sector(z, z0):
    vals = {k: _integral(k, z, z0) for k in ContourKind}
    lhs = vals[ContourKind.O].value
    rhs = (vals[ContourKind.R_MINUS].value + vals[ContourKind.L_MINUS].value
           - vals[ContourKind.L_PLUS].value - vals[ContourKind.R_PLUS].value)
    assert abs(lhs - rhs) <= max(10.0 * sum(v.abs_err_est for v in vals.values()), 1e-12)


@pytest.mark.parametrize("z", [0.0, 2.0, -3.0, 1 + 1j, -2j])
def test_loop_vanishes_at_zero_shift(z):
    res = _integral(ContourKind.O, z, 0.0, tol=1e-12)
    assert abs(res.value) <= 1e-10


def test_path_independence_under_perturbation():
    tol = 1e-10
    base = _integral(ContourKind.R_MINUS, 0.9, 0.8 + 0.4j, tol=tol).value
    for factor, shift in [(1.1, 0.0), (0.9, 0.0), (1.0, 0.05), (1.0, -0.05), (1.05, 0.03)]:
        cfg = ContourConfig(turn_radius_factor=factor, tail_angle_shift=shift)
        pert = _integral(ContourKind.R_MINUS, 0.9, 0.8 + 0.4j, tol=tol, config=cfg).value
        assert abs(pert - base) <= 10.0 * tol * max(1.0, abs(base))


def test_boundary_continuity():
    # inner-limit construction just below |arg z0| = pi/2 matches the
    # outer construction just above, once the loop correction is added
    z = 0.7 + 0.2j
    for sign, kind in [(+1, ContourKind.R_PLUS), (-1, ContourKind.R_MINUS)]:
        z0a = cmath.rect(1.3, PI / 2 - 1e-6)
        z0b = cmath.rect(1.3, PI / 2 + 1e-6)
        ia = _integral(kind, z, z0a).value
        ib = _integral(kind, z, z0b).value + sign * _integral(ContourKind.O, z, z0b).value
        assert abs(ia - ib) <= 1e-5 * abs(ia)


def test_tolerance_not_met_carries_result():
    # an unreachable target under a tiny node ceiling must flag, not loop
    cfg = ContourConfig(max_nodes=200)
    args = ShiftedArgs.make(1 + 0.3j, 0.7)
    path = build_contour(ContourKind.L_PLUS, args, cfg)
    with pytest.raises(ToleranceNotMet) as exc:
        laplace_integral(path, args, 1e-14, cfg)
    assert exc.value.result is not None
    assert exc.value.result.nodes >= 200
    assert not exc.value.result.converged


def test_endpoint_singularity_detected():
    # hand-built path whose inner ray points into the growth region of
    # the essential factor (anti-steepest direction)
    args = ShiftedArgs.make(0.5, 2.0)
    bad_theta = 2.0 * _effective_shift_angle(args) - PI / 2.0
    bad = ContourPath(
        kind=ContourKind.R_MINUS,
        cut_angle=PI / 2,
        segments=(DecayLeg(bad_theta, 0.5, 30.0, outward=True),
                  RayLeg(bad_theta, 0.5, 6.0)),
        truncation_radius=6.0,
        endpoint_scale=0.5,
    )
    with pytest.raises(EndpointSingularity):
        laplace_integral(bad, args, 1e-8)


def test_laplace_tol_validation():
    args = ShiftedArgs.make(1.0, 0.0)
    path = build_contour(ContourKind.L_MINUS, args)
    with pytest.raises(ValueError):
        laplace_integral(path, args, 1e-15)
    with pytest.raises(ValueError):
        laplace_integral(path, args, 1e-3)


# ----------------------------------------------------------------------
# saddle hints
# ----------------------------------------------------------------------

def test_saddle_hint_valley_contours():
    got = saddle_hint(ContourKind.L_PLUS, ShiftedArgs.make(100.0, 0.0))
    expect = 2.0 * cmath.exp(1j * (-PI / 2 - PI / 3)) * 10.0
    assert abs(got - expect) <= 1e-12 * abs(expect)
    got = saddle_hint(ContourKind.L_MINUS, ShiftedArgs.make(100.0, 0.0))
    expect = 2.0 * cmath.exp(1j * (-PI / 2 + PI / 3)) * 10.0
    assert abs(got - expect) <= 1e-12 * abs(expect)


def test_saddle_hint_origin_contours():
    got = saddle_hint(ContourKind.R_PLUS, ShiftedArgs.make(100.0, 2.0))
    expect = 0.1 * cmath.exp(-1.5j * PI)
    assert abs(got - expect) <= 1e-12 * abs(expect)
    got = saddle_hint(ContourKind.R_MINUS, ShiftedArgs.make(100.0, 2.0))
    expect = 0.1 * cmath.exp(0.5j * PI)
    assert abs(got - expect) <= 1e-12 * abs(expect)


def test_saddle_hint_none_cases():
    assert saddle_hint(ContourKind.O, ShiftedArgs.make(100.0, 1.0)) is None
    assert saddle_hint(ContourKind.L_PLUS, ShiftedArgs.make(0.5, 1.0)) is None

"""Integration contours and the half-line Laplace integral in the k plane.

The central object is the integral

    I_C(z; z0) = Int_C exp[i(z + z0/2)k - i z0^2/(4k) + i k^3/12] dk / k^(1/2)

whose contours C connect the three asymptotic valleys of the cubic term,

    V1 = (0, pi/3),   V2 = (-2pi/3, -pi/3),   V3 = (-4pi/3, -pi)

in continued arg-k coordinates, and/or the origin, where the essential
factor e^{-i z0^2/(4k)} decays inside the "internal valley" of angles
(2 arg z0, 2 arg z0 + pi) mod 2pi.  The branch of k^(1/2) is anchored by
arg k = 0 on the positive real axis with a cut along
arg k = pi/2 + arg z0 (for |arg z0| <= pi/2; for larger |arg z0| the cut
and the origin contours are those of -z0).  Every leg carries its angle
as a continuous lift, so crossing the cut ray while tracking the lift is
an allowed, value-neutral deformation; what is forbidden, and checked,
is a discontinuous jump of the lift.

Five contour kinds are provided:

    L+ : V3 -> V2          L- : V1 -> V2           (valley-to-valley)
    R- : 0 -> V1           R+ : 0 -> V3            (origin-to-valley)
    O  : 0 -> 0            (around the cut, ends on opposite sides)

The inner ends of R+/R-/O approach k = 0 along the steepest-descent
direction of the essential factor (the center of the internal valley,
lifted to the side of the cut each contour starts on), which makes the
endpoint integrand decay purely exponentially with no oscillation and
keeps the construction uniformly accurate up to |arg z0| = pi/2, where
the near-cut region of the internal valley degenerates.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import cmath
import math

import numpy as np

from .errors import (
    DegenerateGeometry,
    EndpointSingularity,
    InvalidKindForSector,
    NonFiniteInput,
    ToleranceNotMet,
)
from .quadrature import ArcLeg, DecayLeg, QuadResult, RayLeg, integrate_legs

__all__ = [
    "Sector",
    "ContourKind",
    "ShiftedArgs",
    "ContourConfig",
    "ContourPath",
    "classify_sector",
    "build_contour",
    "laplace_integral",
    "saddle_hint",
    "VALLEY_SECTORS",
]

_PI = math.pi

#: Asymptotic valleys of e^{i k^3/12} in continued arg-k coordinates.
VALLEY_SECTORS = ((0.0, _PI / 3.0), (-2.0 * _PI / 3.0, -_PI / 3.0), (-4.0 * _PI / 3.0, -_PI))
_B1, _B2, _B3 = _PI / 6.0, -_PI / 2.0, -7.0 * _PI / 6.0  # valley bisectors

_ZERO_SHIFT = 1e-300
_BOUNDARY_TOL = 1e-12


class Sector(Enum):
    """Classification of the shift z0 by |arg z0|."""

    ZERO = "zero"
    INNER = "inner"
    BOUNDARY = "boundary"
    OUTER = "outer"


class ContourKind(Enum):
    L_PLUS = "L+"
    L_MINUS = "L-"
    R_PLUS = "R+"
    R_MINUS = "R-"
    O = "O"


def classify_sector(z0: complex) -> Sector:
    """Classify z0 into Zero / Inner / Boundary / Outer.

    Boundary means |arg z0| within 1e-12 of pi/2; it is dispatched like
    Inner everywhere downstream (the representations connect there by
    continuity in z0).
    """
    z0 = complex(z0)
    if not cmath.isfinite(z0):
        raise NonFiniteInput("classify_sector: z0 must be finite")
    if abs(z0) < _ZERO_SHIFT:
        return Sector.ZERO
    a = abs(cmath.phase(z0))
    if abs(a - _PI / 2.0) <= _BOUNDARY_TOL:
        return Sector.BOUNDARY
    return Sector.INNER if a < _PI / 2.0 else Sector.OUTER


@dataclass(frozen=True)
class ShiftedArgs:
    """The pair (z, z0) with its cached shift-sector classification."""

    z: complex
    z0: complex
    z0_sector: Sector

    @classmethod
    def make(cls, z: complex, z0: complex) -> "ShiftedArgs":
        z, z0 = complex(z), complex(z0)
        if not (cmath.isfinite(z) and cmath.isfinite(z0)):
            raise NonFiniteInput("ShiftedArgs: arguments must be finite")
        return cls(z, z0, classify_sector(z0))


@dataclass(frozen=True)
class ContourConfig:
    """Tunables shared by the contour builder and the quadrature."""

    tail_tol: float = 1e-13          # integrand bound at truncation
    max_nodes: int = 600_000         # evaluation ceiling per integral
    truncation_ceiling: float = 80.0
    saddle_hint: bool = True         # route turns through saddle radii
    turn_radius_factor: float = 1.0  # perturbation knob for verification
    tail_angle_shift: float = 0.0    # ditto, radians, clipped to pi/14

    @classmethod
    def from_mapping(cls, data: dict) -> "ContourConfig":
        kwargs = {}
        for f in ("tail_tol", "truncation_ceiling", "turn_radius_factor", "tail_angle_shift"):
            if f in data:
                kwargs[f] = float(data[f])
        if "max_nodes" in data:
            kwargs["max_nodes"] = int(data["max_nodes"])
        if "saddle_hint" in data:
            v = data["saddle_hint"]
            kwargs["saddle_hint"] = v if isinstance(v, bool) else str(v).lower() in ("1", "true", "yes", "on")
        return cls(**kwargs)


DEFAULT_CONFIG = ContourConfig()


@dataclass(frozen=True)
class ContourPath:
    """An immutable, fully built integration path.

    ``segments`` is the ordered leg chain; ``cut_angle`` records the
    branch-cut ray used to anchor the k^(1/2) lift; ``endpoint_scale``
    is the radius at which endpoint legs cluster exponentially toward
    k = 0 (for L contours, the turn radius).
    """

    kind: ContourKind
    cut_angle: float
    segments: tuple
    truncation_radius: float
    endpoint_scale: float


def _effective_shift_angle(args: ShiftedArgs) -> float:
    """arg z0 for Inner/Boundary/Zero, arg(-z0) for Outer."""
    if args.z0_sector is Sector.ZERO:
        return 0.0
    if args.z0_sector is Sector.OUTER:
        return cmath.phase(-args.z0)
    return cmath.phase(args.z0)


def _truncation_radius(beta_abs: float, config: ContourConfig, tail_decay: float) -> float:
    """Radius R with (R^3/12) * tail_decay >= -log(tail_tol) + |beta| R."""
    lam = -math.log(config.tail_tol)

    def short(r):
        return (r ** 3 / 12.0) * tail_decay - beta_abs * r - lam

    hi = 4.0
    while short(hi) < 0.0:
        hi *= 1.5
        if hi > config.truncation_ceiling:
            raise DegenerateGeometry(
                "truncation radius would exceed the configured ceiling "
                f"{config.truncation_ceiling} (|z + z0/2| = {beta_abs:.3g})"
            )
    lo = 0.0
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        if short(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return hi


def saddle_hint(kind: ContourKind, args: ShiftedArgs):
    """Leading-order contributing saddle of the exponent for L+- / R+-.

    Returns None for the O contour and for |z| < 1 where the leading
    formula is unreliable.  For R contours the two lifts of the returned
    point differ by the side of the cut the contour starts on; the
    complex value is the same.
    """
    if kind is ContourKind.O:
        return None
    if abs(args.z) < 1.0:
        return None
    sqz = math.sqrt(abs(args.z))
    if kind in (ContourKind.L_PLUS, ContourKind.L_MINUS):
        sgn = -1.0 if kind is ContourKind.L_PLUS else 1.0
        return 2.0 * sqz * cmath.exp(1j * (-_PI / 2.0 + sgn * _PI / 3.0))
    sgn = -1.0 if kind is ContourKind.R_PLUS else 1.0
    return 0.5 * cmath.exp(1j * (-_PI / 2.0 + sgn * _PI)) * args.z0 / sqz


def _clip(x, lo, hi):
    return max(lo, min(hi, x))


def _ray_crest(exponent, theta, r_lo, r_hi):
    """Largest Re E along a radial ray (coarse probe)."""
    r = np.geomspace(max(r_lo, 1e-6), r_hi, 48)
    return float(np.max(np.real(exponent(r * cmath.exp(1j * theta)))))


def _pick_tail(exponent, valley, beta_abs, config, shift):
    """Tail angle within a valley minimizing the crest of its outgoing ray.

    The truncation radius is recomputed for each candidate from its own
    cubic decay rate, so slow near-edge angles pay their real price.
    """
    lo, hi = valley
    margin = (hi - lo) / 7.0
    cands = np.linspace(lo + margin, hi - margin, 7)
    best = None
    for th in cands:
        decay = abs(math.sin(3.0 * th))
        r_tr = _truncation_radius(beta_abs, config, decay)
        crest = _ray_crest(exponent, th, 0.2, r_tr)
        score = crest + 0.02 * r_tr
        if best is None or score < best[0]:
            best = (score, th, r_tr)
    _, th, r_tr = best
    th = _clip(th + shift, lo + 0.25 * margin, hi - 0.25 * margin)
    return th, _truncation_radius(beta_abs, config, abs(math.sin(3.0 * th)))


def _pick_arc_radius(exponent, th_a, th_b, candidates):
    """Arc radius minimizing the largest Re E over the angular sweep.

    Among radii within one e-fold of the lowest crest the largest one
    wins: needlessly small arcs push the k^(-1/2) slope onto linearly
    panelized rays, which adaptive bisection resolves slowly.
    """
    thetas = np.linspace(th_a, th_b, 65)
    phases = np.exp(1j * thetas)
    crests = [float(np.max(np.real(exponent(r * phases)))) for r in candidates]
    lowest = min(crests)
    return max(r for r, m in zip(candidates, crests) if m <= lowest + 1.0)


_TAIL_CACHE: dict = {}


def _tails_cached(z, z0, shift, config):
    """Tail angles and truncation radii for all three valleys, memoized.

    Several contour kinds are usually built for the same (z, z0); the
    valley probing is identical across them.
    """
    key = (z, z0, shift, config.saddle_hint, config.tail_tol, config.truncation_ceiling)
    hit = _TAIL_CACHE.get(key)
    if hit is not None:
        return hit
    beta_abs = abs(z + 0.5 * z0)
    if config.saddle_hint:
        exponent = _exponent_factory(ShiftedArgs.make(z, z0))
        out = tuple(_pick_tail(exponent, v, beta_abs, config, shift) for v in VALLEY_SECTORS)
    else:
        ths = (_B1 + shift, _B2 + shift, _B3 + shift)
        r = _truncation_radius(beta_abs, config,
                               min(abs(math.sin(3.0 * t)) for t in ths))
        out = tuple((t, r) for t in ths)
    if len(_TAIL_CACHE) > 4096:
        _TAIL_CACHE.clear()
    _TAIL_CACHE[key] = out
    return out


def build_contour(kind: ContourKind, args: ShiftedArgs,
                  config: ContourConfig = DEFAULT_CONFIG) -> ContourPath:
    """Construct the requested contour for the given (z, z0).

    All five kinds are defined in every shift sector (Outer uses the cut
    and origin contours of -z0).  Tail angles and turn radii are chosen
    by a coarse probe of Re E over a small candidate family, which keeps
    the integrand maximum near the scale of the contributing saddle
    without tracing true steepest-descent paths.  Raises
    DegenerateGeometry when the required truncation radius exceeds the
    configured ceiling.
    """
    if not isinstance(kind, ContourKind):
        raise InvalidKindForSector(f"unknown contour kind: {kind!r}")

    a = _effective_shift_angle(args)
    cut = _PI / 2.0 + a
    beta = args.z + 0.5 * args.z0
    beta_abs = abs(beta)
    rho = abs(args.z0) ** 2
    lam = -math.log(config.tail_tol)
    exponent = _exponent_factory(args)

    shift = _clip(config.tail_angle_shift, -_PI / 14.0, _PI / 14.0)

    (th1, rt1), (th2, rt2), (th3, rt3) = _tails_cached(
        args.z, args.z0, shift, config)
    r_trunc = max(rt1, rt2, rt3)

    cand = list(np.geomspace(2e-3, max(0.85 * r_trunc, 0.01), 20))
    cand.append(_clip(2.0 * math.sqrt(max(beta_abs, 0.25)), 2e-3, 0.85 * r_trunc))
    cand.append(_clip(math.sqrt(rho / (4.0 * max(beta_abs, 0.25))), 2e-3, 0.85 * r_trunc))
    cand = [c * config.turn_radius_factor for c in cand]

    theta_up = 2.0 * a + _PI / 2.0       # steepest descent, start side of R-
    theta_low = theta_up - 2.0 * _PI     # same ray on the other side of the cut

    def s_max_for(r_outer):
        # run the endpoint leg until the essential factor falls below
        # tail_tol along the steepest ray (|z0^2/(4k)| >= lam); the
        # sqrt-measure criterion alone caps the stub when z0 ~ 0.
        if rho > 0.0:
            s_ess = math.log(max(4.0 * lam * r_outer / rho, 1.0))
        else:
            s_ess = math.inf
        return max(min(s_ess, 2.0 * lam + 4.0), 6.0)

    # legs that continue into linearly panelized rays must not start in
    # the sqrt-singular region; pure endpoint loops may go smaller
    cand_ray = [c for c in cand if c >= 0.05] or [max(cand)]

    if kind in (ContourKind.L_PLUS, ContourKind.L_MINUS):
        th_in, r_in = (th3, rt3) if kind is ContourKind.L_PLUS else (th1, rt1)
        r_arc = _pick_arc_radius(exponent, th_in, th2, cand_ray) if config.saddle_hint \
            else _clip(1.0 * config.turn_radius_factor, 2e-3, 0.85 * r_trunc)
        legs = (
            RayLeg(th_in, r_in, r_arc),
            ArcLeg(r_arc, th_in, th2),
            RayLeg(th2, r_arc, rt2),
        )
        scale = r_arc
    elif kind in (ContourKind.R_MINUS, ContourKind.R_PLUS):
        if kind is ContourKind.R_MINUS:
            th_start, th_tail, r_tail = theta_up, th1, rt1
        else:
            th_start, th_tail, r_tail = theta_low, th3, rt3
        # origin contours cross near the essential/linear balance radius,
        # never far out; large radii only stretch the endpoint leg
        cand_r = [c for c in cand_ray if c <= 3.0] or [min(cand_ray)]
        r_arc = _pick_arc_radius(exponent, th_start, th_tail, cand_r) if config.saddle_hint \
            else _clip(0.5 * config.turn_radius_factor, 2e-3, 0.85 * r_trunc)
        legs = (
            DecayLeg(th_start, r_arc, s_max_for(r_arc), outward=True),
            ArcLeg(r_arc, th_start, th_tail),
            RayLeg(th_tail, r_arc, r_tail),
        )
        scale = r_arc
    else:  # O
        cand_r = [c for c in cand if c <= 3.0] or [min(cand)]
        r_arc = _pick_arc_radius(exponent, theta_up, theta_low, cand_r) if config.saddle_hint \
            else _clip(0.5 * config.turn_radius_factor, 2e-3, 0.85 * r_trunc)
        s_max = s_max_for(r_arc)
        legs = (
            DecayLeg(theta_up, r_arc, s_max, outward=True),
            ArcLeg(r_arc, theta_up, theta_low),
            DecayLeg(theta_low, r_arc, s_max, outward=False),
        )
        scale = r_arc

    return ContourPath(kind, cut, legs, r_trunc, scale)


def _exponent_factory(args: ShiftedArgs):
    beta = args.z + 0.5 * args.z0
    z0sq = args.z0 * args.z0

    def exponent(k):
        if z0sq == 0.0:
            return 1j * (beta * k + k * k * k / 12.0)
        return 1j * (beta * k - z0sq / (4.0 * k) + k * k * k / 12.0)

    return exponent


def laplace_integral(path: ContourPath, args: ShiftedArgs, tol: float = 1e-10,
                     config: ContourConfig = DEFAULT_CONFIG) -> QuadResult:
    """Evaluate I_C(z; z0) along a built path by adaptive quadrature.

    On success the result satisfies abs_err_est <= tol * max(1, |value|).
    The k^(1/2) branch uses each leg's continuously tracked angle.

    Raises
    ------
    EndpointSingularity
        if an endpoint leg fails to decay toward k = 0 (a path whose
        inner ray points outside the internal valley).
    ToleranceNotMet
        if the node ceiling is reached first; the best estimate rides on
        the exception's ``result`` attribute.
    """
    if not (1e-14 <= tol <= 1e-4):
        raise ValueError("laplace_integral: tol must lie in [1e-14, 1e-4]")
    exponent = _exponent_factory(args)

    def integrand(k, theta):
        r = np.abs(k)
        with np.errstate(over="ignore", invalid="ignore"):
            return np.exp(exponent(k)) / np.sqrt(r) * np.exp(-0.5j * theta)

    for leg in path.segments:
        if isinstance(leg, DecayLeg):
            s = np.linspace(0.0, leg.s_max, 17)
            pts = leg.r_outer * np.exp(-s) * cmath.exp(1j * leg.theta)
            th = np.full(pts.shape, leg.theta)
            # compare in the s parametrization, where dk/ds ~ k supplies
            # the decaying sqrt-measure; the inner end must sit far below
            # the leg maximum or the substitution did not regularize
            vals = np.abs(integrand(pts, th)) * np.abs(pts)
            inner = vals[-1]
            peak = float(np.max(vals))
            if not np.isfinite(inner) or inner > max(peak, 1e-280) * 1e-2:
                raise EndpointSingularity(
                    "endpoint substitution does not decay toward k = 0 "
                    f"(leg angle {leg.theta:.6f}); path points outside the internal valley"
                )

    result = integrate_legs(path.segments, integrand, tol, config.max_nodes,
                            integrand_exponent=exponent)
    if not result.converged:
        raise ToleranceNotMet(
            f"laplace_integral: error {result.abs_err_est:.3g} above target after "
            f"{result.nodes} nodes", result=result)
    return result

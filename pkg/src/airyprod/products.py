"""Products of two Airy-equation solutions with shifted arguments.

For solutions v1, v2 of v'' = z v, the product w(z; z0) = v1(z+z0) v2(z)
satisfies the fourth-order equation

    w'''' - (4z + 2 z0) w'' - 6 w' + z0^2 w = 0.

With v drawn from {Ai(z), Ai(e^{+2i pi/3} z), Ai(e^{-2i pi/3} z)} there
are nine products; a convenient independent basis is

    U+-(z; z0) = Ai(e^{+-2i pi/3}(z+z0)) Ai(e^{+-2i pi/3} z)
    W+-(z; z0) = Ai(z+z0) Ai(e^{+-2i pi/3} z)

and every product is one of these or a fixed linear combination.  Each
basis function is computable two ways:

* route ``DIRECT``   -- two evaluations of the Airy reference evaluator
                        multiplied together (the default; fast, and the
                        ground truth the contour route is tested against);
* route ``CONTOUR``  -- the half-line Laplace integral representations

      U+- = e^{i pi/4 -+ i pi/3} / (4 pi^{3/2}) * I_{L+-}
      W+- = e^{i pi/4 +- i pi/3} / (4 pi^{3/2}) * I_{R+-}          (|arg z0| <= pi/2)
      W+- = e^{i pi/4 +- i pi/3} / (4 pi^{3/2}) * [I_{R+-} +- I_O] (|arg z0| >  pi/2)

  where the sector dispatch between the two W forms lives here, not in
  the contour engine, because the formula choice is a property of the
  representation rather than of path geometry.

The real-axis specializations ``w_pm_real`` (shift >= 0 only) and
``aiai_real`` (any real shift) evaluate the corresponding half-line
formulas through the same regularized contours, and the antisymmetric
combination of mixed products is exposed as ``difference_identity``,
proportional to the origin-loop integral I_O alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import cmath
import math

from .contours import (
    ContourConfig,
    ContourKind,
    DEFAULT_CONFIG,
    Sector,
    ShiftedArgs,
    build_contour,
    laplace_integral,
)
import numpy as np

from .errors import NegativeShift, SectorDispatchError, ToleranceNotMet
from .oracle import airy, airy_batch

__all__ = [
    "Route",
    "ProductValue",
    "Rotation",
    "u_pm",
    "w_pm",
    "product",
    "difference_identity",
    "w_pm_real",
    "aiai_real",
    "ode_residual_w",
    "ode_residual_reduced",
    "ode_residual_w_batch",
    "ode_residual_reduced_batch",
]

_OMEGA = cmath.exp(2j * math.pi / 3.0)
_PREF_NORM = 4.0 * math.pi ** 1.5
_DEFAULT_TOL = 1e-10


class Route(Enum):
    DIRECT = "direct"
    CONTOUR = "contour"
    REAL_AXIS = "real-axis"


class Rotation(Enum):
    """Which Airy-equation solution a factor uses: Ai(e^{r 2i pi/3} z)."""

    NONE = 0
    PLUS = 1
    MINUS = -1

    @property
    def factor(self) -> complex:
        if self is Rotation.NONE:
            return 1.0 + 0.0j
        return _OMEGA if self is Rotation.PLUS else _OMEGA.conjugate()


@dataclass(frozen=True)
class ProductValue:
    value: complex
    route: Route
    abs_err_est: float


def _rot(sign: int) -> complex:
    return _OMEGA if sign > 0 else _OMEGA.conjugate()


def _check_sign(sign: int) -> int:
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    return sign


def _direct_product(f1: complex, f2: complex) -> tuple[complex, float]:
    a1 = airy(f1)
    a2 = airy(f2)
    v = a1.ai * a2.ai
    return v, (a1.est_rel_err + a2.est_rel_err + 4e-16) * max(abs(v), 1e-300)


def _contour_value(kind: ContourKind, args: ShiftedArgs, tol, config, strict=True):
    path = build_contour(kind, args, config)
    try:
        return laplace_integral(path, args, tol, config)
    except ToleranceNotMet as exc:
        if strict:
            raise
        # keep the flagged best estimate; abs_err_est stays honest
        return exc.result


def u_pm(sign: int, z: complex, z0: complex, route: Route = Route.DIRECT,
         tol: float = _DEFAULT_TOL, config: ContourConfig = DEFAULT_CONFIG,
         strict: bool = True) -> ProductValue:
    """U+-(z; z0) = Ai(e^{+-2i pi/3}(z+z0)) Ai(e^{+-2i pi/3} z)."""
    _check_sign(sign)
    z, z0 = complex(z), complex(z0)
    if route is Route.DIRECT:
        w = _rot(sign)
        v, est = _direct_product(w * (z + z0), w * z)
        return ProductValue(v, route, est)
    if route is not Route.CONTOUR:
        raise ValueError("u_pm supports DIRECT and CONTOUR routes")
    args = ShiftedArgs.make(z, z0)
    kind = ContourKind.L_PLUS if sign > 0 else ContourKind.L_MINUS
    pref = cmath.exp(1j * (math.pi / 4.0 - sign * math.pi / 3.0)) / _PREF_NORM
    res = _contour_value(kind, args, tol, config, strict)
    return ProductValue(pref * res.value, route, abs(pref) * res.abs_err_est)


def w_pm(sign: int, z: complex, z0: complex, route: Route = Route.DIRECT,
         tol: float = _DEFAULT_TOL, config: ContourConfig = DEFAULT_CONFIG,
         strict: bool = True) -> ProductValue:
    """W+-(z; z0) = Ai(z+z0) Ai(e^{+-2i pi/3} z).

    The contour route dispatches on the shift sector: for
    |arg z0| <= pi/2 (and z0 = 0) the single integral over R+- suffices;
    beyond, the origin-loop correction +-I_O is added.
    """
    _check_sign(sign)
    z, z0 = complex(z), complex(z0)
    if route is Route.DIRECT:
        v, est = _direct_product(z + z0, _rot(sign) * z)
        return ProductValue(v, route, est)
    if route is not Route.CONTOUR:
        raise ValueError("w_pm supports DIRECT and CONTOUR routes")
    args = ShiftedArgs.make(z, z0)
    kind = ContourKind.R_PLUS if sign > 0 else ContourKind.R_MINUS
    pref = cmath.exp(1j * (math.pi / 4.0 + sign * math.pi / 3.0)) / _PREF_NORM
    res = _contour_value(kind, args, tol, config, strict)
    val, err = res.value, res.abs_err_est
    if args.z0_sector is Sector.OUTER:
        loop = _contour_value(ContourKind.O, args, tol, config, strict)
        val = val + sign * loop.value
        err = err + loop.abs_err_est
    elif args.z0_sector not in (Sector.INNER, Sector.ZERO, Sector.BOUNDARY):
        raise SectorDispatchError(f"unclassifiable shift sector for z0 = {z0}")
    return ProductValue(pref * val, route, abs(pref) * err)


def product(rot1: Rotation, rot2: Rotation, z: complex, z0: complex,
            route: Route = Route.DIRECT, tol: float = _DEFAULT_TOL,
            config: ContourConfig = DEFAULT_CONFIG, strict: bool = True) -> ProductValue:
    """Any of the nine products v1(z+z0) v2(z).

    ``rot1``/``rot2`` select the solutions: v(z) = Ai(e^{r 2i pi/3} z).
    The direct route multiplies two evaluator calls; the contour route
    reduces to the U/W basis through the fixed linear combinations

        Ai(z+z0) Ai(z)                   = e^{-i pi/3} W+ + e^{+i pi/3} W-
        Ai(e^{+-}(z+z0)) Ai(z)           = U-+ + e^{-+i pi/3} (U+- - W-+)
        Ai(e^{+-}(z+z0)) Ai(e^{-+} z)    = e^{-+i pi/3} U-+ + e^{+-i pi/3} W-+
    """
    rot1, rot2 = Rotation(rot1), Rotation(rot2)
    z, z0 = complex(z), complex(z0)
    if route is Route.DIRECT:
        v, est = _direct_product(rot1.factor * (z + z0), rot2.factor * z)
        return ProductValue(v, route, est)
    if route is not Route.CONTOUR:
        raise ValueError("product supports DIRECT and CONTOUR routes")

    r1, r2 = rot1.value, rot2.value
    if (r1, r2) == (1, 1):
        return u_pm(+1, z, z0, route, tol, config, strict)
    if (r1, r2) == (-1, -1):
        return u_pm(-1, z, z0, route, tol, config, strict)
    if (r1, r2) == (0, 1):
        return w_pm(+1, z, z0, route, tol, config, strict)
    if (r1, r2) == (0, -1):
        return w_pm(-1, z, z0, route, tol, config, strict)

    third = cmath.exp(1j * math.pi / 3.0)
    if (r1, r2) == (0, 0):
        wp = w_pm(+1, z, z0, route, tol, config, strict)
        wm = w_pm(-1, z, z0, route, tol, config, strict)
        val = wp.value / third + third * wm.value
        return ProductValue(val, route, wp.abs_err_est + wm.abs_err_est)
    if r2 == 0:  # (+-, 0)
        s = r1
        um = u_pm(-s, z, z0, route, tol, config, strict)
        up = u_pm(s, z, z0, route, tol, config, strict)
        wm = w_pm(-s, z, z0, route, tol, config, strict)
        coef = third ** (-s)
        val = um.value + coef * (up.value - wm.value)
        return ProductValue(val, route,
                            um.abs_err_est + up.abs_err_est + wm.abs_err_est)
    # (+-, -+)
    s = r1
    um = u_pm(-s, z, z0, route, tol, config, strict)
    wm = w_pm(-s, z, z0, route, tol, config, strict)
    val = third ** (-s) * um.value + third ** s * wm.value
    return ProductValue(val, route, um.abs_err_est + wm.abs_err_est)


def difference_identity(sign: int, z: complex, z0: complex,
                        route: Route = Route.CONTOUR, tol: float = _DEFAULT_TOL,
                        config: ContourConfig = DEFAULT_CONFIG,
                        strict: bool = True) -> ProductValue:
    """Ai(e^{+-2i pi/3}(z+z0)) Ai(z) - Ai(z+z0) Ai(e^{+-2i pi/3} z).

    This antisymmetric combination is proportional to the origin-loop
    integral alone,

        +- e^{i pi/4 +- i pi/3} / (4 pi^{3/2}) * I_O    (|arg z0| <= pi/2)
        -+ e^{i pi/4 +- i pi/3} / (4 pi^{3/2}) * I_O    (|arg z0| >  pi/2)

    and vanishes identically at z0 = 0.  Default route is the loop
    integral (the quantity this operation exists to expose); the direct
    route forms the same difference from the reference evaluator.
    """
    _check_sign(sign)
    z, z0 = complex(z), complex(z0)
    if route is Route.DIRECT:
        w = _rot(sign)
        a, ea = _direct_product(w * (z + z0), z)
        b, eb = _direct_product(z + z0, w * z)
        return ProductValue(a - b, route, ea + eb)
    if route is not Route.CONTOUR:
        raise ValueError("difference_identity supports DIRECT and CONTOUR routes")
    args = ShiftedArgs.make(z, z0)
    orientation = sign if args.z0_sector is not Sector.OUTER else -sign
    pref = orientation * cmath.exp(1j * (math.pi / 4.0 + sign * math.pi / 3.0)) / _PREF_NORM
    loop = _contour_value(ContourKind.O, args, tol, config, strict)
    return ProductValue(pref * loop.value, route, abs(pref) * loop.abs_err_est)


def w_pm_real(sign: int, x: float, x0: float, tol: float = _DEFAULT_TOL,
              config: ContourConfig = DEFAULT_CONFIG,
              strict: bool = True) -> ProductValue:
    """W+-(x; x0) for real x and real shift x0 >= 0 via the half-line form

        e^{+-i pi/12}/(4 pi^{3/2}) *
            Int_0^inf exp[-+ik(x+x0/2) +- ix0^2/(4k) -+ ik^3/12] dk/sqrt(k).

    The oscillatory half-line integral is evaluated through its
    regularized contour equivalent (the origin contour placed against
    the real axis, endpoints rotated into the adjacent decay regions).
    No such single-integral formula exists for x0 < 0, which raises
    NegativeShift.
    """
    _check_sign(sign)
    x, x0 = float(x), float(x0)
    if x0 < 0.0:
        raise NegativeShift("w_pm_real requires x0 >= 0; use aiai_real or w_pm instead")
    args = ShiftedArgs.make(x, x0)
    kind = ContourKind.R_PLUS if sign > 0 else ContourKind.R_MINUS
    pref = cmath.exp(1j * (math.pi / 4.0 + sign * math.pi / 3.0)) / _PREF_NORM
    res = _contour_value(kind, args, tol, config, strict)
    return ProductValue(pref * res.value, Route.REAL_AXIS, abs(pref) * res.abs_err_est)


def aiai_real(x: float, x0: float, tol: float = _DEFAULT_TOL,
              config: ContourConfig = DEFAULT_CONFIG,
              strict: bool = True) -> ProductValue:
    """Ai(x+x0) Ai(x) for any real x, x0 via the cosine half-line form

        (1/(2 pi^{3/2})) *
            Int_0^inf cos[k(x+x0/2) - x0^2/(4k) + k^3/12 + pi/4] dk/sqrt(k).

    Valid for x0 < 0 as well (the origin-loop contributions of the two
    underlying W terms cancel in this symmetric combination); the result
    carries zero imaginary part by construction.
    """
    x, x0 = float(x), float(x0)
    args = ShiftedArgs.make(x, x0)
    res = _contour_value(ContourKind.R_MINUS, args, tol, config, strict)
    pref = cmath.exp(1j * math.pi / 4.0) / (2.0 * math.pi ** 1.5)
    val = complex((pref * res.value).real, 0.0)
    return ProductValue(val, Route.REAL_AXIS, abs(pref) * res.abs_err_est)


def _factor_derivatives(zz: complex, rot: complex):
    """(p, p', p'', p''', p'''') for p(z) = Ai(rot z) at argument zz.

    Every rotated Ai solves p'' = z p in the unrotated variable (rot^3
    is 1), so higher derivatives reduce to p and p'.
    """
    a = airy(rot * zz)
    p = a.ai
    dp = rot * a.ai_prime
    d2 = zz * p
    d3 = p + zz * dp
    d4 = 2.0 * dp + zz * zz * p
    return (p, dp, d2, d3, d4), a.est_rel_err


def ode_residual_w(z: complex, z0: complex,
                   rot1: Rotation = Rotation.NONE,
                   rot2: Rotation = Rotation.NONE) -> float:
    """Normalized residual of the fourth-order product equation.

    Derivatives of w = v1(z+z0) v2(z) are formed analytically from the
    Airy recurrence v'' = z v (no finite differences), combined by the
    Leibniz rule, and inserted into

        w'''' - (4z + 2 z0) w'' - 6 w' + z0^2 w.

    The residual is normalized by the largest magnitude among the four
    operator terms (floored at 1), so it measures cancellation quality
    relative to the natural scale of the identity.
    """
    rot1, rot2 = Rotation(rot1), Rotation(rot2)
    z, z0 = complex(z), complex(z0)
    p, _ = _factor_derivatives(z + z0, rot1.factor)
    q, _ = _factor_derivatives(z, rot2.factor)

    w0 = p[0] * q[0]
    w1 = p[1] * q[0] + p[0] * q[1]
    w2 = p[2] * q[0] + 2.0 * p[1] * q[1] + p[0] * q[2]
    w3 = p[3] * q[0] + 3.0 * p[2] * q[1] + 3.0 * p[1] * q[2] + p[0] * q[3]
    w4 = (p[4] * q[0] + 4.0 * p[3] * q[1] + 6.0 * p[2] * q[2]
          + 4.0 * p[1] * q[3] + p[0] * q[4])

    terms = (w4, (4.0 * z + 2.0 * z0) * w2, 6.0 * w1, z0 * z0 * w0)
    resid = terms[0] - terms[1] - terms[2] + terms[3]
    scale = max(1.0, *(abs(t) for t in terms))
    return abs(resid) / scale


def _derivative_stack(args, rot: complex):
    """Vectorized (p, p', p'', p''', p'''') arrays for p = Ai(rot .)."""
    ai, aip, _ = airy_batch(rot * args)
    p0 = ai
    p1 = rot * aip
    p2 = args * p0
    p3 = p0 + args * p1
    p4 = 2.0 * p1 + args * args * p0
    return p0, p1, p2, p3, p4


def _leibniz_terms(p, q):
    w0 = p[0] * q[0]
    w1 = p[1] * q[0] + p[0] * q[1]
    w2 = p[2] * q[0] + 2.0 * p[1] * q[1] + p[0] * q[2]
    w3 = p[3] * q[0] + 3.0 * p[2] * q[1] + 3.0 * p[1] * q[2] + p[0] * q[3]
    w4 = (p[4] * q[0] + 4.0 * p[3] * q[1] + 6.0 * p[2] * q[2]
          + 4.0 * p[1] * q[3] + p[0] * q[4])
    return w0, w1, w2, w3, w4


def ode_residual_w_batch(z, z0):
    """Vectorized ``ode_residual_w``: per-point maximum over all nine products.

    Shares the six Airy evaluations each point needs across the nine
    rotation pairs, so large verification grids stay fast.
    """
    z = np.atleast_1d(np.asarray(z, complex))
    z0 = np.atleast_1d(np.asarray(z0, complex))
    rots = [r.factor for r in Rotation]
    ps = [_derivative_stack(z + z0, r) for r in rots]
    qs = [_derivative_stack(z, r) for r in rots]
    worst = np.zeros(z.shape)
    for p in ps:
        for q in qs:
            w0, w1, w2, w3, w4 = _leibniz_terms(p, q)
            t1 = (4.0 * z + 2.0 * z0) * w2
            t2 = 6.0 * w1
            t3 = z0 * z0 * w0
            resid = np.abs(w4 - t1 - t2 + t3)
            scale = np.maximum.reduce(
                [np.abs(w4), np.abs(t1), np.abs(t2), np.abs(t3),
                 np.ones_like(worst)])
            worst = np.maximum(worst, resid / scale)
    return worst


def ode_residual_reduced_batch(z):
    """Vectorized ``ode_residual_reduced``: per-point max over nine products."""
    z = np.atleast_1d(np.asarray(z, complex))
    rots = [r.factor for r in Rotation]
    stacks = [_derivative_stack(z, r) for r in rots]
    worst = np.zeros(z.shape)
    for p in stacks:
        for q in stacks:
            w0, w1, _, w3, _ = _leibniz_terms(p, q)
            t1 = 4.0 * z * w1
            t2 = 2.0 * w0
            resid = np.abs(w3 - t1 - t2)
            scale = np.maximum.reduce(
                [np.abs(w3), np.abs(t1), np.abs(t2), np.ones_like(worst)])
            worst = np.maximum(worst, resid / scale)
    return worst


def ode_residual_reduced(z: complex,
                         rot1: Rotation = Rotation.NONE,
                         rot2: Rotation = Rotation.NONE) -> float:
    """Residual of the third-order zero-shift equation w''' = 4z w' + 2w.

    Any product of two Airy-equation solutions with equal arguments
    satisfies it; derivatives are analytic as in ``ode_residual_w``.
    """
    rot1, rot2 = Rotation(rot1), Rotation(rot2)
    z = complex(z)
    p, _ = _factor_derivatives(z, rot1.factor)
    q, _ = _factor_derivatives(z, rot2.factor)
    w0 = p[0] * q[0]
    w1 = p[1] * q[0] + p[0] * q[1]
    w3 = p[3] * q[0] + 3.0 * p[2] * q[1] + 3.0 * p[1] * q[2] + p[0] * q[3]
    terms = (w3, 4.0 * z * w1, 2.0 * w0)
    resid = terms[0] - terms[1] - terms[2]
    scale = max(1.0, *(abs(t) for t in terms))
    return abs(resid) / scale

"""Acceptance suite: one test per shipped criterion, at stated tolerances.

Each test prints a single summary line (visible with ``pytest -s`` or in
captured output on failure) and asserts both the numerical criterion and,
where stated, the runtime budget.

"Scaled difference" below always means |a - b| / max(1, |b|); the
reference side b is the direct (evaluator) route.
"""

import cmath
import math
import time

import numpy as np

from airyprod import (
    ContourKind,
    Rotation,
    Route,
    ShiftedArgs,
    airy,
    airy_batch,
    aiai_real,
    build_contour,
    difference_identity,
    greens_closed,
    greens_free,
    greens_time_integral,
    laplace_integral,
    ode_residual_reduced_batch,
    ode_residual_w,
    ode_residual_w_batch,
    operator_residual,
    u_pm,
    w_pm,
    w_pm_real,
    GreensParams,
)
from airyprod.grids import shifted_grid

SEED = 20240901
OMEGA = cmath.exp(2j * math.pi / 3)

_ROTS = (Rotation.NONE, Rotation.PLUS, Rotation.MINUS)


def _report(n, label, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {n} {label}: {status} ({detail})")
    assert ok, f"criterion {n} failed: {detail}"


def _scaled(a, b):
    return abs(a - b) / max(1.0, abs(b))


def test_criterion_1_ode_suite():
    t0 = time.perf_counter()
    z, z0 = shifted_grid(500, SEED)
    worst = float(np.max(ode_residual_w_batch(z, z0)))
    zero_subset = z[z0 == 0.0]
    assert len(zero_subset) > 0
    worst_reduced = float(np.max(ode_residual_reduced_batch(zero_subset)))
    # spot agreement between the scalar and batched residual paths
    assert ode_residual_w(z[0], z0[0], Rotation.PLUS, Rotation.MINUS) <= worst + 1e-16
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-10 and worst_reduced < 1e-10 and elapsed < 10.0
    _report(1, "product-ode residuals", ok,
            f"fourth-order max {worst:.3e}, reduced max {worst_reduced:.3e}, "
            f"500 points x 9 products, t={elapsed:.1f}s")


def test_criterion_2_route_equivalence():
    t0 = time.perf_counter()
    z, z0 = shifted_grid(2000, SEED)
    tol = 1e-7
    # direct references in five vectorized evaluator sweeps
    a_w = airy_batch(z + z0)[0]
    a_p, a_m = airy_batch(OMEGA * z)[0], airy_batch(z / OMEGA)[0]
    a_sp, a_sm = airy_batch(OMEGA * (z + z0))[0], airy_batch((z + z0) / OMEGA)[0]
    direct_u = {+1: a_sp * a_p, -1: a_sm * a_m}
    direct_w = {+1: a_w * a_p, -1: a_w * a_m}

    worst_u = worst_w = 0.0
    for i, (zz, zz0) in enumerate(zip(z, z0)):
        for sign in (+1, -1):
            c = u_pm(sign, zz, zz0, Route.CONTOUR, 1e-8, strict=False).value
            worst_u = max(worst_u, _scaled(c, direct_u[sign][i]))
            c = w_pm(sign, zz, zz0, Route.CONTOUR, 1e-8, strict=False).value
            worst_w = max(worst_w, _scaled(c, direct_w[sign][i]))
    elapsed = time.perf_counter() - t0
    ok = worst_u <= tol and worst_w <= tol and elapsed < 300.0
    _report(2, "contour-vs-direct routes", ok,
            f"2000 points, worst scaled diff U {worst_u:.3e}, W {worst_w:.3e}, "
            f"tol {tol:g}, t={elapsed:.0f}s")


def test_criterion_3_contour_relation():
    rng = np.random.default_rng(SEED + 3)
    worst_ratio = 0.0
    per_sector = 50
    z_in, z0_in = shifted_grid(4 * per_sector, SEED + 3,
                               quotas=(0.25, 0.25, 0.25, 0.25))
    for zz, zz0 in zip(z_in, z0_in):
        args = ShiftedArgs.make(zz, zz0)
        vals, errs = {}, 0.0
        for kind in ContourKind:
            res = laplace_integral(build_contour(kind, args), args, 1e-10)
            vals[kind] = res.value
            errs += res.abs_err_est
        lhs = vals[ContourKind.O]
        rhs = (vals[ContourKind.R_MINUS] + vals[ContourKind.L_MINUS]
               - vals[ContourKind.L_PLUS] - vals[ContourKind.R_PLUS])
        budget = max(10.0 * errs, 1e-13 * max(1.0, abs(lhs)))
        worst_ratio = max(worst_ratio, abs(lhs - rhs) / budget)

    worst_loop = 0.0
    for zz in rng.uniform(-3, 3, 20) + 1j * rng.uniform(-3, 3, 20):
        args = ShiftedArgs.make(zz, 0.0)
        res = laplace_integral(build_contour(ContourKind.O, args), args, 1e-11)
        worst_loop = max(worst_loop, abs(res.value))
    ok = worst_ratio <= 1.0 and worst_loop <= 1e-10
    _report(3, "five-contour linear relation", ok,
            f"{4 * per_sector} args, worst residual/budget {worst_ratio:.3f}, "
            f"zero-shift loop max {worst_loop:.3e}")


def test_criterion_4_real_axis():
    tol = 1e-8
    worst_half = 0.0
    for x in np.linspace(-5.0, 5.0, 11):
        for x0 in np.linspace(0.0, 4.0, 5):
            for sign in (+1, -1):
                got = w_pm_real(sign, x, x0).value
                ref = w_pm(sign, x, x0).value
                worst_half = max(worst_half, _scaled(got, ref))
    worst_cos = 0.0
    for x in np.linspace(-5.0, 5.0, 11):
        for x0 in np.linspace(-4.0, 4.0, 9):  # includes the x0 < 0 regime
            got = aiai_real(x, x0).value
            ref = airy(x + x0).ai * airy(x).ai
            worst_cos = max(worst_cos, _scaled(got, ref))
    ok = worst_half <= tol and worst_cos <= tol
    _report(4, "real-axis half-line forms", ok,
            f"worst scaled diff half-line {worst_half:.3e}, "
            f"cosine form {worst_cos:.3e}, tol {tol:g}")


def test_criterion_5_difference_identities():
    tol = 1e-8
    z, z0 = shifted_grid(200, SEED + 5, quotas=(0.25, 0.25, 0.25, 0.25))
    worst = 0.0
    for zz, zz0 in zip(z, z0):
        for sign in (+1, -1):
            d = difference_identity(sign, zz, zz0, Route.DIRECT).value
            c = difference_identity(sign, zz, zz0, Route.CONTOUR).value
            worst = max(worst, _scaled(c, d))
    ok = worst <= tol
    _report(5, "loop-integral difference identities", ok,
            f"50 samples per sector, worst scaled diff {worst:.3e}, tol {tol:g}")


def test_criterion_6_greens_function():
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED + 6)
    worst_pair = 0.0
    for _ in range(100):
        e = rng.uniform(-1.0, 1.0)
        f0 = 10.0 ** rng.uniform(-2.0, 0.0)
        eta = rng.uniform(0.1, 5.0)
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        d = 2.0 ** (2.0 / 3.0) * eta / f0 ** (1.0 / 3.0)
        shift = rng.normal(size=3) * 0.5
        p = GreensParams.make(e, (0.0, 0.0, f0),
                              direction * d / 2 + shift, -direction * d / 2 + shift)
        gc = greens_closed(p)
        gi = greens_time_integral(p, 1e-8)
        worst_pair = max(worst_pair, abs(gc - gi) / max(abs(gc), 1e-300))

    worst_free = 0.0
    for geom in [((1, 0, 0), (0, 0, 0)), ((0.4, 0.7, 0.2), (-0.3, 0.1, 0.0)),
                 ((0, 0, 1.2), (0, 0, 0.1))]:
        p = GreensParams.make(0.5, (0, 0, 1e-4), geom[0], geom[1])
        worst_free = max(worst_free,
                         abs(greens_closed(p) - greens_free(p)) / abs(greens_free(p)))

    worst_op = 0.0
    for _ in range(20):
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        d = rng.uniform(1.2, 3.0)
        p = GreensParams.make(rng.uniform(-0.5, 0.5),
                              (0.0, 0.0, rng.uniform(0.05, 0.5)),
                              direction * d, (0.0, 0.0, 0.0))
        worst_op = max(worst_op, operator_residual(p))
    elapsed = time.perf_counter() - t0
    ok = (worst_pair <= 1e-6 and worst_free <= 1e-3 and worst_op <= 1e-4
          and elapsed < 120.0)
    _report(6, "field Green's function", ok,
            f"closed-vs-integral worst {worst_pair:.3e} (100 samples), "
            f"weak-field-vs-free {worst_free:.3e}, operator residual {worst_op:.3e}, "
            f"t={elapsed:.0f}s")


def test_criterion_7_oracle_self_tests():
    rng = np.random.default_rng(SEED + 7)
    z = (rng.uniform(-1, 1, 300) + 1j * rng.uniform(-1, 1, 300)) * 10
    z = z[np.abs(z) <= 10][:200]
    a0 = airy_batch(z)[0]
    ap = airy_batch(OMEGA * z)[0]
    am = airy_batch(z / OMEGA)[0]
    res = np.abs(a0 + OMEGA * ap + np.conj(OMEGA) * am)
    scale = np.maximum.reduce([np.abs(a0), np.abs(ap), np.abs(am)])
    worst_conn = float(np.max(res / scale))

    ai0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
    aip0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)
    v = airy(0)
    err0 = max(abs(v.ai - ai0), abs(v.ai_prime - aip0))
    ok = worst_conn <= 1e-11 and err0 <= 1e-14
    _report(7, "oracle self-tests", ok,
            f"connection residual {worst_conn:.3e} on 200 points, "
            f"origin values within {err0:.1e}")

"""Reference evaluator for Ai(z) and Ai'(z) at complex argument.

This module is the ground truth the rest of the package is tested against,
so it is built from first principles only: the Maclaurin series of the
Airy equation's recessive solution for moderate |z|, and the standard
exponential asymptotic expansion (DLMF 9.7) with connection rotations for
large |z|.  No external special-function library is used.

Accuracy strategy
-----------------
The Maclaurin series of Ai suffers catastrophic cancellation along the
rays where Ai decays (condition number ~ exp(2 Re zeta), with
zeta = (2/3) z^(3/2)).  Plain float64 summation loses ~8 digits at
|z| = 6 on the positive axis, so the series is summed in double-double
arithmetic (~31 significant digits), which keeps the worst-case error
below 1e-13 out to the crossover radius |z| = 9.  Beyond the crossover
the asymptotic expansion truncated at its smallest term is itself
accurate to better than 1e-13.

For arguments outside |arg z| <= 2*pi/3 the expansion is applied to the
rotated points exp(+-2i*pi/3) z and recombined through the standard
connection identity

    Ai(z) + w Ai(w z) + w" Ai(w" z) = 0,      w = exp(2i*pi/3), w" = 1/w,

which keeps every expansion inside its well-conditioned sector.
Conjugate symmetry Ai(conj z) = conj(Ai(z)) is enforced structurally by
evaluating in the upper half plane only, so it holds exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
import cmath
import math

import numpy as np

from .errors import EnvelopeExceeded, NonFiniteInput

__all__ = ["AiryValue", "airy", "airy_batch", "airy_ode_residual", "ENVELOPE_RADIUS"]

#: Documented accuracy envelope of the public evaluator.
ENVELOPE_RADIUS = 50.0

#: Series/asymptotic crossover radius.  Chosen so that both branches meet
#: the est_rel_err <= 1e-12 target on the overlap annulus: the
#: double-double series degrades past ~|z| = 10.7, the smallest-term
#: asymptotic error crosses 1e-13 near |z| = 8.
CROSSOVER_RADIUS = 9.0

_TWO_PI_3 = 2.0 * math.pi / 3.0
_OMEGA = cmath.exp(2j * math.pi / 3.0)  # e^{2i pi/3}
_OMEGA_C = _OMEGA.conjugate()

# Ai(0) = 3^(-2/3)/Gamma(2/3) and -Ai'(0) = 3^(-1/3)/Gamma(1/3) as
# double-double (hi, lo) pairs; lo parts precomputed at 50 digits.
_C1_HI, _C1_LO = 0.3550280538878172, 2.05233632436212e-17
_C2_HI, _C2_LO = 0.2588194037928068, -2.522243111610832e-17

_SPLIT = 134217729.0  # 2**27 + 1, Dekker splitter
_EPS_DD = 2.0 ** -104


@dataclass(frozen=True)
class AiryValue:
    """Ai and Ai' at one point together with an a-priori error bound.

    ``est_rel_err`` is conservative and relative to the natural magnitude
    scale of the result (the modulus of the dominant asymptotic envelope),
    not to the possibly vanishing value itself.  It stays below 1e-12
    throughout |z| <= 20.  For real z the imaginary parts are exactly zero.
    """

    ai: complex
    ai_prime: complex
    est_rel_err: float


# ----------------------------------------------------------------------
# double-double primitives, vectorized over numpy arrays
# ----------------------------------------------------------------------

def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _fast_two_sum(a, b):
    # requires |a| >= |b| componentwise (true at all call sites)
    s = a + b
    err = b - (s - a)
    return s, err


def _two_prod(a, b):
    p = a * b
    ca = _SPLIT * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLIT * b
    bhi = cb - (cb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _dd_add(ah, al, bh, bl):
    sh, sl = _two_sum(ah, bh)
    sl = sl + (al + bl)
    return _fast_two_sum(sh, sl)


def _dd_mul(ah, al, bh, bl):
    ph, pl = _two_prod(ah, bh)
    pl = pl + (ah * bl + al * bh)
    return _fast_two_sum(ph, pl)


def _dd_div_exact(ah, al, d):
    # divisor d is an exactly representable python float (small integer)
    q1 = ah / d
    ph, pl = _two_prod(q1, d)
    rh, rl = _two_sum(ah, -ph)
    q2 = (rh + (rl - pl) + al) / d
    return _fast_two_sum(q1, q2)


# complex double-double: 4-tuple (re_hi, re_lo, im_hi, im_lo)

def _cdd_from_complex(z):
    zero = np.zeros_like(z.real)
    return (z.real.copy(), zero.copy(), z.imag.copy(), zero.copy())


def _cdd_add(a, b):
    rh, rl = _dd_add(a[0], a[1], b[0], b[1])
    ih, il = _dd_add(a[2], a[3], b[2], b[3])
    return (rh, rl, ih, il)


def _cdd_mul(a, b):
    p1h, p1l = _dd_mul(a[0], a[1], b[0], b[1])
    p2h, p2l = _dd_mul(a[2], a[3], b[2], b[3])
    rh, rl = _dd_add(p1h, p1l, -p2h, -p2l)
    q1h, q1l = _dd_mul(a[0], a[1], b[2], b[3])
    q2h, q2l = _dd_mul(a[2], a[3], b[0], b[1])
    ih, il = _dd_add(q1h, q1l, q2h, q2l)
    return (rh, rl, ih, il)


def _cdd_div_exact(a, d):
    rh, rl = _dd_div_exact(a[0], a[1], d)
    ih, il = _dd_div_exact(a[2], a[3], d)
    return (rh, rl, ih, il)


def _cdd_scale_dd(a, ch, cl):
    # multiply by a real double-double scalar constant
    rh, rl = _dd_mul(a[0], a[1], ch, cl)
    ih, il = _dd_mul(a[2], a[3], ch, cl)
    return (rh, rl, ih, il)


def _cdd_collapse(a):
    return (a[0] + a[1]) + 1j * (a[2] + a[3])


def _cdd_abs_hi(a):
    return np.hypot(a[0], a[2])


# ----------------------------------------------------------------------
# Maclaurin series branch (|z| <= CROSSOVER_RADIUS)
# ----------------------------------------------------------------------

def _series_batch(z):
    """Ai, Ai' by the Maclaurin series in double-double arithmetic.

    Ai(z) = c1 f(z) - c2 g(z) with f, g the standard Airy-equation power
    series in z^3; their derivatives use the term-ratio recurrences
        f:  t *= z^3 / ((3k+2)(3k+3))      g:  t *= z^3 / ((3k+3)(3k+4))
        f': t *= z^3 / ((3k)(3k+2))        g': t *= z^3 / ((3k+1)(3k+3))
    """
    z = np.asarray(z, dtype=complex)
    zdd = _cdd_from_complex(z)
    z2 = _cdd_mul(zdd, zdd)
    z3 = _cdd_mul(z2, zdd)

    t_f = _cdd_from_complex(np.ones_like(z))
    t_g = _cdd_from_complex(z)
    t_fp = _cdd_div_exact(z2, 2.0)          # first f' term, z^2/2
    t_gp = _cdd_from_complex(np.ones_like(z))

    s_f, s_g, s_fp, s_gp = t_f, t_g, t_fp, t_gp

    k_used = 0
    for k in range(250):
        t_f = _cdd_div_exact(_cdd_mul(t_f, z3), float((3 * k + 2) * (3 * k + 3)))
        t_g = _cdd_div_exact(_cdd_mul(t_g, z3), float((3 * k + 3) * (3 * k + 4)))
        j = k + 1
        t_fp = _cdd_div_exact(_cdd_mul(t_fp, z3), float((3 * j) * (3 * j + 2)))
        t_gp = _cdd_div_exact(_cdd_mul(t_gp, z3), float((3 * k + 1) * (3 * k + 3)))

        s_f = _cdd_add(s_f, t_f)
        s_g = _cdd_add(s_g, t_g)
        s_fp = _cdd_add(s_fp, t_fp)
        s_gp = _cdd_add(s_gp, t_gp)
        k_used = k + 1

        tmax = max(
            np.max(_cdd_abs_hi(t_f)), np.max(_cdd_abs_hi(t_g)),
            np.max(_cdd_abs_hi(t_fp)), np.max(_cdd_abs_hi(t_gp)),
        )
        smax = max(np.max(_cdd_abs_hi(s_f)), np.max(_cdd_abs_hi(s_g)), 1.0)
        if tmax < 1e-35 * smax:
            break

    f1 = _cdd_scale_dd(s_f, _C1_HI, _C1_LO)
    g2 = _cdd_scale_dd(s_g, _C2_HI, _C2_LO)
    ai = _cdd_collapse(_cdd_add(f1, (-g2[0], -g2[1], -g2[2], -g2[3])))

    fp1 = _cdd_scale_dd(s_fp, _C1_HI, _C1_LO)
    gp2 = _cdd_scale_dd(s_gp, _C2_HI, _C2_LO)
    aip = _cdd_collapse(_cdd_add(fp1, (-gp2[0], -gp2[1], -gp2[2], -gp2[3])))

    # a-priori bound: rounding at double-double precision amplified by the
    # cancellation condition number exp(2 max(Re zeta, 0))
    zeta_re = np.real((2.0 / 3.0) * z * np.sqrt(z))
    cond = np.exp(2.0 * np.maximum(zeta_re, 0.0))
    est = 20.0 * k_used * _EPS_DD * cond + 5e-16
    return ai, aip, est


# ----------------------------------------------------------------------
# asymptotic branch (|z| > CROSSOVER_RADIUS)
# ----------------------------------------------------------------------

def _asym_core(w):
    """One-series asymptotics of Ai, Ai' for |arg w| <= 2*pi/3.

    Truncates each expansion at its smallest term; the returned relative
    error estimate is the smallest-term magnitude with a sector safety
    factor.
    """
    sq = np.sqrt(w)
    zeta = (2.0 / 3.0) * w * sq
    w4 = np.sqrt(sq)
    izeta = 1.0 / zeta

    A = np.ones_like(w)
    B = np.ones_like(w)
    T = np.ones_like(w)
    active = np.ones(w.shape, dtype=bool)
    prev_mag = np.ones(w.shape)
    est = np.full(w.shape, np.nan)

    for k in range(1, 61):
        ratio = (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        T = T * (-ratio) * izeta
        mag = np.abs(T)
        # stop before adding once terms grow (divergent tail)
        grown = active & (mag >= prev_mag)
        est[grown] = prev_mag[grown]
        active &= ~grown
        vfac = (6 * k + 1) / (1.0 - 6 * k)
        A = np.where(active, A + T, A)
        B = np.where(active, B + T * vfac, B)
        tiny = active & (mag < 1e-18)
        est[tiny] = mag[tiny]
        active &= ~tiny
        prev_mag = mag
        if not active.any():
            break
    est[np.isnan(est)] = prev_mag[np.isnan(est)]
    est = 3.0 * np.sqrt(60.0) * est + 5e-16

    pref = np.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    ai = pref * A / w4
    aip = -pref * B * w4
    return ai, aip, est


def _asym_batch(w):
    """Asymptotic evaluation for any argument, imag(w) >= 0 assumed."""
    ai = np.empty_like(w)
    aip = np.empty_like(w)
    est = np.empty(w.shape)

    arg = np.angle(w)
    direct = arg <= _TWO_PI_3
    realneg = (w.imag == 0.0) & (w.real < 0.0)
    direct &= ~realneg
    conn = ~(direct | realneg)

    if direct.any():
        a, ap, e = _asym_core(w[direct])
        ai[direct], aip[direct], est[direct] = a, ap, e

    if realneg.any():
        # build from a single rotated evaluation so the result is real by
        # construction (the mirror term is the exact conjugate)
        am, apm, e = _asym_core(w[realneg] * _OMEGA_C)
        ai[realneg] = -2.0 * np.real(_OMEGA_C * am) + 0.0j
        aip[realneg] = -2.0 * np.real(_OMEGA * apm) + 0.0j
        est[realneg] = 2.0 * e

    if conn.any():
        wc = w[conn]
        ap_, app, ep = _asym_core(wc * _OMEGA)
        am_, apm, em = _asym_core(wc * _OMEGA_C)
        val = -_OMEGA * ap_ - _OMEGA_C * am_
        dval = -_OMEGA_C * app - _OMEGA * apm
        ai[conn] = val
        aip[conn] = dval
        scale = 0.5 * (np.abs(ap_) + np.abs(am_))
        est[conn] = (np.abs(ap_) * ep + np.abs(am_) * em) / np.maximum(
            np.abs(val), np.maximum(scale, 1e-300)
        )
    return ai, aip, est


# ----------------------------------------------------------------------
# public entry points
# ----------------------------------------------------------------------

def _airy_raw_batch(z):
    """Core evaluator without the envelope gate (arrays in, arrays out)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if not np.all(np.isfinite(z)):
        raise NonFiniteInput("airy: argument must be finite")

    ai = np.empty_like(z)
    aip = np.empty_like(z)
    est = np.empty(z.shape)

    flip = z.imag < 0.0
    zz = np.where(flip, np.conj(z), z)

    small = np.abs(zz) <= CROSSOVER_RADIUS
    if small.any():
        a, ap, e = _series_batch(zz[small])
        ai[small], aip[small], est[small] = a, ap, e
    big = ~small
    if big.any():
        if np.any(np.abs(np.real((2.0 / 3.0) * zz[big] * np.sqrt(zz[big]))) > 700.0):
            raise EnvelopeExceeded("airy: exponential scale overflows float64")
        a, ap, e = _asym_batch(zz[big])
        ai[big], aip[big], est[big] = a, ap, e

    ai = np.where(flip, np.conj(ai), ai)
    aip = np.where(flip, np.conj(aip), aip)
    return ai, aip, est


def airy_batch(z):
    """Vectorized ``airy``: returns (ai, ai_prime, est_rel_err) arrays."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if not np.all(np.isfinite(z)):
        raise NonFiniteInput("airy: argument must be finite")
    if np.any(np.abs(z) > ENVELOPE_RADIUS):
        raise EnvelopeExceeded(
            f"airy: |z| exceeds the supported envelope {ENVELOPE_RADIUS}"
        )
    return _airy_raw_batch(z)


def airy(z: complex) -> AiryValue:
    """Evaluate Ai(z), Ai'(z) for complex z with |z| <= 50.

    Raises
    ------
    NonFiniteInput
        if z is NaN or infinite.
    EnvelopeExceeded
        if |z| > 50 (the documented accuracy envelope).
    """
    z = complex(z)
    ai, aip, est = airy_batch(np.array([z]))
    return AiryValue(complex(ai[0]), complex(aip[0]), float(est[0]))


def airy_ode_residual(z: complex, h: float = 1e-3) -> float:
    """Centered-difference check that the evaluator solves v'' = z v.

    Returns |FD2[Ai](z) - z Ai(z)| / max(1, |Ai(z)|) with a second-order
    stencil of step h.  Step restricted to 1e-4 <= h <= 1e-1: larger
    steps leave the O(h^2) regime, smaller ones amplify rounding.
    """
    z = complex(z)
    h = float(h)
    if not (1e-4 <= h <= 1e-1):
        raise ValueError("airy_ode_residual: h must lie in [1e-4, 1e-1]")
    a0, ap_, am = airy_batch(np.array([z, z + h, z - h]))[0]
    fd2 = (ap_ - 2.0 * a0 + am) / (h * h)
    return abs(fd2 - z * a0) / max(1.0, abs(a0))

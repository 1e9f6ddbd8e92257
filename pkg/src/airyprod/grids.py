"""Deterministic pseudo-random sample grids for verification runs.

The identity and route checks need (z, z0) samples that cover all four
shift sectors (inner / outer / boundary / zero) with controlled radii.
Given the same seed the grids are bit-identical, which keeps report
files byte-stable.
"""

from __future__ import annotations

import numpy as np

__all__ = ["shifted_grid", "real_grid"]


def _disk(rng, n, radius):
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    th = rng.uniform(-np.pi, np.pi, n)
    return r * np.exp(1j * th)


def shifted_grid(n: int, seed: int, z_radius: float = 4.0, z0_radius: float = 3.0,
                 quotas=(0.4, 0.3, 0.15, 0.15)):
    """(z, z0) arrays with sector quotas (inner, outer, boundary, zero).

    z is uniform over the disk |z| <= z_radius; z0 magnitudes are uniform
    in (0, z0_radius] with arguments drawn per sector.  Boundary points
    sit within 1e-13 of |arg z0| = pi/2; zero points have z0 = 0 exactly.
    """
    rng = np.random.default_rng(seed)
    z = _disk(rng, n, z_radius)
    n_inner = int(quotas[0] * n)
    n_outer = int(quotas[1] * n)
    n_bound = int(quotas[2] * n)
    n_zero = n - n_inner - n_outer - n_bound

    mag = rng.uniform(0.05, z0_radius, n)
    arg = np.empty(n)
    arg[:n_inner] = rng.uniform(-np.pi / 2 + 1e-3, np.pi / 2 - 1e-3, n_inner)
    sl = slice(n_inner, n_inner + n_outer)
    arg[sl] = (rng.uniform(np.pi / 2 + 1e-3, np.pi, n_outer)
               * rng.choice([-1.0, 1.0], n_outer))
    sl = slice(n_inner + n_outer, n_inner + n_outer + n_bound)
    arg[sl] = (np.pi / 2 + rng.uniform(-1e-13, 1e-13, n_bound)) \
        * rng.choice([-1.0, 1.0], n_bound)
    z0 = mag * np.exp(1j * arg)
    z0[n - n_zero:] = 0.0
    return z, z0


def real_grid(n_x: int, n_x0: int, x_range=(-5.0, 5.0), x0_range=(0.0, 4.0)):
    """Tensor grid of real (x, x0) pairs, flattened row-major."""
    xs = np.linspace(*x_range, n_x)
    x0s = np.linspace(*x0_range, n_x0)
    gx, gx0 = np.meshgrid(xs, x0s, indexing="ij")
    return gx.ravel(), gx0.ravel()

"""The static-field Green's function along a field-aligned line.

Evaluates G(r, 0) for r = (0, 0, s) at fixed energy and field by the
closed analytic form, checks a few points against the independent
time-integral quadrature, and shows the weak-field approach to the free
outgoing wave e^{ik|r|}/(2 pi |r|).

Run:  python demos/greens_field_line.py
"""

import numpy as np

from airyprod import (
    GreensParams,
    greens_closed,
    greens_free,
    greens_time_integral,
    scaled_vars,
)


def main():
    energy, field = 0.5, 0.1
    print(f"E = {energy} hartree, F = (0, 0, {field}) a.u., r' = 0")
    print(f"{'s':>5s} {'xi':>8s} {'eta':>7s} {'Re G':>14s} {'Im G':>14s} "
          f"{'vs integral':>12s}")
    for s in np.linspace(0.4, 4.0, 10):
        p = GreensParams.make(energy, (0, 0, field), (0, 0, s), (0, 0, 0))
        g = greens_closed(p)
        sv = scaled_vars(p)
        check = abs(g - greens_time_integral(p, 1e-8)) / abs(g)
        print(f"{s:5.2f} {sv.xi:8.3f} {sv.eta:7.3f} {g.real:14.6e} "
              f"{g.imag:14.6e} {check:12.2e}")

    print("\nweak-field limit at s = 1:")
    for f in (1e-1, 1e-2, 1e-3, 1e-4):
        p = GreensParams.make(energy, (0, 0, f), (0, 0, 1.0), (0, 0, 0))
        rel = abs(greens_closed(p) - greens_free(p)) / abs(greens_free(p))
        print(f"  F = {f:7.1e}   |closed - free| / |free| = {rel:.3e}")


if __name__ == "__main__":
    main()

"""The real-axis half-line integrals, including the negative-shift regime.

Two single-integral formulas exist on the real axis:

* W+-(x; x0) for x0 >= 0 (it genuinely fails for x0 < 0, where the
  representation needs an extra loop term -- the library refuses it);
* the cosine form for Ai(x+x0) Ai(x), valid for *any* real x0 because
  the loop contributions of its two constituents cancel.

The script tabulates both against plain products of evaluator calls and
demonstrates the refusal.

Run:  python demos/real_axis_formulas.py
"""

import numpy as np

from airyprod import NegativeShift, airy, aiai_real, w_pm_real


def main():
    print("half-line form of W+ vs direct product, x0 >= 0")
    print(f"{'x':>6s} {'x0':>6s} {'re':>24s} {'im':>24s} {'diff':>10s}")
    for x in (-3.0, 0.0, 2.0):
        for x0 in (0.0, 1.0, 3.0):
            got = w_pm_real(+1, x, x0).value
            ref = airy(x + x0).ai * airy(np.exp(2j * np.pi / 3) * x).ai
            print(f"{x:6.2f} {x0:6.2f} {got.real:24.16g} {got.imag:24.16g} "
                  f"{abs(got - ref):10.2e}")

    print("\ncosine form of Ai(x+x0)Ai(x), any real shift (note x0 < 0 rows)")
    print(f"{'x':>6s} {'x0':>6s} {'value':>24s} {'diff':>10s}")
    for x in (-2.0, 1.0, 4.0):
        for x0 in (-3.0, -1.0, 0.0, 2.0):
            got = aiai_real(x, x0).value.real
            ref = (airy(x + x0).ai * airy(x).ai).real
            print(f"{x:6.2f} {x0:6.2f} {got:24.16g} {abs(got - ref):10.2e}")

    print("\nnegative shift is rejected by the W form:")
    try:
        w_pm_real(+1, 0.0, -0.5)
    except NegativeShift as exc:
        print("  NegativeShift:", exc)


if __name__ == "__main__":
    main()

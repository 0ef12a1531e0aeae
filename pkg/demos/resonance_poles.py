"""Pole lattice of the single-orbit response function.

Loads the demo orbit models, solves the pole condition over a (k, s)
rectangle, and scans |g(E)| along a line of real energies to show the
resonance peaks sitting at the real parts of the poles.

Run:
    python3 demos/resonance_poles.py
"""

from pathlib import Path

import numpy as np

from semiclassics import (
    PoleIndex,
    SemiclassicalContext,
    find_pole,
    load_orbit,
    pole_residual,
    response_function,
)

ORBITS = Path(__file__).parent / "orbits"


def main():
    ctx = SemiclassicalContext()

    for filename in ("linear_orbit.json", "quadratic_orbit.json"):
        orbit = load_orbit(ORBITS / filename)
        print("=" * 64)
        print(f"  {orbit.name}")
        print(f"  S(E) coefficients {orbit.s_coeffs}, w(E) {orbit.w_coeffs}, "
              f"lambda = {orbit.lam}")
        print("=" * 64)
        print(f"{'k':>3} {'s':>3} {'Re E_ks':>12} {'Im E_ks':>12} {'|residual|':>11}")
        for k in range(3):
            for s in range(3):
                idx = PoleIndex(k, s)
                pole = find_pole(ctx, orbit, idx)
                res = abs(pole_residual(ctx, orbit, pole, idx))
                print(f"{k:3d} {s:3d} {pole.real:12.6f} {pole.imag:12.6f} {res:11.1e}")
        print()

    orbit = load_orbit(ORBITS / "linear_orbit.json")
    print("resonance peaks of |g(E)| along real E (linear-action orbit):")
    poles = [find_pole(ctx, orbit, PoleIndex(0, s)) for s in range(3)]
    for e in np.arange(0.30, 2.75, 0.1):
        value = abs(response_function(ctx, orbit, complex(round(e, 2))))
        nearest = min(abs(e - p.real) for p in poles)
        marker = " <- near Re E_ks" if nearest < 0.06 else ""
        print(f"  E = {e:4.2f}   |g| = {value:8.3f}  "
              + "*" * min(60, int(value * 4)) + marker)


if __name__ == "__main__":
    main()

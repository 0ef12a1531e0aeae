"""Tour of the cubic well V(x) = x**2/2 - g*x**3.

Shows the barrier geometry, the decay of the quasi-bound state with
coupling, and the three complex turning points at the quasi-bound
energy, with the Vieta identities as a live consistency check.

Run:
    python3 demos/potential_landscape.py
"""

import numpy as np

from semiclassics import (
    CubicModel,
    corrected_quasi_bound_energy,
    turning_points,
    wkb_lifetime,
)


def main():
    print("=" * 64)
    print("  THE CUBIC WELL")
    print("=" * 64)

    g = 0.17888
    model = CubicModel(g)
    print(f"\ncoupling g = {g}")
    print(f"barrier top at x = 1/(3g) = {model.barrier_position:.4f}, "
          f"height 1/(54 g^2) = {model.barrier_height:.4f}")

    print("\nlifetime grows violently as the coupling shrinks:")
    for gg in (0.20, 0.17888, 0.16099, 0.14311, 0.12522, 0.11):
        print(f"  g = {gg:7.5f}   tau = {wkb_lifetime(gg):12.1f}")

    print("\nturning points at the quasi-bound energy (complex E):")
    for gg in (0.17888, 0.14311):
        state = corrected_quasi_bound_energy(gg)
        tps = turning_points(CubicModel(gg), state.energy)
        print(f"\n  g = {gg}, E = {state.energy:.6f}")
        for name, x in zip(("x1", "x2", "x3"), tps):
            print(f"    {name} = {x.real:+.6f} {x.imag:+.6f}i")
        total = sum(tps)
        product = tps.x1 * tps.x2 * tps.x3
        print(f"    Vieta: sum = {total.real:.10f} (exact 1/(2g) = {1/(2*gg):.10f})")
        print(f"           product = {product:.6f} (exact -E/g = {-state.energy/gg:.6f})")

    print("\nsampled potential along the real axis (plot-ready):")
    xs = np.linspace(-1.5, 5.0, 14)
    for x in xs:
        v = model.potential(complex(x)).real
        bar = "#" * max(0, int(24 + 10 * v)) if abs(v) < 4 else ""
        print(f"  x = {x:6.2f}   V = {v:8.4f}  {bar}")


if __name__ == "__main__":
    main()

"""Acceptance gate for the package.

Each test here implements one numbered acceptance criterion at its
stated tolerance and prints a single pass/fail line (run with ``-s`` to
see the lines as they appear).  The crossing-time criteria share one
set of integrations through a module-scoped fixture.

The crossing-time row is reproduced under the pipeline's default
energy construction E = E0(g) - i/(2 tau) with E0(g) = 1/2 - (11/8) g^2
(second-order weak-coupling ground-state energy), started at the
leftmost turning point x1 with p0 = 0.  The leading-order construction
Re E = 1/2 misses the reference values; the strict tier A passes under
the corrected default, and the tier B predicates hold for the same
runs.  See README for the convention write-up.
"""

import math
import time

import numpy as np
import pytest

from semiclassics import (
    CubicModel,
    HarmonicModel,
    IntegratorConfig,
    PoleIndex,
    SemiclassicalContext,
    corrected_quasi_bound_energy,
    crossing_time,
    find_pole,
    integrate,
    pole_residual,
    quasi_bound_energy,
    response_function,
    reversibility_error,
    sinh_expansion_error,
    turning_points,
    wkb_lifetime,
)
from semiclassics.cli import main as cli_main
from semiclassics.cli import load_reference_table
from semiclassics.gutzwiller import OrbitModel
from tests.test_gutzwiller import (
    LINEAR,
    QUADRATIC,
    closed_form_pole,
    double_sum_response,
    random_orbit,
)

REFERENCE = load_reference_table()
TIER_A_ABS = 13.0  # about two oscillation periods
TIER_A_REL = 0.10


def report(criterion, ok, detail):
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


@pytest.fixture(scope="module")
def crossing_rows():
    """Crossing time, lifetime and timing for the benchmark grid under
    the default (corrected) energy construction, x0 = x1, p0 = 0."""
    rows = []
    started = time.perf_counter()
    for g in REFERENCE["g"]:
        state = corrected_quasi_bound_energy(g)
        model = CubicModel(g)
        x1 = turning_points(model, state.energy).x1
        t_c = crossing_time(model, state.energy, x1, 0j)
        rows.append({"g": g, "t_c": t_c, "tau": state.tau})
    elapsed = time.perf_counter() - started
    return rows, elapsed


def test_criterion_1_wkb_lifetime_row():
    computed = [round(wkb_lifetime(g)) for g in REFERENCE["g"]]
    ok = computed == REFERENCE["tau"]
    assert report(
        1, ok, f"tau rounds to {computed}, reference {REFERENCE['tau']}"
    )


def test_criterion_2_crossing_row_tier_a(crossing_rows):
    rows, elapsed = crossing_rows
    details = []
    ok = True
    for row, ref in zip(rows, REFERENCE["t_c"]):
        window = max(TIER_A_ABS, TIER_A_REL * ref)
        miss = abs(row["t_c"] - ref)
        ok = ok and miss <= window
        details.append(f"g={row['g']}: t_c={row['t_c']:.1f} ref={ref} |err|={miss:.1f} (<= {window:.0f})")
    print(f"  tier A under default corrected energy, x0=x1; runtime {elapsed:.1f}s (target 60s)")
    for line in details:
        print("  " + line)
    # for the record: the leading-order construction misses tier A
    g = REFERENCE["g"][-1]
    state = quasi_bound_energy(g)
    model = CubicModel(g)
    x1 = turning_points(model, state.energy).x1
    lead = crossing_time(model, state.energy, x1, 0j)
    print(f"  leading-order energy (Re E = 1/2) at g={g}: t_c={lead:.1f} vs ref {REFERENCE['t_c'][-1]}")
    assert report(2, ok, "tier A: all four crossing times within max(13, 10%)")


def test_criterion_3_crossing_row_tier_b(crossing_rows):
    rows, _ = crossing_rows
    t_c = [row["t_c"] for row in rows]
    ratios = [row["t_c"] / row["tau"] for row in rows]
    finite = all(math.isfinite(t) for t in t_c)
    decreasing = all(a > b for a, b in zip(t_c, t_c[1:]))  # g ascending
    above_four = all(r > 4.0 for r in ratios)
    widening = all(a > b for a, b in zip(ratios, ratios[1:]))
    ok = finite and decreasing and above_four and widening
    assert report(
        3, ok,
        "tier B: t_c finite, decreasing in g; ratios "
        + ", ".join(f"{r:.1f}" for r in ratios)
        + " all > 4 and increasing as g decreases",
    )


def test_criterion_4_qualitative_trajectory():
    g = 2.0 / math.sqrt(125.0)
    state = corrected_quasi_bound_energy(g)
    model = CubicModel(g)
    tps = turning_points(model, state.energy)
    t_c = crossing_time(model, state.energy, tps.x1, 0j, IntegratorConfig(t_max=58.0))
    traj = integrate(model, state.energy, tps.x1, 0j, IntegratorConfig(t_max=58.0))
    after = traj.x.real[traj.t > t_c]
    returned = after.min() < tps.x2.real
    ok = math.isfinite(t_c) and returned
    assert report(
        4, ok,
        f"g=2/sqrt(125): crossing at t_c={t_c:.2f}, then Re x dips to "
        f"{after.min():.2f} < Re x2 = {tps.x2.real:.2f}",
    )


def test_criterion_5_energy_conservation_longest_run():
    g = REFERENCE["g"][0]
    state = corrected_quasi_bound_energy(g)
    model = CubicModel(g)
    x1 = turning_points(model, state.energy).x1
    horizon = float(REFERENCE["t_c"][0])
    traj = integrate(model, state.energy, x1, 0j, IntegratorConfig(t_max=horizon))
    limit = 1e-8 * max(1.0, abs(state.energy))
    ok = traj.max_energy_drift <= limit
    assert report(
        5, ok,
        f"max |H - E| = {traj.max_energy_drift:.2e} over t = {horizon:g} "
        f"(limit {limit:.1e})",
    )


def test_criterion_6_reversibility():
    harmonic = reversibility_error(HarmonicModel(), 0.5 + 0j, 1.0 + 0j, 0j, 2.0 * math.pi)
    model = CubicModel(0.1)
    x1 = turning_points(model, 0.3 + 0j).x1
    cubic = reversibility_error(model, 0.3 + 0j, x1, 0j, 50.0)
    ok = harmonic <= 1e-10 and cubic <= 1e-6
    assert report(
        6, ok,
        f"retrace error: harmonic {harmonic:.2e} (<= 1e-10), cubic {cubic:.2e} (<= 1e-6)",
    )


def test_criterion_7_vieta_identities():
    rng = np.random.default_rng(424242)
    worst = 0.0
    for _ in range(200):
        g = rng.uniform(0.05, 0.2)
        energy = complex(
            rng.uniform(0.05, 2.0), rng.choice([-1.0, 1.0]) * rng.uniform(0.02, 0.6)
        )
        x1, x2, x3 = turning_points(CubicModel(g), energy)
        pair_scale = max(abs(x1 * x2), abs(x1 * x3), abs(x2 * x3))
        rel = max(
            abs(x1 + x2 + x3 - 1.0 / (2.0 * g)) / max(1.0, 1.0 / (2.0 * g)),
            abs(x1 * x2 + x1 * x3 + x2 * x3) / pair_scale,
            abs(x1 * x2 * x3 + energy / g) / max(1.0, abs(energy) / g),
        )
        worst = max(worst, rel)
    ok = worst <= 1e-10
    assert report(
        7, ok, f"Vieta identities on 200 random (g, E): worst relative error {worst:.2e}"
    )


def test_criterion_8_pole_lattice():
    ctx = SemiclassicalContext()
    worst_linear = 0.0
    for k in range(4):
        for s in range(4):
            pole = find_pole(ctx, LINEAR, PoleIndex(k, s))
            worst_linear = max(worst_linear, abs(pole - closed_form_pole(k, s)))

    idx = PoleIndex(0, 0)
    newton = find_pole(ctx, QUADRATIC, idx)
    best = 0.5 - 0.05j
    half = 0.5
    for _ in range(7):
        res = np.linspace(best.real - half, best.real + half, 41)
        ims = np.linspace(best.imag - half, best.imag + half, 41)
        values = np.array(
            [
                [abs(pole_residual(ctx, QUADRATIC, complex(r, i), idx)) for r in res]
                for i in ims
            ]
        )
        j, i = np.unravel_index(np.argmin(values), values.shape)
        best = complex(res[i], ims[j])
        half = half / 5.0
    grid_gap = abs(newton - best)
    polished = find_pole(ctx, QUADRATIC, idx, guess=best)
    residual = abs(pole_residual(ctx, QUADRATIC, newton, idx))

    ok = worst_linear <= 1e-12 and grid_gap <= 5e-6 and abs(polished - newton) <= 1e-12 and residual <= 1e-12
    assert report(
        8, ok,
        f"linear 4x4 lattice worst |err| = {worst_linear:.1e} (<= 1e-12); "
        f"quadratic pole vs grid search gap {grid_gap:.1e}, residual {residual:.1e}",
    )


def test_criterion_9_resummation_equivalence():
    ctx = SemiclassicalContext()
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(50):
        orbit = random_orbit(rng)
        energy = complex(rng.uniform(-1, 1), 0.0)
        ours = response_function(ctx, orbit, energy)
        oracle = double_sum_response(orbit, energy)
        worst = max(worst, abs(ours - oracle) / abs(ours))
    bound_ok = True
    for x in (0.5, 1.0, 2.0):
        for n_kept in range(21):
            bound = 2.0 * math.exp(-(2 * n_kept + 3) * x) / (1.0 - math.exp(-2.0 * x))
            bound_ok = bound_ok and sinh_expansion_error(x, n_kept) <= bound * (1 + 1e-12)
    ok = worst <= 1e-12 and bound_ok
    assert report(
        9, ok,
        f"resummation vs double sum on 50 instances: worst rel {worst:.2e} "
        f"(<= 1e-12); sinh tail bound holds on grid: {bound_ok}",
    )


def test_criterion_10_table1_determinism(tmp_path, capsys):
    paths = [tmp_path / "table1_a.csv", tmp_path / "table1_b.csv"]
    for path in paths:
        code = cli_main(["table1", "--format", "csv", "--out", str(path)])
        assert code == 0
    capsys.readouterr()  # drop manifests
    identical = paths[0].read_bytes() == paths[1].read_bytes()
    assert report(
        10, identical,
        f"two table1 runs produced byte-identical CSV ({paths[0].stat().st_size} bytes)",
    )

"""Command-line front end and the crossing-time vs lifetime pipeline.

Subcommands: tau, trajectory, turning-points, crossing-time, table1,
gutzwiller eval, gutzwiller poles, reversibility.  Every command prints
a JSON run manifest to stderr with all resolved parameters, so a run
can be replayed exactly.  Numeric output uses 6 significant digits in
human tables and 17 in CSV.
"""

import argparse
import cmath
import datetime
import json
import sys
from dataclasses import dataclass
from importlib import resources

from . import __version__
from .cubic import (
    CubicModel,
    HarmonicModel,
    corrected_quasi_bound_energy,
    quasi_bound_energy,
    turning_points,
    wkb_lifetime,
)
from .errors import NoCrossing, SemiclassicsError
from .gutzwiller import (
    PoleIndex,
    SemiclassicalContext,
    find_pole,
    load_orbit,
    pole_residual,
    response_function,
)
from .trajectory import (
    IntegratorConfig,
    crossing_time,
    initial_momentum,
    integrate,
    reversibility_error,
)

__all__ = [
    "TABLE1_G",
    "Table1Row",
    "compute_table1",
    "load_reference_table",
    "main",
    "resolve_energy",
]

# Benchmark coupling grid; reference values ship in data/table1_reference.json.
TABLE1_G = (0.12522, 0.14311, 0.16099, 0.17888)

TRAJECTORY_HEADER = "t,re_x,im_x,re_p,im_p,energy_drift"


# ---------------------------------------------------------------------------
# formatting and manifest helpers
# ---------------------------------------------------------------------------

def _fmt6(value) -> str:
    return f"{value:.6g}"


def _fmt17(value) -> str:
    return f"{value:.17g}"


def _json_default(obj):
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    raise TypeError(f"not JSON serializable: {obj!r}")


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to replay a command bit-identically."""

    command: str
    parameters: dict
    version: str
    timestamp: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "parameters": self.parameters,
                "version": self.version,
                "timestamp": self.timestamp,
            },
            default=_json_default,
            sort_keys=True,
        )


def _emit_manifest(command: str, parameters: dict) -> None:
    manifest = RunManifest(
        command=command,
        parameters=parameters,
        version=__version__,
        timestamp=datetime.datetime.now(datetime.timezone.utc).isoformat(),
    )
    print(manifest.to_json(), file=sys.stderr)


def _render_table(headers, rows) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.rjust(w) for h, w in zip(headers, widths))]
    for row in rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return "\n".join(lines)


def _write_output(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_rows(fmt, headers, table_rows, csv_rows, json_obj, out_path) -> None:
    if fmt == "table":
        _write_output(_render_table(headers, table_rows) + "\n", out_path)
    elif fmt == "csv":
        lines = [",".join(headers)] + [",".join(r) for r in csv_rows]
        _write_output("\n".join(lines) + "\n", out_path)
    else:
        _write_output(json.dumps(json_obj, default=_json_default) + "\n", out_path)


# ---------------------------------------------------------------------------
# flag parsing
# ---------------------------------------------------------------------------

class UsageError(ValueError):
    pass


def _parse_complex_pair(text: str, flag: str) -> complex:
    parts = dict()
    for item in text.split(","):
        key, _, value = item.partition("=")
        if key not in ("re", "im") or not value:
            raise UsageError(f"{flag} expects re=<float>,im=<float>, got {text!r}")
        parts[key] = float(value)
    if set(parts) != {"re", "im"}:
        raise UsageError(f"{flag} expects re=<float>,im=<float>, got {text!r}")
    return complex(parts["re"], parts["im"])


def _parse_energy_policy(text: str):
    if text in ("corrected", "leading"):
        return text
    if "=" in text:
        return _parse_complex_pair(text, "--energy")
    try:
        return complex(float(text), 0.0)
    except ValueError:
        raise UsageError(
            f"--energy expects 'corrected', 'leading', re=..,im=.. or a float, got {text!r}"
        ) from None


def _parse_x0_policy(text: str):
    if text in ("x1", "x2"):
        return text
    if "=" in text:
        return _parse_complex_pair(text, "--x0")
    raise UsageError(f"--x0 expects 'x1', 'x2' or re=..,im=.., got {text!r}")


def resolve_energy(policy, g: float) -> complex:
    """Turn an energy policy into a complex energy for coupling g."""
    if policy == "corrected":
        return corrected_quasi_bound_energy(g).energy
    if policy == "leading":
        return quasi_bound_energy(g).energy
    return complex(policy)


def _resolve_start(model, energy, x0_policy, branch):
    if x0_policy in ("x1", "x2"):
        tps = turning_points(model, energy)
        x0 = tps.x1 if x0_policy == "x1" else tps.x2
        return x0, 0j
    x0 = complex(x0_policy)
    return x0, initial_momentum(model, energy, x0, branch)


def _config_from_args(args, default_t_max=2e5, **overrides) -> IntegratorConfig:
    values = dict(
        rel_tol=args.rel_tol,
        abs_tol=args.abs_tol,
        t_max=args.t_max if args.t_max is not None else default_t_max,
    )
    values.update(overrides)
    return IntegratorConfig(**values)


def _require_positive_g(values) -> None:
    for g in values:
        if g <= 0:
            raise UsageError(f"--g must be positive, got {g}")


# ---------------------------------------------------------------------------
# table1 pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Table1Row:
    """One coupling's classical crossing time vs quantum lifetime."""

    g: float
    t_c: float | None  # None marks NoCrossing
    tau: float
    ratio: float | None


def compute_table1(g_values=TABLE1_G, cfg: IntegratorConfig | None = None):
    """Crossing time and lifetime for each coupling, default policies.

    The default energy construction is the corrected quasi-bound energy
    E = E0(g) - i/(2 tau) with E0 the second-order ground-state value,
    started from the leftmost turning point x1 with p0 = 0.
    """
    cfg = cfg or IntegratorConfig()
    rows = []
    for g in g_values:
        model = CubicModel(g)
        state = corrected_quasi_bound_energy(g)
        x1 = turning_points(model, state.energy).x1
        try:
            t_c = crossing_time(model, state.energy, x1, 0j, cfg)
            ratio = t_c / state.tau
        except NoCrossing:
            t_c = None
            ratio = None
        rows.append(Table1Row(g=g, t_c=t_c, tau=state.tau, ratio=ratio))
    return rows


def load_reference_table() -> dict:
    """Reference values shipped with the package (g, t_c, tau columns)."""
    text = resources.files("semiclassics").joinpath("data/table1_reference.json").read_text(
        encoding="utf-8"
    )
    return json.loads(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_tau(args) -> int:
    _require_positive_g(args.g)
    _emit_manifest("tau", {"g": list(args.g), "format": args.format, "out": args.out})
    rows = [(g, wkb_lifetime(g)) for g in args.g]
    _emit_rows(
        args.format,
        ["g", "tau"],
        [[_fmt6(g), _fmt6(t)] for g, t in rows],
        [[_fmt17(g), _fmt17(t)] for g, t in rows],
        {"command": "tau", "rows": [{"g": g, "tau": t} for g, t in rows]},
        args.out,
    )
    return 0


def _cmd_turning_points(args) -> int:
    _require_positive_g([args.g])
    model = CubicModel(args.g)
    energy = resolve_energy(args.energy, args.g)
    _emit_manifest(
        "turning-points",
        {"g": args.g, "energy": energy, "format": args.format, "out": args.out},
    )
    tps = turning_points(model, energy)
    names = ("x1", "x2", "x3")
    _emit_rows(
        args.format,
        ["root", "re", "im"],
        [[n, _fmt6(x.real), _fmt6(x.imag)] for n, x in zip(names, tps)],
        [[n, _fmt17(x.real), _fmt17(x.imag)] for n, x in zip(names, tps)],
        {
            "command": "turning-points",
            "g": args.g,
            "energy": energy,
            "roots": {n: x for n, x in zip(names, tps)},
        },
        args.out,
    )
    return 0


def _cmd_trajectory(args) -> int:
    _require_positive_g([args.g])
    if not args.out:
        raise UsageError("trajectory requires --out <path> for the CSV file")
    model = CubicModel(args.g)
    energy = resolve_energy(args.energy, args.g)
    branch = 1 if args.branch == "+" else -1
    x0, p0 = _resolve_start(model, energy, args.x0, branch)
    cfg = _config_from_args(args, default_t_max=100.0, sample_interval=args.sample_interval)
    _emit_manifest(
        "trajectory",
        {
            "g": args.g,
            "energy": energy,
            "x0_policy": str(args.x0),
            "x0": x0,
            "p0": p0,
            "branch": branch,
            "rel_tol": cfg.rel_tol,
            "abs_tol": cfg.abs_tol,
            "t_max": cfg.t_max,
            "sample_interval": cfg.sample_interval,
            "out": args.out,
        },
    )
    traj = integrate(model, energy, x0, p0, cfg)

    lines = [TRAJECTORY_HEADER]
    for i in range(len(traj)):
        lines.append(
            ",".join(
                _fmt17(v)
                for v in (
                    traj.t[i],
                    traj.x[i].real,
                    traj.x[i].imag,
                    traj.p[i].real,
                    traj.p[i].imag,
                    traj.energy_drift[i],
                )
            )
        )
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")

    tps = turning_points(model, energy)
    names = ("x1", "x2", "x3")
    print(
        _render_table(
            ["root", "re", "im"],
            [[n, _fmt6(x.real), _fmt6(x.imag)] for n, x in zip(names, tps)],
        )
    )
    print(f"wrote {len(traj)} samples to {args.out} "
          f"(max energy drift {traj.max_energy_drift:.3e})")
    return 0


def _cmd_crossing_time(args) -> int:
    _require_positive_g([args.g])
    model = CubicModel(args.g)
    energy = resolve_energy(args.energy, args.g)
    branch = 1 if args.branch == "+" else -1
    x0, p0 = _resolve_start(model, energy, args.x0, branch)
    cfg = _config_from_args(args)
    _emit_manifest(
        "crossing-time",
        {
            "g": args.g,
            "energy": energy,
            "x0_policy": str(args.x0),
            "x0": x0,
            "p0": p0,
            "rel_tol": cfg.rel_tol,
            "abs_tol": cfg.abs_tol,
            "t_max": cfg.t_max,
        },
    )
    t_c = crossing_time(model, energy, x0, p0, cfg)
    _emit_rows(
        args.format,
        ["g", "t_c"],
        [[_fmt6(args.g), _fmt6(t_c)]],
        [[_fmt17(args.g), _fmt17(t_c)]],
        {"command": "crossing-time", "g": args.g, "t_c": t_c},
        args.out,
    )
    return 0


def _cmd_table1(args) -> int:
    g_values = tuple(args.g) if args.g else TABLE1_G
    _require_positive_g(g_values)
    cfg = _config_from_args(args)
    _emit_manifest(
        "table1",
        {
            "g": list(g_values),
            "rel_tol": cfg.rel_tol,
            "abs_tol": cfg.abs_tol,
            "t_max": cfg.t_max,
            "energy_policy": "corrected",
            "x0_policy": "x1",
            "format": args.format,
            "out": args.out,
        },
    )
    rows = compute_table1(g_values, cfg)

    reference = load_reference_table()
    ref_map = {
        round(g, 10): (tc, tau)
        for g, tc, tau in zip(reference["g"], reference["t_c"], reference["tau"])
    }

    headers = ["g", "t_c", "tau", "ratio", "t_c_ref", "tau_ref"]
    table_rows, csv_rows, json_rows = [], [], []
    for row in rows:
        ref = ref_map.get(round(row.g, 10))
        tc_ref = _fmt6(ref[0]) if ref else ""
        tau_ref = _fmt6(ref[1]) if ref else ""
        tc_table = _fmt6(row.t_c) if row.t_c is not None else "none"
        ratio_table = _fmt6(row.ratio) if row.ratio is not None else "none"
        table_rows.append(
            [_fmt6(row.g), tc_table, _fmt6(row.tau), ratio_table, tc_ref or "-", tau_ref or "-"]
        )
        csv_rows.append(
            [
                _fmt17(row.g),
                _fmt17(row.t_c) if row.t_c is not None else "",
                _fmt17(row.tau),
                _fmt17(row.ratio) if row.ratio is not None else "",
                _fmt17(ref[0]) if ref else "",
                _fmt17(ref[1]) if ref else "",
            ]
        )
        json_rows.append(
            {
                "g": row.g,
                "t_c": row.t_c,
                "tau": row.tau,
                "ratio": row.ratio,
                "t_c_ref": ref[0] if ref else None,
                "tau_ref": ref[1] if ref else None,
            }
        )
    _emit_rows(
        args.format,
        headers,
        table_rows,
        csv_rows,
        {"command": "table1", "rows": json_rows},
        args.out,
    )
    return 0


def _cmd_gutzwiller_eval(args) -> int:
    orbit = load_orbit(args.orbit)
    energy = (
        _parse_complex_pair(args.energy, "--energy")
        if "=" in args.energy
        else complex(float(args.energy), 0.0)
    )
    ctx = SemiclassicalContext(hbar=args.hbar)
    _emit_manifest(
        "gutzwiller eval",
        {"orbit": str(args.orbit), "energy": energy, "hbar": args.hbar},
    )
    value = response_function(ctx, orbit, energy)
    _emit_rows(
        args.format,
        ["re_g", "im_g"],
        [[_fmt6(value.real), _fmt6(value.imag)]],
        [[_fmt17(value.real), _fmt17(value.imag)]],
        {
            "command": "gutzwiller eval",
            "orbit": orbit.name,
            "energy": energy,
            "response": value,
        },
        args.out,
    )
    return 0


def _cmd_gutzwiller_poles(args) -> int:
    orbit = load_orbit(args.orbit)
    ctx = SemiclassicalContext(hbar=args.hbar)
    _emit_manifest(
        "gutzwiller poles",
        {
            "orbit": str(args.orbit),
            "k_max": args.k_max,
            "s_max": args.s_max,
            "hbar": args.hbar,
        },
    )
    table_rows, csv_rows, json_rows = [], [], []
    failures = 0
    for k in range(args.k_max + 1):
        for s in range(args.s_max + 1):
            idx = PoleIndex(k=k, s=s)
            try:
                pole = find_pole(ctx, orbit, idx)
            except SemiclassicsError as exc:
                failures += 1
                print(f"pole (k={k}, s={s}) failed: {exc}", file=sys.stderr)
                continue
            residual = abs(pole_residual(ctx, orbit, pole, idx))
            table_rows.append(
                [str(k), str(s), _fmt6(pole.real), _fmt6(pole.imag), _fmt6(residual)]
            )
            csv_rows.append(
                [str(k), str(s), _fmt17(pole.real), _fmt17(pole.imag), _fmt17(residual)]
            )
            json_rows.append(
                {"k": k, "s": s, "energy": pole, "residual": residual}
            )
    _emit_rows(
        args.format,
        ["k", "s", "re_e", "im_e", "residual"],
        table_rows,
        csv_rows,
        {"command": "gutzwiller poles", "orbit": orbit.name, "poles": json_rows},
        args.out,
    )
    return 1 if failures else 0


def _cmd_reversibility(args) -> int:
    if args.harmonic:
        model = HarmonicModel()
        energy = (
            complex(args.energy) if isinstance(args.energy, complex) else complex(0.5, 0.0)
        )
        if isinstance(args.x0, complex):
            x0 = args.x0
            p0 = initial_momentum(model, energy, x0, 1 if args.branch == "+" else -1)
        else:
            x0 = cmath.sqrt(2.0 * energy)
            p0 = 0j
        g = 0.0
    else:
        if args.g is None:
            raise UsageError("reversibility requires --g or --harmonic")
        _require_positive_g([args.g])
        model = CubicModel(args.g)
        energy = resolve_energy(args.energy, args.g)
        branch = 1 if args.branch == "+" else -1
        x0, p0 = _resolve_start(model, energy, args.x0, branch)
        g = args.g
    cfg = _config_from_args(args)
    _emit_manifest(
        "reversibility",
        {
            "harmonic": bool(args.harmonic),
            "g": g,
            "energy": energy,
            "x0": x0,
            "p0": p0,
            "duration": args.duration,
            "rel_tol": cfg.rel_tol,
            "abs_tol": cfg.abs_tol,
        },
    )
    error = reversibility_error(model, energy, x0, p0, args.duration, cfg)
    _emit_rows(
        args.format,
        ["duration", "retrace_error", "rel_tol", "abs_tol"],
        [[_fmt6(args.duration), _fmt6(error), _fmt6(cfg.rel_tol), _fmt6(cfg.abs_tol)]],
        [[_fmt17(args.duration), _fmt17(error), _fmt17(cfg.rel_tol), _fmt17(cfg.abs_tol)]],
        {
            "command": "reversibility",
            "duration": args.duration,
            "retrace_error": error,
            "rel_tol": cfg.rel_tol,
            "abs_tol": cfg.abs_tol,
        },
        args.out,
    )
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rel-tol", type=float, default=1e-10,
                        help="relative integration tolerance (default 1e-10)")
    common.add_argument("--abs-tol", type=float, default=1e-12,
                        help="absolute integration tolerance (default 1e-12)")
    common.add_argument("--t-max", type=float, default=None,
                        help="integration horizon (default 2e5; trajectory export: 100)")
    common.add_argument("--out", default=None, help="write output to this file")
    common.add_argument("--format", choices=("table", "csv", "json"), default="table",
                        help="output format (default table)")

    parser = argparse.ArgumentParser(
        prog="semiclassics",
        description="Complex classical trajectories in the cubic well and "
                    "single-orbit semiclassical resonances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tau", parents=[common],
                       help="barrier-penetration lifetime tau(g)")
    p.add_argument("--g", type=float, nargs="+", required=True)
    p.set_defaults(func=_cmd_tau)

    p = sub.add_parser("turning-points", parents=[common],
                       help="the three roots of V(x) = E")
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--energy", type=_parse_energy_policy, default="corrected",
                   help="'corrected' (default), 'leading', re=..,im=.. or a float")
    p.set_defaults(func=_cmd_turning_points)

    p = sub.add_parser("trajectory", parents=[common],
                       help="integrate and export a sampled trajectory as CSV")
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--energy", type=_parse_energy_policy, default="corrected")
    p.add_argument("--x0", type=_parse_x0_policy, default="x1",
                   help="'x1' (default), 'x2' or re=..,im=..")
    p.add_argument("--branch", choices=("+", "-"), default="+",
                   help="momentum branch used for explicit --x0")
    p.add_argument("--sample-interval", type=float, default=0.05)
    p.set_defaults(func=_cmd_trajectory)

    p = sub.add_parser("crossing-time", parents=[common],
                       help="first time Re x(t) reaches Re x3")
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--energy", type=_parse_energy_policy, default="corrected")
    p.add_argument("--x0", type=_parse_x0_policy, default="x1")
    p.add_argument("--branch", choices=("+", "-"), default="+")
    p.set_defaults(func=_cmd_crossing_time)

    p = sub.add_parser("table1", parents=[common],
                       help="crossing time vs lifetime over the benchmark grid")
    p.add_argument("--g", type=float, nargs="+", default=None,
                   help="override the benchmark coupling grid")
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("gutzwiller", help="single-orbit response and poles")
    gsub = p.add_subparsers(dest="gutzwiller_command", required=True)

    pe = gsub.add_parser("eval", parents=[common],
                         help="evaluate the response function at one energy")
    pe.add_argument("--orbit", required=True, help="orbit-model JSON file")
    pe.add_argument("--energy", required=True,
                    help="re=..,im=.. or a float")
    pe.add_argument("--hbar", type=float, default=1.0)
    pe.set_defaults(func=_cmd_gutzwiller_eval)

    pp = gsub.add_parser("poles", parents=[common],
                         help="resonance poles over a (k, s) rectangle")
    pp.add_argument("--orbit", required=True, help="orbit-model JSON file")
    pp.add_argument("--k-max", type=int, default=3)
    pp.add_argument("--s-max", type=int, default=3)
    pp.add_argument("--hbar", type=float, default=1.0)
    pp.set_defaults(func=_cmd_gutzwiller_poles)

    p = sub.add_parser("reversibility", parents=[common],
                       help="forward-backward retrace error")
    p.add_argument("--g", type=float, default=None)
    p.add_argument("--harmonic", action="store_true",
                   help="use the reference harmonic oscillator")
    p.add_argument("--energy", type=_parse_energy_policy, default="corrected")
    p.add_argument("--x0", type=_parse_x0_policy, default="x1")
    p.add_argument("--branch", choices=("+", "-"), default="+")
    p.add_argument("--duration", type=float, required=True,
                   help="forward (and backward) integration time")
    p.set_defaults(func=_cmd_reversibility)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SemiclassicsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

import json
import math

import numpy as np
import pytest

from semiclassics import (
    CubicModel,
    SemiclassicalContext,
    corrected_quasi_bound_energy,
    crossing_time,
    find_pole,
    turning_points,
    wkb_lifetime,
)
from semiclassics.cli import main
from semiclassics.gutzwiller import OrbitModel, PoleIndex
from tests.test_gutzwiller import double_sum_response

LINEAR_ORBIT = {
    "name": "linear-demo",
    "lambda": 2,
    "S": [0.0, 6.283185307179586],
    "w": [0.5],
    "T": [6.283185307179586],
}


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_csv(text):
    lines = [line for line in text.strip().split("\n") if line]
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


class TestTau:
    def test_table_output(self, capsys):
        code, out, err = run(capsys, "tau", "--g", "0.12522")
        assert code == 0
        assert "547.25" in out

    def test_reference_grid(self, capsys):
        code, out, _ = run(
            capsys, "tau", "--g", "0.12522", "0.14311", "0.16099", "0.17888",
            "--format", "csv",
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header == ["g", "tau"]
        assert [round(float(r[1])) for r in rows] == [547, 85, 24, 10]

    def test_full_precision_csv(self, capsys):
        code, out, _ = run(capsys, "tau", "--g", "0.17888", "--format", "csv")
        _, rows = read_csv(out)
        assert float(rows[0][1]) == wkb_lifetime(0.17888)

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "tau", "--g", "0.17888", "--format", "json")
        payload = json.loads(out)
        assert payload["rows"][0]["tau"] == pytest.approx(10.2277, abs=1e-4)

    def test_nonpositive_g_is_usage_error(self, capsys):
        code, _, err = run(capsys, "tau", "--g", "-0.5")
        assert code == 2
        assert "positive" in err

    def test_manifest_on_stderr(self, capsys):
        code, _, err = run(capsys, "tau", "--g", "0.17888")
        manifest = json.loads(err.strip().split("\n")[0])
        assert manifest["command"] == "tau"
        assert manifest["parameters"]["g"] == [0.17888]
        assert "version" in manifest and "timestamp" in manifest


class TestTurningPoints:
    def test_known_roots(self, capsys):
        code, out, _ = run(
            capsys, "turning-points", "--g", "0.1", "--energy", "re=0.5,im=0",
            "--format", "csv",
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header == ["root", "re", "im"]
        expected = turning_points(CubicModel(0.1), 0.5 + 0j)
        for row, ref in zip(rows, expected):
            assert float(row[1]) == pytest.approx(ref.real, abs=1e-12)
            assert float(row[2]) == pytest.approx(ref.imag, abs=1e-12)

    def test_barrier_top_energy_fails_cleanly(self, capsys):
        code, _, err = run(
            capsys, "turning-points", "--g", "0.5",
            "--energy", f"re={1.0 / (54.0 * 0.25)},im=0",
        )
        assert code == 1
        assert "error:" in err


class TestTrajectory:
    def test_csv_file_contract(self, capsys, tmp_path):
        out_path = tmp_path / "traj.csv"
        code, out, err = run(
            capsys, "trajectory", "--g", "0.1", "--energy", "re=0.3,im=0",
            "--t-max", "5", "--out", str(out_path),
        )
        assert code == 0
        text = out_path.read_text(encoding="utf-8")
        lines = text.strip().split("\n")
        assert lines[0] == "t,re_x,im_x,re_p,im_p,energy_drift"
        assert len(lines) == 1 + 101  # header + samples every 0.05 up to 5.0
        assert "x3" in out  # turning points printed
        manifest = json.loads(err.strip().split("\n")[0])
        assert manifest["parameters"]["t_max"] == 5.0

    def test_zero_length_run(self, capsys, tmp_path):
        out_path = tmp_path / "traj.csv"
        code, _, _ = run(
            capsys, "trajectory", "--g", "0.1", "--energy", "re=0.3,im=0",
            "--t-max", "0", "--out", str(out_path),
        )
        assert code == 0
        lines = out_path.read_text(encoding="utf-8").strip().split("\n")
        assert len(lines) == 2
        first = lines[1].split(",")
        assert float(first[0]) == 0.0

    def test_missing_out_is_usage_error(self, capsys):
        code, _, err = run(
            capsys, "trajectory", "--g", "0.1", "--energy", "re=0.3,im=0"
        )
        assert code == 2
        assert "--out" in err

    def test_bound_run_stays_left_of_x3(self, capsys, tmp_path):
        out_path = tmp_path / "traj.csv"
        code, _, _ = run(
            capsys, "trajectory", "--g", "0.1", "--energy", "re=0.3,im=0",
            "--t-max", "50", "--out", str(out_path),
        )
        assert code == 0
        _, rows = read_csv(out_path.read_text(encoding="utf-8"))
        re_x = np.array([float(r[1]) for r in rows])
        x3 = turning_points(CubicModel(0.1), 0.3 + 0j).x3
        assert np.all(re_x < x3.real)


class TestCrossingTime:
    def test_no_crossing_is_an_error(self, capsys):
        code, _, err = run(
            capsys, "crossing-time", "--g", "0.17888", "--t-max", "30"
        )
        assert code == 1
        assert "never reached" in err

    def test_matches_library_default_policies(self, capsys):
        code, out, _ = run(
            capsys, "crossing-time", "--g", "0.17888", "--format", "csv"
        )
        assert code == 0
        _, rows = read_csv(out)
        g = 0.17888
        model = CubicModel(g)
        energy = corrected_quasi_bound_energy(g).energy
        x1 = turning_points(model, energy).x1
        expected = crossing_time(model, energy, x1, 0j)
        assert float(rows[0][1]) == pytest.approx(expected, rel=1e-12)


class TestTable1:
    def test_fast_subset_csv(self, capsys, tmp_path):
        out_path = tmp_path / "t.csv"
        code, _, _ = run(
            capsys, "table1", "--g", "0.17888", "--format", "csv",
            "--out", str(out_path),
        )
        assert code == 0
        header, rows = read_csv(out_path.read_text(encoding="utf-8"))
        assert header == ["g", "t_c", "tau", "ratio", "t_c_ref", "tau_ref"]
        row = rows[0]
        assert float(row[1]) == pytest.approx(50.445, abs=0.01)
        assert float(row[2]) == pytest.approx(10.2277, abs=1e-3)
        assert float(row[3]) == pytest.approx(float(row[1]) / float(row[2]), rel=1e-12)
        assert float(row[4]) == 49.0
        assert float(row[5]) == 10.0

    def test_byte_identical_reruns(self, capsys, tmp_path):
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        for path in (first, second):
            code, _, _ = run(
                capsys, "table1", "--g", "0.17888", "0.16099", "--format", "csv",
                "--out", str(path),
            )
            assert code == 0
        assert first.read_bytes() == second.read_bytes()

    def test_no_crossing_renders_as_none_token(self, capsys, tmp_path):
        # horizon too short for the crossing: the row says "none" in the
        # table and leaves the CSV cell empty
        code, out, _ = run(capsys, "table1", "--g", "0.17888", "--t-max", "30")
        assert code == 0
        assert "none" in out
        out_path = tmp_path / "t.csv"
        code, _, _ = run(
            capsys, "table1", "--g", "0.17888", "--t-max", "30", "--format", "csv",
            "--out", str(out_path),
        )
        assert code == 0
        _, rows = read_csv(out_path.read_text(encoding="utf-8"))
        assert rows[0][1] == ""
        assert rows[0][3] == ""

    def test_non_benchmark_g_has_empty_reference(self, capsys, tmp_path):
        out_path = tmp_path / "t.csv"
        code, _, _ = run(
            capsys, "table1", "--g", "0.18", "--format", "csv", "--out", str(out_path)
        )
        assert code == 0
        _, rows = read_csv(out_path.read_text(encoding="utf-8"))
        assert rows[0][4] == ""
        assert rows[0][5] == ""


class TestGutzwiller:
    @pytest.fixture()
    def orbit_file(self, tmp_path):
        path = tmp_path / "orbit.json"
        path.write_text(json.dumps(LINEAR_ORBIT), encoding="utf-8")
        return path

    def test_eval_matches_brute_force(self, capsys, orbit_file):
        # midway between the (k=0, s=0) and (k=0, s=1) poles in Re E
        code, out, _ = run(
            capsys, "gutzwiller", "eval", "--orbit", str(orbit_file),
            "--energy", "re=1.0,im=0.0", "--format", "csv",
        )
        assert code == 0
        _, rows = read_csv(out)
        value = complex(float(rows[0][0]), float(rows[0][1]))
        orbit = OrbitModel(name="linear-demo", s_coeffs=(0.0, 2 * math.pi),
                           w_coeffs=(0.5,), t_coeffs=(2 * math.pi,), lam=2)
        oracle = double_sum_response(orbit, 1.0 + 0j)
        assert abs(value - oracle) <= 1e-12 * abs(oracle)

    def test_poles_match_closed_form(self, capsys, orbit_file):
        code, out, _ = run(
            capsys, "gutzwiller", "poles", "--orbit", str(orbit_file),
            "--k-max", "1", "--s-max", "1", "--format", "csv",
        )
        assert code == 0
        _, rows = read_csv(out)
        assert len(rows) == 4
        for row in rows:
            k, s = int(row[0]), int(row[1])
            expected = complex(2 / 4 + s, -0.5 * (k + 0.5) / (2 * math.pi))
            assert complex(float(row[2]), float(row[3])) == pytest.approx(
                expected, abs=1e-12
            )
            assert float(row[4]) <= 1e-12

    def test_malformed_orbit_reports_field(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        payload = {k: v for k, v in LINEAR_ORBIT.items() if k != "lambda"}
        path.write_text(json.dumps(payload), encoding="utf-8")
        code, _, err = run(
            capsys, "gutzwiller", "eval", "--orbit", str(path), "--energy", "1.0"
        )
        assert code != 0
        assert "lambda" in err

    def test_pole_failures_reported_per_index_without_aborting(self, capsys, tmp_path):
        # S = E^2 has dS/dE = 0 at the default starting point, so every
        # pole search hits DegenerateAction; each failure is reported and
        # the grid still completes
        path = tmp_path / "stationary.json"
        path.write_text(
            json.dumps({"name": "stationary", "lambda": 0, "S": [0.0, 0.0, 1.0],
                        "w": [0.5], "T": [0.0, 2.0]}),
            encoding="utf-8",
        )
        code, _, err = run(
            capsys, "gutzwiller", "poles", "--orbit", str(path),
            "--k-max", "1", "--s-max", "1",
        )
        assert code == 1
        assert err.count("failed") == 4


class TestReversibility:
    def test_harmonic_demo(self, capsys):
        code, out, _ = run(
            capsys, "reversibility", "--harmonic",
            "--duration", str(2.0 * math.pi), "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["retrace_error"] <= 1e-10
        assert payload["rel_tol"] == 1e-10

    def test_zero_duration(self, capsys):
        code, out, _ = run(
            capsys, "reversibility", "--harmonic", "--duration", "0",
            "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["retrace_error"] == 0.0

    def test_cubic_bound_energy(self, capsys):
        code, out, _ = run(
            capsys, "reversibility", "--g", "0.1", "--energy", "re=0.3,im=0",
            "--duration", "50", "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["retrace_error"] <= 1e-6

    def test_requires_g_or_harmonic(self, capsys):
        code, _, err = run(capsys, "reversibility", "--duration", "1")
        assert code == 2
        assert "harmonic" in err

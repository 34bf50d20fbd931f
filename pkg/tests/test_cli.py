import json
import math

import numpy as np
import pytest

from fdasim import cli_main, read_grid
from fdasim.cli import parse_angle, parse_time
from conftest import CONFIG_DIR


@pytest.fixture
def coarse_config(tmp_path):
    """Reference parameters on a coarse grid so CLI tests stay fast."""
    doc = json.loads((CONFIG_DIR / "moving-focus.json").read_text())
    doc["grid"] = {
        "t": {"min_ns": -100.0, "max_ns": 50.0, "count": 151},
        "r": {"min_m": 0.0, "max_m": 30.0, "count": 121},
        "theta": {"min_deg": -90.0, "max_deg": 90.0, "count": 91},
    }
    path = tmp_path / "coarse.json"
    path.write_text(json.dumps(doc))
    return str(path)


class TestQuantityParsing:
    @pytest.mark.parametrize("text,expected", [
        ("0ns", 0.0),
        ("-50ns", -50e-9),
        ("30 ns", 30e-9),
        ("1e-8s", 1e-8),
        ("2.5e-9", 2.5e-9),
    ])
    def test_times(self, text, expected):
        assert parse_time(text) == pytest.approx(expected, rel=0, abs=1e-18)

    @pytest.mark.parametrize("text,expected", [
        ("-30deg", math.radians(-30.0)),
        ("90deg", math.radians(90.0)),
        ("0.5rad", 0.5),
        ("-1.2", -1.2),
    ])
    def test_angles(self, text, expected):
        assert parse_angle(text) == pytest.approx(expected)


class TestSimulate:
    def test_range_angle_argmax(self, coarse_config, tmp_path):
        out = tmp_path / "snapshot.csv"
        rc = cli_main(["simulate", "range-angle", "--config", coarse_config,
                       "--t", "0ns", "--out", str(out)])
        assert rc == 0
        grid = read_grid(out)
        i, j = np.unravel_index(np.argmax(grid.values), grid.values.shape)
        assert grid.axis1.values()[i] == pytest.approx(15.0, abs=0.25)
        assert math.degrees(grid.axis2.values()[j]) == pytest.approx(-30.0, abs=2.0)

    def test_time_range_negative_theta_argument(self, coarse_config, tmp_path):
        out = tmp_path / "ridge.csv"
        rc = cli_main(["simulate", "time-range", "--config", coarse_config,
                       "--theta", "-30deg", "--out", str(out)])
        assert rc == 0
        grid = read_grid(out)
        assert grid.fixed_value == pytest.approx(math.radians(-30.0))

    def test_missing_time_argument(self, coarse_config):
        assert cli_main(["simulate", "range-angle", "--config", coarse_config]) == 1

    def test_bad_config_exits_one(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{broken")
        assert cli_main(["simulate", "range-angle", "--config", str(path), "--t", "0ns"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_byte_identical_across_runs(self, coarse_config, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (out1, out2):
            assert cli_main(["simulate", "time-range", "--config", coarse_config,
                             "--theta", "-30deg", "--out", str(out)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_parallel_workers_identical_output(self, coarse_config, tmp_path):
        out1, out2 = tmp_path / "w1.csv", tmp_path / "w4.csv"
        cli_main(["simulate", "time-range", "--config", coarse_config,
                  "--theta", "-30deg", "--out", str(out1), "--workers", "1"])
        cli_main(["simulate", "time-range", "--config", coarse_config,
                  "--theta", "-30deg", "--out", str(out2), "--workers", "4"])
        assert out1.read_bytes() == out2.read_bytes()


class TestFocus:
    def test_focus_on_written_grid_needs_no_other_input(self, coarse_config, tmp_path):
        grid_path = tmp_path / "grid.csv"
        cli_main(["simulate", "time-range", "--config", coarse_config,
                  "--theta", "-30deg", "--out", str(grid_path)])
        report_path = tmp_path / "report.txt"
        json_path = tmp_path / "report.json"
        rc = cli_main(["focus", "--grid", str(grid_path), "--min-peak-db", "-0.5",
                       "--out", str(report_path), "--json", str(json_path)])
        assert rc == 0
        text = report_path.read_text()
        assert "slope" in text
        doc = json.loads(json_path.read_text())
        assert doc["slope_m_per_s"] == pytest.approx(3e8, rel=0.005)
        assert doc["intercept_m"] == pytest.approx(15.0, abs=0.3)


class TestVerify:
    def test_reference_config_passes(self, coarse_config, tmp_path, capsys):
        json_path = tmp_path / "verify.json"
        rc = cli_main(["verify", "--config", coarse_config, "--samples", "300",
                       "--json", str(json_path)])
        out = capsys.readouterr().out
        assert rc == 0
        assert "FAIL" not in out
        doc = json.loads(json_path.read_text())
        assert doc["passed"] is True
        assert len(doc["checks"]) == 6

    def test_degenerate_offsets_exit_two(self, coarse_config, tmp_path, capsys):
        # all-zero g at broadside makes every offset vanish, so the naive
        # model no longer violates invariance and the expected failure
        # does not happen
        doc = json.loads(open(coarse_config).read())
        doc["focus"]["theta0_deg"] = 0.0
        doc["focus"]["g"] = [0.0] * 5
        doc["array"]["phi_deg"] = [0.0] * 11
        path = tmp_path / "degenerate.json"
        path.write_text(json.dumps(doc))
        rc = cli_main(["verify", "--config", str(path), "--samples", "100"])
        assert rc == 2
        assert "FAIL" in capsys.readouterr().out


class TestCompare:
    def test_writes_three_files(self, coarse_config, tmp_path):
        prefix = str(tmp_path / "cmp")
        rc = cli_main(["compare", "--config", coarse_config, "--out", prefix])
        assert rc == 0
        naive = read_grid(prefix + "-naive.csv")
        causal = read_grid(prefix + "-causal.csv")
        assert naive.metadata["variant"] == "naive"
        assert causal.metadata["variant"] == "causal"
        diff_lines = open(prefix + "-diff.csv").read().splitlines()
        assert diff_lines[1] == "t_ns,r_m,delta_db"
        assert len(diff_lines) == 2 + naive.axis1.count * naive.axis2.count

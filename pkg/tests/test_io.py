import io
import json
import math

import numpy as np
import pytest

from fdasim import (
    ArrayGeometry,
    AxisSpec,
    ConstantOffset,
    FocusSpec,
    ParseError,
    Simulation,
    ValidationError,
    grid_to_text,
    load_config,
    read_grid,
    sweep_range_angle,
    sweep_time_range,
    write_grid,
)
from conftest import CONFIG_DIR


def minimal_config(**overrides):
    doc = {
        "array": {"n_half": 5, "f0_hz": 3e9},
        "focus": {"theta0_deg": -30.0, "g": [1.8, 4.4, 4.4, 5.5, 4.8],
                  "r1_m": 15.0, "t_m_ns": -50.0},
        "model": {"type": "constant", "T_ns": 30.0},
    }
    doc.update(overrides)
    return doc


class TestLoadConfig:
    def test_bundled_moving_focus_loads(self):
        cfg = load_config(CONFIG_DIR / "moving-focus.json")
        assert cfg.sim.geom.n_half == 5
        assert cfg.sim.geom.f0 == 3e9
        assert isinstance(cfg.sim.model, ConstantOffset)
        assert cfg.sim.model.t_m == pytest.approx(-50e-9, rel=0)
        assert cfg.sim.focus.theta0 == pytest.approx(math.radians(-30.0))

    def test_all_bundled_configs_load(self):
        for path in sorted(CONFIG_DIR.glob("*.json")):
            cfg = load_config(path)
            assert cfg.resolved["array"]["n_half"] == 5

    def test_spacing_defaults_to_half_wavelength(self):
        cfg = load_config(minimal_config())
        assert cfg.sim.geom.d == 0.05
        assert cfg.resolved["array"]["d_m"] == 0.05

    def test_constant_without_t_m_rejected(self):
        doc = minimal_config()
        del doc["focus"]["t_m_ns"]
        with pytest.raises(ValidationError, match="focus.t_m_ns"):
            load_config(doc)

    def test_naive_without_r1_rejected(self):
        doc = minimal_config(model={"type": "naive", "T_ns": 30.0})
        del doc["focus"]["r1_m"]
        with pytest.raises(ValidationError, match="focus.r1_m"):
            load_config(doc)

    def test_naive_without_T_rejected(self):
        doc = minimal_config(model={"type": "naive"})
        with pytest.raises(ValidationError, match="model.T_ns"):
            load_config(doc)

    def test_malformed_json_is_parse_error(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ParseError):
            load_config(path)

    def test_unknown_model_type(self):
        with pytest.raises(ValidationError, match="model.type"):
            load_config(minimal_config(model={"type": "psychic"}))

    def test_g_length_mismatch(self):
        doc = minimal_config()
        doc["focus"]["g"] = [1.0, 2.0]
        with pytest.raises(ValidationError, match="focus.g"):
            load_config(doc)

    def test_resolved_config_round_trips(self):
        first = load_config(CONFIG_DIR / "delayed-excitation.json")
        second = load_config(first.resolved)
        assert second.resolved == first.resolved
        assert second.sim == first.sim
        assert second.t_axis == first.t_axis

    def test_units_converted_once(self):
        cfg = load_config(minimal_config(
            excitation={"t_start_ns": -90.0, "gating": "emission"}))
        assert cfg.sim.window.t_start == pytest.approx(-90e-9, rel=0)
        assert cfg.t_axis.lo == pytest.approx(-100e-9)


def small_grid():
    geom = ArrayGeometry(n_half=1, f0=3e9)
    focus = FocusSpec(theta0=0.0, g=(1.0,))
    sim = Simulation(geom=geom, model=ConstantOffset(t_m=-10e-9), focus=focus)
    t_axis = AxisSpec("time", 0.0, 10e-9, 2)
    r_axis = AxisSpec("range", 0.0, 3.0, 2)
    return sweep_time_range(sim, t_axis, r_axis, 0.25, metadata={"note": "test"})


class TestGridSerialization:
    def test_counting_contract(self):
        text = grid_to_text(small_grid())
        lines = text.splitlines()
        assert sum(1 for ln in lines if ln.startswith("# ")) == 2
        assert lines[2] == "t_ns,r_m,power_db"
        assert len(lines) == 2 + 1 + 4

    def test_range_angle_header(self):
        geom = ArrayGeometry(n_half=1, f0=3e9)
        sim = Simulation(geom=geom, model=ConstantOffset(t_m=-10e-9),
                         focus=FocusSpec(theta0=0.0, g=(1.0,)))
        grid = sweep_range_angle(sim, AxisSpec("range", 0.0, 3.0, 2),
                                 AxisSpec("angle", -0.5, 0.5, 3), 0.0)
        text = grid_to_text(grid)
        assert text.splitlines()[2] == "r_m,theta_deg,power_db"

    def test_round_trip_values(self):
        grid = small_grid()
        back = read_grid(io.StringIO(grid_to_text(grid)))
        np.testing.assert_allclose(back.values, grid.values, rtol=1e-8)
        np.testing.assert_array_equal(back.valid_mask, grid.valid_mask)
        assert back.reference_magnitude == grid.reference_magnitude
        assert back.axis1 == grid.axis1 and back.axis2 == grid.axis2
        assert back.metadata == grid.metadata

    def test_write_read_write_is_stable(self):
        # one serialization round fixes the 9-digit precision; after that
        # the bytes are a fixed point
        grid = small_grid()
        text1 = grid_to_text(grid)
        text2 = grid_to_text(read_grid(io.StringIO(text1)))
        assert text2 == text1

    def test_invalid_cells_write_nan(self):
        grid = small_grid()
        grid.valid_mask[0, 1] = False
        lines = grid_to_text(grid).splitlines()
        assert lines[4].endswith(",nan")
        back = read_grid(io.StringIO("\n".join(lines) + "\n"))
        assert not back.valid_mask[0, 1]
        assert back.valid_mask.sum() == 3

    def test_header_json_is_machine_readable(self):
        text = grid_to_text(small_grid())
        header = json.loads(text.splitlines()[0][2:])
        assert header["grid"]["axis1"]["kind"] == "time"
        assert header["config"] == {"note": "test"}

    def test_file_round_trip(self, tmp_path):
        grid = small_grid()
        path = tmp_path / "grid.csv"
        write_grid(grid, path)
        raw = path.read_bytes()
        assert b"\r" not in raw
        back = read_grid(path)
        np.testing.assert_allclose(back.values, grid.values, rtol=1e-8)

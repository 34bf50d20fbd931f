"""JSON configuration: engineering units in, SI internally, converted once.

Times are ns, frequencies Hz, lengths m, angles degrees in the file; the
resolved echo keeps those units so a written config reloads identically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .arrayfactor import GatingMode
from .grid import AXIS_ANGLE, AXIS_RANGE, AXIS_TIME, AxisSpec, Simulation
from .model import (
    ArrayGeometry,
    C_VACUUM,
    CausalTimeModulated,
    ConstantOffset,
    ExcitationWindow,
    FocusSpec,
    NaiveTimeModulated,
)

NS = 1e-9

DEFAULT_GRID = {
    "t": {"min_ns": -100.0, "max_ns": 50.0, "count": 601},
    "r": {"min_m": 0.0, "max_m": 30.0, "count": 601},
    "theta": {"min_deg": -90.0, "max_deg": 90.0, "count": 361},
}

_GATING = {
    "none": GatingMode.NONE,
    "emission": GatingMode.EMISSION_TIME,
    "observation": GatingMode.OBSERVATION_TIME,
}


class ConfigError(ValueError):
    pass


class ParseError(ConfigError):
    """Document is not well-formed JSON."""


class ValidationError(ConfigError):
    """Document parsed but fails the schema; message carries the field path."""


@dataclass
class SimulationConfig:
    sim: Simulation
    t_axis: AxisSpec
    r_axis: AxisSpec
    theta_axis: AxisSpec
    seed: int
    resolved: dict

    @property
    def t_m(self) -> float | None:
        f = self.resolved["focus"]
        return f["t_m_ns"] * NS if f.get("t_m_ns") is not None else None

    @property
    def r1(self) -> float | None:
        f = self.resolved["focus"]
        return f["r1_m"] if f.get("r1_m") is not None else None

    @property
    def T(self) -> float | None:
        m = self.resolved["model"]
        return m["T_ns"] * NS if m.get("T_ns") is not None else None


def _require(section: dict, path: str, key: str):
    if key not in section or section[key] is None:
        raise ValidationError(f"missing required field {path}.{key}")
    return section[key]


def load_config(document) -> SimulationConfig:
    """Parse and validate a configuration document.

    Accepts a dict, a JSON string, a path, or an open file. Defaults:
    d = c/(2 f0), phi = 0, c = 3e8 m/s, floor -50 dB, reference scenario grid
    extents.
    """
    if isinstance(document, dict):
        raw = document
    else:
        try:
            if isinstance(document, (str, Path)) and "\n" not in str(document) and Path(document).exists():
                raw = json.loads(Path(document).read_text())
            elif isinstance(document, (str, bytes)):
                raw = json.loads(document)
            else:
                raw = json.load(document)
        except json.JSONDecodeError as e:
            raise ParseError(f"malformed JSON: {e}") from e
    if not isinstance(raw, dict):
        raise ValidationError("top-level document must be an object")

    array = raw.get("array")
    if not isinstance(array, dict):
        raise ValidationError("missing required section array")
    n_half = int(_require(array, "array", "n_half"))
    f0 = float(_require(array, "array", "f0_hz"))
    c = float(array.get("c_m_per_s") or C_VACUUM)
    d = array.get("d_m")
    d = float(d) if d is not None else c / (2.0 * f0)
    phi_deg = array.get("phi_deg")
    if phi_deg is None:
        phi_deg = [0.0] * (2 * n_half + 1)
    phi_deg = [float(p) for p in phi_deg]
    if len(phi_deg) != 2 * n_half + 1:
        raise ValidationError(
            f"array.phi_deg must have {2 * n_half + 1} entries, got {len(phi_deg)}"
        )
    try:
        geom = ArrayGeometry(n_half=n_half, f0=f0, d=d,
                             phi=tuple(math.radians(p) for p in phi_deg), c=c)
    except ValueError as e:
        raise ValidationError(f"array: {e}") from e

    focus_sec = raw.get("focus")
    if not isinstance(focus_sec, dict):
        raise ValidationError("missing required section focus")
    theta0_deg = float(_require(focus_sec, "focus", "theta0_deg"))
    g = [float(v) for v in _require(focus_sec, "focus", "g")]
    if len(g) != n_half:
        raise ValidationError(f"focus.g must have {n_half} entries, got {len(g)}")
    try:
        focus = FocusSpec(theta0=math.radians(theta0_deg), g=tuple(g))
    except ValueError as e:
        raise ValidationError(f"focus: {e}") from e

    model_sec = raw.get("model")
    if not isinstance(model_sec, dict):
        raise ValidationError("missing required section model")
    mtype = _require(model_sec, "model", "type")
    r1_m = focus_sec.get("r1_m")
    t_m_ns = focus_sec.get("t_m_ns")
    T_ns = model_sec.get("T_ns")
    if mtype == "constant":
        if t_m_ns is None:
            raise ValidationError("constant model requires focus.t_m_ns")
        model = ConstantOffset(t_m=float(t_m_ns) * NS)
    elif mtype in ("naive", "causal"):
        if r1_m is None:
            raise ValidationError(f"{mtype} model requires focus.r1_m")
        if T_ns is None:
            raise ValidationError(f"{mtype} model requires model.T_ns")
        cls = NaiveTimeModulated if mtype == "naive" else CausalTimeModulated
        try:
            model = cls(r1=float(r1_m), T=float(T_ns) * NS)
        except ValueError as e:
            raise ValidationError(f"model: {e}") from e
    else:
        raise ValidationError(f"model.type must be constant|naive|causal, got {mtype!r}")

    exc = raw.get("excitation") or {}
    t_start_ns = exc.get("t_start_ns")
    t_end_ns = exc.get("t_end_ns")
    gating_name = exc.get("gating", "none")
    if gating_name not in _GATING:
        raise ValidationError(
            f"excitation.gating must be none|emission|observation, got {gating_name!r}"
        )
    try:
        window = ExcitationWindow(
            t_start=float(t_start_ns) * NS if t_start_ns is not None else -math.inf,
            t_end=float(t_end_ns) * NS if t_end_ns is not None else math.inf,
        )
    except ValueError as e:
        raise ValidationError(f"excitation: {e}") from e

    grid_sec = raw.get("grid") or {}
    axes = {}
    for name, dflt in DEFAULT_GRID.items():
        spec = grid_sec.get(name) or dflt
        lo_key, hi_key = [k for k in dflt if k != "count"]
        try:
            lo = float(_require(spec, f"grid.{name}", lo_key))
            hi = float(_require(spec, f"grid.{name}", hi_key))
            count = int(_require(spec, f"grid.{name}", "count"))
        except (TypeError, ValueError) as e:
            if isinstance(e, ValidationError):
                raise
            raise ValidationError(f"grid.{name}: {e}") from e
        axes[name] = {lo_key: lo, hi_key: hi, "count": count}
    try:
        t_axis = AxisSpec(AXIS_TIME, axes["t"]["min_ns"] * NS, axes["t"]["max_ns"] * NS,
                          axes["t"]["count"])
        r_axis = AxisSpec(AXIS_RANGE, axes["r"]["min_m"], axes["r"]["max_m"],
                          axes["r"]["count"])
        theta_axis = AxisSpec(AXIS_ANGLE, math.radians(axes["theta"]["min_deg"]),
                              math.radians(axes["theta"]["max_deg"]),
                              axes["theta"]["count"])
    except ValueError as e:
        raise ValidationError(f"grid: {e}") from e

    render = raw.get("render") or {}
    floor_db = float(render.get("floor_db", -50.0))
    seed = int(raw.get("seed", 0))

    resolved = {
        "array": {
            "n_half": n_half,
            "f0_hz": f0,
            "d_m": d,
            "phi_deg": phi_deg,
            "c_m_per_s": c,
        },
        "focus": {
            "theta0_deg": theta0_deg,
            "g": g,
            "r1_m": float(r1_m) if r1_m is not None else None,
            "t_m_ns": float(t_m_ns) if t_m_ns is not None else None,
        },
        "model": {
            "type": mtype,
            "T_ns": float(T_ns) if T_ns is not None else None,
        },
        "excitation": {
            "t_start_ns": float(t_start_ns) if t_start_ns is not None else None,
            "t_end_ns": float(t_end_ns) if t_end_ns is not None else None,
            "gating": gating_name,
        },
        "grid": axes,
        "render": {"floor_db": floor_db},
        "seed": seed,
    }

    sim = Simulation(geom=geom, model=model, focus=focus, window=window,
                     gating=_GATING[gating_name], floor_db=floor_db)
    return SimulationConfig(sim=sim, t_axis=t_axis, r_axis=r_axis,
                            theta_axis=theta_axis, seed=seed, resolved=resolved)

"""Grid sweeps of the array factor over 2-D slices of (t, r, theta).

Cells are independent pure evaluations; sweeps are processed one axis1 row
at a time so serial and parallel runs are bitwise identical. Normalization
(the grid max) is computed over the finished matrix in index order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .arrayfactor import GatingMode, field_values, gate_mask
from .model import (
    DEFAULT_EPS_DEN,
    ArrayGeometry,
    ExcitationWindow,
    FocusSpec,
    OffsetModel,
)

AXIS_TIME = "time"
AXIS_RANGE = "range"
AXIS_ANGLE = "angle"


class AllSamplesInvalid(RuntimeError):
    """Every cell of a sweep was gated out or singular."""


class EmptyGrid(ValueError):
    """Grid has no valid cells to extract a focus from."""


@dataclass(frozen=True)
class AxisSpec:
    """Uniform inclusive axis; kind is one of time/range/angle (SI units)."""

    kind: str
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if self.kind not in (AXIS_TIME, AXIS_RANGE, AXIS_ANGLE):
            raise ValueError(f"unknown axis kind {self.kind!r}")
        if not self.lo < self.hi:
            raise ValueError("axis lo must be < hi")
        if self.count < 2:
            raise ValueError("axis count must be >= 2")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.count - 1)


@dataclass(frozen=True)
class Simulation:
    """Everything needed to evaluate the field at a point, minus the axes."""

    geom: ArrayGeometry
    model: OffsetModel
    focus: FocusSpec
    window: ExcitationWindow = ExcitationWindow()
    gating: GatingMode = GatingMode.NONE
    floor_db: float = -50.0
    eps_den: float = DEFAULT_EPS_DEN


@dataclass
class PowerGrid:
    """dB-normalized |AF|^2 over a 2-D slice; values are axis1-major.

    valid_mask is False only for singular cells (excluded from normalization
    and argmax); gated cells are valid cells pinned at floor_db.
    """

    axis1: AxisSpec
    axis2: AxisSpec
    fixed_kind: str
    fixed_value: float
    values: np.ndarray
    valid_mask: np.ndarray
    reference_magnitude: float
    floor_db: float
    metadata: dict = field(default_factory=dict)


@dataclass
class FocusTrajectory:
    """Per-slice argmax trajectory, e.g. (t_i, r*_i, peak dB) for a t-r grid."""

    slice_kind: str
    peak_kind: str
    slice_coords: np.ndarray
    peak_coords: np.ndarray
    peak_db: np.ndarray
    omitted_slices: int = 0


def _coords_for(kind1, v1, kind2, v2, fixed_kind, fixed_value):
    coords = {fixed_kind: fixed_value, kind1: v1, kind2: v2}
    return coords[AXIS_TIME], coords[AXIS_RANGE], coords[AXIS_ANGLE]


def _sweep(sim: Simulation, axis1: AxisSpec, axis2: AxisSpec,
           fixed_kind: str, fixed_value: float, workers: int = 1,
           metadata: dict | None = None) -> PowerGrid:
    a1 = axis1.values()
    a2 = axis2.values()

    def row(i: int):
        t, r, theta = _coords_for(axis1.kind, a1[i], axis2.kind, a2, fixed_kind, fixed_value)
        value, singular = field_values(sim.geom, sim.model, sim.focus, t, r, theta,
                                       eps_den=sim.eps_den)
        gated = gate_mask(sim.gating, sim.window, t, r, sim.geom.c)
        gated = np.broadcast_to(gated, value.shape)
        return np.abs(value), gated, singular

    if workers <= 1:
        rows = [row(i) for i in range(axis1.count)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, range(axis1.count)))

    mag = np.stack([rw[0] for rw in rows])
    gated = np.stack([rw[1] for rw in rows])
    singular = np.stack([rw[2] for rw in rows])
    mag = np.where(gated, 0.0, mag)

    valid_mask = ~singular
    renderable = valid_mask & ~gated
    if not renderable.any():
        raise AllSamplesInvalid("every cell is gated out or singular")
    ref = float(np.max(np.where(renderable, mag, 0.0)))
    if ref <= 0.0:
        raise AllSamplesInvalid("all renderable cells have zero magnitude")

    with np.errstate(divide="ignore"):
        db = 20.0 * np.log10(np.where(mag > 0.0, mag, 1.0) / ref)
    db = np.maximum(db, sim.floor_db)
    db[(mag == 0.0) | gated | singular] = sim.floor_db

    return PowerGrid(
        axis1=axis1,
        axis2=axis2,
        fixed_kind=fixed_kind,
        fixed_value=fixed_value,
        values=db,
        valid_mask=valid_mask,
        reference_magnitude=ref,
        floor_db=sim.floor_db,
        metadata=dict(metadata or {}),
    )


def sweep_range_angle(sim: Simulation, r_axis: AxisSpec, theta_axis: AxisSpec,
                      t_fixed: float, workers: int = 1,
                      metadata: dict | None = None) -> PowerGrid:
    """Power grid over (range, angle) at a fixed observation time."""
    if r_axis.kind != AXIS_RANGE or theta_axis.kind != AXIS_ANGLE:
        raise ValueError("sweep_range_angle needs a range axis and an angle axis")
    return _sweep(sim, r_axis, theta_axis, AXIS_TIME, t_fixed, workers, metadata)


def sweep_time_range(sim: Simulation, t_axis: AxisSpec, r_axis: AxisSpec,
                     theta_fixed: float, workers: int = 1,
                     metadata: dict | None = None) -> PowerGrid:
    """Power grid over (time, range) at a fixed observation angle."""
    if t_axis.kind != AXIS_TIME or r_axis.kind != AXIS_RANGE:
        raise ValueError("sweep_time_range needs a time axis and a range axis")
    return _sweep(sim, t_axis, r_axis, AXIS_ANGLE, theta_fixed, workers, metadata)


def find_focus(grid: PowerGrid, slice_axis: str | None = None) -> FocusTrajectory:
    """Per-slice argmax trajectory; ties break toward the smaller coordinate.

    slice_axis is the axis kind to slice along (default: axis1). Slices with
    no valid cell are omitted and counted in omitted_slices.
    """
    if not grid.valid_mask.any():
        raise EmptyGrid("grid has no valid cells")
    if slice_axis is None:
        slice_axis = grid.axis1.kind

    if slice_axis == grid.axis1.kind:
        vals, mask = grid.values, grid.valid_mask
        s_axis, p_axis = grid.axis1, grid.axis2
    elif slice_axis == grid.axis2.kind:
        vals, mask = grid.values.T, grid.valid_mask.T
        s_axis, p_axis = grid.axis2, grid.axis1
    else:
        raise ValueError(f"grid has no {slice_axis!r} axis")

    s_coords = s_axis.values()
    p_coords = p_axis.values()
    slice_out, peak_out, db_out = [], [], []
    omitted = 0
    for i in range(s_axis.count):
        m = mask[i]
        if not m.any():
            omitted += 1
            continue
        masked = np.where(m, vals[i], -math.inf)
        j = int(np.argmax(masked))
        slice_out.append(s_coords[i])
        peak_out.append(p_coords[j])
        db_out.append(vals[i][j])
    return FocusTrajectory(
        slice_kind=s_axis.kind,
        peak_kind=p_axis.kind,
        slice_coords=np.asarray(slice_out),
        peak_coords=np.asarray(peak_out),
        peak_db=np.asarray(db_out),
        omitted_slices=omitted,
    )

"""Long-format CSV serialization of power grids.

Layout: two "# " comment lines (grid structure + resolved config as one JSON
document, then the reference magnitude), a header row naming the columns in
engineering units, then one row per cell in axis1-major order. Numbers carry
9 significant digits; invalid cells write nan in the power column.
"""

from __future__ import annotations

import io
import json
import math
from pathlib import Path

import numpy as np

from .grid import AXIS_ANGLE, AXIS_RANGE, AXIS_TIME, AxisSpec, PowerGrid

_COLUMN = {AXIS_TIME: "t_ns", AXIS_RANGE: "r_m", AXIS_ANGLE: "theta_deg"}
_TO_ENG = {AXIS_TIME: 1e9, AXIS_RANGE: 1.0, AXIS_ANGLE: 180.0 / math.pi}


def _axis_meta(axis: AxisSpec) -> dict:
    return {"kind": axis.kind, "lo": axis.lo, "hi": axis.hi, "count": axis.count}


def write_grid(grid: PowerGrid, sink) -> None:
    """Write a grid as self-describing CSV to a path or text file object."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            write_grid(grid, fh)
        return

    header = {
        "grid": {
            "axis1": _axis_meta(grid.axis1),
            "axis2": _axis_meta(grid.axis2),
            "fixed": {"kind": grid.fixed_kind, "value": grid.fixed_value},
            "floor_db": grid.floor_db,
        },
        "config": grid.metadata,
    }
    sink.write("# " + json.dumps(header, sort_keys=True) + "\n")
    sink.write(f"# reference_magnitude = {grid.reference_magnitude:.17g}\n")

    col1 = _COLUMN[grid.axis1.kind]
    col2 = _COLUMN[grid.axis2.kind]
    sink.write(f"{col1},{col2},power_db\n")

    a1 = grid.axis1.values() * _TO_ENG[grid.axis1.kind]
    a2 = grid.axis2.values() * _TO_ENG[grid.axis2.kind]
    for i in range(grid.axis1.count):
        row_vals = grid.values[i]
        row_mask = grid.valid_mask[i]
        v1 = f"{a1[i]:.9g}"
        for j in range(grid.axis2.count):
            p = f"{row_vals[j]:.9g}" if row_mask[j] else "nan"
            sink.write(f"{v1},{a2[j]:.9g},{p}\n")


def grid_to_text(grid: PowerGrid) -> str:
    buf = io.StringIO()
    write_grid(grid, buf)
    return buf.getvalue()


def read_grid(source) -> PowerGrid:
    """Read a grid written by write_grid back into a PowerGrid.

    Axis coordinates come from the JSON header at full precision; power
    values carry the file's 9-significant-digit precision.
    """
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    lines = text.splitlines()
    if len(lines) < 3 or not lines[0].startswith("# ") or not lines[1].startswith("# "):
        raise ValueError("not a grid file: expected two leading comment lines")
    header = json.loads(lines[0][2:])
    ref = float(lines[1].split("=", 1)[1])

    g = header["grid"]
    axis1 = AxisSpec(**g["axis1"])
    axis2 = AxisSpec(**g["axis2"])
    floor_db = g["floor_db"]

    n1, n2 = axis1.count, axis2.count
    data = lines[3:]
    if len(data) != n1 * n2:
        raise ValueError(f"expected {n1 * n2} data rows, got {len(data)}")
    values = np.empty((n1, n2))
    valid = np.ones((n1, n2), dtype=bool)
    for k, line in enumerate(data):
        p = line.rsplit(",", 1)[1]
        i, j = divmod(k, n2)
        if p == "nan":
            values[i, j] = floor_db
            valid[i, j] = False
        else:
            values[i, j] = float(p)
    return PowerGrid(
        axis1=axis1,
        axis2=axis2,
        fixed_kind=g["fixed"]["kind"],
        fixed_value=g["fixed"]["value"],
        values=values,
        valid_mask=valid,
        reference_magnitude=ref,
        floor_db=floor_db,
        metadata=header.get("config", {}),
    )

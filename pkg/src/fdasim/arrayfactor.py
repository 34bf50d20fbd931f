"""Complex array-factor evaluation with excitation gating and dB conversion.

The vectorized kernel `field_values` is the single evaluation path: scalar
`array_factor` calls and grid sweeps both go through it, so point and grid
evaluations agree.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import (
    DEFAULT_EPS_DEN,
    ArrayGeometry,
    ExcitationWindow,
    FocusSpec,
    OffsetModel,
    SpaceTimePoint,
    model_tau,
    offset_denominator,
    offset_numerator,
)


class GatingMode(enum.Enum):
    NONE = "none"
    EMISSION_TIME = "emission"
    OBSERVATION_TIME = "observation"


@dataclass(frozen=True)
class FieldSample:
    """One array-factor evaluation.

    gated: zeroed because the emission/observation time fell outside the
    excitation window. valid is False when gated or when any element offset
    was singular; the value of a singular sample must not be used.
    """

    value: complex
    valid: bool
    gated: bool


def field_values(
    geom: ArrayGeometry,
    model: OffsetModel,
    focus: FocusSpec,
    t,
    r,
    theta,
    eps_den: float = DEFAULT_EPS_DEN,
):
    """Ungated complex AF over broadcastable arrays of (t, r, theta).

    Returns (value, singular): the complex field and a mask of samples where
    at least one element offset hit its pole (those values are computed with
    that element's offset forced to zero and must be treated as invalid).
    """
    t, r, theta = np.broadcast_arrays(
        np.asarray(t, dtype=float),
        np.asarray(r, dtype=float),
        np.asarray(theta, dtype=float),
    )
    t0 = t - r / geom.c
    tau = model_tau(model, t, r, geom.c)
    sin_th = np.sin(theta)
    value = np.zeros(t.shape, dtype=complex)
    singular = np.zeros(t.shape, dtype=bool)
    for n in geom.elements():
        if n == 0:
            dfn = 0.0
        else:
            den = offset_denominator(tau, focus, geom, n)
            bad = np.abs(den) < eps_den
            dfn = np.where(bad, 0.0, offset_numerator(focus, geom, n) / np.where(bad, 1.0, den))
            singular |= bad
        phase = (
            2.0 * math.pi * (dfn * t0 + (n * geom.d / geom.c) * sin_th * (geom.f0 + dfn))
            + geom.phi_at(n)
        )
        value = value + np.exp(1j * phase)
    return value, singular


def gate_mask(gating: GatingMode, window: ExcitationWindow, t, r, c: float):
    """Boolean mask of samples excluded by the excitation window."""
    t = np.asarray(t, dtype=float)
    r = np.asarray(r, dtype=float)
    if gating is GatingMode.NONE:
        return np.zeros(np.broadcast_shapes(t.shape, r.shape), dtype=bool)
    if gating is GatingMode.EMISSION_TIME:
        u = t - r / c
    else:
        u = np.broadcast_arrays(t, r)[0]
    return (u < window.t_start) | (u > window.t_end)


def array_factor(
    geom: ArrayGeometry,
    model: OffsetModel,
    focus: FocusSpec,
    window: ExcitationWindow,
    gating: GatingMode,
    p: SpaceTimePoint,
    eps_den: float = DEFAULT_EPS_DEN,
) -> FieldSample:
    """Array factor at a single space-time point.

    Singular element offsets never surface as exceptions here; the sample is
    returned flagged invalid so sweeps can proceed.
    """
    if bool(gate_mask(gating, window, p.t, p.r, geom.c)):
        return FieldSample(value=0.0 + 0.0j, valid=False, gated=True)
    value, singular = field_values(geom, model, focus, p.t, p.r, p.theta, eps_den=eps_den)
    if bool(singular):
        return FieldSample(value=complex(value), valid=False, gated=False)
    return FieldSample(value=complex(value), valid=True, gated=False)


def power_db(sample: FieldSample, reference_magnitude: float, floor_db: float = -50.0) -> float:
    """Normalized power 20 log10(|AF| / ref), clamped at floor_db.

    Gated, invalid, and exactly-zero samples all land on the floor.
    """
    if reference_magnitude <= 0:
        raise ValueError("reference_magnitude must be > 0")
    mag = abs(sample.value)
    if not sample.valid or mag == 0.0:
        return floor_db
    return max(20.0 * math.log10(mag / reference_magnitude), floor_db)

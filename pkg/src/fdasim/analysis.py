"""Machine-checkable verification of the physical claims.

Each checker turns one argument into a report: light-cone causality of
rendered power, retarded-time invariance of the field, time-constancy of the
naive model's focus, and the speed at which the focus ridge moves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .arrayfactor import GatingMode, field_values
from .grid import (
    AXIS_RANGE,
    AXIS_TIME,
    AxisSpec,
    FocusTrajectory,
    PowerGrid,
    Simulation,
    sweep_time_range,
)
from .model import (
    CausalTimeModulated,
    ConstantOffset,
    NaiveTimeModulated,
    model_tau,
    offset_denominator,
)


class WrongGridKind(TypeError):
    """Checker fed a grid whose axes do not match its contract."""


class DegenerateTrajectory(ValueError):
    """Focus trajectory has too few distinct points to fit a line."""


@dataclass
class CausalityReport:
    passed: bool
    violation_t: np.ndarray
    violation_r: np.ndarray
    violation_theta: np.ndarray
    violation_db: np.ndarray
    worst_violation_db: float | None
    threshold_db: float

    @property
    def violation_count(self) -> int:
        return len(self.violation_t)

    def to_dict(self, max_listed: int = 100) -> dict:
        k = min(self.violation_count, max_listed)
        return {
            "passed": self.passed,
            "violation_count": self.violation_count,
            "worst_violation_db": self.worst_violation_db,
            "threshold_db": self.threshold_db,
            "violations": [
                {"t_s": float(self.violation_t[i]), "r_m": float(self.violation_r[i]),
                 "theta_rad": float(self.violation_theta[i]), "power_db": float(self.violation_db[i])}
                for i in range(k)
            ],
        }


@dataclass
class InvarianceReport:
    model: str
    max_relative_deviation: float
    sample_count: int
    tolerance: float
    passed: bool
    seed: int | None = None
    resamples: int = 0
    magnitude: float | None = None

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "max_relative_deviation": self.max_relative_deviation,
            "sample_count": self.sample_count,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "seed": self.seed,
            "resamples": self.resamples,
            "magnitude": self.magnitude,
        }


@dataclass
class VelocityReport:
    slope: float
    intercept: float
    residual: float
    relative_error_vs_c: float
    n_points: int

    def to_dict(self) -> dict:
        return {
            "slope_m_per_s": self.slope,
            "intercept_m": self.intercept,
            "residual_m": self.residual,
            "relative_error_vs_c": self.relative_error_vs_c,
            "n_points": self.n_points,
        }


@dataclass
class ModelComparison:
    naive: PowerGrid
    causal: PowerGrid
    difference_db: np.ndarray


def check_causality(grid: PowerGrid, window, threshold_db: float = 3.0,
                    c: float = 3.0e8) -> CausalityReport:
    """Flag rendered power outside the light cone of the excitation start.

    A cell violates causality when its emission time t - r/c precedes
    window.t_start while its power sits more than threshold_db above the
    grid floor. Uses the same cone inequality as EmissionTime gating, so
    gated grids pass by construction. An infinite t_start passes vacuously.
    """
    if grid.axis1.kind != AXIS_TIME or grid.axis2.kind != AXIS_RANGE:
        raise WrongGridKind("check_causality needs a time-range grid")
    t = grid.axis1.values()[:, None]
    r = grid.axis2.values()[None, :]
    outside = (t - r / c) < window.t_start
    hot = grid.values > grid.floor_db + threshold_db
    bad = outside & hot & grid.valid_mask
    ti, ri = np.nonzero(bad)
    t_v = grid.axis1.values()[ti]
    r_v = grid.axis2.values()[ri]
    db_v = grid.values[ti, ri]
    return CausalityReport(
        passed=len(ti) == 0,
        violation_t=t_v,
        violation_r=r_v,
        violation_theta=np.full(len(ti), grid.fixed_value),
        violation_db=db_v,
        worst_violation_db=float(db_v.max()) if len(ti) else None,
        threshold_db=threshold_db,
    )


def _min_abs_denominator(sim: Simulation, t, r):
    """Smallest |offset denominator| across elements, per sample."""
    tau = model_tau(sim.model, t, r, sim.geom.c)
    best = np.full(np.shape(tau), math.inf)
    for n in sim.geom.elements():
        if n == 0:
            continue
        best = np.minimum(best, np.abs(offset_denominator(tau, sim.focus, sim.geom, n)))
    return best


def check_retarded_invariance(
    sim: Simulation,
    sample_count: int = 1000,
    max_shift: float = 100e-9,
    tolerance: float = 1e-10,
    seed: int = 0,
    t_span: tuple[float, float] = (-100e-9, 100e-9),
    r_span: tuple[float, float] = (0.0, 30.0),
    pole_radius: float = 1e-9,
    eps_mag: float = 1e-9,
) -> InvarianceReport:
    """Does AF(t + dt, r + c dt, theta) reproduce AF(t, r, theta)?

    Randomized (t, r, theta, dt) samples from a seeded generator; samples
    whose offset denominators come within pole_radius of the pole are
    redrawn (counted in the report). Gating must be off.
    """
    if sim.gating is not GatingMode.NONE:
        raise ValueError("retarded-invariance is a property of the ungated field")
    rng = np.random.default_rng(seed)
    c = sim.geom.c

    def draw(k):
        t = rng.uniform(*t_span, k)
        r = rng.uniform(*r_span, k)
        theta = rng.uniform(-math.pi / 2, math.pi / 2, k)
        dt = rng.uniform(0.0, max_shift, k)
        return t, r, theta, dt

    t, r, theta, dt = draw(sample_count)
    resamples = 0
    for _ in range(100):
        # the shifted point has the same emission time, so one pole test
        # per sample covers both evaluations up to rounding
        bad = (_min_abs_denominator(sim, t, r) < pole_radius) | (
            _min_abs_denominator(sim, t + dt, r + c * dt) < pole_radius
        )
        k = int(bad.sum())
        if k == 0:
            break
        resamples += k
        t2, r2, th2, dt2 = draw(k)
        t[bad], r[bad], theta[bad], dt[bad] = t2, r2, th2, dt2
    else:
        raise RuntimeError("pole-avoiding sampler failed to converge")

    base, sing_b = field_values(sim.geom, sim.model, sim.focus, t, r, theta,
                                eps_den=sim.eps_den)
    shifted, sing_s = field_values(sim.geom, sim.model, sim.focus,
                                   t + dt, r + c * dt, theta, eps_den=sim.eps_den)
    if sing_b.any() or sing_s.any():
        raise RuntimeError("singular sample slipped past the pole-avoiding sampler")
    dev = np.abs(shifted - base) / (np.abs(base) + eps_mag)
    max_dev = float(dev.max())
    return InvarianceReport(
        model=sim.model.tag,
        max_relative_deviation=max_dev,
        sample_count=sample_count,
        tolerance=tolerance,
        passed=max_dev <= tolerance,
        seed=seed,
        resamples=resamples,
    )


def check_naive_focus_constancy(
    sim: Simulation,
    n_time_samples: int = 1000,
    tolerance: float = 1e-9,
) -> InvarianceReport:
    """Relative spread of |AF| at the naive model's focus over t in [0, T]."""
    if not isinstance(sim.model, NaiveTimeModulated):
        raise TypeError("focus-constancy check applies to the naive model")
    t = np.linspace(0.0, sim.model.T, n_time_samples)
    value, singular = field_values(
        sim.geom, sim.model, sim.focus, t, sim.model.r1, sim.focus.theta0,
        eps_den=sim.eps_den,
    )
    if singular.any():
        raise RuntimeError("naive focus evaluation hit an offset pole")
    mag = np.abs(value)
    mean = float(mag.mean())
    spread = float((mag.max() - mag.min()) / mean) if mean > 0 else math.inf
    return InvarianceReport(
        model=sim.model.tag,
        max_relative_deviation=spread,
        sample_count=n_time_samples,
        tolerance=tolerance,
        passed=spread <= tolerance,
        magnitude=mean,
    )


def estimate_focus_velocity(
    traj: FocusTrajectory,
    c: float = 3.0e8,
    min_peak_db: float | None = None,
) -> VelocityReport:
    """Least-squares slope of the focus trajectory r*(t), compared with c.

    min_peak_db restricts the fit to slices whose peak reaches that level,
    which isolates the main ridge from sidelobe-only slices.
    """
    if traj.slice_kind != AXIS_TIME or traj.peak_kind != AXIS_RANGE:
        raise WrongGridKind("focus velocity needs a trajectory over a time-range grid")
    sel = np.ones(len(traj.slice_coords), dtype=bool)
    if min_peak_db is not None:
        sel = traj.peak_db >= min_peak_db
    t = traj.slice_coords[sel]
    r = traj.peak_coords[sel]
    if len(t) < 2 or np.all(t == t[0]):
        raise DegenerateTrajectory("need at least two slices with distinct times")
    slope, intercept = np.polyfit(t, r, 1)
    fit = slope * t + intercept
    residual = float(np.sqrt(np.mean((r - fit) ** 2)))
    return VelocityReport(
        slope=float(slope),
        intercept=float(intercept),
        residual=residual,
        relative_error_vs_c=float(abs(slope - c) / c),
        n_points=int(len(t)),
    )


def compare_models(
    sim: Simulation,
    t_axis: AxisSpec,
    r_axis: AxisSpec,
    theta_fixed: float,
    workers: int = 1,
) -> ModelComparison:
    """Naive vs causal time-range grids under identical parameters.

    sim.model supplies r1 and T; both variants are swept with everything
    else unchanged. The difference uses each grid's own normalization.
    """
    if isinstance(sim.model, (NaiveTimeModulated, CausalTimeModulated)):
        r1, T = sim.model.r1, sim.model.T
    elif isinstance(sim.model, ConstantOffset):
        raise TypeError("compare_models needs a time-modulated model for r1 and T")
    naive = sweep_time_range(replace(sim, model=NaiveTimeModulated(r1=r1, T=T)),
                             t_axis, r_axis, theta_fixed, workers=workers)
    causal = sweep_time_range(replace(sim, model=CausalTimeModulated(r1=r1, T=T)),
                              t_axis, r_axis, theta_fixed, workers=workers)
    return ModelComparison(
        naive=naive,
        causal=causal,
        difference_db=naive.values - causal.values,
    )

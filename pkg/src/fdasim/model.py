"""Core domain types and the frequency-offset laws.

Everything here is a pure function of its arguments; no state, no I/O.
Angles are radians, times are seconds, lengths are metres.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

C_VACUUM = 3.0e8  # propagation speed default [m/s]

DEFAULT_EPS_DEN = 1e-15  # denominator magnitude below which the offset law is singular [s]


class SingularDenominator(ArithmeticError):
    """Offset law evaluated at (or too close to) its pole."""


@dataclass(frozen=True)
class ArrayGeometry:
    """Linear array of 2N+1 elements indexed n = -N..N around a center element.

    Defaults: half-wavelength spacing d = c/(2 f0), zero static phases,
    c = 3e8 m/s.
    """

    n_half: int
    f0: float
    d: float | None = None
    phi: tuple[float, ...] | None = None
    c: float = C_VACUUM

    def __post_init__(self):
        if self.n_half < 0:
            raise ValueError("n_half must be >= 0")
        if self.f0 <= 0:
            raise ValueError("f0 must be > 0")
        if self.c <= 0:
            raise ValueError("c must be > 0")
        if self.d is None:
            object.__setattr__(self, "d", self.c / (2.0 * self.f0))
        if self.d <= 0:
            raise ValueError("d must be > 0")
        n_el = 2 * self.n_half + 1
        if self.phi is None:
            object.__setattr__(self, "phi", (0.0,) * n_el)
        else:
            object.__setattr__(self, "phi", tuple(float(p) for p in self.phi))
        if len(self.phi) != n_el:
            raise ValueError(f"phi must have {n_el} entries, got {len(self.phi)}")

    @property
    def n_elements(self) -> int:
        return 2 * self.n_half + 1

    def elements(self) -> range:
        return range(-self.n_half, self.n_half + 1)

    def phi_at(self, n: int) -> float:
        return self.phi[n + self.n_half]


@dataclass(frozen=True)
class FocusSpec:
    """Steering angle and per-element optimized factors.

    g holds the factors for n = 1..N; symmetry g(-n) = g(n) and g(0) = 0 are
    applied by construction.
    """

    theta0: float
    g: tuple[float, ...]

    def __post_init__(self):
        if abs(self.theta0) > math.pi / 2:
            raise ValueError("theta0 must lie in [-pi/2, pi/2]")
        object.__setattr__(self, "g", tuple(float(v) for v in self.g))

    def g_at(self, n: int) -> float:
        if n == 0:
            return 0.0
        k = abs(n)
        if k > len(self.g):
            raise IndexError(f"no optimized factor for element {n}")
        return self.g[k - 1]


@dataclass(frozen=True)
class ConstantOffset:
    """Constant offsets parameterized by the emission time t_m of peak power."""

    t_m: float
    tag = "constant"


@dataclass(frozen=True)
class NaiveTimeModulated:
    """Time-modulated offsets evaluated at the observation time t.

    T is the modulation window length; it is metadata for verification and
    does not clamp the evaluation.
    """

    r1: float
    T: float
    tag = "naive"

    def __post_init__(self):
        if self.T <= 0:
            raise ValueError("T must be > 0")


@dataclass(frozen=True)
class CausalTimeModulated:
    """Time-modulated offsets evaluated at the emission time t - r/c."""

    r1: float
    T: float
    tag = "causal"

    def __post_init__(self):
        if self.T <= 0:
            raise ValueError("T must be > 0")


OffsetModel = ConstantOffset | NaiveTimeModulated | CausalTimeModulated


@dataclass(frozen=True)
class ExcitationWindow:
    """Emission-time interval during which the elements radiate."""

    t_start: float = -math.inf
    t_end: float = math.inf

    def __post_init__(self):
        if not self.t_start < self.t_end:
            raise ValueError("t_start must be < t_end")


@dataclass(frozen=True)
class SpaceTimePoint:
    t: float
    r: float
    theta: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be >= 0")


def emission_time(p: SpaceTimePoint, geom: ArrayGeometry) -> float:
    """Time t0 = t - r/c at which a signal observed at p left the array."""
    return p.t - p.r / geom.c


def model_tau(model: OffsetModel, t, r, c: float):
    """Time argument of the offset law; broadcasts over array-valued t, r."""
    if isinstance(model, ConstantOffset):
        return np.broadcast_arrays(np.asarray(model.t_m, dtype=float), t, r)[0]
    if isinstance(model, NaiveTimeModulated):
        return np.broadcast_arrays(np.asarray(t, dtype=float) - model.r1 / c, r)[0]
    if isinstance(model, CausalTimeModulated):
        t = np.asarray(t, dtype=float)
        r = np.asarray(r, dtype=float)
        return (t - r / c) - model.r1 / c
    raise TypeError(f"unknown offset model {model!r}")


def offset_denominator(
    tau, focus: FocusSpec, geom: ArrayGeometry, n: int
):
    """Denominator tau + (n d / c) sin(theta0) of the offset law."""
    return np.asarray(tau, dtype=float) + (n * geom.d / geom.c) * math.sin(focus.theta0)


def offset_numerator(focus: FocusSpec, geom: ArrayGeometry, n: int) -> float:
    """Numerator g_n - n d f0 sin(theta0) / c of the offset law."""
    return focus.g_at(n) - (n * geom.d * geom.f0 / geom.c) * math.sin(focus.theta0)


def offset_at(
    model: OffsetModel,
    focus: FocusSpec,
    geom: ArrayGeometry,
    n: int,
    p: SpaceTimePoint,
    eps_den: float = DEFAULT_EPS_DEN,
) -> float:
    """Frequency offset of element n observed at the space-time point p [Hz].

    The center element always has zero offset. Raises SingularDenominator
    when the law is evaluated within eps_den of its pole.
    """
    if not -geom.n_half <= n <= geom.n_half:
        raise IndexError(f"element index {n} outside [-{geom.n_half}, {geom.n_half}]")
    if n == 0:
        return 0.0
    tau = float(model_tau(model, p.t, p.r, geom.c))
    den = float(offset_denominator(tau, focus, geom, n))
    if abs(den) < eps_den:
        raise SingularDenominator(
            f"offset law pole for element {n}: |denominator| = {abs(den):.3e} s"
        )
    return offset_numerator(focus, geom, n) / den

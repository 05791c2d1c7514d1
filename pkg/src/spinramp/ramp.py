"""Local adiabatic ramp construction: gap-weighted quadrature and Akima inversion.

The ramp time accumulates as gamma * integral of dBz / gap^2, so the field
moves slowly where the gap is small.  The resulting t(Bz) table (uniform in
Bz) is inverted to Bz(t) on uniform time steps with a shape-preserving Akima
spline.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import Akima1DInterpolator

from .spectrum import GapFunction
from .trace import fmt

GAP_SQ_FLOOR = 1e-12


class DivergingGapError(ValueError):
    """The gap vanishes somewhere on the ramp interval, so the ramp time diverges."""


@dataclass(frozen=True)
class RampSchedule:
    """Bz(t) sampled on uniform time steps, endpoints included.

    ``times`` has n_steps + 1 entries with spacing ``dt``; ``direction`` is
    "down" for a decreasing field and "up" for an increasing one.
    """

    gamma: float
    times: np.ndarray
    Bz_of_t: np.ndarray
    total_time: float
    dt: float
    Bx: float
    direction: str

    def __post_init__(self) -> None:
        t, b = np.asarray(self.times), np.asarray(self.Bz_of_t)
        if len(t) != len(b) or len(t) < 2:
            raise ValueError("schedule needs matching time/field arrays with >= 2 points")
        dts = np.diff(t)
        if np.any(dts <= 0) or np.abs(dts - self.dt).max() > 1e-9 * max(self.dt, 1.0):
            raise ValueError("schedule times must increase uniformly")
        steps = np.diff(b)
        if self.direction == "down":
            if np.any(steps > 1e-12):
                raise ValueError("down ramp must be non-increasing in Bz")
        elif self.direction == "up":
            if np.any(steps < -1e-12):
                raise ValueError("up ramp must be non-decreasing in Bz")
        else:
            raise ValueError(f"unknown ramp direction {self.direction!r}")

    @property
    def n_steps(self) -> int:
        return len(self.times) - 1

    @property
    def steps(self) -> list[tuple[float, float]]:
        return [(float(t), float(b)) for t, b in zip(self.times, self.Bz_of_t)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("t,Bz\n")
        for t, b in self.steps:
            buf.write(f"{fmt(t)},{fmt(b)}\n")
        return buf.getvalue()


def ramp_time_of_field(
    gap: GapFunction,
    gamma: float,
    Bz_initial: float,
    Bz_final: float,
    *,
    n_intervals: int = 1000,
) -> np.ndarray:
    """Accumulated ramp time on uniform field steps from Bz_initial to Bz_final.

    Returns an (n_intervals + 1, 2) array of (Bz, t) rows with t(Bz_initial) = 0.
    Composite trapezoid of gamma / gap^2; both ramp directions give t >= 0.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if Bz_initial == Bz_final:
        raise ValueError("ramp endpoints must differ")
    bz = np.linspace(Bz_initial, Bz_final, n_intervals + 1)
    delta = np.asarray(gap(bz), dtype=float)
    delta_sq = delta * delta
    if np.any(delta_sq < GAP_SQ_FLOOR):
        worst = float(bz[np.argmin(delta_sq)])
        raise DivergingGapError(
            f"gap^2 below {GAP_SQ_FLOOR} near Bz={worst}; ramp time diverges "
            "(a symmetry-breaking Bx field is required near crossings)"
        )
    integrand = gamma / delta_sq
    db = abs(bz[1] - bz[0])
    t = np.concatenate(([0.0], np.cumsum(0.5 * (integrand[:-1] + integrand[1:]) * db)))
    return np.column_stack([bz, t])


def invert_to_uniform_time(points: np.ndarray, n_steps: int, *, gamma: float, Bx: float) -> RampSchedule:
    """Resample a (Bz, t) table onto n_steps uniform time intervals.

    Uses an Akima spline of Bz as a function of t.  Akima can overshoot on
    pathological inputs, so samples are clamped to the endpoint range and
    monotonicity is asserted rather than silently repaired.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 3:
        raise ValueError("need an (n, 2) array of (Bz, t) rows with n >= 3")
    if n_steps < 1:
        raise ValueError("need at least one time step")
    bz, t = pts[:, 0], pts[:, 1]
    if np.any(np.diff(t) <= 0):
        raise ValueError("ramp times must be strictly increasing")

    total_time = float(t[-1] - t[0])
    times = t[0] + np.linspace(0.0, total_time, n_steps + 1)
    spline = Akima1DInterpolator(t, bz)
    sampled = np.asarray(spline(times), dtype=float)
    sampled[0], sampled[-1] = bz[0], bz[-1]

    lo, hi = min(bz[0], bz[-1]), max(bz[0], bz[-1])
    sampled = np.clip(sampled, lo, hi)

    direction = "down" if bz[-1] < bz[0] else "up"
    steps = np.diff(sampled)
    if direction == "down" and np.any(steps > 1e-12):
        raise ValueError("Akima inversion produced a non-monotone down ramp")
    if direction == "up" and np.any(steps < -1e-12):
        raise ValueError("Akima inversion produced a non-monotone up ramp")

    return RampSchedule(
        gamma=gamma,
        times=times - t[0],
        Bz_of_t=sampled,
        total_time=total_time,
        dt=total_time / n_steps,
        Bx=Bx,
        direction=direction,
    )


def effective_gamma(schedule: RampSchedule, gap: GapFunction) -> np.ndarray:
    """Per-step adiabaticity estimates gap^2 * dt / |dBz| from finite differences."""
    if schedule.n_steps < 1:
        raise ValueError("schedule needs at least one step")
    b = schedule.Bz_of_t
    mid = 0.5 * (b[:-1] + b[1:])
    delta = np.asarray(gap(mid), dtype=float)
    db = np.abs(np.diff(b))
    with np.errstate(divide="ignore"):
        est = delta * delta * schedule.dt / db
    return est


def build_local_ramp(
    spec,
    gamma: float,
    Bz_initial: float,
    Bz_final: float,
    n_steps: int,
    *,
    gap_points: int = 201,
    quad_intervals: int = 1000,
) -> RampSchedule:
    """Gap scan, quadrature and inversion in one call for a chain spec."""
    from .spectrum import gap_function

    lo, hi = min(Bz_initial, Bz_final), max(Bz_initial, Bz_final)
    gap = gap_function(spec, np.linspace(lo, hi, gap_points))
    points = ramp_time_of_field(gap, gamma, Bz_initial, Bz_final, n_intervals=quad_intervals)
    return invert_to_uniform_time(points, n_steps, gamma=gamma, Bx=spec.Bx)

"""Magnetization traces: the (step, t, Bz, m) records produced by evolutions and scans."""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

# Pinned CSV number format: 12 significant digits, '.' decimal separator.
NUM_FMT = ".12g"

TRACE_HEADER = "step,t,Bz,m,shots,seed"


def fmt(x: float) -> str:
    return format(float(x), NUM_FMT)


@dataclass
class MagnetizationTrace:
    """Ordered magnetization record of one run.

    ``steps``, ``times``, ``Bz`` and ``m`` are parallel arrays; metadata
    mirrors the run that produced them (shots = 0 means exact expectation).
    """

    steps: np.ndarray
    times: np.ndarray
    Bz: np.ndarray
    m: np.ndarray
    L: int
    Bx: float
    gamma: float
    n_steps: int
    backend: str
    shots: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        n = len(self.steps)
        if not (len(self.times) == len(self.Bz) == len(self.m) == n):
            raise ValueError("trace arrays must have equal length")
        if np.any(np.diff(self.steps) <= 0):
            raise ValueError("trace entries must be ordered by step")

    @property
    def entries(self) -> list[tuple[int, float, float, float]]:
        return [
            (int(s), float(t), float(b), float(mm))
            for s, t, b, mm in zip(self.steps, self.times, self.Bz, self.m)
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(TRACE_HEADER + "\n")
        for s, t, b, mm in self.entries:
            buf.write(f"{s},{fmt(t)},{fmt(b)},{fmt(mm)},{self.shots},{self.seed}\n")
        return buf.getvalue()

    def with_m(self, m: np.ndarray) -> "MagnetizationTrace":
        out = MagnetizationTrace(
            steps=self.steps.copy(),
            times=self.times.copy(),
            Bz=self.Bz.copy(),
            m=np.asarray(m, dtype=float),
            L=self.L,
            Bx=self.Bx,
            gamma=self.gamma,
            n_steps=self.n_steps,
            backend=self.backend,
            shots=self.shots,
            seed=self.seed,
        )
        return out


def trace_from_csv(text: str, *, L: int, Bx: float, gamma: float, n_steps: int, backend: str) -> MagnetizationTrace:
    """Parse a trace CSV written by :meth:`MagnetizationTrace.to_csv`."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != TRACE_HEADER:
        raise ValueError("unrecognized trace CSV header")
    rows = [ln.split(",") for ln in lines[1:]]
    steps = np.array([int(r[0]) for r in rows])
    times = np.array([float(r[1]) for r in rows])
    bz = np.array([float(r[2]) for r in rows])
    m = np.array([float(r[3]) for r in rows])
    shots = int(rows[0][4]) if rows else 0
    seed = int(rows[0][5]) if rows else 0
    return MagnetizationTrace(
        steps=steps, times=times, Bz=bz, m=m,
        L=L, Bx=Bx, gamma=gamma, n_steps=n_steps, backend=backend,
        shots=shots, seed=seed,
    )

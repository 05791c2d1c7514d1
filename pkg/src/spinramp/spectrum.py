"""Dense exact-diagonalization oracle: spectra, gaps, staircases and level crossings."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import Akima1DInterpolator

from .model import HamiltonianSpec, hamiltonian, sz_values
from .trace import MagnetizationTrace, fmt

HERMITICITY_RTOL = 1e-12
DEGENERACY_ATOL = 1e-9


@dataclass
class SpectrumResult:
    """Full spectrum with eigenvalues ascending and orthonormal eigenvector columns.

    Degenerate subspaces are rotated to diagonalize total Sz and ordered with
    larger magnetization first, so the reported ground state is well defined
    even exactly at a level crossing.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    ground_magnetization: float


@dataclass
class GapFunction:
    """Sampled gap E1 - E0 over a Bz grid, evaluable off-grid by Akima interpolation."""

    Bz: np.ndarray
    delta: np.ndarray

    def __post_init__(self) -> None:
        self.Bz = np.asarray(self.Bz, dtype=float)
        self.delta = np.asarray(self.delta, dtype=float)
        if self.Bz.ndim != 1 or self.Bz.shape != self.delta.shape:
            raise ValueError("gap grid and values must be 1-D arrays of equal length")
        if np.any(np.diff(self.Bz) <= 0):
            raise ValueError("gap grid must be strictly increasing")
        if np.any(self.delta < 0):
            raise ValueError("gap values must be non-negative")
        self._interp = Akima1DInterpolator(self.Bz, self.delta) if len(self.Bz) >= 3 else None

    def __call__(self, bz):
        lo, hi = self.Bz[0], self.Bz[-1]
        b = np.asarray(bz, dtype=float)
        if np.any(b < lo - 1e-12) or np.any(b > hi + 1e-12):
            raise ValueError(f"Bz={bz} outside gap grid range [{lo}, {hi}]")
        b = np.clip(b, lo, hi)
        if self._interp is None:
            out = np.interp(b, self.Bz, self.delta)
        else:
            out = self._interp(b)
        return float(out) if np.isscalar(bz) else np.asarray(out)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("Bz,delta\n")
        for b, d in zip(self.Bz, self.delta):
            buf.write(f"{fmt(b)},{fmt(d)}\n")
        return buf.getvalue()


@dataclass
class CrossingTable:
    """Ground-state level crossings of the Bx = 0 chain: (m_high, m_low, Bz_critical)."""

    crossings: list[tuple[float, float, float]]

    def locations(self) -> list[float]:
        return [bz for _, _, bz in self.crossings]


def _check_hermitian(H: np.ndarray) -> None:
    scale = np.abs(H).max() or 1.0
    asym = np.abs(H - H.conj().T).max()
    if asym > HERMITICITY_RTOL * scale:
        raise ValueError(f"matrix is not Hermitian (relative asymmetry {asym / scale:.2e})")


def diagonalize(spec: HamiltonianSpec) -> SpectrumResult:
    """Full dense spectrum of a chain spec with magnetization-resolved degeneracies."""
    H = hamiltonian(spec)
    _check_hermitian(H)
    evals, evecs = np.linalg.eigh(H)
    sz = sz_values(spec.L)

    # Rotate each degenerate group to Sz eigenstates, larger magnetization first.
    scale = max(1.0, float(np.abs(evals).max()))
    tol = DEGENERACY_ATOL * scale
    start = 0
    n = len(evals)
    while start < n:
        stop = start + 1
        while stop < n and evals[stop] - evals[start] <= tol:
            stop += 1
        if stop - start > 1:
            block = evecs[:, start:stop]
            sz_block = block.conj().T @ (sz[:, None] * block)
            w, u = np.linalg.eigh(sz_block)
            evecs[:, start:stop] = block @ u[:, ::-1]
        start = stop

    g = evecs[:, 0]
    ground_m = float(np.real(np.sum(sz * np.abs(g) ** 2)))
    return SpectrumResult(eigenvalues=evals, eigenvectors=evecs, ground_magnetization=ground_m)


def gap_function(spec: HamiltonianSpec, Bz_grid) -> GapFunction:
    """Gap E1 - E0 of the (possibly Bx-perturbed) chain at each grid point.

    The spec's own Bz field is ignored; every grid point sets its own Bz.
    """
    grid = np.asarray(Bz_grid, dtype=float)
    if np.any(np.diff(grid) <= 0):
        raise ValueError("Bz grid must be sorted strictly increasing")
    deltas = np.empty_like(grid)
    for i, bz in enumerate(grid):
        evals = np.linalg.eigvalsh(hamiltonian(spec.with_fields(Bz=float(bz))))
        deltas[i] = evals[1] - evals[0]
    return GapFunction(Bz=grid, delta=deltas)


def ground_magnetization(spec: HamiltonianSpec) -> float:
    """Resolved ground-state total-Sz expectation value."""
    return diagonalize(spec).ground_magnetization


def exact_magnetization_curve(spec: HamiltonianSpec, Bz_grid) -> MagnetizationTrace:
    """Ground-state magnetization staircase of the unperturbed (Bx = 0) chain."""
    if spec.Bx != 0.0:
        raise ValueError("exact staircase requires Bx = 0")
    grid = np.asarray(Bz_grid, dtype=float)
    m = np.array([ground_magnetization(spec.with_fields(Bz=float(b))) for b in grid])
    return MagnetizationTrace(
        steps=np.arange(len(grid)),
        times=np.zeros(len(grid)),
        Bz=grid,
        m=m,
        L=spec.L,
        Bx=0.0,
        gamma=0.0,
        n_steps=len(grid) - 1,
        backend="exact-diagonalization",
    )


def _quantum_number(spec: HamiltonianSpec, bz: float) -> float:
    m = ground_magnetization(spec.with_fields(Bz=bz))
    qn = round(2.0 * m) / 2.0
    if abs(m - qn) > 1e-6:
        raise ValueError(f"ground magnetization {m} at Bz={bz} is not a half-integer")
    return qn


def find_exact_crossings(
    spec: HamiltonianSpec,
    interval: tuple[float, float],
    *,
    xtol: float = 1e-8,
    scan_points: int = 65,
) -> CrossingTable:
    """Locate ground-state level crossings of the Bx = 0 chain inside an interval.

    Bisection on the magnetization quantum number; a scan cell whose quantum
    number jumps by more than one unit is subdivided until each crossing is
    isolated.
    """
    if spec.Bx != 0.0:
        raise ValueError("crossing search requires Bx = 0")
    lo, hi = float(min(interval)), float(max(interval))
    if hi - lo <= 0:
        raise ValueError("empty scan interval")

    found: list[tuple[float, float, float]] = []

    def bisect(a: float, b: float, qa: float, qb: float) -> None:
        # Invariant: qa != qb. Multi-unit jumps are split before bisecting.
        if qa - qb > 1.0 + 1e-9 and b - a > xtol:
            mid = 0.5 * (a + b)
            qm = _quantum_number(spec, mid)
            if qm != qa:
                bisect(a, mid, qa, qm)
            if qm != qb:
                bisect(mid, b, qm, qb)
            return
        x0, x1 = a, b
        while x1 - x0 > xtol:
            mid = 0.5 * (x0 + x1)
            if _quantum_number(spec, mid) == qb:
                x1 = mid
            else:
                x0 = mid
        bz = 0.5 * (x0 + x1)
        found.append((max(qa, qb), min(qa, qb), bz))

    grid = np.linspace(lo, hi, scan_points)
    qns = [_quantum_number(spec, float(b)) for b in grid]
    for i in range(len(grid) - 1):
        if qns[i] != qns[i + 1]:
            a, b = float(grid[i]), float(grid[i + 1])
            # label by (higher-Bz qn, lower-Bz qn): qn grows with Bz
            bisect(a, b, qns[i + 1], qns[i])

    found.sort(key=lambda c: c[2])
    return CrossingTable(crossings=found)


def free_fermion_energies(L: int, J: float, Bz: float) -> list[tuple[float, float]]:
    """Momentum-mode energies of the string-free fermionized chain.

    Modes sit at k = 2 pi n / L with n = -L/2+1 .. L/2 for even L; for odd L
    the symmetric set n = -(L-1)/2 .. (L-1)/2 is used.  A mode-energy sign
    change flags a candidate crossing; for small chains the neglected
    boundary term can shift the true (ED) crossing, so this is a diagnostic,
    not an oracle.
    """
    if L < 2:
        raise ValueError("need at least 2 sites")
    if L % 2 == 0:
        ns = range(-L // 2 + 1, L // 2 + 1)
    else:
        ns = range(-(L - 1) // 2, (L - 1) // 2 + 1)
    out = []
    for n in ns:
        k = 2.0 * math.pi * n / L
        out.append((k, -J * math.cos(k) + Bz))
    return out


def spectrum_scan_to_csv(spec: HamiltonianSpec, Bz_grid, n_levels: int = 4) -> str:
    """CSV of the lowest levels and the gap along a Bz scan (columns Bz, E0.., delta)."""
    grid = np.asarray(Bz_grid, dtype=float)
    buf = io.StringIO()
    buf.write("Bz," + ",".join(f"E{i}" for i in range(n_levels)) + ",delta\n")
    for bz in grid:
        evals = np.linalg.eigvalsh(hamiltonian(spec.with_fields(Bz=float(bz))))
        row = [fmt(bz)] + [fmt(evals[i]) for i in range(n_levels)] + [fmt(evals[1] - evals[0])]
        buf.write(",".join(row) + "\n")
    return buf.getvalue()

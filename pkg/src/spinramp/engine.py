"""Trotterized statevector evolution along a ramp schedule.

Each Trotter step applies, in order, the XY propagator, the transverse-field
propagator and the longitudinal-field propagator, with the longitudinal field
sampled at the start of the step interval.  Two interchangeable backends are
provided: exact matrix exponentials of the three factor groups, and a
gate-level realization built from two-CNOT bond circuits plus single-qubit
rotations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .circuits import GateOp, build_step_circuit, build_xy_gate_circuit, x_field_gate, z_field_gate
from .model import PAULI, HamiltonianSpec, build_terms, sz_values, to_dense
from .ramp import RampSchedule
from .trace import MagnetizationTrace

NORM_ATOL = 1e-10

BACKENDS = ("exact-exponential", "gate-level")


@dataclass(frozen=True)
class NoiseConfig:
    """Stochastic single-Pauli error after each two-qubit gate (trajectory unraveling)."""

    depolarizing_probability: float
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.depolarizing_probability < 1.0:
            raise ValueError("depolarizing probability must be in [0, 1)")


def _philox(key_a: int, key_b: int) -> np.random.Generator:
    key = np.array([key_a & 0xFFFFFFFFFFFFFFFF, key_b & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def measure_magnetization(state: np.ndarray, shots: int = 0, seed: int = 0, step: int = 0) -> float:
    """Total-Sz measurement: exact expectation for shots = 0, else a sample mean.

    Sampling uses a counter-based generator keyed on (seed, step), so any
    recorded value can be reproduced in isolation.
    """
    n_sites = int(round(np.log2(len(state))))
    sz = sz_values(n_sites)
    probs = np.abs(state) ** 2
    norm = probs.sum()
    if abs(norm - 1.0) > 1e-6:
        raise ValueError(f"state norm deviates from 1 by {abs(norm - 1.0):.2e}")
    if shots == 0:
        return float(np.real(np.sum(sz * probs)))
    rng = _philox(seed, step)
    outcomes = rng.choice(len(state), size=shots, p=probs / norm)
    return float(sz[outcomes].mean())


def _hermitian_propagator(H: np.ndarray, dt: float) -> np.ndarray:
    w, v = np.linalg.eigh(H)
    return (v * np.exp(-1.0j * w * dt)) @ v.conj().T


def _xy_hamiltonian(spec: HamiltonianSpec) -> np.ndarray:
    bare = spec.with_fields(Bz=0.0, Bx=0.0)
    return to_dense(build_terms(bare), spec.L)


def _x_field_propagator(spec: HamiltonianSpec, dt: float) -> np.ndarray:
    # Single-site factors commute, so the tensor product is exact.
    g = x_field_gate(spec.Bx, dt).matrix
    out = np.array([[1.0]], dtype=np.complex128)
    for _ in range(spec.L):
        out = np.kron(out, g)
    return out


def _z_field_phases(L: int, Bz: float, dt: float) -> np.ndarray:
    # exp(-i dt h) with h = -(Bz/2) sum_i sigma_z_i, diagonal in the z basis.
    return np.exp(1.0j * dt * Bz * sz_values(L))


def trotter_step_exact(state: np.ndarray, spec: HamiltonianSpec, dt: float) -> np.ndarray:
    """One first-order Trotter step with exactly exponentiated factor groups."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    psi = _hermitian_propagator(_xy_hamiltonian(spec), dt) @ state
    if spec.Bx != 0.0:
        psi = _x_field_propagator(spec, dt) @ psi
    psi = _z_field_phases(spec.L, spec.Bz, dt) * psi
    return psi


def apply_noise(
    state: np.ndarray,
    gate: GateOp,
    config: NoiseConfig,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Post-gate error channel for one trajectory.

    With the configured probability, one of the two gate targets receives a
    uniformly random non-identity Pauli.  Only meaningful after two-qubit
    gates; averaging trajectories over seeds approximates a depolarizing
    channel on the gate's qubit pair.
    """
    if gate.kind != "cnot":
        raise ValueError("noise is attached to two-qubit gates only")
    if rng is None:
        rng = _philox(config.seed, 0)
    if rng.random() < config.depolarizing_probability:
        n_sites = int(round(np.log2(len(state))))
        site = gate.targets[int(rng.integers(2))]
        pauli = PAULI[("X", "Y", "Z")[int(rng.integers(3))]]
        kernels.apply_single_qubit(state, site, n_sites, pauli)
    return state


def _validate_initial(state: np.ndarray, L: int) -> None:
    if len(state) != (1 << L):
        raise ValueError(f"state dimension {len(state)} does not match L={L}")
    nonzero = np.nonzero(np.abs(state) > 1e-12)[0]
    if len(nonzero) != 1 or abs(abs(state[nonzero[0]]) - 1.0) > 1e-9:
        raise ValueError("initial state must be a computational basis product state")


def evolve(
    initial: np.ndarray,
    schedule: RampSchedule,
    spec: HamiltonianSpec,
    backend: str = "exact-exponential",
    shots: int = 0,
    noise: NoiseConfig | None = None,
    seed: int = 0,
) -> MagnetizationTrace:
    """Evolve a basis state through a ramp schedule, recording m after every step.

    The field for step k is the schedule value at the interval start; the
    entry recorded after step k carries the time and field reached at its
    end.  Entry 0 is the initial state.  Gate-level runs apply the bond
    circuits in ascending order, then the wrap bond.
    """
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    if noise is not None and backend != "gate-level":
        raise ValueError("noise requires the gate-level backend")
    if abs(schedule.Bx - spec.Bx) > 1e-12:
        raise ValueError(
            f"schedule was built for Bx={schedule.Bx}, spec has Bx={spec.Bx}"
        )
    _validate_initial(initial, spec.L)

    psi = np.ascontiguousarray(initial, dtype=np.complex128).copy()
    n = schedule.n_steps
    dt = schedule.dt
    m_vals = np.empty(n + 1)
    m_vals[0] = measure_magnetization(psi, shots, seed, step=0)

    if backend == "exact-exponential":
        fixed = _hermitian_propagator(_xy_hamiltonian(spec), dt)
        if spec.Bx != 0.0:
            fixed = _x_field_propagator(spec, dt) @ fixed
        sz = sz_values(spec.L)
        for k in range(n):
            bz = schedule.Bz_of_t[k]
            psi = fixed @ psi
            psi *= np.exp(1.0j * dt * bz * sz)
            m_vals[k + 1] = measure_magnetization(psi, shots, seed, step=k + 1)
    else:
        rng = _philox(noise.seed, 1) if noise is not None else None
        bonds = spec.bonds()
        prefix: list[GateOp] = []
        for bond in bonds:
            prefix.extend(build_xy_gate_circuit(bond, dt, spec.J))
        if spec.Bx != 0.0:
            fx = x_field_gate(spec.Bx, dt)
            prefix.extend(GateOp(fx.kind, (s,), fx.matrix, fx.params) for s in range(spec.L))
        for k in range(n):
            bz = schedule.Bz_of_t[k]
            for g in prefix:
                if g.kind == "cnot":
                    kernels.apply_cnot(psi, g.targets[0], g.targets[1], spec.L)
                    if noise is not None:
                        apply_noise(psi, g, noise, rng)
                else:
                    kernels.apply_single_qubit(psi, g.targets[0], spec.L, g.matrix)
            fz = z_field_gate(float(bz), dt)
            for s in range(spec.L):
                kernels.apply_single_qubit(psi, s, spec.L, fz.matrix)
            m_vals[k + 1] = measure_magnetization(psi, shots, seed, step=k + 1)

    return MagnetizationTrace(
        steps=np.arange(n + 1),
        times=schedule.times.copy(),
        Bz=schedule.Bz_of_t.copy(),
        m=m_vals,
        L=spec.L,
        Bx=spec.Bx,
        gamma=schedule.gamma,
        n_steps=n,
        backend=backend,
        shots=shots,
        seed=seed,
    )


def average_traces(traces: list[MagnetizationTrace]) -> MagnetizationTrace:
    """Mean magnetization over trajectories of identical runs."""
    if not traces:
        raise ValueError("no traces to average")
    ref = traces[0]
    for t in traces[1:]:
        if len(t.m) != len(ref.m) or t.L != ref.L:
            raise ValueError("traces are not from identical runs")
    mean_m = np.mean([t.m for t in traces], axis=0)
    return ref.with_m(mean_m)

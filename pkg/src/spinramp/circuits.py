"""Gate-level building blocks for one Trotter step.

The XY bond propagator exp(-i H_xy dt) with H_xy = -(J/4)(XX + YY) is realized
with exactly two CNOTs: conjugating by a half-pi x-rotation on both qubits
turns it into commuting XX and ZZ rotations, each of which a CNOT reduces to a
single-qubit rotation.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

UNITARITY_ATOL = 1e-12

SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class GateOp:
    """One gate: a CNOT on (control, target) or a named single-qubit unitary."""

    kind: str
    targets: tuple[int, ...]
    matrix: np.ndarray | None = None
    params: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "cnot":
            if len(self.targets) != 2 or self.targets[0] == self.targets[1]:
                raise ValueError("cnot needs two distinct targets")
            if self.matrix is not None:
                raise ValueError("cnot carries no explicit matrix")
            return
        if len(self.targets) != 1:
            raise ValueError(f"single-qubit gate {self.kind!r} needs one target")
        m = self.matrix
        if m is None or m.shape != (2, 2):
            raise ValueError(f"single-qubit gate {self.kind!r} needs a 2x2 matrix")
        if np.abs(m @ m.conj().T - np.eye(2)).max() > UNITARITY_ATOL:
            raise ValueError(f"gate {self.kind!r} is not unitary")


def w1_gate() -> GateOp:
    """(1 - i sigma_x)/sqrt(2): half-pi rotation about x."""
    m = SQRT_HALF * np.array([[1.0, -1.0j], [-1.0j, 1.0]], dtype=np.complex128)
    return GateOp("w1", (0,), m)


def w2_gate() -> GateOp:
    """Adjoint of w1."""
    m = SQRT_HALF * np.array([[1.0, 1.0j], [1.0j, 1.0]], dtype=np.complex128)
    return GateOp("w2", (0,), m)


def u_gate(J: float, dt: float) -> GateOp:
    """exp(+i (J/4) sigma_x dt)."""
    a = J * dt / 4.0
    m = np.array(
        [[math.cos(a), 1.0j * math.sin(a)], [1.0j * math.sin(a), math.cos(a)]],
        dtype=np.complex128,
    )
    return GateOp("u", (0,), m, params=(J, dt))


def v_gate(J: float, dt: float) -> GateOp:
    """exp(+i (J/4) sigma_z dt)."""
    a = J * dt / 4.0
    m = np.array([[np.exp(1.0j * a), 0.0], [0.0, np.exp(-1.0j * a)]], dtype=np.complex128)
    return GateOp("v", (0,), m, params=(J, dt))


def x_field_gate(Bx: float, dt: float) -> GateOp:
    """exp(-i h dt) for the on-site term h = -(Bx/2) sigma_x."""
    a = Bx * dt / 2.0
    m = np.array(
        [[math.cos(a), 1.0j * math.sin(a)], [1.0j * math.sin(a), math.cos(a)]],
        dtype=np.complex128,
    )
    return GateOp("xfield", (0,), m, params=(Bx, dt))


def z_field_gate(Bz: float, dt: float) -> GateOp:
    """exp(-i h dt) for the on-site term h = -(Bz/2) sigma_z."""
    a = Bz * dt / 2.0
    m = np.array([[np.exp(1.0j * a), 0.0], [0.0, np.exp(-1.0j * a)]], dtype=np.complex128)
    return GateOp("zfield", (0,), m, params=(Bz, dt))


def _on(gate: GateOp, site: int) -> GateOp:
    return GateOp(gate.kind, (site,), gate.matrix, gate.params)


def build_xy_gate_circuit(bond: tuple[int, int], dt: float, J: float) -> list[GateOp]:
    """Two-CNOT circuit equal (up to global phase: here exactly) to the bond propagator.

    Temporal order: w2 on both sites, CNOT, u on the control / v on the
    target, CNOT, w1 on both sites.
    """
    i, j = bond
    if i == j:
        raise ValueError("bond sites must differ")
    return [
        _on(w2_gate(), i),
        _on(w2_gate(), j),
        GateOp("cnot", (i, j)),
        _on(u_gate(J, dt), i),
        _on(v_gate(J, dt), j),
        GateOp("cnot", (i, j)),
        _on(w1_gate(), i),
        _on(w1_gate(), j),
    ]


def build_step_circuit(spec_L: int, bonds: list[tuple[int, int]], J: float, Bx: float, Bz: float, dt: float) -> list[GateOp]:
    """Gate list for one Trotter step: XY bonds in order, then x-field, then z-field."""
    gates: list[GateOp] = []
    for bond in bonds:
        gates.extend(build_xy_gate_circuit(bond, dt, J))
    if Bx != 0.0:
        fx = x_field_gate(Bx, dt)
        gates.extend(_on(fx, s) for s in range(spec_L))
    fz = z_field_gate(Bz, dt)
    gates.extend(_on(fz, s) for s in range(spec_L))
    return gates


def apply_circuit(psi: np.ndarray, gates: list[GateOp], n_sites: int, kernel=None) -> None:
    """Apply a gate list to a statevector in place."""
    from . import kernels

    impl = kernel if kernel is not None else kernels
    for g in gates:
        if g.kind == "cnot":
            impl.apply_cnot(psi, g.targets[0], g.targets[1], n_sites)
        else:
            impl.apply_single_qubit(psi, g.targets[0], n_sites, g.matrix)


def circuit_unitary(gates: list[GateOp], n_sites: int) -> np.ndarray:
    """Dense unitary of a gate list (column-by-column application; test-scale only)."""
    dim = 1 << n_sites
    out = np.eye(dim, dtype=np.complex128)
    for col in range(dim):
        v = np.ascontiguousarray(out[:, col])
        apply_circuit(v, gates, n_sites)
        out[:, col] = v
    return out


def cnot_count(gates: list[GateOp]) -> int:
    return sum(1 for g in gates if g.kind == "cnot")


def gate_list_text(gates: list[GateOp]) -> str:
    """Plain-text export, one gate per line: name, targets, parameters."""
    buf = io.StringIO()
    for g in gates:
        targets = " ".join(str(t) for t in g.targets)
        params = " ".join(format(p, ".12g") for p in g.params)
        line = f"{g.kind} {targets}"
        if params:
            line += f" {params}"
        buf.write(line + "\n")
    return buf.getvalue()

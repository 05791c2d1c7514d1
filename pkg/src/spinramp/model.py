"""Isotropic XY chain in a longitudinal (z) field plus a small transverse (x) field.

Hamiltonians are represented symbolically as lists of Pauli terms and can be
assembled into dense matrices for chains up to DENSE_SITE_CAP sites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
}

# 2^14 = 16384: largest dimension where dense matrices stay pleasant to work with.
DENSE_SITE_CAP = 14


@dataclass(frozen=True)
class PauliTerm:
    """One product of single-site Pauli operators with a real coefficient.

    ``factors`` holds (site, axis) pairs with axis in {"X", "Y", "Z"}; sites
    must be distinct within a term.
    """

    coefficient: float
    factors: tuple[tuple[int, str], ...]

    def __post_init__(self) -> None:
        if not math.isfinite(self.coefficient):
            raise ValueError(f"non-finite coefficient {self.coefficient!r}")
        sites = [site for site, _ in self.factors]
        if len(set(sites)) != len(sites):
            raise ValueError(f"repeated site in factors {self.factors!r}")
        for site, axis in self.factors:
            if site < 0:
                raise ValueError(f"negative site index {site}")
            if axis not in ("X", "Y", "Z"):
                raise ValueError(f"unknown Pauli axis {axis!r}")


@dataclass(frozen=True)
class HamiltonianSpec:
    """Chain parameters: site count, XY coupling and the two fields.

    Energies are in units of J (J = 1 by convention); a two-site periodic
    chain carries a single bond.
    """

    L: int
    J: float = 1.0
    Bz: float = 0.0
    Bx: float = 0.0
    periodic: bool = True

    def __post_init__(self) -> None:
        if self.L < 2:
            raise ValueError(f"need at least 2 sites, got L={self.L}")
        for name in ("J", "Bz", "Bx"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"non-finite {name}")

    def bonds(self) -> list[tuple[int, int]]:
        """Nearest-neighbour bonds; the wrap bond (L-1, 0) only for L > 2."""
        pairs = [(i, i + 1) for i in range(self.L - 1)]
        if self.periodic and self.L > 2:
            pairs.append((self.L - 1, 0))
        return pairs

    def with_fields(self, *, Bz: float | None = None, Bx: float | None = None) -> "HamiltonianSpec":
        kwargs = {}
        if Bz is not None:
            kwargs["Bz"] = Bz
        if Bx is not None:
            kwargs["Bx"] = Bx
        return replace(self, **kwargs)


def build_terms(spec: HamiltonianSpec) -> list[PauliTerm]:
    """Expand a chain spec into Pauli terms.

    Per bond: -(J/4) (XX + YY).  Per site: -(Bz/2) Z and, when Bx != 0 is
    requested, -(Bx/2) X.  The x-field term is emitted for every site even at
    Bx = 0 only if Bx is nonzero, keeping the Bx = 0 term list minimal.
    """
    terms: list[PauliTerm] = []
    for i, j in spec.bonds():
        terms.append(PauliTerm(-spec.J / 4.0, ((i, "X"), (j, "X"))))
        terms.append(PauliTerm(-spec.J / 4.0, ((i, "Y"), (j, "Y"))))
    if spec.Bz != 0.0:
        for i in range(spec.L):
            terms.append(PauliTerm(-spec.Bz / 2.0, ((i, "Z"),)))
    if spec.Bx != 0.0:
        for i in range(spec.L):
            terms.append(PauliTerm(-spec.Bx / 2.0, ((i, "X"),)))
    return terms


def to_dense(terms: list[PauliTerm], L: int) -> np.ndarray:
    """Kronecker-assemble Pauli terms into a dense 2^L x 2^L matrix.

    Site 0 is the most significant tensor factor, so basis index bits read
    left to right as sites 0..L-1 (bit 0 = spin up).
    """
    if L > DENSE_SITE_CAP:
        raise ValueError(f"L={L} exceeds dense cap of {DENSE_SITE_CAP} sites")
    dim = 1 << L
    out = np.zeros((dim, dim), dtype=np.complex128)
    for term in terms:
        highest = max((site for site, _ in term.factors), default=-1)
        if highest >= L:
            raise ValueError(f"site {highest} out of range for L={L}")
        axes = {site: axis for site, axis in term.factors}
        op = np.array([[term.coefficient]], dtype=np.complex128)
        for site in range(L):
            op = np.kron(op, PAULI[axes.get(site, "I")])
        out += op
    return out


def hamiltonian(spec: HamiltonianSpec) -> np.ndarray:
    """Dense Hamiltonian for a chain spec."""
    return to_dense(build_terms(spec), spec.L)


def sz_values(L: int) -> np.ndarray:
    """Total-Sz eigenvalue (sum of sigma_z / 2) of each computational basis state."""
    idx = np.arange(1 << L, dtype=np.int64)
    ones = np.zeros(1 << L, dtype=np.int64)
    for q in range(L):
        ones += (idx >> q) & 1
    return (L - 2 * ones) / 2.0


def total_sz(L: int) -> np.ndarray:
    """Dense total-Sz operator (diagonal in the computational basis)."""
    return np.diag(sz_values(L)).astype(np.complex128)


def basis_state(L: int, kind: str) -> np.ndarray:
    """Product state with all spins up or all spins down."""
    dim = 1 << L
    psi = np.zeros(dim, dtype=np.complex128)
    if kind == "all-up":
        psi[0] = 1.0
    elif kind == "all-down":
        psi[dim - 1] = 1.0
    else:
        raise ValueError(f"unknown initial state {kind!r}")
    return psi

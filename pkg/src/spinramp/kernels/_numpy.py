"""Pure-numpy statevector kernels (fallback when the compiled core is absent).

Site 0 is the most significant bit of the basis index, matching the
Kronecker ordering of the dense builders.  All kernels mutate in place.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"


def apply_single_qubit(psi: np.ndarray, site: int, n_sites: int, gate: np.ndarray) -> None:
    stride = 1 << (n_sites - 1 - site)
    view = psi.reshape(-1, 2, stride)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = gate[0, 0] * a0 + gate[0, 1] * a1
    view[:, 1, :] = gate[1, 0] * a0 + gate[1, 1] * a1


def apply_cnot(psi: np.ndarray, control: int, target: int, n_sites: int) -> None:
    cbit = 1 << (n_sites - 1 - control)
    tbit = 1 << (n_sites - 1 - target)
    idx = np.arange(len(psi))
    src = idx[((idx & cbit) != 0) & ((idx & tbit) == 0)]
    dst = src | tbit
    psi[src], psi[dst] = psi[dst].copy(), psi[src].copy()

"""Statevector gate kernels with a compiled core and a pure-numpy fallback.

The Cython extension ``_core`` is preferred when it has been built; set
``SPINRAMP_PURE_PYTHON=1`` to force the numpy fallback.  Both expose the same
in-place ``apply_single_qubit`` / ``apply_cnot`` pair.
"""

from __future__ import annotations

import os

from . import _numpy

if os.environ.get("SPINRAMP_PURE_PYTHON"):
    _impl = _numpy
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _numpy

apply_single_qubit = _impl.apply_single_qubit
apply_cnot = _impl.apply_cnot


def active_backend() -> str:
    """Name of the kernel implementation selected at import time."""
    return _impl.BACKEND_NAME

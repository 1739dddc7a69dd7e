"""Numeric kernel backend selection.

The hot kernels (channel power expansion, its gradient, the damped
majorize-minimize loop, exhaustive grid scan) exist twice: a compiled Cython
extension (``_fast``) and a NumPy reference (``_ref``) with identical
signatures and semantics.  The compiled backend is used when importable;
``MANOMA_KERNELS=python`` or ``MANOMA_KERNELS=compiled`` forces a choice.
"""

import os

from . import _ref

_choice = os.environ.get("MANOMA_KERNELS", "auto").strip().lower() or "auto"
if _choice not in {"auto", "compiled", "python"}:
    raise ImportError(
        "MANOMA_KERNELS must be 'auto', 'compiled' or 'python', "
        f"got {_choice!r}"
    )

if _choice == "python":
    _impl = _ref
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        if _choice == "compiled":
            raise
        _impl = _ref

BACKEND = "python" if _impl is _ref else "compiled"

TERM_CONVERGED = _ref.TERM_CONVERGED
TERM_MAX_ITERATIONS = _ref.TERM_MAX_ITERATIONS
TERM_STATIONARY = _ref.TERM_STATIONARY

power_one = _impl.power_one
power_many = _impl.power_many
grad_one = _impl.grad_one
sca_path = _impl.sca_path
grid_scan = _impl.grid_scan

__all__ = [
    "BACKEND",
    "TERM_CONVERGED",
    "TERM_MAX_ITERATIONS",
    "TERM_STATIONARY",
    "power_one",
    "power_many",
    "grad_one",
    "sca_path",
    "grid_scan",
]

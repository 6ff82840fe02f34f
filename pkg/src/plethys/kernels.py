"""Kernel dispatch: the compiled ``_kernels`` extension when built, else ``_kernels_py``.

Set ``PLETHYS_PURE=1`` to force the pure-Python implementation.
"""

import os

from . import _kernels_py

if os.environ.get("PLETHYS_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

forward_differences = _impl.forward_differences
newton_values = _impl.newton_values
binomial_row = _impl.binomial_row
eval_binomial = _impl.eval_binomial
grid_forward_differences = _impl.grid_forward_differences
grid_newton_values = _impl.grid_newton_values
binomial_to_monomial = _impl.binomial_to_monomial
poly_eval_mod = _impl.poly_eval_mod
binomial_tuples_mod = _impl.binomial_tuples_mod

__all__ = [
    "BACKEND",
    "forward_differences",
    "newton_values",
    "binomial_row",
    "eval_binomial",
    "grid_forward_differences",
    "grid_newton_values",
    "binomial_to_monomial",
    "poly_eval_mod",
    "binomial_tuples_mod",
]

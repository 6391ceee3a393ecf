"""Batch kernels for the training hot path, with backend selection.

Two interchangeable implementations exist: a Cython extension
(udeed._kernels._speedups) and a pure-numpy fallback
(udeed._kernels._numpy). The compiled one is preferred when importable;
set the environment variable UDEED_KERNELS to "numpy" or "cython" to force
a backend (forcing "cython" raises if the extension is missing). BACKEND
names the one in use.

Both backends implement the same math; within one backend results are
bit-reproducible, across backends they agree to float rounding.
"""

import os

_forced = os.environ.get("UDEED_KERNELS", "").lower()

if _forced == "numpy":
    from . import _numpy as _impl

    BACKEND = "numpy"
elif _forced in ("", "auto", "cython"):
    try:
        from . import _speedups as _impl

        BACKEND = "cython"
    except ImportError:
        if _forced == "cython":
            raise
        from . import _numpy as _impl

        BACKEND = "numpy"
else:
    raise ImportError(
        f"UDEED_KERNELS must be 'numpy', 'cython', or 'auto', got {_forced!r}"
    )

f_matrix = _impl.f_matrix
emp_sum_grad = _impl.emp_sum_grad
div_sum_grad = _impl.div_sum_grad

__all__ = ["BACKEND", "f_matrix", "emp_sum_grad", "div_sum_grad"]

"""Kernel dispatch: use the compiled extension when present, else NumPy.

`BACKEND` records which implementation won; `benchmarks/bench_kernels.py`
imports both sides explicitly to compare them.
"""

try:
    from . import _kernels as _impl

    BACKEND = "cython"
except ImportError:  # extension not built: editable installs without a compiler
    from . import _kernels_py as _impl

    BACKEND = "python"

grid_logabs_sum = _impl.grid_logabs_sum
count_affine = _impl.count_affine

"""Grid-kernel dispatch: compiled extension if built, numpy otherwise.

The regularized limits and Bochner-Martinelli pairings spend essentially
all their time in these tensor-grid sums, so they are also available as
a Cython extension; `benchmarks/bench_kernels.py` compares the two.
"""

from __future__ import annotations

try:  # pragma: no cover - depends on how the package was built
    from . import _gridkernels as _impl

    HAVE_COMPILED = True
except ImportError:  # pragma: no cover
    from . import _kernels_fallback as _impl

    HAVE_COMPILED = False

block_sum_1 = _impl.block_sum_1
block_sum_2 = _impl.block_sum_2

IMPLEMENTATION = "compiled" if HAVE_COMPILED else "numpy"

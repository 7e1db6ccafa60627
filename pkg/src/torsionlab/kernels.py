"""Kernel backend selection.

Imports the compiled extension when present, otherwise the pure-Python
module. TORSIONLAB_PURE_PYTHON=1 forces the fallback (used by the benchmark
and by tests that compare the two backends).
"""

import os

if os.environ.get("TORSIONLAB_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = "compiled" if _impl.__name__.endswith("._kernels") else "pure"

convolve = _impl.convolve
reduce_tail = _impl.reduce_tail
poly_divmod = _impl.poly_divmod
mat_mul = _impl.mat_mul

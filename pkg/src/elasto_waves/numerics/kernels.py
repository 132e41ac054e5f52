"""Kernel backend selection.

The compiled extension is used when importable; setting
``ELASTO_WAVES_PURE_PYTHON=1`` forces the NumPy fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if not os.environ.get("ELASTO_WAVES_PURE_PYTHON"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py

fv_evolve = _impl.fv_evolve
glimm_evolve = _impl.glimm_evolve
rp_sample = _impl.rp_sample
van_der_corput = _impl.van_der_corput

python_backend = _kernels_py

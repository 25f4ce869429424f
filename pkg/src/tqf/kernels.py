"""Backend selection for the hot permutation-sum loop.

The compiled extension is used when it imports; setting ``TQF_PURE_PYTHON=1``
forces the numpy fallback. ``TQF_THREADS`` caps the worker count of the
compiled kernel.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py.gather_accumulate

if os.environ.get("TQF_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        _impl = _compiled.gather_accumulate
        BACKEND = "cython"


def thread_count() -> int:
    try:
        n = int(os.environ.get("TQF_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def gather_accumulate(out, x, idx, coeffs):
    return _impl(out, x, idx, coeffs, thread_count())


def available_backends() -> dict:
    out = {"python": _kernels_py.gather_accumulate}
    try:
        from . import _kernels as _compiled

        out["cython"] = _compiled.gather_accumulate
    except ImportError:
        pass
    return out

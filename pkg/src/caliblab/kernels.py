"""Kernel selection: compiled extension when available, numpy otherwise.

Set CALIBLAB_NO_EXT=1 to force the numpy fallback (used by the benchmark
and by tests that compare the two implementations).
"""

import os

from . import _formeval_py

if os.environ.get("CALIBLAB_NO_EXT"):
    _impl = _formeval_py
else:
    try:
        from . import _formeval as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _formeval_py

BACKEND = _impl.BACKEND
form_values = _impl.form_values
form_values_grads = _impl.form_values_grads


def implementations():
    """Both kernel modules, for cross-checking and benchmarks."""
    impls = {"python": _formeval_py}
    try:
        from . import _formeval

        impls["cython"] = _formeval
    except ImportError:
        pass
    return impls

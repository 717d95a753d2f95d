"""Kernel selection: compiled extension when built, pure Python otherwise.

Set BLOCKZETA_PURE=1 to force the pure kernel (used by the benchmark
and by tests that exercise both code paths).
"""

from __future__ import annotations

import os

from . import _series_py

if os.environ.get("BLOCKZETA_PURE") == "1":
    _impl = _series_py
else:
    try:
        from . import _series_c as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _series_py

KERNEL = _impl.KERNEL
g_init = _impl.g_init
g_append = _impl.g_append
g_value = _impl.g_value


def available_kernels():
    kernels = {"python": _series_py}
    try:
        from . import _series_c

        kernels["cython"] = _series_c
    except ImportError:
        pass
    return kernels

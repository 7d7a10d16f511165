"""Select the stepping-kernel backend at import time.

The compiled extension (``varchaos._core``) is preferred; the pure-Python
twin (``varchaos._core_py``) is the fallback. Set ``VARCHAOS_PURE_PYTHON=1``
to force the fallback (used by the cross-backend tests and the benchmark).
"""

import os

from . import _core_py

if os.environ.get("VARCHAOS_PURE_PYTHON", "") == "1":
    kernels = _core_py
else:
    try:
        from . import _core as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _core_py

BACKEND = kernels.BACKEND_NAME


def available_backends():
    """Mapping of backend name -> kernel module, for benchmarks/tests."""
    out = {"python": _core_py}
    try:
        from . import _core
        out["compiled"] = _core
    except ImportError:
        pass
    return out

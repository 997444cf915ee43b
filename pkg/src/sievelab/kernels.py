"""Backend selection for the hot kernels.

The compiled extension is used when importable; setting ``SIEVELAB_PURE_PYTHON=1``
forces the pure-Python fallback.
"""
import os

from . import _kernels_py

BACKENDS = {"python": _kernels_py}
try:
    from . import _kernels as _compiled
    BACKENDS["cython"] = _compiled
except ImportError:  # pragma: no cover - depends on build
    _compiled = None

if os.environ.get("SIEVELAB_PURE_PYTHON", "") not in ("", "0") or _compiled is None:
    BACKEND = "python"
else:
    BACKEND = "cython"

_impl = BACKENDS[BACKEND]
group_closure = _impl.group_closure
charpoly_mod_p = _impl.charpoly_mod_p
walk_charpolys = _impl.walk_charpolys
fiber_counts = _impl.fiber_counts
ec_point_order = _impl.ec_point_order
COEFF_LIMIT = _kernels_py.COEFF_LIMIT


def get_backend(name):
    """Return the kernel module for ``name`` ('python' or 'cython')."""
    return BACKENDS[name]

"""Enumeration kernels with a compiled fast path.

The Cython module is used when it has been built; otherwise the pure
Python reference implementation is loaded.  Setting the environment
variable ``ZIPSTRATA_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("ZIPSTRATA_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        pass

search_component = _impl.search_component
form_filter = _impl.form_filter


def backend_module(name: str):
    """Return the kernel module for ``name`` ('python' or 'cython')."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


__all__ = ["BACKEND", "search_component", "form_filter", "backend_module"]

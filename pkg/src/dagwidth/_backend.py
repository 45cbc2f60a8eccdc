"""Pick the compiled kernels when they are importable, else the pure-Python ones.

Set ``DAGWIDTH_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

kernels_py = _kernels_py
kernels_compiled = None
if not os.environ.get("DAGWIDTH_PURE_PYTHON"):
    try:
        from . import _kernels as kernels_compiled  # type: ignore[no-redef]
    except ImportError:
        kernels_compiled = None

kernels = kernels_compiled if kernels_compiled is not None else kernels_py
BACKEND = "compiled" if kernels_compiled is not None else "python"


def get(name: str | None = None):
    """Kernel module by name: ``"compiled"``, ``"python"`` or ``None`` for the default."""
    if name is None or name == "auto":
        return kernels
    if name == "python":
        return kernels_py
    if name == "compiled":
        if kernels_compiled is None:
            raise RuntimeError("compiled kernels are not built; reinstall with Cython available")
        return kernels_compiled
    raise ValueError(f"unknown backend {name!r}")

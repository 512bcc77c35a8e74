"""Kernel dispatch: the compiled `_ckernels` module when importable, else `_pykernels`.

Set ``PRGEOM_PURE_PYTHON=1`` to force the numpy fallback.
"""
from __future__ import annotations

import os
from types import ModuleType

from prgeom import _pykernels


def _load_compiled() -> ModuleType | None:
    try:
        from prgeom import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = _load_compiled()

if _compiled is not None and not os.environ.get("PRGEOM_PURE_PYTHON"):
    _active, BACKEND = _compiled, "cython"
else:
    _active, BACKEND = _pykernels, "python"

jacobi_eigh = _active.jacobi_eigh
count_simple_cycles = _active.count_simple_cycles


def available_backends() -> dict[str, ModuleType]:
    out = {"python": _pykernels}
    if _compiled is not None:
        out["cython"] = _compiled
    return out

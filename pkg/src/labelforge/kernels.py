"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy fallback. ``LABELFORGE_PURE=1`` forces the fallback.
"""

import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("LABELFORGE_PURE"):
        raise ImportError("pure backend forced")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

BACKEND = "cython" if _ckernels is not None else "python"


def get(name=None):
    """Kernel module by name; ``None`` means the default backend."""
    name = BACKEND if name is None else name
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} unavailable (have {sorted(BACKENDS)})") from None


def as_u8(a):
    return np.ascontiguousarray(a, dtype=np.uint8)

"""Kernel backend selection.

The compiled extension is preferred; ``DOUBLEJC_BACKEND=python`` forces the
numpy fallback, ``DOUBLEJC_BACKEND=cython`` makes a missing extension fatal.
"""
import logging
import os

from . import _pykernels

log = logging.getLogger(__name__)

_requested = os.environ.get("DOUBLEJC_BACKEND", "auto").lower()

if _requested == "python":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        if _requested == "cython":
            raise
        log.debug("compiled kernels unavailable, using numpy fallback")
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

trajectory = _impl.trajectory
wedge_batch = _impl.wedge_batch
jacobi_eigh = _impl.jacobi_eigh

# not hot, always numpy
subsystem_amplitudes = _pykernels.subsystem_amplitudes
subsystem_unitaries = _pykernels.subsystem_unitaries


def backends():
    """Map of available backend name -> kernel module."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
        found["cython"] = _ckernels
    except ImportError:
        pass
    return found

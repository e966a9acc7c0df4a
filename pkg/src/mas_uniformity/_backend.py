"""Kernel selection.

The compiled ``_core`` extension is used when importable. Setting
``MAS_UNIFORMITY_PURE=1`` forces the numpy fallback, which is also used
automatically when the extension was not built.
"""
import logging
import os

from . import _pure

logger = logging.getLogger(__name__)

_FORCE_PURE = os.environ.get("MAS_UNIFORMITY_PURE", "") not in ("", "0")

kernels = _pure
BACKEND = "pure"

if not _FORCE_PURE:
    try:
        from . import _core
    except ImportError:  # pragma: no cover - depends on build
        logger.debug("compiled kernels unavailable; using numpy fallback")
    else:
        kernels = _core
        BACKEND = "compiled"


def available_backends():
    """Map backend name to kernel module for every importable backend."""
    found = {"pure": _pure}
    try:
        from . import _core
    except ImportError:  # pragma: no cover
        pass
    else:
        found["compiled"] = _core
    return found

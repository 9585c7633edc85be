"""Kernel selection: compiled extension when available, numpy fallback otherwise.

Set PTGPE_PURE=1 to force the pure-Python kernel (used by the benchmark and
the fallback tests).
"""

import os

if os.environ.get("PTGPE_PURE"):
    from . import shoot_py as _kernel
else:
    try:
        from . import _shoot as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import shoot_py as _kernel

KERNEL_NAME = _kernel.KERNEL_NAME
shoot_batch = _kernel.shoot_batch
shoot_record = _kernel.shoot_record

__all__ = ["KERNEL_NAME", "shoot_batch", "shoot_record"]

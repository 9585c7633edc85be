"""Bicomplex-continued stationary GPE in a PT-symmetric double well.

Subpackages: bicomplex arithmetic, the double-well model, the shooting
solver, spectrum sweeps and bifurcation tracking, the linear 4x4 matrix
model, and the exceptional-point explorer.  The shooting integrator runs on
a compiled kernel when available (see ptgpe._core.KERNEL_NAME).
"""

from ._core import KERNEL_NAME
from .bicomplex import Bicomplex, IdempotentPair, ZeroDivisorError, unit_circle

__version__ = "0.1.0"

__all__ = ["Bicomplex", "IdempotentPair", "ZeroDivisorError", "unit_circle", "KERNEL_NAME", "__version__"]

"""Exact computations with fusion rings, affine Weyl orbits, and
pre-quantized conjugacy classes of compact simple simply connected Lie groups."""

from .lie import LieType, build_lie_data

__all__ = ["LieType", "build_lie_data"]
__version__ = "0.1.0"

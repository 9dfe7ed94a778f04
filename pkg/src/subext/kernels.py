"""Kernel selection: the compiled extension when importable, else numpy."""

from __future__ import annotations

BACKEND = "python"

try:
    from ._kernels import blade_sign, clifford_product, product_coefficient, section_vector

    BACKEND = "compiled"
except ImportError:
    from ._kernels_py import blade_sign, clifford_product, product_coefficient, section_vector

__all__ = ["BACKEND", "blade_sign", "clifford_product", "product_coefficient", "section_vector"]

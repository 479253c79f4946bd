"""Exact computations in symmetric tensor powers of commutative algebras."""

from .basedalg import (
    AlgElement,
    BasisWord,
    PolynomialAlgebra,
    StructureConstantAlgebra,
    Veronese,
    orbit_sum,
    power_sum,
    to_orbit_basis,
    to_power_product_basis,
)
from .exactmath import Poly, RatMatrix, parse_poly, rref_nullspace, var
from .syzygy import kernel_member, min_generator_report, phi, psi, reduce_long_word, rewrite_product

__all__ = [
    "AlgElement",
    "BasisWord",
    "PolynomialAlgebra",
    "StructureConstantAlgebra",
    "Veronese",
    "orbit_sum",
    "power_sum",
    "to_orbit_basis",
    "to_power_product_basis",
    "Poly",
    "RatMatrix",
    "parse_poly",
    "rref_nullspace",
    "var",
    "kernel_member",
    "min_generator_report",
    "phi",
    "psi",
    "reduce_long_word",
    "rewrite_product",
]

__version__ = "0.1.0"

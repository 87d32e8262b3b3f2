"""Exact verification of Lie algebras, induced n-Lie brackets, Weil and B.R.S. algebras."""

from .cochains import Cochain, check_omega_condition, coboundary, wedge
from .lie import LieAlgebra, builtin, check_jacobi
from .nlie import NLieAlgebra, builtin_cross_product, check_filippov, check_metric, check_biconditional, induce
from .report import Report

__all__ = [
    "Cochain",
    "LieAlgebra",
    "NLieAlgebra",
    "Report",
    "builtin",
    "builtin_cross_product",
    "check_filippov",
    "check_jacobi",
    "check_metric",
    "check_omega_condition",
    "check_biconditional",
    "coboundary",
    "induce",
    "wedge",
]

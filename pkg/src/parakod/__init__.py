"""Exact computations for the standard almost complex structure on G x G:
canonical-bundle triviality, plurigenus / Kodaira verdicts and the induced
Norden and quasi-statistical structures."""

from .acx import alpha, beta, build, lambda_from_structure
from .catalog import get as catalog_entry
from .lie import StructureConstants, is_unimodular, jacobi_defect

__all__ = [
    "StructureConstants",
    "alpha",
    "beta",
    "build",
    "catalog_entry",
    "is_unimodular",
    "jacobi_defect",
    "lambda_from_structure",
]
__version__ = "0.1.0"

"""Generalized pentagonal geometries: verification, certificates and
constructions."""

from .core import Gdd, Geometry, PentError, RegularGraph, SearchFailed, SteinerSystem, VerificationReport
from .pent import verify_pent

__version__ = "0.1.0"

__all__ = [
    "Gdd",
    "Geometry",
    "PentError",
    "RegularGraph",
    "SearchFailed",
    "SteinerSystem",
    "VerificationReport",
    "verify_pent",
]

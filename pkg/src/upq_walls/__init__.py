"""Exact wall-and-chamber analysis of the stability parameter for twisted
U(p,q)-Higgs bundles."""

from .core_types import CurveData, ExtendedInterval, HiggsType, as_rational, validate_type
from .errors import UpqWallsError

__all__ = ["CurveData", "ExtendedInterval", "HiggsType", "UpqWallsError", "as_rational", "validate_type"]

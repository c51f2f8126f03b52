"""Exact computations for cubic fourfolds fibered in sextic del Pezzo surfaces."""

from .field import FieldCtx, build_extension, prime_field
from .ring import MonomialOrder, MultiPoly, Ring, make_ring
from .parse import parse_poly, format_poly, parse_data, read_data

__all__ = [
    "FieldCtx", "build_extension", "prime_field",
    "MonomialOrder", "MultiPoly", "Ring", "make_ring",
    "parse_poly", "format_poly", "parse_data", "read_data",
]

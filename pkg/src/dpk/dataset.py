"""The explicit F_5 example, embedded so that no data file is needed at run time.

The same text ships as package data (data/f5_example.txt and
data/f5_discriminants.txt); files passed on the command line take precedence.
"""

from __future__ import annotations

from functools import lru_cache

from .parse import PolyData, parse_data

EXAMPLE_TEXT = """\
# Explicit example over F_5: net of quadrics through two disjoint planes,
# the two cubic curves they cut, the cubic fourfold and its discriminant curves.
p=5 vars=x0,x1,x2,x3,x4,x5
Q1 = 3x0x3+2x0x5+4x1x3+2x1x4+x2x3+x2x4+2x2x5
Q2 = x0x3+2x0x5+x1x3+3x1x5+2x2x4+3x2x5
Q3 = 2x0x4+x0x5+x1x3+2x1x5+4x2x3+3x2x5
cubic1 = x3^3+2x3x4^2+x3x4x5+4x3x5^2+4x4^3+4x5^3
cubic2 = x0^3+4x0^2x1+x0^2x2+2x0x1^2+2x0x1x2+4x0x2^2+x1^3+3x1^2x2+x2^3
f = x0^3+4x0^2x1+x0^2x2+x0^2x3+3x0^2x4+3x0^2x5+2x0x1^2+2x0x1x2+4x0x1x3
  +3x0x1x4+4x0x1x5+4x0x2^2+x0x2x3+3x0x2x4+2x0x2x5+3x0x3^2+4x0x3x5+4x0x4^2
  +2x0x4x5+x0x5^2+x1^3+3x1^2x2+4x1^2x3+x1x2x3+3x1x2x4+4x1x2x5+3x1x3^2
  +x1x3x4+2x1x4^2+x1x4x5+2x1x5^2+x2^3+4x2^2x3+x2^2x4+4x2^2x5+4x2x3^2
  +3x2x3x5+3x2x4^2+2x2x4x5+4x2x5^2+4x3^3+3x3x4^2+4x3x4x5+x3x5^2+x4^3+x5^3
"""

DISCRIMINANT_TEXT = """\
# Discriminant sextics in the base plane, coordinates (x:y:z) = (Q1:Q2:Q3).
p=5 vars=x,y,z
B_I = x^6+2x^4y^2+x^3y^3+4x^3y^2z+2x^3z^3+4x^2y^4+4x^2y^2z^2+4x^2yz^3+4xy^5
  +xy^4z+xy^2z^3+xyz^4+2xz^5+4y^6+3y^5z+y^3z^3+y^2z^4+4yz^5
B_II = x^6+2x^5y+2x^4y^2+x^4yz+4x^3y^3+3x^3y^2z+4x^3yz^2+x^3z^3+3x^2y^4
  +4x^2y^2z^2+x^2yz^3+3x^2z^4+3xy^5+2xy^4z+3xy^3z^2+3xyz^4+xz^5+y^5z
  +4y^4z^2+3y^3z^3+2y^2z^4+4yz^5
"""


@lru_cache(maxsize=1)
def example_data() -> PolyData:
    return parse_data(EXAMPLE_TEXT)


@lru_cache(maxsize=1)
def discriminant_data() -> PolyData:
    return parse_data(DISCRIMINANT_TEXT)


__all__ = ["DISCRIMINANT_TEXT", "EXAMPLE_TEXT", "discriminant_data", "example_data"]

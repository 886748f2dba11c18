"""Shared fixtures: the exact curve corpus used across the Weierstrass and
acceptance tests.

Every curve here was constructed independently (splitting into sections,
power-series matching at a prescribed pole of j, or a modular family) and
then frozen; the tests re-derive all invariants from the coefficients alone.
"""

from fractions import Fraction as F

import pytest

from sexticsym.exactcore import RatPoly
from sexticsym.weierstrass import WeierstrassCurve

# label -> (g2 coefficients, g3 coefficients), ascending degree, k = 2
CURVE_CORPUS = {
    # four cusps, irreducible
    "4A2~": ([F(-3, 4), 0, 0, -6], [F(-1, 4), 0, 0, 5, 0, 0, 2]),
    # three sections u, v, w with u + v + w = 0; tangency pattern 2+2+1+1
    "2A3~+2A1~": (
        [F(-1, 3), F(4, 3), F(-7, 3), 2, -1],
        [F(2, 27), F(-4, 9), F(11, 9), F(-52, 27), F(5, 3), F(-2, 3)],
    ),
    # section plus irreducible conic, 8-fold contact at x = 0
    "A7~+A1~+2A0*": (
        [-3, 12, -24, 24, F(-39, 4)],
        [2, -12, 36, -64, F(279, 4), F(-87, 2), F(23, 2)],
    ),
    # section plus conic; the A1~ fiber sits at infinity
    "A5~+A2~+A1~+A0*": (
        [-3, -36, -90, -36, -27],
        [-2, -36, -198, -360, -270, 108, 54],
    ),
    # discriminant 27 x^9 (9x^3 + 4)
    "A8~+3A0*": ([-3, 0, 0, -6], [2, 0, 0, 6, 0, 0, 3]),
    # discriminant 186624 x^5 (x-1)^5 (11x^2 - 13x + 1)
    "2A4~+2A0*": (
        [-3, 48, -168, 168, -48],
        [-2, 48, -360, 1000, -1440, 1056, -304],
    ),
}


def corpus_curve(label: str) -> WeierstrassCurve:
    g2, g3 = CURVE_CORPUS[label]
    return WeierstrassCurve(2, RatPoly(g2), RatPoly(g3))


@pytest.fixture(scope="session")
def corpus():
    return {label: corpus_curve(label) for label in CURVE_CORPUS}

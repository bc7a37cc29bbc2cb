"""Coefficient generators for the caustic / invariant polynomials.

Each function returns a ``Poly`` (ascending coefficients) evaluated at a given
billiard.  They are transcribed term by term; every one is cross-checked
against brute-force orbits in the test-suite.
"""

from __future__ import annotations

from .conic import Billiard
from .polyroots import Poly


def _ab(billiard: Billiard):
    a, b = billiard.a, billiard.b
    return a, b, a * a - b * b


def n5_caustic_poly(billiard: Billiard) -> Poly:
    """Bi-sextic whose roots in (0, a) are the caustic semi-axes of the 5-periodics."""
    a, b, c2 = _ab(billiard)
    c4 = c2 * c2
    co = [0.0] * 13
    co[12] = c2**6
    co[10] = -2 * c4 * a**2 * (3 * a**8 - 9 * a**6 * b**2 + 31 * a**4 * b**4 + a**2 * b**6 + 6 * b**8)
    co[8] = c4 * a**4 * (15 * a**8 - 30 * a**6 * b**2 + 191 * a**4 * b**4 + 16 * a**2 * b**6 + 16 * b**8)
    co[6] = -4 * c4 * a**10 * (5 * a**4 - 5 * a**2 * b**2 + 66 * b**4)
    co[4] = a**12 * (15 * a**8 - 30 * a**6 * b**2 + 191 * a**4 * b**4 - 368 * a**2 * b**6 + 208 * b**8)
    co[2] = -2 * a**14 * (3 * a**8 - 3 * a**6 * b**2 + 22 * a**4 * b**4 - 48 * a**2 * b**6 + 32 * b**8)
    co[0] = a**24
    return Poly(co)


def n5_x2_poly(billiard: Billiard) -> Poly:
    a, b, c2 = _ab(billiard)
    c4, c6 = c2 * c2, c2**3
    return Poly([
        -(a**12),
        2 * a**9 * (2 * a**2 - b**2),
        -(a**8) * (5 * a**2 - 9 * b**2),
        -8 * a**5 * b**2 * c2,
        a**2 * (5 * a**2 + 4 * b**2) * c4,
        -2 * a * (2 * a**2 - b**2) * c4,
        c6,
    ])


def n5_x3_poly(billiard: Billiard) -> Poly:
    a, b, c2 = _ab(billiard)
    q = 3 * a**4 - 3 * a**2 * b**2 + 4 * b**4
    return Poly([
        -(a**12),
        -2 * a**7 * b**2 * (3 * a**2 - 4 * b**2),
        a**6 * q,
        12 * a**5 * b**2 * c2,
        -(a**2) * c2 * q,
        -2 * a * b**2 * c2 * (3 * a**2 + b**2),
        c2**3,
    ])


def n5_joachimsthal_poly(billiard: Billiard) -> Poly:
    """Degree-12 even polynomial in J for the simple 5-periodic."""
    a, b, c2 = _ab(billiard)
    c4 = c2 * c2
    s = a * a + b * b
    co = [0.0] * 13
    co[12] = 4096 * c2**6
    co[10] = 2048 * (3 * a**2 + b**2) * (a**2 + 3 * b**2) * s * c4
    co[8] = -256 * (29 * a**4 + 54 * a**2 * b**2 + 29 * b**4) * c4
    co[6] = 2304 * s * c4
    co[4] = -16 * (3 * a**2 - 4 * a * b - 3 * b**2) * (3 * a**2 + 4 * a * b - 3 * b**2)
    co[2] = -40 * s
    co[0] = 5.0
    return Poly(co)


def n5_k102_poly(billiard: Billiard) -> Poly:
    a, b, c2 = _ab(billiard)
    c4 = c2 * c2
    return Poly([
        -(a**10) * b**10,
        -8 * a**8 * b**8 * (7 * a**4 + 30 * a**2 * b**2 + 7 * b**4),
        -16 * a**6 * b**6 * (7 * a**8 - 96 * a**6 * b**2 + 114 * a**4 * b**4 - 96 * a**2 * b**6 + 7 * b**8),
        -64 * a**2 * b**2
        * (4 * a**12 - 27 * a**10 * b**2 + 38 * a**8 * b**4 - 126 * a**6 * b**6
           + 38 * a**4 * b**8 - 27 * a**2 * b**10 + 4 * b**12) * c4,
        256 * (4 * a**12 - a**10 * b**2 + 32 * a**8 * b**4 - 22 * a**6 * b**6
               + 32 * a**4 * b**8 - a**2 * b**10 + 4 * b**12) * c4 * c4,
        2048 * (a**4 + a**3 * b - a * b**3 + b**4) * (a**4 - a**3 * b + a * b**3 + b**4) * c2**6,
        1024 * c2**10,
    ])


def n5_k103_poly(billiard: Billiard) -> Poly:
    a, b, c2 = _ab(billiard)
    c4 = c2 * c2
    return Poly([
        -(c2**6),
        (2 * a**8 + 12 * a**6 * b**2 + 36 * a**4 * b**4 + 12 * a**2 * b**6 + 2 * b**8) * c4,
        (4 * a**8 + 19 * a**6 * b**2 + 66 * a**4 * b**4 + 19 * a**2 * b**6 + 4 * b**8) * c4,
        12 * b**2 * a**2 * (a**4 + b**4) * c4,
        -(b**2) * a**2 * (4 * a**8 + 19 * a**6 * b**2 - 62 * a**4 * b**4 + 19 * a**2 * b**6 + 4 * b**8),
        -2 * b**2 * a**2 * (4 * a**8 - a**6 * b**2 - a**2 * b**6 + 4 * b**8),
        a**6 * b**6,
    ])


def n5_k104_poly(billiard: Billiard) -> Poly:
    a, b, c2 = _ab(billiard)
    c4 = c2 * c2
    return Poly([
        -675 * a**12 - 850 * a**10 * b**2 + 1075 * a**8 * b**4 - 3900 * a**6 * b**6
        + 1075 * a**4 * b**8 - 850 * a**2 * b**10 - 675 * b**12,
        270 * a**12 + 740 * a**10 * b**2 - 3630 * a**8 * b**4 + 7160 * a**6 * b**6
        - 3630 * a**4 * b**8 + 740 * a**2 * b**10 + 270 * b**12,
        423 * a**12 - 354 * a**10 * b**2 + 2713 * a**8 * b**4 - 4796 * a**6 * b**6
        + 2713 * a**4 * b**8 - 354 * a**2 * b**10 + 423 * b**12,
        4 * (5 * a**8 + 92 * a**6 * b**2 + 62 * a**4 * b**4 + 92 * a**2 * b**6 + 5 * b**8) * c4,
        -(37 * a**4 - 6 * a**2 * b**2 + 37 * b**4) * c4 * c4,
        -2 * (a**4 + 10 * a**2 * b**2 + b**4) * c4 * c4,
        c2**6,
    ])


def n5_k105_poly(billiard: Billiard) -> Poly:
    a, b, c2 = _ab(billiard)
    c4 = c2 * c2
    ab2 = a * a * b * b
    return Poly([
        -(a**10) * b**10,
        -(2**4) * ab2
        * (16 * a**16 - 12 * a**14 * b**2 + 5 * a**12 * b**4 + a**10 * b**6 + 2 * a**8 * b**8
           + a**6 * b**10 + 5 * a**4 * b**12 - 12 * a**2 * b**14 + 16 * b**16),
        -(2**6) * ab2
        * (8 * a**16 - 53 * a**14 * b**2 + 253 * a**12 * b**4 - 1041 * a**10 * b**6
           + 1650 * a**8 * b**8 - 1041 * a**6 * b**10 + 253 * a**4 * b**12 - 53 * a**2 * b**14
           + 8 * b**16),
        2**6 * ab2
        * (4 * a**12 + 9 * a**10 * b**2 - 318 * a**8 * b**4 - 126 * a**6 * b**6
           - 318 * a**4 * b**8 + 9 * a**2 * b**10 + 4 * b**12) * c4,
        2**8 * (4 * a**12 + 30 * a**10 * b**2 + 71 * a**8 * b**4 + 350 * a**6 * b**6
                + 71 * a**4 * b**8 + 30 * a**2 * b**10 + 4 * b**12) * c4 * c4,
        2**10 * (2 * a**12 + a**10 * b**2 + 26 * a**8 * b**4 + 70 * a**6 * b**6
                 + 26 * a**4 * b**8 + a**2 * b**10 + 2 * b**12) * c4 * c4,
        2**10 * c2**10,
    ])


def n7_caustic_poly(billiard: Billiard) -> Poly:
    """Degree-12 polynomial for the three 7-periodic caustics.

    The x^9 coefficient carries a^3 b^2: with a^3 alone the polynomial is not
    homogeneous of degree 24 and its roots stop scaling with the billiard.
    """
    a, b, c2 = _ab(billiard)
    c6 = c2**3
    co = [0.0] * 13
    co[12] = c2**6
    co[11] = -4 * (a**2 + b**2) * c6 * a * (3 * a**2 + b**2) * b**2
    co[10] = -2 * c6 * a**2 * (3 * a**6 - 6 * a**4 * b**2 + 13 * a**2 * b**4 - 2 * b**6)
    co[9] = (60 * a**4 + 60 * b**2 * a**2 + 8 * b**4) * c6 * a**3 * b**2
    co[8] = a**6 * c2 * (15 * a**8 - 45 * a**6 * b**2 + 125 * a**4 * b**4 - 143 * a**2 * b**6 + 112 * b**8)
    co[7] = -8 * a**7 * b**2 * c2 * (15 * a**6 - 20 * a**4 * b**2 - 7 * a**2 * b**4 + 8 * b**6)
    co[6] = -4 * a**8 * c2 * (5 * a**8 - 10 * a**6 * b**2 + 35 * a**4 * b**4 - 30 * a**2 * b**6 + 36 * b**8)
    co[5] = 8 * a**9 * b**2 * c2 * (15 * a**6 - 25 * a**4 * b**2 - 2 * a**2 * b**4 + 4 * b**6)
    co[4] = a**10 * c2 * (15 * a**8 - 15 * a**6 * b**2 + 80 * a**4 * b**4 - 32 * a**2 * b**6 + 64 * b**8)
    co[3] = -4 * a**15 * b**2 * (15 * a**4 - 45 * b**2 * a**2 + 32 * b**4)
    co[2] = -2 * a**16 * (3 * a**6 - 3 * a**4 * b**2 + 10 * a**2 * b**4 - 8 * b**6)
    co[1] = 4 * a**17 * b**2 * (3 * a**2 - 4 * b**2) * (a**2 - 2 * b**2)
    co[0] = a**24
    return Poly(co)


def n8_simple_poly(billiard: Billiard) -> Poly:
    """Quartic in x where P2 = (a x, b sqrt(1 - x^2)) for the horizontal simple 8-periodic."""
    a, b, c2 = _ab(billiard)
    return Poly([-(a**4), 2 * a**2 * c2, 2 * a**2 * b**2, -2 * a**2 * c2, c2 * c2])


def n8_hyperbolic_poly(billiard: Billiard) -> Poly:
    """Degree-8 polynomial for x1 at the caustic/billiard crossing (types I and II)."""
    a, b, c2 = _ab(billiard)
    co = [0.0] * 9
    co[8] = c2**8
    co[6] = -4 * a**4 * c2**4 * (a**6 - 4 * a**4 * b**2 + a**2 * b**4 - 2 * b**6)
    co[4] = 2 * a**8 * c2**3 * (3 * a**6 - 15 * a**4 * b**2 - 4 * b**6)
    co[2] = -4 * a**16 * c2**2 * (a**2 - 6 * b**2)
    co[0] = a**20 * (a**4 - 8 * a**2 * b**2 + 8 * b**4)
    return Poly(co)


def n8_type3_poly(billiard: Billiard) -> Poly:
    """Degree-8 (even) polynomial in x1 for the type III 8-periodic."""
    a, b, c2 = _ab(billiard)
    c4 = c2 * c2
    co = [0.0] * 9
    co[8] = (a**4 + 6 * a**2 * b**2 + b**4) * c4
    co[6] = -4 * a**4 * (a**2 + 5 * b**2) * c4
    co[4] = 2 * a**6 * (3 * a**6 + 6 * a**4 * b**2 - 21 * a**2 * b**4 + 16 * b**6)
    co[2] = -4 * a**8 * (a**6 + a**4 * b**2 - 4 * a**2 * b**4 + 4 * b**6)
    co[0] = a**16
    return Poly(co)


def n8_type3_omega_poly(alpha: float) -> Poly:
    """Quartic in omega for the type III 8-periodic, written with alpha = a/b."""
    al2 = alpha * alpha
    return Poly([
        alpha**16,
        -4 * (alpha**6 + alpha**4 - 4 * al2 + 4) * alpha**8,
        2 * (3 * (alpha**4 + 2 * al2 - 7) * al2 + 16) * alpha**6,
        -4 * (al2 - 1) ** 2 * (al2 + 5) * alpha**4,
        (al2 - 1) ** 2 * (alpha**4 + 6 * al2 + 1),
    ])

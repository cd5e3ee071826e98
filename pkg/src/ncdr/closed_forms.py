"""Hand-expanded conversion tables for the canonical algebras.

These formulas were expanded by hand from the multiplication tables and
are kept deliberately independent of the generic big-C contraction solver in
linmap, so each route cross-checks the other.  Grids are indexed like the
linmap containers: std[i][j] = f^{ij}, coord[j][i] = f^j_i.
"""

from __future__ import annotations

from fractions import Fraction

Q = Fraction
QUARTER = Fraction(1, 4)

#: Sign matrix tying diagonal coordinates to diagonal standard components.
H_SIGNS = (
    (Q(1), Q(-1), Q(-1), Q(-1)),
    (Q(1), Q(-1), Q(1), Q(1)),
    (Q(1), Q(1), Q(-1), Q(1)),
    (Q(1), Q(1), Q(1), Q(-1)),
)

#: Its exact inverse (each entry times 1/4).
_H_SIGNS_INV_NUM = (
    (Q(1), Q(1), Q(1), Q(1)),
    (Q(-1), Q(-1), Q(1), Q(1)),
    (Q(-1), Q(1), Q(-1), Q(1)),
    (Q(-1), Q(1), Q(1), Q(-1)),
)
H_SIGNS_INV = tuple(tuple(v * QUARTER for v in row) for row in _H_SIGNS_INV_NUM)


def h_std_to_coord(std) -> tuple[tuple[Fraction, ...], ...]:
    """Quaternion coordinates from standard components, fully expanded."""
    f = std
    coord = [[Q(0)] * 4 for _ in range(4)]
    # coord[j][i] = f^j_i
    coord[0][0] = f[0][0] - f[1][1] - f[2][2] - f[3][3]
    coord[1][1] = f[0][0] - f[1][1] + f[2][2] + f[3][3]
    coord[2][2] = f[0][0] + f[1][1] - f[2][2] + f[3][3]
    coord[3][3] = f[0][0] + f[1][1] + f[2][2] - f[3][3]

    coord[1][0] = f[0][1] + f[1][0] + f[2][3] - f[3][2]
    coord[0][1] = -f[0][1] - f[1][0] + f[2][3] - f[3][2]
    coord[3][2] = -f[0][1] + f[1][0] - f[2][3] - f[3][2]
    coord[2][3] = f[0][1] - f[1][0] - f[2][3] - f[3][2]

    coord[2][0] = f[0][2] - f[1][3] + f[2][0] + f[3][1]
    coord[3][1] = f[0][2] - f[1][3] - f[2][0] - f[3][1]
    coord[0][2] = -f[0][2] - f[1][3] - f[2][0] + f[3][1]
    coord[1][3] = -f[0][2] - f[1][3] + f[2][0] - f[3][1]

    coord[3][0] = f[0][3] + f[1][2] - f[2][1] + f[3][0]
    coord[2][1] = -f[0][3] - f[1][2] - f[2][1] + f[3][0]
    coord[1][2] = f[0][3] - f[1][2] - f[2][1] - f[3][0]
    coord[0][3] = -f[0][3] + f[1][2] - f[2][1] - f[3][0]
    return tuple(tuple(r) for r in coord)


def h_coord_to_std(coord) -> tuple[tuple[Fraction, ...], ...]:
    """Quaternion standard components from coordinates, fully expanded."""
    c = coord  # c[j][i] = f^j_i
    f = [[Q(0)] * 4 for _ in range(4)]
    f[0][0] = (c[0][0] + c[1][1] + c[2][2] + c[3][3]) * QUARTER
    f[1][1] = (-c[0][0] - c[1][1] + c[2][2] + c[3][3]) * QUARTER
    f[2][2] = (-c[0][0] + c[1][1] - c[2][2] + c[3][3]) * QUARTER
    f[3][3] = (-c[0][0] + c[1][1] + c[2][2] - c[3][3]) * QUARTER

    f[0][1] = (c[1][0] - c[0][1] + c[2][3] - c[3][2]) * QUARTER
    f[1][0] = (c[1][0] - c[0][1] - c[2][3] + c[3][2]) * QUARTER
    f[2][3] = (c[1][0] + c[0][1] - c[2][3] - c[3][2]) * QUARTER
    f[3][2] = (-c[1][0] - c[0][1] - c[2][3] - c[3][2]) * QUARTER

    f[2][0] = (-c[0][2] + c[1][3] + c[2][0] - c[3][1]) * QUARTER
    f[3][1] = (c[0][2] - c[1][3] + c[2][0] - c[3][1]) * QUARTER
    f[0][2] = (-c[0][2] - c[1][3] + c[2][0] + c[3][1]) * QUARTER
    f[1][3] = (-c[0][2] - c[1][3] - c[2][0] - c[3][1]) * QUARTER

    f[3][0] = (-c[0][3] - c[1][2] + c[2][1] + c[3][0]) * QUARTER
    f[2][1] = (-c[0][3] - c[1][2] - c[2][1] - c[3][0]) * QUARTER
    f[1][2] = (c[0][3] - c[1][2] - c[2][1] + c[3][0]) * QUARTER
    f[0][3] = (-c[0][3] + c[1][2] - c[2][1] + c[3][0]) * QUARTER
    return tuple(tuple(r) for r in f)


def c_std_to_coord(std) -> tuple[tuple[Fraction, ...], ...]:
    """Complex coordinates from standard components."""
    f = std
    return (
        (f[0][0] - f[1][1], -f[0][1] - f[1][0]),
        (f[0][1] + f[1][0], f[0][0] - f[1][1]),
    )

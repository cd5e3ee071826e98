"""Exact rational elimination: rank, determinant, solve, nullspace."""

import random
from fractions import Fraction

import pytest

from ncdr import exactla
from ncdr.errors import Singular


def frac_matrix(rows):
    return [[Fraction(v) for v in row] for row in rows]


def cofactor_det(M):
    # Independent oracle: Laplace expansion along the first row.
    n = len(M)
    if n == 1:
        return M[0][0]
    total = Fraction(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        total += (-1) ** j * M[0][j] * cofactor_det(minor)
    return total


def test_det_known_values():
    assert exactla.det(frac_matrix([[1, 2], [3, 4]])) == -2
    assert exactla.det(frac_matrix([[1, 2], [2, 4]])) == 0
    M = frac_matrix([["1/2", 3], ["-2/3", "1/5"]])
    assert exactla.det(M) == Fraction(1, 10) + 2


def test_det_matches_cofactor_oracle():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 4)
        M = [
            [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
            for _ in range(n)
        ]
        assert exactla.det(M) == cofactor_det(M)


def test_rank_and_nullspace():
    M = frac_matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert exactla.rank(M) == 2
    basis = exactla.nullspace(M)
    assert len(basis) == 1
    for v in basis:
        assert exactla.mat_vec(M, v) == [0, 0, 0]
    assert exactla.rank(exactla.identity(5)) == 5
    assert exactla.rank([[Fraction(0)] * 3 for _ in range(2)]) == 0


def test_solve_and_consistency():
    M = frac_matrix([[1, 1], [2, 2]])
    assert exactla.solve(M, [Fraction(2), Fraction(4)]) is not None
    assert exactla.solve(M, [Fraction(2), Fraction(5)]) is None
    A = frac_matrix([[2, 1], [1, 3]])
    x = exactla.solve(A, [Fraction(5), Fraction(10)])
    assert exactla.mat_vec(A, x) == [5, 10]


def test_inverse_round_trip():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(1, 4)
        while True:
            M = [
                [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
                for _ in range(n)
            ]
            if exactla.det(M) != 0:
                break
        inv = exactla.inverse(M)
        assert exactla.mat_mul(M, inv) == exactla.identity(n)
        assert exactla.mat_mul(inv, M) == exactla.identity(n)
    with pytest.raises(Singular):
        exactla.inverse(frac_matrix([[1, 2], [2, 4]]))


def test_min_norm_solution():
    # x + y = 2 has min-norm solution (1, 1).
    M = frac_matrix([[1, 1]])
    assert exactla.min_norm_solution(M, [Fraction(2)]) == [1, 1]
    # Inconsistent system reports None.
    M2 = frac_matrix([[1, 1], [1, 1]])
    assert exactla.min_norm_solution(M2, [Fraction(0), Fraction(1)]) is None
    # Unique system returns its solution.
    A = frac_matrix([[1, 0], [0, 2]])
    assert exactla.min_norm_solution(A, [Fraction(3), Fraction(4)]) == [3, 2]


def test_min_norm_is_orthogonal_to_kernel():
    rng = random.Random(11)
    for _ in range(10):
        M = [
            [Fraction(rng.randint(-3, 3)) for _ in range(4)]
            for _ in range(2)
        ]
        target = [Fraction(rng.randint(-3, 3)) for _ in range(4)]
        b = exactla.mat_vec(M, target)
        x = exactla.min_norm_solution(M, b)
        assert exactla.mat_vec(M, x) == b
        for v in exactla.nullspace(M):
            assert sum(a * c for a, c in zip(x, v)) == 0

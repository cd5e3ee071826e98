"""Algebra kernel: multiplication tables, conjugation, norm, embedding."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncdr.algebra import (
    COMPLEX,
    QUATERNIONS,
    AlgebraSpec,
    RealMatrix4,
    conj,
    embed_matrix,
    inverse,
    make_quaternion_algebra,
    mul,
    norm_sq,
    rotate,
)
from ncdr.errors import AlgebraMismatch, NotInvertible, WrongDimension, ZeroParameter

H = QUATERNIONS
ONE, I, J, K = (H.basis(n) for n in range(4))

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
quaternions = st.builds(
    lambda a, b, c, d: H.element([a, b, c, d]), rationals, rationals, rationals, rationals
)


def test_scalar_arithmetic_is_exact():
    a = Fraction(1, 3)
    b = Fraction(10**40, 7)
    assert a + b - b == a
    assert float(Fraction(12)) == 12.0


def test_quaternion_table_matches_closed_form():
    # Structure constants of H: the sixteen nonzero entries.
    C = H.structure
    one = Fraction(1)
    assert C[1][2][3] == one and C[1][1][0] == -one
    expected = {
        (0, 0, 0): 1, (0, 1, 1): 1, (0, 2, 2): 1, (0, 3, 3): 1,
        (1, 0, 1): 1, (1, 1, 0): -1, (1, 2, 3): 1, (1, 3, 2): -1,
        (2, 0, 2): 1, (2, 1, 3): -1, (2, 2, 0): -1, (2, 3, 1): 1,
        (3, 0, 3): 1, (3, 1, 2): 1, (3, 2, 1): -1, (3, 3, 0): -1,
    }
    for k in range(4):
        for l in range(4):
            for p in range(4):
                assert C[k][l][p] == Fraction(expected.get((k, l, p), 0))


def test_general_quaternion_parameters():
    E = make_quaternion_algebra(1, 1)
    x = E.element([1, 1, 0, 0])  # 1 + i with i^2 = 1
    assert norm_sq(x) == 0
    with pytest.raises(NotInvertible):
        inverse(x)
    with pytest.raises(ZeroParameter):
        make_quaternion_algebra(0, 3)


def test_complex_algebra_table():
    C = COMPLEX.structure
    assert C[1][1][0] == Fraction(-1)
    assert C[0][1][1] == Fraction(1)
    assert C[1][0][1] == Fraction(1)


def test_associativity_on_all_basis_triples():
    for alg in (H, COMPLEX, make_quaternion_algebra(2, -3)):
        n = alg.dim
        for k in range(n):
            for l in range(n):
                for m in range(n):
                    ekl_m = mul(mul(alg.basis(k), alg.basis(l)), alg.basis(m))
                    ek_lm = mul(alg.basis(k), mul(alg.basis(l), alg.basis(m)))
                    assert ekl_m == ek_lm


def test_corrupted_table_is_rejected():
    C = [[list(v) for v in row] for row in H.structure]
    C[1][2][3] = Fraction(2)  # break i*j = k
    with pytest.raises(ValueError):
        AlgebraSpec(
            name="broken",
            dim=4,
            structure=tuple(tuple(tuple(v) for v in row) for row in C),
            conj_signs=(1, -1, -1, -1),
        )


def test_mul_examples():
    assert mul(I, J) == K
    x = H.element([2, -1, Fraction(1, 2), 3])
    assert mul(ONE, x) == x
    # (i+j)(i-j) = -1 - ij + ji + 1... expanded by the (7.2.3) table: -2k.
    assert mul(I + J, I - J) == -2 * K


def test_mul_rejects_algebra_mix():
    with pytest.raises(AlgebraMismatch):
        mul(I, COMPLEX.basis(1))


def test_conj_examples():
    assert conj(ONE + I) == ONE - I
    five = H.scalar(5)
    assert conj(five) == five
    x = H.element([1, 2, 3, 4])
    assert conj(conj(x)) == x


def test_norm_examples():
    assert norm_sq(ONE + I + J + K) == 4
    assert norm_sq(H.zero) == 0


def test_inverse_examples():
    assert inverse(I) == -I
    assert inverse(ONE) == ONE
    half = Fraction(1, 2)
    assert inverse(ONE + I) == H.element([half, -half, 0, 0])


def test_embed_matrix_pattern():
    assert embed_matrix(ONE) == RealMatrix4.identity()
    Ji = embed_matrix(I)
    assert [row[0] for row in Ji.rows] == [0, 1, 0, 0]
    a = [Fraction(p) for p in (2, -3, 5, 7)]
    Ja = embed_matrix(H.element(a))
    a0, a1, a2, a3 = a
    assert Ja.rows == (
        (a0, -a1, -a2, -a3),
        (a1, a0, -a3, a2),
        (a2, a3, a0, -a1),
        (a3, -a2, a1, a0),
    )
    assert embed_matrix(I) @ embed_matrix(J) == embed_matrix(K)


def test_embed_requires_four_dimensions():
    with pytest.raises(WrongDimension):
        embed_matrix(COMPLEX.basis(0))


def test_rotate_examples():
    assert rotate(ONE, I) == I
    s = math.sin(math.pi / 4)
    q = H.element([math.cos(math.pi / 4), 0.0, 0.0, s])
    r = rotate(q, I.to_float())
    # Rotation about k through pi/2 carries i to j.
    for got, want in zip(r.coords, (0.0, 0.0, 1.0, 0.0)):
        assert abs(got - want) < 1e-12


@given(quaternions, quaternions)
@settings(max_examples=60)
def test_norm_is_multiplicative(x, y):
    assert norm_sq(mul(x, y)) == norm_sq(x) * norm_sq(y)


@given(quaternions, quaternions)
@settings(max_examples=60)
def test_conj_antihomomorphism(x, y):
    assert conj(mul(x, y)) == mul(conj(y), conj(x))


@given(quaternions)
@settings(max_examples=60)
def test_inverse_round_trip(x):
    if norm_sq(x) == 0:
        return
    assert mul(x, inverse(x)) == ONE
    assert mul(inverse(x), x) == ONE


@given(quaternions, quaternions)
@settings(max_examples=40)
def test_embedding_is_a_ring_homomorphism(x, y):
    assert embed_matrix(mul(x, y)) == embed_matrix(x) @ embed_matrix(y)
    sum_rows = tuple(
        tuple(a + b for a, b in zip(ra, rb))
        for ra, rb in zip(embed_matrix(x).rows, embed_matrix(y).rows)
    )
    assert embed_matrix(x + y).rows == sum_rows


@given(quaternions, quaternions)
@settings(max_examples=40)
def test_rotation_preserves_norm(q, p):
    if norm_sq(q) == 0:
        return
    pure = H.element([0, *p.coords[1:]])
    assert norm_sq(rotate(q, pure)) == norm_sq(pure)
    assert rotate(q, pure).coords[0] == 0


def test_json_round_trip():
    for alg in (H, COMPLEX, make_quaternion_algebra(Fraction(1, 2), -3)):
        again = AlgebraSpec.from_json(alg.to_json())
        assert again == alg

"""Taylor-series ODE solving, the exponent, and homogeneity checks."""

import math
import random
from fractions import Fraction

import pytest

from ncdr import maps
from ncdr.algebra import QUATERNIONS, mul, norm_float
from ncdr.errors import NoSolution, OrderExceeded, RangeError
from ncdr.gateaux import MapEvaluator
from ncdr.ncpoly import (
    NCPoly,
    WordPoly,
    extensional_equal,
    sym_derivative,
)
from ncdr.taylor import (
    OdeRhs,
    euler_check,
    exp,
    exp_additivity_gap,
    exp_derivative_diagonal,
    exp_flow_defect,
    exp_permutations,
    solve_ode_taylor,
)

H = QUATERNIONS
ONE, I, J, K = (H.basis(n) for n in range(4))
X = NCPoly.variable(H)


def wp(name):
    return WordPoly.variable(H, name)


def cube_rhs():
    x, h = wp("x"), wp("h")
    return OdeRhs(h * x * x + x * h * x + x * x * h)


def test_ode_rhs_validation():
    with pytest.raises(ValueError):
        OdeRhs(wp("x") * wp("x"))  # no h at all
    with pytest.raises(ValueError):
        OdeRhs(wp("h") * wp("h"))  # h twice
    with pytest.raises(ValueError):
        OdeRhs(wp("h") * wp("z"))  # foreign symbol


def test_ode_cubic_example():
    sol = solve_ode_taylor(cube_rhs(), H.zero, H.zero)
    assert sol.terminated
    assert extensional_equal(sol.solution.to_words(), (X**3).to_words())


def test_ode_component_sum_example():
    rng = random.Random(3)
    x, h = wp("x"), wp("h")
    rhs_poly = WordPoly.zero(H)
    consts = []
    for _ in range(3):
        u = H.element([Fraction(rng.randint(-3, 3), 2) for _ in range(4)])
        v = H.element([Fraction(rng.randint(-3, 3), 2) for _ in range(4)])
        consts.append((u, v))
        rhs_poly = rhs_poly + WordPoly.constant(u) * h * WordPoly.constant(v)
    sol = solve_ode_taylor(OdeRhs(rhs_poly), H.zero, H.zero)
    want = NCPoly.zero(H)
    for u, v in consts:
        want = want + u * X * v
    assert extensional_equal(sol.solution.to_words(), want.to_words())


def test_ode_asymmetric_rhs_rejected():
    x, h = wp("x"), wp("h")
    with pytest.raises(NoSolution):
        solve_ode_taylor(OdeRhs(3 * (h * x * x)), H.zero, H.zero)


def test_ode_order_exceeded():
    with pytest.raises(OrderExceeded):
        solve_ode_taylor(cube_rhs(), H.zero, H.zero, max_order=2)


def test_ode_solution_satisfies_equation():
    rhs = cube_rhs()
    x0 = H.element([1, 0, Fraction(1, 2), 0])
    y0 = H.element([0, 2, 0, -1])
    sol = solve_ode_taylor(rhs, x0, y0)
    recovered = sym_derivative(sol.solution, 1).rename({"h1": "h"})
    assert extensional_equal(recovered, rhs.poly)
    from ncdr.ncpoly import eval_poly

    assert eval_poly(sol.solution, x0) == y0


def test_exp_basics():
    assert norm_float(exp(H.zero) - ONE.to_float()) <= 1e-15
    got = exp(math.pi * I.to_float())
    assert norm_float(got - (-ONE).to_float()) <= 1e-12


def test_exp_angle_identity():
    rng = random.Random(5)
    for _ in range(10):
        theta = rng.uniform(-2.5, 2.5)
        u = H.element([0.0, *(rng.uniform(-1, 1) for _ in range(3))])
        scale = norm_float(u)
        u = u * (1.0 / scale)
        got = exp(theta * u)
        want = math.cos(theta) * ONE.to_float() + math.sin(theta) * u
        assert norm_float(got - want) <= 1e-12


def test_exp_tail_bound_honored():
    rng = random.Random(7)
    x = H.element([rng.uniform(-1.5, 1.5) for _ in range(4)])
    tol = 1e-9
    assert norm_float(exp(x, tol) - exp(x, tol / 10)) < tol


def test_exp_inverse_pairing():
    rng = random.Random(9)
    x = H.element([rng.uniform(-1, 1) for _ in range(4)])
    tol = 1e-12
    assert norm_float(mul(exp(x, tol), exp(-x, tol)) - ONE.to_float()) <= 10 * tol


def test_exp_additivity_gap():
    assert exp_additivity_gap(I, mul(I, I)) <= 1e-10
    assert exp_additivity_gap(I, J) > 0.01
    rng = random.Random(11)
    b = H.element([rng.uniform(-1, 1) for _ in range(4)])
    assert exp_additivity_gap(H.zero, b) <= 1e-12


def test_exp_permutations_small():
    one = exp_permutations(1)
    assert {p.symbols for p in one} == {("y", "h1"), ("h1", "y")}
    assert len(exp_permutations(2)) == 4
    assert len(exp_permutations(3)) == 8
    for n in range(1, 7):
        perms = exp_permutations(n)
        assert len(perms) == 2**n
        assert len({p.symbols for p in perms}) == 2**n
        assert all(p.satisfies_conditions() for p in perms)
    with pytest.raises(RangeError):
        exp_permutations(0)
    with pytest.raises(RangeError):
        exp_permutations(13)


def test_exp_permutations_second_order_matches_direct_expansion():
    # d2 y = (1/4)(y h2 h1 + h2 y h1 + h1 y h2 + h1 h2 y) from iterating
    # dy(h) = (yh + hy)/2 by hand.
    got = {p.symbols for p in exp_permutations(2)}
    want = {
        ("y", "h2", "h1"),
        ("h2", "y", "h1"),
        ("h1", "y", "h2"),
        ("h1", "h2", "y"),
    }
    assert got == want


def test_exp_derivative_diagonal_is_h_power():
    for n in (1, 2, 3, 6, 10):
        diag = exp_derivative_diagonal(H, n)
        h = wp("h")
        want = WordPoly.constant(ONE)
        for _ in range(n):
            want = want * h
        assert diag.terms == want.terms


def test_exp_flow_defect():
    assert exp_flow_defect(H, 1).is_zero()
    assert exp_flow_defect(H, 2).is_zero()
    defect = exp_flow_defect(H, 3)
    assert not defect.is_zero()
    # The x h x cross term survives with weight 1/6.
    x, h = wp("x"), wp("h")
    xhx = (Fraction(1, 6) * (x * h * x)).terms[0]
    assert xhx in defect.terms


def test_euler_checks():
    assert euler_check(maps.square(H), 2, samples=10) < 1e-7
    rng = random.Random(13)
    b = H.element([rng.uniform(-1, 1) for _ in range(4)])
    c = H.element([rng.uniform(-1, 1) for _ in range(4)])
    linear = MapEvaluator.unary(H, lambda v: mul(mul(b, v), c))
    assert euler_check(linear, 1, samples=10) < 1e-8
    assert euler_check(maps.cube(H), 3, samples=10) < 1e-7

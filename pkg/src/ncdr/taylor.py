"""ODE solving by successive symbolic differentiation, and the exponent.

A first-order equation dy(h) = F(x; h) with x-only right-hand side is solved
by differentiating F formally, checking each higher derivative is symmetric
in its direction symbols (the solvability obstruction), and reassembling the
Taylor polynomial about the base point.  The exponent is the everywhere-
convergent series sum x^n/n! with a rigorous scalar tail bound; additivity
exp(a+b) = exp(a) exp(b) holds exactly when a and b commute, and the gap is
measurable otherwise.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraSpec, Element, mul, norm_float
from .errors import NoSolution, OrderExceeded, RangeError
from .gateaux import DEFAULT_CONFIG, DiffConfig, MapEvaluator, gateaux
from .ncpoly import (
    Const,
    NCPoly,
    Var,
    WordPoly,
    diagonal,
    extensional_equal,
    ncpoly_from_words,
    sym_derivative,
)


@dataclass(frozen=True)
class OdeRhs:
    """Right-hand side of dy(h) = F(x; h): every word is degree 1 in h."""

    poly: WordPoly

    def __post_init__(self) -> None:
        if not self.poly.variables() <= {"x", "h"}:
            raise ValueError("right-hand side may use only the symbols x and h")
        for _, word in self.poly.terms:
            h_count = sum(1 for f in word if isinstance(f, Var) and f.name == "h")
            if h_count != 1:
                raise ValueError("each word must contain the direction h exactly once")


@dataclass(frozen=True)
class TaylorSolution:
    """Solution data: diagonals d_k(h) at the base point, k = 1..K."""

    x0: Element
    y0: Element
    diagonals: tuple[WordPoly, ...]
    terminated: bool
    solution: NCPoly


def _swap(k: int, i: int) -> dict[str, str]:
    return {f"h{i}": f"h{i + 1}", f"h{i + 1}": f"h{i}"}


def solve_ode_taylor(
    rhs: OdeRhs, x0: Element, y0: Element, max_order: int = 16
) -> TaylorSolution:
    """Integrate dy(h) = F(x; h) by Taylor reassembly about x0.

    Raises NoSolution when a higher derivative fails direction-symmetry (the
    equation is then inconsistent), OrderExceeded when the derivative chain
    does not vanish by max_order.
    """
    alg = x0.alg
    d = rhs.poly.rename({"h": "h1"})
    derivatives = [d]
    terminated = False
    order = 1
    while order < max_order:
        order += 1
        d = d.derivative("x", f"h{order}")
        for i in range(1, order):
            if not extensional_equal(d, d.rename(_swap(order, i))):
                raise NoSolution(
                    f"derivative of order {order} is not symmetric in its directions"
                )
        derivatives.append(d)
        if d.is_zero():
            terminated = True
            break
    if not terminated:
        raise OrderExceeded(f"no termination within {max_order} orders")

    diagonals = []
    assembled = WordPoly.constant(y0)
    shift = WordPoly.variable(alg, "x") - WordPoly.constant(x0)
    for k, dk in enumerate(derivatives, start=1):
        diag_k = diagonal(dk, k).substitute_element("x", x0)
        diagonals.append(diag_k)
        term = Fraction(1, math.factorial(k)) * diag_k
        assembled = assembled + term.substitute("h", shift)
    solution = ncpoly_from_words(assembled, "x")

    recovered = sym_derivative(solution, 1).rename({"h1": "h"})
    if not extensional_equal(recovered, rhs.poly):
        raise NoSolution("assembled polynomial does not satisfy the equation")
    return TaylorSolution(
        x0=x0, y0=y0, diagonals=tuple(diagonals), terminated=True, solution=solution
    )


def exp(x: Element, tol: float = 1e-12) -> Element:
    """Series sum x^n/n! with tail bound |x|^{N+1} e^{|x|} / (N+1)!.

    Norm multiplicativity makes the scalar bound rigorous for the summed
    remainder; float path throughout.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    x = x.to_float()
    r = norm_float(x)
    acc = x.alg.one.to_float()
    term = acc
    growth = math.exp(r)
    n = 0
    bound = r * growth  # tail after the n = 0 partial sum
    while bound >= tol and n < 1000:
        n += 1
        term = mul(term, x) * (1.0 / n)
        acc = acc + term
        bound = bound * r / (n + 1)
    return acc


def exp_additivity_gap(a: Element, b: Element, tol: float = 1e-12) -> float:
    """|exp(a+b) - exp(a) exp(b)|; vanishes exactly when ab = ba."""
    return norm_float(exp(a + b, tol) - mul(exp(a, tol), exp(b, tol)))


@dataclass(frozen=True)
class ExpPermutation:
    """An arrangement of (y, h_1..h_n) reachable by attaching each next h
    immediately left or right of y; indices increase toward y on both sides."""

    symbols: tuple[str, ...]

    def satisfies_conditions(self) -> bool:
        pos_y = self.symbols.index("y")
        left = [int(s[1:]) for s in self.symbols[:pos_y]]
        right = [int(s[1:]) for s in self.symbols[pos_y + 1 :]]
        return left == sorted(left) and right == sorted(right, reverse=True)


def exp_permutations(n: int) -> list[ExpPermutation]:
    """All 2^n arrangements behind the order-n derivative of the exponent."""
    if not 1 <= n <= 12:
        raise RangeError("supported orders are 1..12")
    arrangements: list[tuple[str, ...]] = [("y",)]
    for q in range(1, n + 1):
        h = f"h{q}"
        grown = []
        for arr in arrangements:
            at = arr.index("y")
            grown.append(arr[:at] + (h,) + arr[at:])
            grown.append(arr[: at + 1] + (h,) + arr[at + 1 :])
        arrangements = grown
    return [ExpPermutation(a) for a in arrangements]


def exp_derivative_diagonal(alg: AlgebraSpec, n: int) -> WordPoly:
    """(1/2^n) sum over the arrangements, at y = 1 and all h_i = h."""
    perms = exp_permutations(n)
    raw = []
    for p in perms:
        word = tuple(
            Const(alg.one) if s == "y" else Var("h") for s in p.symbols
        )
        raw.append((Fraction(1, 2**n), word))
    return WordPoly.build(alg, raw)


def exp_flow_defect(alg: AlgebraSpec, k: int) -> WordPoly:
    """Degree-(k-1) mismatch between the series derivative and (yh + hy)/2.

    Returns d(x^k/k!)(h) - (x^{k-1}h + h x^{k-1}) / (2 (k-1)!) as a word
    polynomial; zero for k <= 2, a nonzero x-h-x cross term from k = 3 on.
    """
    if k < 1:
        raise RangeError("term index must be positive")
    xk = NCPoly.variable(alg) ** k
    series_part = Fraction(1, math.factorial(k)) * sym_derivative(xk, 1).rename(
        {"h1": "h"}
    )
    power = WordPoly.variable(alg, "x")
    word_pow = WordPoly.constant(alg.one)
    for _ in range(k - 1):
        word_pow = word_pow * power
    h = WordPoly.variable(alg, "h")
    ode_part = Fraction(1, 2 * math.factorial(k - 1)) * (word_pow * h + h * word_pow)
    return series_part - ode_part


def euler_check(
    f: MapEvaluator,
    k: int,
    samples: int = 20,
    seed: int = 0,
    cfg: DiffConfig = DEFAULT_CONFIG,
) -> float:
    """Max relative residual of df(v)(v) = k f(v) over random sample points."""
    rng = random.Random(seed)
    alg = f.domain[0]
    worst = 0.0
    for _ in range(samples):
        v = alg.element([rng.uniform(0.5, 2.0) * rng.choice([-1, 1]) for _ in range(alg.dim)])
        fv = f((v,))[0]
        residual = norm_float(gateaux(f, v, v, cfg) - k * fv)
        worst = max(worst, residual / max(norm_float(fv), 1e-9))
    return worst

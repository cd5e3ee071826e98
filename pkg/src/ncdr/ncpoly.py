"""Exact symbolic calculus for noncommutative polynomials in one variable.

A polynomial is a sum of monomials a_0 x a_1 x ... x a_k with constant
two-sided factors.  Derivatives of every order come from polarization: the
order-m derivative replaces m of the x-slots by fresh symbols h_1..h_m in all
ordered ways, which keeps the structural identities (vanishing above the
degree, n! on the diagonal, permutation symmetry) exact by construction.

Formal words mixing constants and variables live in WordPoly.  Their formal
canonical form (fused constants, folded central scalars, sorted terms) is a
fast pre-check only; equality of word polynomials is extensional, decided by
evaluating on every basis binding of the symbol alphabet.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .algebra import AlgebraSpec, Element, mul
from .errors import AlgebraMismatch, DegreeTooLarge, UnboundSymbol


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: Element


Factor = Union[Var, Const]
Word = tuple[Factor, ...]
Term = tuple[Fraction, Word]


def _is_central_scalar(e: Element) -> bool:
    return isinstance(e.coords[0], (int, Fraction)) and not any(e.coords[1:])


def _factor_key(f: Factor):
    if isinstance(f, Var):
        return (0, f.name)
    return (1, tuple(f.value.coords))


def _canonical(alg: AlgebraSpec, raw: Iterable[Term]) -> tuple[Term, ...]:
    collected: dict[Word, Fraction] = {}
    for coeff, word in raw:
        if not coeff:
            continue
        out: list[Factor] = []
        scale = Fraction(coeff)
        dead = False
        for f in word:
            if isinstance(f, Const):
                v = f.value
                if _is_central_scalar(v):
                    scale *= Fraction(v.coords[0])
                    if not scale:
                        dead = True
                        break
                    continue
                if v.is_zero():
                    dead = True
                    break
                if out and isinstance(out[-1], Const):
                    fused = mul(out[-1].value, v)
                    out.pop()
                    if _is_central_scalar(fused):
                        scale *= Fraction(fused.coords[0])
                        if not scale:
                            dead = True
                            break
                        continue
                    if fused.is_zero():
                        dead = True
                        break
                    out.append(Const(fused))
                    continue
                out.append(Const(v))
            else:
                out.append(f)
        if dead or not scale:
            continue
        key = tuple(out) if out else (Const(alg.one),)
        collected[key] = collected.get(key, Fraction(0)) + scale
    terms = [(c, w) for w, c in collected.items() if c]
    terms.sort(key=lambda t: tuple(_factor_key(f) for f in t[1]))
    return tuple(terms)


@dataclass(frozen=True)
class WordPoly:
    """Formal sum of scalar-weighted words of constants and variables."""

    alg: AlgebraSpec
    terms: tuple[Term, ...]

    @classmethod
    def build(cls, alg: AlgebraSpec, raw: Iterable[Term]) -> "WordPoly":
        return cls(alg, _canonical(alg, raw))

    @classmethod
    def zero(cls, alg: AlgebraSpec) -> "WordPoly":
        return cls(alg, ())

    @classmethod
    def constant(cls, value: Element) -> "WordPoly":
        return cls.build(value.alg, [(Fraction(1), (Const(value),))])

    @classmethod
    def variable(cls, alg: AlgebraSpec, name: str) -> "WordPoly":
        return cls.build(alg, [(Fraction(1), (Var(name),))])

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        return {f.name for _, w in self.terms for f in w if isinstance(f, Var)}

    def var_degree(self) -> int:
        return max(
            (sum(isinstance(f, Var) for f in w) for _, w in self.terms), default=0
        )

    def __add__(self, other: "WordPoly") -> "WordPoly":
        return WordPoly.build(self.alg, self.terms + other.terms)

    def __sub__(self, other: "WordPoly") -> "WordPoly":
        return self + (-other)

    def __neg__(self) -> "WordPoly":
        return WordPoly(self.alg, tuple((-c, w) for c, w in self.terms))

    def __mul__(self, other: object) -> "WordPoly":
        if isinstance(other, WordPoly):
            raw = [
                (c1 * c2, w1 + w2)
                for c1, w1 in self.terms
                for c2, w2 in other.terms
            ]
            return WordPoly.build(self.alg, raw)
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return WordPoly(self.alg, _canonical(self.alg, ((q * c, w) for c, w in self.terms)))
        return NotImplemented

    def __rmul__(self, other: object) -> "WordPoly":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def rename(self, mapping: Mapping[str, str]) -> "WordPoly":
        raw = [
            (
                c,
                tuple(
                    Var(mapping.get(f.name, f.name)) if isinstance(f, Var) else f
                    for f in w
                ),
            )
            for c, w in self.terms
        ]
        return WordPoly.build(self.alg, raw)

    def substitute(self, name: str, replacement: "WordPoly") -> "WordPoly":
        """Replace every occurrence of the variable and expand products."""
        raw: list[Term] = []
        for coeff, word in self.terms:
            slots = [
                pos
                for pos, f in enumerate(word)
                if isinstance(f, Var) and f.name == name
            ]
            if not slots:
                raw.append((coeff, word))
                continue
            for choice in itertools.product(replacement.terms, repeat=len(slots)):
                c = coeff
                spliced: list[Factor] = []
                prev = 0
                for pos, (rc, rw) in zip(slots, choice):
                    spliced.extend(word[prev:pos])
                    spliced.extend(rw)
                    c = c * rc
                    prev = pos + 1
                spliced.extend(word[prev:])
                raw.append((c, tuple(spliced)))
        return WordPoly.build(self.alg, raw)

    def substitute_element(self, name: str, value: Element) -> "WordPoly":
        return self.substitute(name, WordPoly.constant(value))

    def derivative(self, name: str, new_symbol: str) -> "WordPoly":
        """Directional derivative in the variable: one slot replaced per term."""
        raw: list[Term] = []
        for coeff, word in self.terms:
            for pos, f in enumerate(word):
                if isinstance(f, Var) and f.name == name:
                    raw.append(
                        (coeff, word[:pos] + (Var(new_symbol),) + word[pos + 1 :])
                    )
        return WordPoly.build(self.alg, raw)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for c, w in self.terms:
            factors = [
                f.name if isinstance(f, Var) else f"({f.value})" for f in w
            ]
            prefix = "" if c == 1 else f"{c}*"
            chunks.append(prefix + "*".join(factors))
        return " + ".join(chunks)


def word_eval(w: WordPoly, bindings: Mapping[str, Element]) -> Element:
    """Exact substitution and left-to-right product."""
    acc = w.alg.zero
    for coeff, word in w.terms:
        value = w.alg.one
        for f in word:
            if isinstance(f, Var):
                if f.name not in bindings:
                    raise UnboundSymbol(f"no binding for {f.name}")
                value = mul(value, bindings[f.name])
            else:
                value = mul(value, f.value)
        acc = acc + coeff * value
    return acc


def extensional_equal(w1: WordPoly, w2: WordPoly) -> bool:
    """Equality as maps, decided on all basis bindings of the alphabet.

    A formal canonical-form match short-circuits the enumeration, which is
    what keeps high-degree single-symbol comparisons cheap.
    """
    if w1.alg != w2.alg:
        raise AlgebraMismatch("word polynomials over different algebras")
    diff = w1 - w2
    if diff.is_zero():
        return True
    symbols = sorted(diff.variables())
    if len(symbols) > 4:
        raise DegreeTooLarge(
            f"basis enumeration over {len(symbols)} symbols is not supported"
        )
    alg = w1.alg
    for combo in itertools.product(range(alg.dim), repeat=len(symbols)):
        bindings = {s: alg.basis(i) for s, i in zip(symbols, combo)}
        if not word_eval(diff, bindings).is_zero():
            return False
    return True


@dataclass(frozen=True)
class Monomial:
    """a_0 x a_1 x ... x a_k held as its constant factors (a_0, ..., a_k)."""

    coefficients: tuple[Element, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("a monomial needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def alg(self) -> AlgebraSpec:
        return self.coefficients[0].alg


@dataclass(frozen=True)
class NCPoly:
    """Formal sum of monomials; the empty sum is the zero polynomial."""

    alg: AlgebraSpec
    monomials: tuple[Monomial, ...]

    @classmethod
    def zero(cls, alg: AlgebraSpec) -> "NCPoly":
        return cls(alg, ())

    @classmethod
    def constant(cls, value: Element) -> "NCPoly":
        if value.is_zero():
            return cls.zero(value.alg)
        return cls(value.alg, (Monomial((value,)),))

    @classmethod
    def variable(cls, alg: AlgebraSpec) -> "NCPoly":
        return cls(alg, (Monomial((alg.one, alg.one)),))

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.monomials), default=-1)

    def __add__(self, other: "NCPoly") -> "NCPoly":
        return NCPoly(self.alg, self.monomials + other.monomials)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __neg__(self) -> "NCPoly":
        return NCPoly(
            self.alg,
            tuple(
                Monomial((-m.coefficients[0],) + m.coefficients[1:])
                for m in self.monomials
            ),
        )

    def __mul__(self, other: object) -> "NCPoly":
        if isinstance(other, NCPoly):
            out = []
            for a in self.monomials:
                for b in other.monomials:
                    joined = (
                        a.coefficients[:-1]
                        + (mul(a.coefficients[-1], b.coefficients[0]),)
                        + b.coefficients[1:]
                    )
                    out.append(Monomial(joined))
            return NCPoly(self.alg, tuple(out))
        if isinstance(other, (int, Fraction)):
            return NCPoly.constant(self.alg.scalar(other)) * self
        if isinstance(other, Element):
            return self * NCPoly.constant(other)
        return NotImplemented

    def __rmul__(self, other: object) -> "NCPoly":
        if isinstance(other, (int, Fraction)):
            return NCPoly.constant(self.alg.scalar(other)) * self
        if isinstance(other, Element):
            return NCPoly.constant(other) * self
        return NotImplemented

    def __pow__(self, k: int) -> "NCPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        acc = NCPoly.constant(self.alg.one)
        for _ in range(k):
            acc = acc * self
        return acc

    def to_words(self, name: str = "x") -> WordPoly:
        raw = []
        for m in self.monomials:
            word: list[Factor] = [Const(m.coefficients[0])]
            for c in m.coefficients[1:]:
                word.append(Var(name))
                word.append(Const(c))
            raw.append((Fraction(1), tuple(word)))
        return WordPoly.build(self.alg, raw)


def ncpoly_from_words(w: WordPoly, name: str = "x") -> NCPoly:
    """Rebuild a one-variable polynomial from its word form."""
    monos = []
    alg = w.alg
    for coeff, word in w.terms:
        coeffs: list[Element] = []
        current = alg.one
        for f in word:
            if isinstance(f, Var):
                if f.name != name:
                    raise ValueError(f"unexpected symbol {f.name}")
                coeffs.append(current)
                current = alg.one
            else:
                current = mul(current, f.value)
        coeffs.append(current)
        coeffs[0] = coeff * coeffs[0]
        monos.append(Monomial(tuple(coeffs)))
    return NCPoly(alg, tuple(monos))


def eval_poly(p: NCPoly, x: Element) -> Element:
    """Exact evaluation, left-to-right per monomial."""
    if x.alg != p.alg:
        raise AlgebraMismatch("point belongs to a different algebra")
    acc = p.alg.zero
    for m in p.monomials:
        value = m.coefficients[0]
        for c in m.coefficients[1:]:
            value = mul(mul(value, x), c)
        acc = acc + value
    return acc


def sym_derivative(p: NCPoly, order: int, var: str = "x") -> WordPoly:
    """Order-m derivative as a word polynomial in h1..hm.

    Each step replaces one remaining x-slot by the next fresh symbol in every
    position, so a degree-n monomial contributes n(n-1)...(n-m+1) words and
    the result is symmetric under permuting the h's by construction.
    """
    if order < 1:
        raise ValueError("derivative order must be at least 1")
    w = p.to_words(var)
    for q in range(1, order + 1):
        w = w.derivative(var, f"h{q}")
    return w


def diagonal(w: WordPoly, order: int, symbol: str = "h") -> WordPoly:
    """Bind h1..h_order to one symbol."""
    return w.rename({f"h{q}": symbol for q in range(1, order + 1)})


@dataclass(frozen=True)
class TaylorExpansion:
    """p re-expanded about a base point: terms[k] is the degree-k part in h."""

    base_point: Element
    terms: tuple[NCPoly, ...]

    def reconstruct(self) -> NCPoly:
        """Substitute h = x - base_point and expand back to a polynomial in x."""
        alg = self.base_point.alg
        shift = WordPoly.variable(alg, "x") - WordPoly.constant(self.base_point)
        total = WordPoly.zero(alg)
        for t in self.terms:
            total = total + t.to_words("h").substitute("h", shift)
        return ncpoly_from_words(total, "x")


def taylor_poly(p: NCPoly, y0: Element) -> TaylorExpansion:
    """Taylor coefficients (k!)^{-1} d^k p(y0) on the diagonal direction.

    The expansion terminates at deg p: the next derivative of a degree-n
    monomial vanishes identically.
    """
    alg = p.alg
    terms = [NCPoly.constant(eval_poly(p, y0))]
    for k in range(1, max(p.degree, 0) + 1):
        dk = sym_derivative(p, k)
        dk_at = diagonal(dk, k).substitute_element("x", y0)
        coeff = Fraction(1, math.factorial(k))
        terms.append(ncpoly_from_words(coeff * dk_at, "h"))
    return TaylorExpansion(base_point=y0, terms=tuple(terms))

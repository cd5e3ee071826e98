"""The two faces of a linear map of a division algebra.

A map f(x) = sum f^{ij} e_i x e_j is given by its standard components f^{ij};
the same map acts on coordinates through the matrix f^j_i.  The n^2 x n^2
structure contraction ("big C") converts one into the other; its rank decides
whether a coordinate matrix is representable at all and whether the standard
components are unique.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Literal, Sequence

from . import exactla
from .algebra import AlgebraSpec, Element, ScalarLike, as_scalar, mul
from .errors import (
    AlgebraMismatch,
    DegreeTooLarge,
    NotRepresentable,
    Singular,
)

Grid = tuple[tuple[Fraction, ...], ...]


def _grid(rows: Sequence[Sequence[ScalarLike]]) -> Grid:
    return tuple(tuple(as_scalar(v) for v in row) for row in rows)


@dataclass(frozen=True)
class StdComponents:
    """Standard components f^{ij} of the map x -> sum f^{ij} e_i x e_j."""

    alg: AlgebraSpec
    comps: Grid

    def __post_init__(self) -> None:
        n = self.alg.dim
        if len(self.comps) != n or any(len(r) != n for r in self.comps):
            raise ValueError("standard components must form an n x n grid")

    @classmethod
    def from_rows(cls, alg: AlgebraSpec, rows) -> "StdComponents":
        return cls(alg, _grid(rows))

    @classmethod
    def identity(cls, alg: AlgebraSpec) -> "StdComponents":
        n = alg.dim
        return cls.from_rows(
            alg, [[1 if i == j == 0 else 0 for j in range(n)] for i in range(n)]
        )

    def to_json(self) -> str:
        return json.dumps([[str(v) for v in row] for row in self.comps])

    @classmethod
    def from_json(cls, alg: AlgebraSpec, text: str) -> "StdComponents":
        return cls.from_rows(alg, json.loads(text))


@dataclass(frozen=True)
class CoordMatrix:
    """Coordinate matrix of a linear map: f(a)^j = sum_i mat[j][i] a^i."""

    alg: AlgebraSpec
    mat: Grid

    def __post_init__(self) -> None:
        n = self.alg.dim
        if len(self.mat) != n or any(len(r) != n for r in self.mat):
            raise ValueError("coordinate matrix must be n x n")

    @classmethod
    def from_rows(cls, alg: AlgebraSpec, rows) -> "CoordMatrix":
        return cls(alg, _grid(rows))

    @classmethod
    def identity(cls, alg: AlgebraSpec) -> "CoordMatrix":
        n = alg.dim
        return cls.from_rows(alg, [[int(i == j) for j in range(n)] for i in range(n)])

    def apply(self, a: Element) -> Element:
        if a.alg != self.alg:
            raise AlgebraMismatch("element belongs to a different algebra")
        n = self.alg.dim
        return Element(
            self.alg,
            tuple(
                sum((self.mat[j][i] * a.coords[i] for i in range(n)), Fraction(0))
                for j in range(n)
            ),
        )

    def __matmul__(self, other: "CoordMatrix") -> "CoordMatrix":
        if self.alg != other.alg:
            raise AlgebraMismatch("coordinate matrices over different algebras")
        prod = exactla.mat_mul([list(r) for r in self.mat], [list(r) for r in other.mat])
        return CoordMatrix(self.alg, tuple(tuple(row) for row in prod))

    def to_json(self) -> str:
        return json.dumps([[str(v) for v in row] for row in self.mat])

    @classmethod
    def from_json(cls, alg: AlgebraSpec, text: str) -> "CoordMatrix":
        return cls.from_rows(alg, json.loads(text))


@dataclass(frozen=True)
class ComponentSum:
    """f(x) = sum_s u_s x v_s; the empty list is the zero map."""

    alg: AlgebraSpec
    terms: tuple[tuple[Element, Element], ...]

    def __call__(self, x: Element) -> Element:
        acc = self.alg.zero
        for u, v in self.terms:
            acc = acc + mul(mul(u, x), v)
        return acc


@dataclass(frozen=True)
class BigC:
    """The n^2 x n^2 contraction sum_p C[k][i][p] C[p][r][j].

    Row index (j, i) flattens to j*n + i; column index (k, r) to k*n + r, so
    vec(coordinate matrix) = mat @ vec(standard components).  When singular,
    zero_map_kernel holds standard-component grids spanning the zero map.
    """

    alg: AlgebraSpec
    mat: Grid
    rank: int
    det: Fraction
    zero_map_kernel: tuple[Grid, ...]
    inv: Grid | None

    def report(self) -> dict:
        return {
            "dim": self.alg.dim,
            "size": len(self.mat),
            "rank": self.rank,
            "det": str(self.det),
            "invertible": self.inv is not None,
            "zero_map_kernel_dim": len(self.zero_map_kernel),
        }


@lru_cache(maxsize=None)
def big_c(alg: AlgebraSpec) -> BigC:
    n = alg.dim
    C = alg.structure
    size = n * n
    mat = [[Fraction(0)] * size for _ in range(size)]
    for j in range(n):
        for i in range(n):
            for k in range(n):
                for r in range(n):
                    mat[j * n + i][k * n + r] = sum(
                        (C[k][i][p] * C[p][r][j] for p in range(n)), Fraction(0)
                    )
    rank = exactla.rank(mat)
    determinant = exactla.det(mat)
    if rank == size:
        inv = tuple(tuple(row) for row in exactla.inverse(mat))
        kernel: tuple[Grid, ...] = ()
    else:
        inv = None
        kernel = tuple(
            tuple(tuple(v[k * n + r] for r in range(n)) for k in range(n))
            for v in exactla.nullspace(mat)
        )
    return BigC(
        alg=alg,
        mat=tuple(tuple(row) for row in mat),
        rank=rank,
        det=determinant,
        zero_map_kernel=kernel,
        inv=inv,
    )


def std_to_coord(f: StdComponents) -> CoordMatrix:
    """f^j_i = sum f^{kr} C[k][i][p] C[p][r][j], the exact contraction."""
    alg = f.alg
    n = alg.dim
    B = big_c(alg).mat
    out = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        for i in range(n):
            acc = Fraction(0)
            row = B[j * n + i]
            for k in range(n):
                for r in range(n):
                    c = row[k * n + r]
                    if c:
                        acc += c * f.comps[k][r]
            out[j][i] = acc
    return CoordMatrix(alg, tuple(tuple(r) for r in out))


@dataclass(frozen=True)
class StdSolution:
    """Standard components recovered from a coordinate matrix.

    unique is False when the contraction is rank deficient and the returned
    grid is the minimum-norm representative of the solution set.
    """

    components: StdComponents
    unique: bool


def coord_to_std(m: CoordMatrix) -> StdSolution:
    """Invert the contraction; NotRepresentable when the system is inconsistent."""
    alg = m.alg
    n = alg.dim
    B = big_c(alg)
    rhs = [m.mat[j][i] for j in range(n) for i in range(n)]
    if B.inv is not None:
        x = exactla.mat_vec([list(r) for r in B.inv], rhs)
        unique = True
    else:
        x = exactla.min_norm_solution([list(r) for r in B.mat], rhs)
        if x is None:
            raise NotRepresentable(
                "coordinate matrix lies outside the representable subspace"
            )
        unique = False
    comps = tuple(tuple(x[k * n + r] for r in range(n)) for k in range(n))
    return StdSolution(StdComponents(alg, comps), unique)


def component_sum_to_std(cs: ComponentSum) -> StdComponents:
    """f^{ij} = sum_s u_s^i v_s^j, the superposed outer products."""
    n = cs.alg.dim
    out = [[Fraction(0)] * n for _ in range(n)]
    for u, v in cs.terms:
        for i in range(n):
            if u.coords[i]:
                for j in range(n):
                    out[i][j] += u.coords[i] * v.coords[j]
    return StdComponents(cs.alg, tuple(tuple(r) for r in out))


def eval_std(f: StdComponents, x: Element) -> Element:
    """Evaluate sum f^{ij} e_i x e_j exactly."""
    if x.alg != f.alg:
        raise AlgebraMismatch("element belongs to a different algebra")
    alg = f.alg
    acc = alg.zero
    for i in range(alg.dim):
        for j in range(alg.dim):
            c = f.comps[i][j]
            if c:
                acc = acc + c * mul(mul(alg.basis(i), x), alg.basis(j))
    return acc


def compose_std(g: StdComponents, f: StdComponents) -> StdComponents:
    """Components of g after f: h^{pr} = g^{ij} f^{kl} C[i][k][p] C[l][j][r]."""
    if g.alg != f.alg:
        raise AlgebraMismatch("maps over different algebras")
    alg = g.alg
    n = alg.dim
    out = [[Fraction(0)] * n for _ in range(n)]
    triples = alg._nonzero_triples
    for i, k, p, c1 in triples:
        for l, j, r, c2 in triples:
            v = g.comps[i][j] * f.comps[k][l]
            if v:
                out[p][r] += v * c1 * c2
    return StdComponents(alg, tuple(tuple(r) for r in out))


@dataclass(frozen=True)
class KernelInfo:
    rank: int
    is_singular: bool
    kernel_vector: Element | None


def kernel_rank(m: CoordMatrix) -> KernelInfo:
    """Rank of the coordinate matrix; a kernel witness when singular."""
    rows = [list(r) for r in m.mat]
    r = exactla.rank(rows)
    singular = r < m.alg.dim
    witness = None
    if singular:
        basis = exactla.nullspace(rows)
        witness = m.alg.element(basis[0])
    return KernelInfo(rank=r, is_singular=singular, kernel_vector=witness)


def change_basis(m: CoordMatrix, A: Sequence[Sequence[ScalarLike]] | CoordMatrix) -> CoordMatrix:
    """Coordinate matrix in the basis e'_i = e_j A^j_i: f' = A^{-1} f A."""
    rows = [list(r) for r in (A.mat if isinstance(A, CoordMatrix) else _grid(A))]
    try:
        Ainv = exactla.inverse(rows)
    except Singular:
        raise Singular("basis transformation must be invertible") from None
    prod = exactla.mat_mul(exactla.mat_mul(Ainv, [list(r) for r in m.mat]), rows)
    return CoordMatrix(m.alg, tuple(tuple(row) for row in prod))


@dataclass(frozen=True, eq=False)
class PolyCoords:
    """Coordinates f(e_{i1}, ..., e_{im}) of a polylinear form of degree m."""

    alg: AlgebraSpec
    degree: int
    coords: dict[tuple[int, ...], Element]

    def evaluate(self, args: Sequence[Element]) -> Element:
        """Reconstruct f(a_1..a_m) = sum a_1^{i1}...a_m^{im} f_{i1..im}."""
        if len(args) != self.degree:
            raise ValueError(f"expected {self.degree} arguments")
        acc = self.alg.zero
        n = self.alg.dim
        for idx in itertools.product(range(n), repeat=self.degree):
            w = Fraction(1)
            for q, i in enumerate(idx):
                w = w * args[q].coords[i]
                if not w:
                    break
            if w:
                acc = acc + w * self.coords[idx]
        return acc


def polyform_coords(
    f: Callable[..., Element], alg: AlgebraSpec, degree: int
) -> PolyCoords:
    """Tabulate a polylinear map on every basis tuple."""
    n = alg.dim
    coords = {
        idx: f(*(alg.basis(i) for i in idx))
        for idx in itertools.product(range(n), repeat=degree)
    }
    return PolyCoords(alg=alg, degree=degree, coords=coords)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


Symmetry = Literal["symmetric", "skew", "neither"]


def check_symmetry(p: PolyCoords) -> Symmetry:
    """Classify by brute force over all index permutations (degree <= 4)."""
    if p.degree > 4:
        raise DegreeTooLarge("symmetry check supports degree <= 4")
    n = p.alg.dim
    symmetric = True
    skew = True
    for perm in itertools.permutations(range(p.degree)):
        sign = _perm_sign(perm)
        for idx in itertools.product(range(n), repeat=p.degree):
            permuted = tuple(idx[q] for q in perm)
            value = p.coords[idx]
            other = p.coords[permuted]
            if symmetric and value != other:
                symmetric = False
            if skew and value != sign * other:
                skew = False
            if not symmetric and not skew:
                return "neither"
    return "symmetric" if symmetric else "skew"

"""Lie algebras given by structure constants, with optional matrix realizations."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .linalg import (
    LinAlgError,
    Matrix,
    Subspace,
    _dot,
    inverse,
    is_squarefree,
    kernel,
    min_poly,
    rank,
    rref,
)
from .scalar import ONE, ZERO, Scalar, as_scalar


class AlgebraMismatch(ValueError):
    pass


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q(i).

    ``structure[i][j]`` is the coordinate vector of ``[b_i, b_j]``.  When
    ``realization`` is given it is the sequence of basis matrices.
    """

    def __init__(self, name: str, structure: Sequence[Sequence[Sequence]], realization: Sequence[Matrix] | None = None):
        self.name = name
        self.dim = len(structure)
        self.structure = tuple(tuple(tuple(as_scalar(c) for c in v) for v in row) for row in structure)
        self.realization = tuple(realization) if realization is not None else None
        # sparse form: for each (i, j) the nonzero (k, c)
        self._sparse = tuple(
            tuple(tuple((k, c) for k, c in enumerate(v) if c) for v in row) for row in self.structure
        )
        self._coord_solver = None

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    # construction ---------------------------------------------------------
    @classmethod
    def from_matrices(cls, name: str, basis: Sequence[Matrix]) -> "LieAlgebra":
        """Structure constants of the span of ``basis`` under the commutator."""
        basis = [b if isinstance(b, Matrix) else Matrix(b) for b in basis]
        solver = _CoordinateSolver(basis)
        structure = []
        for a in basis:
            row = []
            for b in basis:
                row.append(solver.coords(a.commutator(b)))
            structure.append(row)
        alg = cls(name, structure, basis)
        alg._coord_solver = solver
        return alg

    @property
    def matrix_size(self) -> int | None:
        return self.realization[0].rows if self.realization else None

    # elements -------------------------------------------------------------
    def element(self, coords: Sequence) -> "Element":
        coords = tuple(as_scalar(c) for c in coords)
        if len(coords) != self.dim:
            raise LinAlgError(f"{len(coords)} coordinates for an algebra of dimension {self.dim}")
        return Element(self, coords)

    def basis_element(self, i: int) -> "Element":
        return Element(self, tuple(ONE if j == i else ZERO for j in range(self.dim)))

    def basis(self) -> list["Element"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def zero(self) -> "Element":
        return Element(self, (ZERO,) * self.dim)

    def from_matrix(self, m) -> "Element":
        if self.realization is None:
            raise LinAlgError(f"{self.name} has no matrix realization")
        if self._coord_solver is None:
            self._coord_solver = _CoordinateSolver(self.realization)
        m = m if isinstance(m, Matrix) else Matrix(m)
        return Element(self, self._coord_solver.coords(m))

    def to_matrix(self, x: "Element") -> Matrix:
        if self.realization is None:
            raise LinAlgError(f"{self.name} has no matrix realization")
        n = self.matrix_size
        out = Matrix.zeros(n, n)
        for c, b in zip(x.coords, self.realization):
            if c:
                out = out + b.scale(c)
        return out

    def full_space(self) -> Subspace:
        return Subspace.full(self.dim)

    def span(self, elements: Iterable["Element"]) -> Subspace:
        return Subspace.span([self._own(x).coords for x in elements], self.dim)

    def elements_of(self, space: Subspace) -> list["Element"]:
        return [Element(self, v) for v in space]

    def _own(self, x: "Element") -> "Element":
        if x.algebra is not self:
            raise AlgebraMismatch(f"element of {x.algebra.name} used in {self.name}")
        return x

    # cached data ----------------------------------------------------------
    @cached_property
    def ad_basis(self) -> tuple[Matrix, ...]:
        return tuple(ad_matrix(self.basis_element(i)) for i in range(self.dim))

    @cached_property
    def killing_gram(self) -> Matrix:
        ads = self.ad_basis
        rows = []
        for i in range(self.dim):
            rows.append(tuple(_trace_product(ads[i], ads[j]) for j in range(self.dim)))
        return Matrix(rows, self.dim)


class _CoordinateSolver:
    """Expresses matrices in a fixed linearly independent basis of matrices."""

    def __init__(self, basis: Sequence[Matrix]):
        self.basis = list(basis)
        flat = Matrix([b.entries for b in self.basis])
        reduced, r = rref(flat)
        if r != len(self.basis):
            raise LinAlgError("basis matrices are linearly dependent")
        # pick independent positions, invert the square block
        pivots = [next(j for j, x in enumerate(reduced.row(i)) if x) for i in range(r)]
        self.positions = pivots
        block = flat.submatrix(range(r), pivots)  # rows: basis, cols: positions
        self.inv = inverse(block)

    def coords(self, m: Matrix) -> tuple:
        entries = m.entries
        picked = tuple(entries[p] for p in self.positions)
        coords = tuple(_dot(picked, col) for col in self.inv.column_tuples())
        # re-expansion must be exact, otherwise m is outside the span
        recon = [ZERO] * len(entries)
        for c, b in zip(coords, self.basis):
            if c:
                for k, x in enumerate(b.entries):
                    if x:
                        recon[k] = recon[k] + c * x
        if tuple(recon) != entries:
            raise LinAlgError("matrix is not in the span of the basis")
        return coords


def _trace_product(a: Matrix, b: Matrix) -> Scalar:
    total = ZERO
    bt = b.column_tuples()
    for i, row in enumerate(a):
        # (ab)_{ii} = row_i(a) . col_i(b)
        total = total + _dot(row, bt[i])
    return total


class Element:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: LieAlgebra, coords: tuple):
        self.algebra = algebra
        self.coords = coords

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError("expected an Element")
        if other.algebra is not self.algebra:
            raise AlgebraMismatch(f"{self.algebra.name} vs {other.algebra.name}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Element":
        return Element(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, c) -> "Element":
        if isinstance(c, Element):
            return NotImplemented
        c = as_scalar(c)
        return Element(self.algebra, tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Element":
        return self * as_scalar(c).inverse()

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.algebra), self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coords)

    def conjugate(self) -> "Element":
        return Element(self.algebra, tuple(c.conjugate() for c in self.coords))

    @property
    def matrix(self) -> Matrix:
        return self.algebra.to_matrix(self)

    def __repr__(self):
        return f"Element({self.algebra.name}: [{', '.join(str(c) for c in self.coords)}])"


def bracket(x: Element, y: Element) -> Element:
    x._check(y)
    alg = x.algebra
    out = [Fraction(0)] * alg.dim
    out_im = [Fraction(0)] * alg.dim
    sparse = alg._sparse
    for i, a in enumerate(x.coords):
        if not a:
            continue
        row = sparse[i]
        for j, b in enumerate(y.coords):
            if not b:
                continue
            ab = a * b
            for k, c in row[j]:
                p = ab * c
                out[k] += p.re
                out_im[k] += p.im
    return Element(alg, tuple(Scalar._raw(r, m) for r, m in zip(out, out_im)))


def ad_matrix(x: Element) -> Matrix:
    """Matrix of y -> [x, y]; column j is [x, b_j]."""
    alg = x.algebra
    n = alg.dim
    table = [[ZERO] * n for _ in range(n)]
    sparse = alg._sparse
    for i, a in enumerate(x.coords):
        if not a:
            continue
        for j in range(n):
            for k, c in sparse[i][j]:
                table[k][j] = table[k][j] + a * c
    return Matrix._wrap(tuple(tuple(r) for r in table), n)


def killing(x: Element, y: Element) -> Scalar:
    x._check(y)
    gram = x.algebra.killing_gram
    return _dot(x.coords, gram @ y.coords)


def killing_gram_on(space: Subspace, algebra: LieAlgebra) -> Matrix:
    """Gram matrix of the Killing form on the echelon basis of ``space``."""
    g = algebra.killing_gram
    vecs = space.vectors()
    images = [g @ v for v in vecs]
    return Matrix([[_dot(u, w) for w in images] for u in vecs], len(vecs))


def centralizer(inside: Subspace, of: Sequence[Element]) -> Subspace:
    """{v in inside : [v, y] = 0 for every y in ``of``}."""
    of = [y for y in of if not y.is_zero()]
    if not of or inside.is_zero():
        return inside
    alg = of[0].algebra
    if inside.ambient_dim != alg.dim:
        raise AlgebraMismatch("centralizer: ambient dimension does not match the algebra")
    basis = alg.elements_of(inside)
    # column j of the stacked system holds [u_j, y] for every y
    columns = []
    for u in basis:
        col = []
        for y in of:
            col.extend(bracket(u, y).coords)
        columns.append(col)
    system = Matrix.from_columns(columns)
    coeffs = kernel(system)
    return Subspace.span([inside.combination(c) for c in coeffs], alg.dim)


def adjoint_min_poly(x: Element) -> tuple:
    return min_poly(ad_matrix(x))


def is_nilpotent_element(x: Element) -> bool:
    mp = adjoint_min_poly(x)
    verdict = all(not c for c in mp[:-1])
    alg = x.algebra
    if alg.realization is not None:
        m = alg.to_matrix(x)
        power = m
        for _ in range(m.rows):
            power = power @ m
        if power.is_zero() != verdict:
            raise ArithmeticError(f"nilpotency disagrees between ad and realization for {x}")
    return verdict


def is_semisimple_element(x: Element) -> bool:
    return is_squarefree(adjoint_min_poly(x))


def brackets_of(u: Subspace, v: Subspace, algebra: LieAlgebra) -> Subspace:
    """span{[a, b] : a in u, b in v}."""
    us = algebra.elements_of(u)
    vs = algebra.elements_of(v)
    return algebra.span(bracket(a, b) for a in us for b in vs)


def derived_subspace(u: Subspace, algebra: LieAlgebra) -> Subspace:
    return brackets_of(u, u, algebra)


def image_of(subspace: Subspace, m: Matrix) -> Subspace:
    return Subspace.span([m @ v for v in subspace], m.rows)


def verify_structure(alg: LieAlgebra) -> list[str]:
    """Antisymmetry, Jacobi, realization consistency, Killing nondegeneracy."""
    problems = []
    n = alg.dim
    st = alg.structure
    for i in range(n):
        if any(st[i][i]):
            problems.append(f"antisymmetry: [b{i}, b{i}] != 0")
        for j in range(i + 1, n):
            if tuple(-c for c in st[j][i]) != st[i][j]:
                problems.append(f"antisymmetry: c[{i}][{j}] != -c[{j}][{i}]")
    basis = alg.basis()
    for i in range(n):
        for j in range(i + 1, n):
            bij = bracket(basis[i], basis[j])
            for k in range(j + 1, n):
                total = (
                    bracket(bij, basis[k])
                    + bracket(bracket(basis[j], basis[k]), basis[i])
                    + bracket(bracket(basis[k], basis[i]), basis[j])
                )
                if not total.is_zero():
                    problems.append(f"jacobi violated at ({i},{j},{k})")
    if alg.realization is not None:
        for i in range(n):
            for j in range(n):
                comm = alg.realization[i].commutator(alg.realization[j])
                if alg.to_matrix(Element(alg, st[i][j])) != comm:
                    problems.append(f"realization: [B{i}, B{j}] does not re-expand to c[{i}][{j}]")
    r = rank(alg.killing_gram)
    if r != n:
        problems.append(f"killing form degenerate: rank {r} < {n}")
    return problems

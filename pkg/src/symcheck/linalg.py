"""Dense exact linear algebra over Q(i).

Matrices are immutable row-major tables of :class:`Scalar`.  Subspaces are
stored by their reduced row-echelon basis, which is unique, so equality of
subspaces is equality of basis tables.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

from . import _kernels
from .scalar import ONE, ZERO, Scalar, as_scalar

Vector = tuple  # tuple[Scalar, ...]


class LinAlgError(ValueError):
    """Shape mismatch or other misuse of the linear-algebra API."""


class NonIntegralSpectrum(ArithmeticError):
    """The minimal polynomial has roots outside the (Gaussian) integers."""

    def __init__(self, message: str, residual: tuple = ()):
        super().__init__(message)
        self.residual = residual


class Matrix:
    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        table = tuple(tuple(as_scalar(x) for x in row) for row in data)
        if cols is None:
            cols = len(table[0]) if table else 0
        for row in table:
            if len(row) != cols:
                raise LinAlgError("ragged matrix rows")
        self._data = table
        self.rows = len(table)
        self.cols = cols

    @classmethod
    def _wrap(cls, table: tuple, cols: int) -> "Matrix":
        m = object.__new__(cls)
        m._data = table
        m.rows = len(table)
        m.cols = cols
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._wrap(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._wrap(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        vals = [as_scalar(v) for v in values]
        n = len(vals)
        return cls._wrap(tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        return cls(list(zip(*columns)), len(columns))

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self._data for x in row)

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self._data)

    def tolist(self) -> list:
        return [list(r) for r in self._data]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.cols == other.cols and self._data == other._data

    def __hash__(self):
        return hash((self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(x for row in self._data for x in row)

    def is_real(self) -> bool:
        return all(x.is_real() for row in self._data for x in row)

    def T(self) -> "Matrix":
        if not self.rows:
            return Matrix.zeros(self.cols, 0)
        return Matrix._wrap(tuple(zip(*self._data)), self.rows)

    def conjugate(self) -> "Matrix":
        return Matrix._wrap(tuple(tuple(x.conjugate() for x in row) for row in self._data), self.cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise LinAlgError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)), self.cols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise LinAlgError(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix._wrap(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)), self.cols
        )

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(tuple(tuple(-a for a in r) for r in self._data), self.cols)

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        return Matrix._wrap(tuple(tuple(c * a for a in r) for r in self._data), self.cols)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise LinAlgError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.column_tuples()
            return Matrix._wrap(tuple(tuple(_dot(r, c) for c in cols) for r in self._data), other.cols)
        vec = tuple(other)
        if len(vec) != self.cols:
            raise LinAlgError(f"vector length {len(vec)} != {self.cols}")
        return tuple(_dot(r, vec) for r in self._data)

    def column_tuples(self) -> list:
        return list(zip(*self._data)) if self.rows else [() for _ in range(self.cols)]

    def trace(self) -> Scalar:
        if not self.is_square():
            raise LinAlgError("trace of non-square matrix")
        total = ZERO
        for i in range(self.rows):
            total = total + self._data[i][i]
        return total

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def stack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise LinAlgError("column mismatch in stack")
        return Matrix._wrap(self._data + other._data, self.cols)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise LinAlgError("row mismatch in hstack")
        return Matrix._wrap(tuple(a + b for a, b in zip(self._data, other._data)), self.cols + other.cols)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        cols = list(cols)
        return Matrix._wrap(tuple(tuple(self._data[i][j] for j in cols) for i in rows), len(cols))

    def flatten(self) -> tuple:
        return self.entries


def _dot(u, v) -> Scalar:
    re = Fraction(0)
    im = Fraction(0)
    for a, b in zip(u, v):
        if not b or not a:
            continue
        ar, ai, br, bi = a.re, a.im, b.re, b.im
        re += ar * br - ai * bi
        im += ar * bi + ai * br
    return Scalar._raw(re, im)


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    """Bilinear (not Hermitian) pairing."""
    return _dot(u, v)


def vec_add(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u) -> tuple:
    c = as_scalar(c)
    return tuple(c * a for a in u)


def is_zero_vector(u) -> bool:
    return not any(u)


# --------------------------------------------------------------------------
# row reduction


def _row_to_int(row) -> tuple[list, list]:
    den = 1
    for x in row:
        d = x.re.denominator
        if d != 1:
            den = den * d // gcd(den, d)
        d = x.im.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    re = [x.re.numerator * (den // x.re.denominator) for x in row]
    im = [x.im.numerator * (den // x.im.denominator) for x in row]
    return re, im


def _rref_rows(table: Sequence[Sequence[Scalar]], ncols: int, kernel=None) -> tuple[list[int], list[tuple]]:
    """Pivot columns and nonzero reduced rows of ``table``."""
    if not table or not ncols:
        return [], []
    re_rows, im_rows = [], []
    for row in table:
        a, b = _row_to_int(row)
        re_rows.append(a)
        im_rows.append(b)
    pivots, raw = (kernel or _kernels.rref_int)(re_rows, im_rows, ncols)
    rows = []
    for na, nb, den in raw:
        if den == 1:
            rows.append(tuple(Scalar._raw(Fraction(a), Fraction(b)) for a, b in zip(na, nb)))
        else:
            rows.append(tuple(Scalar._raw(Fraction(a, den), Fraction(b, den)) for a, b in zip(na, nb)))
    return pivots, rows


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form (same shape, zero rows last) and rank."""
    pivots, rows = _rref_rows(m._data, m.cols)
    rank = len(rows)
    zero_row = (ZERO,) * m.cols
    table = tuple(rows) + (zero_row,) * (m.rows - rank)
    return Matrix._wrap(table, m.cols), rank


def rank(m: Matrix) -> int:
    return len(_rref_rows(m._data, m.cols)[1])


def _null_vectors(pivots: list[int], rows: list[tuple], ncols: int) -> list[tuple]:
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for r, c in enumerate(pivots):
            x = rows[r][f]
            if x:
                v[c] = -x
        basis.append(tuple(v))
    return basis


def kernel(m: Matrix) -> "Subspace":
    """{v : m v = 0} as a canonical subspace of the column space dimension."""
    pivots, rows = _rref_rows(m._data, m.cols)
    return Subspace.span(_null_vectors(pivots, rows, m.cols), m.cols)


def solve_linear(m: Matrix, b: Sequence) -> tuple[tuple, "Subspace"] | None:
    """One solution of ``m x = b`` (free variables zero) and the kernel, or None."""
    b = tuple(as_scalar(x) for x in b)
    if len(b) != m.rows:
        raise LinAlgError(f"right-hand side has length {len(b)}, expected {m.rows}")
    n = m.cols
    aug = [row + (bi,) for row, bi in zip(m._data, b)]
    pivots, rows = _rref_rows(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [ZERO] * n
    for r, c in enumerate(pivots):
        x[c] = rows[r][n]
    ker = Subspace.span(_null_vectors(pivots, [row[:n] for row in rows], n), n)
    return tuple(x), ker


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise LinAlgError("inverse of non-square matrix")
    n = m.rows
    eye = Matrix.identity(n)
    aug = [row + erow for row, erow in zip(m._data, eye._data)]
    pivots, rows = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise LinAlgError("matrix is singular")
    return Matrix._wrap(tuple(row[n:] for row in rows), n)


def determinant(m: Matrix) -> Scalar:
    if not m.is_square():
        raise LinAlgError("determinant of non-square matrix")
    a = [list(r) for r in m._data]
    n = m.rows
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det = det * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            q = a[i][c]
            if q:
                f = q * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


# --------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of Q(i)^n held by its reduced row-echelon basis."""

    __slots__ = ("ambient_dim", "basis", "_pivots", "_annihilator")

    def __init__(self, ambient_dim: int, basis_rows: tuple, pivots: tuple):
        self.ambient_dim = ambient_dim
        self.basis = Matrix._wrap(tuple(basis_rows), ambient_dim)
        self._pivots = pivots
        self._annihilator = None

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vecs = [tuple(as_scalar(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise LinAlgError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        vecs = [v for v in vecs if any(v)]
        pivots, rows = _rref_rows(vecs, ambient_dim)
        return cls(ambient_dim, tuple(rows), tuple(pivots))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n)._data, tuple(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __len__(self):
        return self.dim

    def vectors(self) -> list[tuple]:
        return list(self.basis._data)

    def __iter__(self):
        return iter(self.basis._data)

    def is_zero(self) -> bool:
        return self.dim == 0

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis._data == other.basis._data

    def __hash__(self):
        return hash((self.ambient_dim, self.basis._data))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise LinAlgError(f"ambient mismatch {self.ambient_dim} vs {other.ambient_dim}")

    def annihilator(self) -> Matrix:
        """Rows spanning {w : <v, w> = 0 for all v here} under the bilinear pairing."""
        if self._annihilator is None:
            n = self.ambient_dim
            self._annihilator = Matrix._wrap(
                tuple(_null_vectors(list(self._pivots), self.basis._data, n)), n
            )
        return self._annihilator

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.vectors() + other.vectors(), self.ambient_dim)

    def sum(self, other: "Subspace") -> "Subspace":
        return self + other

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        return kernel(self.annihilator().stack(other.annihilator()))

    __and__ = intersect

    def contains_vector(self, v: Sequence) -> bool:
        v = tuple(v)
        if len(v) != self.ambient_dim:
            raise LinAlgError("vector length does not match ambient dimension")
        ann = self.annihilator()
        return all(not _dot(row, v) for row in ann)

    __contains__ = contains_vector

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains_vector(v) for v in other)

    def equals(self, other: "Subspace") -> bool:
        return self == other

    def coordinates(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in this subspace's echelon basis."""
        v = tuple(v)
        if not self.contains_vector(v):
            raise LinAlgError("vector is not in the subspace")
        # echelon basis with unit pivots: the coordinate is the pivot entry
        return tuple(v[c] for c in self._pivots)

    def combination(self, coeffs: Sequence) -> tuple:
        out = [ZERO] * self.ambient_dim
        for c, row in zip(coeffs, self.basis._data):
            c = as_scalar(c)
            if c:
                for j, x in enumerate(row):
                    if x:
                        out[j] = out[j] + c * x
        return tuple(out)


def restrict_operator(m: Matrix, space: Subspace) -> Matrix:
    """Matrix of ``m`` restricted to an invariant subspace, in its echelon basis."""
    cols = []
    for v in space:
        image = m @ v
        cols.append(space.coordinates(image))
    return Matrix.from_columns(cols, space.dim) if cols else Matrix.zeros(0, 0)


# --------------------------------------------------------------------------
# polynomials (coefficient tuples, lowest degree first)


def poly_trim(p: Sequence[Scalar]) -> tuple:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def poly_degree(p) -> int:
    return len(poly_trim(p)) - 1


def poly_eval(p: Sequence[Scalar], x) -> Scalar:
    x = as_scalar(x)
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_eval_matrix(p: Sequence[Scalar], m: Matrix) -> Matrix:
    n = m.rows
    acc = Matrix.zeros(n, n)
    eye = Matrix.identity(n)
    for c in reversed(p):
        acc = acc @ m + eye.scale(c)
    return acc


def poly_derivative(p) -> tuple:
    return poly_trim(tuple(Scalar(k) * c for k, c in enumerate(p))[1:])


def poly_divmod(a, b) -> tuple[tuple, tuple]:
    a = list(poly_trim(a))
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    lead_inv = b[-1].inverse()
    q = [ZERO] * max(len(a) - db, 1)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        coef = a[-1] * lead_inv
        q[shift] = coef
        for k, bc in enumerate(b):
            a[shift + k] = a[shift + k] - coef * bc
        a = list(poly_trim(a))
    return poly_trim(q), tuple(a)


def poly_monic(p) -> tuple:
    p = poly_trim(p)
    inv = p[-1].inverse()
    return tuple(c * inv for c in p)


def poly_gcd(a, b) -> tuple:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return poly_monic(a) if a else ()


def poly_format(p, var: str = "t") -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            terms.append(f"({c})" if c.re and c.im else str(c))
        elif c == ONE:
            terms.append(mono)
        elif c == -ONE:
            terms.append("-" + mono)
        else:
            cs = f"({c})" if c.re and c.im else str(c)
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _matrix_to_int(m: Matrix) -> tuple[list, list, int]:
    """Integer tables (re, im) and a common denominator D with m = (re + i im) / D."""
    den = 1
    for row in m:
        for x in row:
            for d in (x.re.denominator, x.im.denominator):
                if d != 1:
                    den = den * d // gcd(den, d)
    re = [[x.re.numerator * (den // x.re.denominator) for x in row] for row in m]
    im = [[x.im.numerator * (den // x.im.denominator) for x in row] for row in m]
    return re, im, den


def min_poly(m: Matrix) -> tuple:
    """Monic minimal polynomial, lowest-degree coefficient first.

    With m = A / D over Z[i], one row reduction of ``[vec(A^k) | e_k]`` (unit
    columns ordered from the highest power down) exposes the relation
    module; its last echelon row is the relation of least degree.  A
    relation sum c_k A^k = 0 becomes sum (c_k D^k) m^k = 0.
    """
    if not m.is_square():
        raise LinAlgError("minimal polynomial of non-square matrix")
    n = m.rows
    if n == 0:
        return (ONE,)
    a_re, a_im, den = _matrix_to_int(m)
    p_re = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    p_im = [[0] * n for _ in range(n)]
    width = n * n
    re_rows, im_rows = [], []
    for k in range(n + 1):
        tag = [0] * (n + 1)
        tag[n - k] = 1
        re_rows.append([x for row in p_re for x in row] + tag)
        im_rows.append([x for row in p_im for x in row] + [0] * (n + 1))
        if k < n:
            p_re, p_im = _kernels.matmul_int(p_re, p_im, a_re, a_im)
    pivots, raw = _kernels.rref_int(re_rows, im_rows, width + n + 1)
    relations = [r for r, c in zip(raw, pivots) if c >= width]
    na, nb, rden = relations[-1]
    coeffs = tuple(
        Scalar._raw(Fraction(na[width + n - k] * den ** k, rden), Fraction(nb[width + n - k] * den ** k, rden))
        for k in range(n + 1)
    )
    return poly_monic(coeffs)


def is_squarefree(p) -> bool:
    g = poly_gcd(p, poly_derivative(p))
    return len(g) <= 1


# --------------------------------------------------------------------------
# eigenvalues


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _integer_root_candidates(p: tuple) -> list[Scalar]:
    p = poly_trim(p)
    cands = []
    if all(c.is_real() for c in p):
        den = 1
        for c in p:
            d = c.re.denominator
            den = den * d // gcd(den, d)
        ints = [int(c.re * den) for c in p]
        lowest = next(k for k, c in enumerate(ints) if c)
        if lowest:
            cands.append(Scalar(0))
        for d in _divisors(ints[lowest]):
            cands.extend((Scalar(d), Scalar(-d)))
        return cands
    # Gaussian-integer roots: scan the Cauchy disk
    lead = p[-1]
    bound_sq = max((c / lead).norm() for c in p[:-1])
    bound = 1 + isqrt(int(bound_sq) + 1) + 1
    if bound > 256:
        raise NonIntegralSpectrum("root bound too large for a Gaussian-integer scan", p)
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if a * a + b * b <= bound * bound:
                cands.append(Scalar(a, b))
    return cands


def integer_roots(p: tuple) -> tuple[list[tuple[Scalar, int]], tuple]:
    """(root, multiplicity) pairs over Z[i] and the residual cofactor."""
    residual = poly_trim(p)
    found = []
    for z in _integer_root_candidates(residual):
        mult = 0
        while len(residual) > 1 and not poly_eval(residual, z):
            residual, _ = poly_divmod(residual, (-z, ONE))
            mult += 1
        if mult:
            found.append((z, mult))
    found.sort(key=lambda t: (t[0].re, t[0].im))
    return found, residual


def integer_eigenvalues(m: Matrix, semisimple: bool = False) -> dict[Scalar, Subspace]:
    """Eigenspaces for the (Gaussian-)integer eigenvalues of ``m``.

    Raises :class:`NonIntegralSpectrum` when the minimal polynomial keeps a
    factor without integer roots, or when ``semisimple`` is requested and the
    eigenspaces do not fill the space.
    """
    if not m.is_square():
        raise LinAlgError("eigenvalues of non-square matrix")
    n = m.rows
    mp = min_poly(m)
    roots, residual = integer_roots(mp)
    if len(residual) > 1:
        raise NonIntegralSpectrum(f"non-integral spectrum: residual {poly_format(residual)}", residual)
    spaces = {}
    eye = Matrix.identity(n)
    for lam, _ in roots:
        spaces[lam] = kernel(m - eye.scale(lam))
    if semisimple and sum(s.dim for s in spaces.values()) != n:
        raise NonIntegralSpectrum(
            f"not diagonalizable: eigenspaces fill {sum(s.dim for s in spaces.values())} of {n}", mp
        )
    return spaces


def is_negative_definite(gram: Matrix) -> bool:
    """Leading principal minors alternate in sign, starting negative."""
    if not gram.is_square():
        raise LinAlgError("Gram matrix must be square")
    if not gram.is_real():
        raise LinAlgError("Gram matrix has non-real entries")
    if gram != gram.T():
        raise LinAlgError("Gram matrix is not symmetric")
    for k in range(1, gram.rows + 1):
        minor = determinant(gram.submatrix(range(k), range(k))).re
        if (minor < 0) != (k % 2 == 1) or not minor:
            return False
    return True


def is_positive_definite(gram: Matrix) -> bool:
    return is_negative_definite(-gram)

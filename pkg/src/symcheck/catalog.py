"""Concrete symmetric pairs and their stored nilpotent representatives."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .lie import Element, LieAlgebra, bracket, is_nilpotent_element, is_semisimple_element, verify_structure
from .linalg import LinAlgError, Matrix
from .scalar import I, Scalar


class CatalogError(ValueError):
    pass


class UnsupportedSize(CatalogError):
    pass


MAX_N = 4


def unit(n: int, i: int, j: int, value=1) -> Matrix:
    """n x n matrix with ``value`` at (i, j), 1-indexed."""
    rows = [[0] * n for _ in range(n)]
    rows[i - 1][j - 1] = value
    return Matrix(rows)


def build_sl(n: int) -> LieAlgebra:
    if not 2 <= n <= MAX_N:
        raise UnsupportedSize(f"sl_{n} outside the supported range 2..{MAX_N}")
    basis = [unit(n, i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    basis += [unit(n, k, k) - unit(n, k + 1, k + 1) for k in range(1, n)]
    return LieAlgebra.from_matrices(f"sl{n}", basis)


def build_so(n: int) -> LieAlgebra:
    if not 3 <= n <= MAX_N:
        raise UnsupportedSize(f"so_{n} outside the supported range 3..{MAX_N}")
    basis = [unit(n, i, j) - unit(n, j, i) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return LieAlgebra.from_matrices(f"so{n}", basis)


def build_sp(two_n: int) -> LieAlgebra:
    """sp for the form J = [[0, I], [-I, 0]]."""
    if two_n % 2 or not 2 <= two_n <= MAX_N:
        raise UnsupportedSize(f"sp_{two_n} outside the supported sizes 2, 4")
    n = two_n // 2
    m = two_n
    basis = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            basis.append(unit(m, i, j) - unit(m, n + j, n + i))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            basis.append(unit(m, i, n + j) + unit(m, j, n + i) if i != j else unit(m, i, n + i))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            basis.append(unit(m, n + i, j) + unit(m, n + j, i) if i != j else unit(m, n + i, i))
    return LieAlgebra.from_matrices(f"sp{two_n}", basis)


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    n, m = a.rows, b.rows
    rows = [list(a.row(i)) + [0] * m for i in range(n)]
    rows += [[0] * n + list(b.row(i)) for i in range(m)]
    return Matrix(rows)


def build_direct_sum(alg: LieAlgebra) -> LieAlgebra:
    """alg + alg realized block-diagonally; basis (B_i, 0) then (0, B_i)."""
    if alg.realization is None:
        raise CatalogError("direct sum needs a matrix realization")
    n = alg.matrix_size
    zero = Matrix.zeros(n, n)
    basis = [block_diag(b, zero) for b in alg.realization] + [block_diag(zero, b) for b in alg.realization]
    return LieAlgebra.from_matrices(f"{alg.name}+{alg.name}", basis)


def theta_from_matrix_map(alg: LieAlgebra, fn: Callable[[Matrix], Matrix]) -> Matrix:
    """Coordinate matrix of the linear map induced by ``fn`` on the realization."""
    if alg.realization is None:
        raise CatalogError(f"{alg.name} has no realization")
    columns = []
    for b in alg.realization:
        try:
            columns.append(alg.from_matrix(fn(b)).coords)
        except LinAlgError as exc:
            raise CatalogError(f"involution does not preserve {alg.name}: {exc}") from None
    return Matrix.from_columns(columns)


def theta_negtranspose(alg: LieAlgebra) -> Matrix:
    return theta_from_matrix_map(alg, lambda x: -x.T())


def theta_adjoint_block(alg: LieAlgebra, k: int) -> Matrix:
    """Conjugation by diag(I_k, -I_{n-k})."""
    n = alg.matrix_size
    if not 0 < k < n:
        raise CatalogError(f"block size {k} must lie strictly between 0 and {n}")
    d = Matrix.diag([1] * k + [-1] * (n - k))
    return theta_from_matrix_map(alg, lambda x: d @ x @ d)


def theta_swap(alg: LieAlgebra) -> Matrix:
    """(y, z) -> (z, y) on a block-diagonal direct sum."""
    n2 = alg.matrix_size
    if n2 % 2:
        raise CatalogError("swap needs an even block-diagonal realization")
    n = n2 // 2

    def swap(x: Matrix) -> Matrix:
        a = x.submatrix(range(n), range(n))
        b = x.submatrix(range(n, n2), range(n, n2))
        if x != block_diag(a, b):
            raise CatalogError("element is not block diagonal")
        return block_diag(b, a)

    return theta_from_matrix_map(alg, swap)


def apply_linear(m: Matrix, x: Element) -> Element:
    return Element(x.algebra, m @ x.coords)


def check_involution(alg: LieAlgebra, theta: Matrix) -> list[str]:
    problems = []
    if theta @ theta != Matrix.identity(alg.dim):
        problems.append("theta^2 != id")
    basis = alg.basis()
    images = [apply_linear(theta, b) for b in basis]
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            if apply_linear(theta, bracket(basis[i], basis[j])) != bracket(images[i], images[j]):
                problems.append(f"theta is not an automorphism on (b{i}, b{j})")
    return problems


@dataclass(frozen=True)
class Representative:
    label: str
    element: Element
    expected: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    description: str
    algebra: LieAlgebra
    theta: Matrix
    cartan_basis: tuple
    representatives: tuple
    # coordinatewise conjugation in the algebra's basis is a real form
    real_form: bool = False
    real_form_name: str | None = None

    def theta_of(self, x: Element) -> Element:
        return apply_linear(self.theta, x)


def validate_entry(entry: CatalogEntry) -> list[str]:
    """Load-time invariants; an empty list means the entry is sound."""
    alg = entry.algebra
    problems = [f"structure: {p}" for p in verify_structure(alg)]
    problems += [f"involution: {p}" for p in check_involution(alg, entry.theta)]
    for x in entry.cartan_basis:
        if entry.theta_of(x) != -x:
            problems.append(f"cartan basis element {x} is not in p")
        if not is_semisimple_element(x):
            problems.append(f"cartan basis element {x} is not semisimple")
    for i, x in enumerate(entry.cartan_basis):
        for y in entry.cartan_basis[i + 1:]:
            if not bracket(x, y).is_zero():
                problems.append("cartan basis elements do not commute")
    for rep in entry.representatives:
        if entry.theta_of(rep.element) != -rep.element:
            problems.append(f"representative {rep.label} is not in p")
        if not is_nilpotent_element(rep.element):
            problems.append(f"representative {rep.label} is not nilpotent")
    if entry.real_form:
        if not all(c.is_real() for row in alg.structure for v in row for c in v):
            problems.append("real form: structure constants are not real")
        if not entry.theta.is_real():
            problems.append("real form: theta does not commute with conjugation")
    return problems


def _entry_p1() -> CatalogEntry:
    alg = build_sl(2)
    m = alg.from_matrix
    e1 = m(Matrix([[I, 1], [1, -I]]).scale(Scalar(1) / 2))
    f1 = m(Matrix([[-I, 1], [1, I]]).scale(Scalar(1) / 2))
    principal = dict(principal=True, minus1=True, noticed=True, even=True, compact=True)
    return CatalogEntry(
        id="sl2-AI",
        description="sl2 with theta = -transpose (split real form sl2(R))",
        algebra=alg,
        theta=theta_negtranspose(alg),
        cartan_basis=(m([[0, 1], [1, 0]]),),
        representatives=(
            Representative("principal", e1, principal),
            Representative("principal-conjugate", f1, principal),
        ),
        real_form=True,
        real_form_name="sl2(R)",
    )


def _entry_p2() -> CatalogEntry:
    sl2 = build_sl(2)
    alg = build_direct_sum(sl2)
    m = alg.from_matrix
    e, h = sl2.realization[0], sl2.realization[2]
    return CatalogEntry(
        id="sl2xsl2-diag",
        description="sl2 + sl2 with the swap involution",
        algebra=alg,
        theta=theta_swap(alg),
        cartan_basis=(m(block_diag(h, -h)),),
        representatives=(
            Representative(
                "principal", m(block_diag(e, -e)), dict(principal=True, minus1=True, noticed=True, even=True)
            ),
        ),
    )


def _entry_p3() -> CatalogEntry:
    alg = build_sl(3)
    m = alg.from_matrix
    e3 = m([[0, 0, 1], [0, 0, I], [1, I, 0]])
    e3_sub = m([[1, I, 0], [I, -1, 0], [0, 0, 0]])
    return CatalogEntry(
        id="sl3-AI",
        description="sl3 with theta = -transpose (split real form sl3(R))",
        algebra=alg,
        theta=theta_negtranspose(alg),
        # the last basis vector dominates the positivity order, so the
        # upper-triangular roots come out positive
        cartan_basis=(m(Matrix.diag([1, -1, 0])), m(Matrix.diag([1, 0, -1]))),
        representatives=(
            Representative("principal", e3, dict(principal=True, minus1=True, noticed=True, even=True, compact=True)),
            Representative(
                "subregular", e3_sub, dict(principal=False, minus1=False, noticed=True, even=False, compact=False)
            ),
        ),
        real_form=True,
        real_form_name="sl3(R)",
    )


def su_pq_basis(p: int, q: int) -> list[Matrix]:
    """Gaussian-integer basis of su(p, q) for J = diag(I_p, -I_q): k part first."""
    n = p + q
    basis = []
    for k in range(1, n):
        basis.append((unit(n, k, k) - unit(n, k + 1, k + 1)).scale(I))
    blocks = [range(1, p + 1), range(p + 1, n + 1)]
    for blk in blocks:
        for i in blk:
            for j in blk:
                if i < j:
                    basis.append(unit(n, i, j) - unit(n, j, i))
                    basis.append((unit(n, i, j) + unit(n, j, i)).scale(I))
    for i in blocks[0]:
        for j in blocks[1]:
            basis.append(unit(n, i, j) + unit(n, j, i))
            basis.append((unit(n, i, j) - unit(n, j, i)).scale(I))
    return basis


def _entry_p4() -> CatalogEntry:
    alg = LieAlgebra.from_matrices("sl2", su_pq_basis(1, 1))
    m = alg.from_matrix
    return CatalogEntry(
        id="sl2-AIII",
        description="sl2 with theta = Ad diag(1,-1) (real form su(1,1))",
        algebra=alg,
        theta=theta_adjoint_block(alg, 1),
        cartan_basis=(m([[0, 1], [1, 0]]),),
        representatives=(
            Representative(
                "principal", m([[0, 1], [0, 0]]), dict(principal=True, minus1=True, noticed=True, even=True, compact=True)
            ),
        ),
        real_form=True,
        real_form_name="su(1,1)",
    )


def _entry_p5() -> CatalogEntry:
    alg = LieAlgebra.from_matrices("sl3", su_pq_basis(1, 2))
    m = alg.from_matrix
    return CatalogEntry(
        id="sl3-AIII12",
        description="sl3 with theta = Ad diag(1,-1,-1) (real form su(1,2))",
        algebra=alg,
        theta=theta_adjoint_block(alg, 1),
        cartan_basis=(m(unit(3, 1, 2) + unit(3, 2, 1)),),
        representatives=(
            Representative(
                "principal",
                m(unit(3, 1, 2) + unit(3, 3, 1)),
                dict(principal=True, minus1=True, noticed=True, even=True, compact=True),
            ),
        ),
        real_form=True,
        real_form_name="su(1,2)",
    )


_BUILDERS = {
    "sl2-AI": _entry_p1,
    "sl2xsl2-diag": _entry_p2,
    "sl3-AI": _entry_p3,
    "sl2-AIII": _entry_p4,
    "sl3-AIII12": _entry_p5,
}

ENTRY_IDS = tuple(sorted(_BUILDERS))


class UnknownPair(KeyError):
    pass


@lru_cache(maxsize=None)
def get_entry(pair_id: str, validate: bool = True) -> CatalogEntry:
    try:
        builder = _BUILDERS[pair_id]
    except KeyError:
        raise UnknownPair(f"unknown pair {pair_id!r}; known: {', '.join(ENTRY_IDS)}") from None
    entry = builder()
    if validate:
        problems = validate_entry(entry)
        if problems:
            raise CatalogError(f"{pair_id}: " + "; ".join(problems))
    return entry


def catalog_entries() -> list[CatalogEntry]:
    """All shipped entries, sorted by id, validated at load."""
    return [get_entry(pid) for pid in ENTRY_IDS]

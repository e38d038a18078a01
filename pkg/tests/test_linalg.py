import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gaussian_matrix
from oracle import reference_rank, reference_rref
from symcheck.linalg import (
    LinAlgError,
    Matrix,
    NonIntegralSpectrum,
    Subspace,
    determinant,
    integer_eigenvalues,
    inverse,
    is_negative_definite,
    is_positive_definite,
    kernel,
    min_poly,
    poly_eval_matrix,
    rank,
    rref,
    solve_linear,
)
from symcheck.scalar import I, Scalar

seeds = st.integers(min_value=0, max_value=10**6)


def test_rref_examples():
    eye = Matrix.identity(3)
    assert rref(eye) == (eye, 3)
    assert rref(Matrix([[1, I], [I, -1]])) == (Matrix([[1, I], [0, 0]]), 1)
    z = Matrix.zeros(2, 3)
    assert rref(z) == (z, 0)


def test_kernel_examples():
    assert kernel(Matrix.identity(3)).is_zero()
    assert kernel(Matrix.zeros(2, 2)) == Subspace.full(2)
    k = kernel(Matrix([[1, I]]))
    # span{(-i, 1)} in echelon form
    assert k == Subspace.span([(-I, 1)], 2)
    assert k.vectors() == [(Scalar(1), I)]


def test_solve_linear_examples():
    x, ker = solve_linear(Matrix.identity(2), [3, I])
    assert x == (3, I) and ker.is_zero()
    assert solve_linear(Matrix.zeros(2, 2), [1, 0]) is None
    assert solve_linear(Matrix([[2]]), [4])[0] == (2,)
    with pytest.raises(LinAlgError):
        solve_linear(Matrix.identity(2), [1])


def test_solve_free_variables_zero():
    x, ker = solve_linear(Matrix([[1, 1, 0]]), [5])
    assert x == (5, 0, 0) and ker.dim == 2


def test_subspace_examples():
    a = Subspace.span([(1, 0)], 2)
    b = Subspace.span([(0, 1)], 2)
    assert (a & a) == a
    assert (a & b).is_zero()
    assert a + Subspace.span([(1, 1)], 2) == Subspace.full(2)
    with pytest.raises(LinAlgError):
        a & Subspace.full(3)


def test_min_poly_examples():
    assert min_poly(Matrix.zeros(3, 3)) == (0, 1)
    assert min_poly(Matrix([[0, 1], [0, 0]])) == (0, 0, 1)
    assert min_poly(Matrix.diag([1, -1])) == (-1, 0, 1)
    assert min_poly(Matrix([[Fraction(1, 2), I], [0, Fraction(1, 2)]])) == (Fraction(1, 4), -1, 1)
    with pytest.raises(LinAlgError):
        min_poly(Matrix([[1, 2]]))


def test_integer_eigenvalues_examples():
    spaces = integer_eigenvalues(Matrix.diag([2, 0, -2]), semisimple=True)
    assert spaces == {
        Scalar(2): Subspace.span([(1, 0, 0)], 3),
        Scalar(0): Subspace.span([(0, 1, 0)], 3),
        Scalar(-2): Subspace.span([(0, 0, 1)], 3),
    }
    assert integer_eigenvalues(Matrix.zeros(3, 3)) == {Scalar(0): Subspace.full(3)}
    assert set(integer_eigenvalues(Matrix.diag([I, 1]))) == {I, Scalar(1)}


def test_non_integral_spectrum_reports_residual():
    with pytest.raises(NonIntegralSpectrum) as err:
        integer_eigenvalues(Matrix([[0, 2], [1, 0]]))  # t^2 - 2
    assert err.value.residual == (-2, 0, 1)
    with pytest.raises(NonIntegralSpectrum):
        integer_eigenvalues(Matrix([[0, 1], [0, 0]]), semisimple=True)


def test_definiteness_examples():
    assert is_negative_definite(Matrix.zeros(0, 0))
    assert is_negative_definite(Matrix([[-2]]))
    assert not is_negative_definite(Matrix([[36]]))
    assert is_positive_definite(Matrix([[2, 1], [1, 2]]))
    assert not is_positive_definite(Matrix([[1, 2], [2, 1]]))
    assert not is_negative_definite(Matrix([[-1, 0], [0, 0]]))
    with pytest.raises(LinAlgError):
        is_negative_definite(Matrix([[I]]))
    with pytest.raises(LinAlgError):
        is_negative_definite(Matrix([[1, 2], [0, 1]]))


def test_inverse_and_determinant():
    m = Matrix([[1, I], [2, 3]])
    assert inverse(m) @ m == Matrix.identity(2)
    assert determinant(m) == 3 - 2 * I
    with pytest.raises(LinAlgError):
        inverse(Matrix([[1, I], [I, -1]]))


@given(seeds)
def test_rref_matches_reference(seed):
    rng = random.Random(seed)
    m = gaussian_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
    red, r = rref(m)
    ref_rows, ref_piv = reference_rref(m)
    assert r == len(ref_piv)
    for i, row in enumerate(ref_rows):
        assert red.row(i) == tuple(Scalar(a, b) for a, b in row)


@given(seeds)
def test_rank_nullity(seed):
    rng = random.Random(seed)
    m = gaussian_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
    k = kernel(m)
    assert rank(m) + k.dim == m.cols
    assert rank(m) == reference_rank(m)
    for v in k:
        assert all(x == 0 for x in m @ v)


@given(seeds)
def test_rref_idempotent(seed):
    rng = random.Random(seed)
    m = gaussian_matrix(rng, 4, 5)
    red, r = rref(m)
    assert rref(red) == (red, r)


@given(seeds)
def test_grassmann_identity(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    a = Subspace.span(gaussian_matrix(rng, rng.randint(0, n), n).tolist(), n)
    b = Subspace.span(gaussian_matrix(rng, rng.randint(0, n), n).tolist(), n)
    assert a.dim + b.dim == (a + b).dim + (a & b).dim
    assert (a + b).contains(a) and a.contains(a & b)


@given(seeds)
def test_min_poly_annihilates(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    m = gaussian_matrix(rng, n, n, bound=2).scale(Scalar(Fraction(1, rng.randint(1, 3))))
    p = min_poly(m)
    assert p[-1] == 1
    assert poly_eval_matrix(p, m).is_zero()
    # no proper divisor of lower degree annihilates: check degree against the Krylov bound
    assert len(p) - 1 <= n


@given(seeds)
def test_eigenspaces_fill_for_diagonalizable(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    d = Matrix.diag([rng.randint(-3, 3) for _ in range(n)])
    p = gaussian_matrix(rng, n, n, bound=2)
    if rank(p) < n:
        p = Matrix.identity(n)
    m = p @ d @ inverse(p)
    spaces = integer_eigenvalues(m, semisimple=True)
    assert sum(s.dim for s in spaces.values()) == n


@given(seeds)
def test_solve_consistent(seed):
    rng = random.Random(seed)
    m = gaussian_matrix(rng, 4, 3)
    x0 = [Scalar(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(3)]
    b = m @ x0
    x, ker = solve_linear(m, b)
    assert m @ x == b
    assert ker == kernel(m)

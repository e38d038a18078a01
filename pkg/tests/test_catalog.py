import pytest

from conftest import context
from symcheck.catalog import (
    ENTRY_IDS,
    UnknownPair,
    build_direct_sum,
    build_sl,
    catalog_entries,
    check_involution,
    get_entry,
    theta_adjoint_block,
    theta_negtranspose,
    theta_swap,
    unit,
    validate_entry,
)
from symcheck.lie import centralizer
from symcheck.linalg import Matrix, kernel
from symcheck.scalar import I


def _fixed_dims(theta):
    n = theta.rows
    eye = Matrix.identity(n)
    return kernel(theta - eye).dim, kernel(theta + eye).dim


def test_five_entries_with_expected_ids():
    assert ENTRY_IDS == ("sl2-AI", "sl2-AIII", "sl2xsl2-diag", "sl3-AI", "sl3-AIII12")
    assert [e.id for e in catalog_entries()] == list(ENTRY_IDS)


@pytest.mark.parametrize("pair_id", ENTRY_IDS)
def test_entries_validate(pair_id):
    assert validate_entry(get_entry(pair_id, validate=False)) == []


def test_unknown_pair():
    with pytest.raises(UnknownPair):
        get_entry("sl4-AI")


@pytest.mark.parametrize(
    "alg, theta_fn, dims",
    [
        (build_sl(2), theta_negtranspose, (1, 2)),
        (build_direct_sum(build_sl(2)), theta_swap, (3, 3)),
        (build_sl(3), lambda a: theta_adjoint_block(a, 1), (4, 4)),
        (build_sl(3), theta_negtranspose, (3, 5)),
    ],
)
def test_involution_shapes(alg, theta_fn, dims):
    theta = theta_fn(alg)
    assert check_involution(alg, theta) == []
    assert _fixed_dims(theta) == dims


def test_representatives_square_to_zero():
    e1 = get_entry("sl2-AI").representatives[0].element
    assert (e1.matrix @ e1.matrix).is_zero()
    sub = get_entry("sl3-AI").representatives[1].element
    assert sub.matrix == Matrix([[1, I, 0], [I, -1, 0], [0, 0, 0]])
    assert (sub.matrix @ sub.matrix).is_zero()


def test_p5_principal_k_centralizer():
    ctx = context("sl3-AIII12")
    e = ctx.pair.entry.representatives[0].element
    assert e.matrix == unit(3, 1, 2) + unit(3, 3, 1)
    assert centralizer(ctx.pair.k, [e]).dim == 1


def test_expected_flags_are_complete_for_real_forms():
    for entry in catalog_entries():
        for rep in entry.representatives:
            keys = {"principal", "minus1", "noticed", "even"} | ({"compact"} if entry.real_form else set())
            assert keys <= set(rep.expected), (entry.id, rep.label)


def test_corrupted_theta_is_reported():
    alg = build_sl(2)
    bad = theta_negtranspose(alg).scale(2)
    assert check_involution(alg, bad)

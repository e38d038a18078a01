import pytest
from hypothesis import given, settings, strategies as st

from conftest import context
from symcheck.catalog import get_entry
from symcheck.cayley import (
    NO_REPRESENTATIVE,
    CayleyError,
    Convention,
    RealFormUnavailable,
    RealTriple,
    cayley_complex_from_real,
    cayley_real_from_complex,
    cayley_scaling,
    compactness,
    expected_compact_mismatches,
    is_complex_cayley,
    is_compact_element,
    ks_for_element,
    real_form_context,
    sigma,
    verify_ks_compact,
)
from symcheck.linalg import Matrix, is_negative_definite, is_positive_definite
from symcheck.scalar import I, Scalar
from symcheck.sl2 import check_sl2_relations, complete_normalized_triple

REAL_PAIRS = ["sl2-AI", "sl3-AI", "sl2-AIII", "sl3-AIII12"]
ADJ, PAPER = Convention.ADJUSTED, Convention.PAPER


def rf(pid):
    return real_form_context(context(pid).pair)


def rep(pid, label="principal"):
    return next(r.element for r in get_entry(pid).representatives if r.label == label)


def M(pid, rows):
    return context(pid).pair.algebra.from_matrix(Matrix(rows))


def test_sigma_is_conjugate_linear():
    ctx = rf("sl2-AI")
    e1 = rep("sl2-AI")
    f1 = rep("sl2-AI", "principal-conjugate")
    assert sigma(ctx, e1) == f1
    assert sigma(ctx, e1 * I) == f1 * -I
    assert sigma(ctx, sigma(ctx, e1)) == e1


def test_complex_cayley_conventions():
    ctx = rf("sl2-AI")
    t = complete_normalized_triple(ctx.pair, rep("sl2-AI"))
    assert is_complex_cayley(ctx, t, ADJ)
    assert not is_complex_cayley(ctx, t, PAPER)
    assert not is_complex_cayley(ctx, t.scaled(Scalar(2)), ADJ)


def test_sl2_real_triple():
    ctx = rf("sl2-AI")
    t = complete_normalized_triple(ctx.pair, rep("sl2-AI"))
    rt = cayley_real_from_complex(ctx, t, ADJ)
    assert rt.e == M("sl2-AI", [[0, 0], [1, 0]])
    assert rt.h == M("sl2-AI", [[-1, 0], [0, 1]])
    assert rt.f == M("sl2-AI", [[0, 1], [0, 0]])
    assert cayley_complex_from_real(ctx, rt, ADJ).elements() == t.elements()


def test_split_triple_maps_to_conjugate_line():
    ctx = rf("sl2-AI")
    std = RealTriple(M("sl2-AI", [[0, 1], [0, 0]]), M("sl2-AI", [[1, 0], [0, -1]]), M("sl2-AI", [[0, 0], [1, 0]]))
    t = cayley_complex_from_real(ctx, std, ADJ)
    assert t.e == rep("sl2-AI", "principal-conjugate")
    assert t.h == M("sl2-AI", [["0", "i"], ["-i", "0"]]) * -1


def test_sl3_subregular_real_triple():
    ctx = rf("sl3-AI")
    t = complete_normalized_triple(ctx.pair, rep("sl3-AI", "subregular"))
    lam, log = cayley_scaling(ctx, t, ADJ)
    assert lam == Scalar("1/2") and [ok for _, ok in log][:4] == [False] * 4
    rt = cayley_real_from_complex(ctx, t.scaled(lam), ADJ)
    half = "1/2"
    assert rt.e == M("sl3-AI", [[half, half, 0], ["-1/2", "-1/2", 0], [0, 0, 0]])
    assert rt.h == M("sl3-AI", [[0, -1, 0], [-1, 0, 0], [0, 0, 0]])
    assert rt.f == M("sl3-AI", [[half, "-1/2", 0], [half, "-1/2", 0], [0, 0, 0]])
    comp = compactness(ctx, rt)
    assert not comp.compact and comp.z.dim == 1 and comp.gram.tolist() == [[Scalar(36)]]


def test_sl3_aiii_needs_non_unit_scaling():
    ctx = rf("sl3-AIII12")
    t = complete_normalized_triple(ctx.pair, rep("sl3-AIII12"))
    lam, _ = cayley_scaling(ctx, t, ADJ)
    assert lam == Scalar(1, 1)


@pytest.mark.parametrize("pid", REAL_PAIRS)
def test_ks_report_passes(pid):
    report = verify_ks_compact(context(pid).pair)
    assert report.passed, report.failures
    assert not expected_compact_mismatches(context(pid).pair, report)
    for r in report.representatives:
        assert r.round_trip and r.compact == r.minus1
        assert all(x.is_real() for x in r.real_triple.elements())
        assert not check_sl2_relations(*r.real_triple.elements())


@pytest.mark.parametrize("pid", REAL_PAIRS)
def test_paper_convention_has_no_representative(pid):
    report = verify_ks_compact(context(pid).pair, PAPER)
    assert not report.passed
    assert all(r.status == f"{NO_REPRESENTATIVE} paper" for r in report.representatives)
    assert all(r.scaling is None for r in report.representatives)


def test_real_form_unavailable():
    with pytest.raises(RealFormUnavailable):
        rf("sl2xsl2-diag")


@pytest.mark.parametrize("pid", REAL_PAIRS)
def test_killing_form_definite_on_real_form(pid):
    ctx = rf(pid)
    assert is_negative_definite(ctx.k_gram) and is_positive_definite(ctx.p_gram)


def test_real_from_complex_rejects_non_cayley():
    ctx = rf("sl2-AI")
    t = complete_normalized_triple(ctx.pair, rep("sl2-AI"))
    with pytest.raises(CayleyError):
        cayley_real_from_complex(ctx, t.scaled(Scalar(2)), ADJ)
    with pytest.raises(CayleyError):
        cayley_real_from_complex(ctx, t, PAPER)


def test_complex_from_real_rejects_bad_input():
    ctx = rf("sl2-AI")
    e = M("sl2-AI", [[0, 1], [0, 0]])
    with pytest.raises(CayleyError):
        cayley_complex_from_real(ctx, RealTriple(e, e, e), ADJ)
    # a real sl2 triple failing theta(e) = -f
    std = RealTriple(e, M("sl2-AI", [[1, 0], [0, -1]]), M("sl2-AI", [[0, 0], [1, 0]]))
    with pytest.raises(CayleyError):
        cayley_complex_from_real(ctx, std, PAPER)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6))
def test_compactness_invariant_under_positive_rescaling(a, b):
    ctx = rf("sl3-AI")
    for label in ("principal", "subregular"):
        t = complete_normalized_triple(ctx.pair, rep("sl3-AI", label))
        lam, _ = cayley_scaling(ctx, t, ADJ)
        rt = cayley_real_from_complex(ctx, t.scaled(lam), ADJ)
        c = Scalar(a, 0) / Scalar(b, 0)
        scaled = RealTriple(rt.e * c, rt.h, rt.f / c)
        assert is_compact_element(ctx, scaled) == is_compact_element(ctx, rt)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([Scalar(2), Scalar(-3), I, Scalar(1, 2)]))
def test_scaling_probe_recovers_from_any_rescaling(mu):
    ctx = rf("sl2-AI")
    e = rep("sl2-AI") * mu
    r = ks_for_element(ctx, "scaled", e, ADJ)
    assert r.status == "ok" and r.compact is True and r.round_trip

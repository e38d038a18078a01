import random

import pytest

from conftest import context
from symcheck.catalog import ENTRY_IDS, get_entry
from symcheck.criteria import (
    analyze_element,
    distinguished_via_grading,
    even_criterion,
    is_in_Np,
    is_noticed,
    is_principal,
    killing_perp_in_p,
    minus1_via_centralizer,
    minus1_via_even,
    minus1_via_grading,
    orbit_dimension,
    perp_identity_check,
    rng_for,
    semisimple_witness,
    tangent_space,
    verify_pair,
)
from symcheck.lie import Element, centralizer, is_semisimple_element
from symcheck.linalg import Matrix, Subspace
from symcheck.scalar import I, Scalar
from symcheck.sl2 import complete_normalized_triple, random_element, triple_centralizers

REPS = [
    pytest.param(pid, rep.label, id=f"{pid}:{rep.label}")
    for pid in ENTRY_IDS
    for rep in get_entry(pid).representatives
]


def rep(pid, label="principal"):
    ctx = context(pid)
    return ctx, next(r.element for r in ctx.pair.entry.representatives if r.label == label)


def triple(pid, label="principal"):
    ctx, e = rep(pid, label)
    return ctx, complete_normalized_triple(ctx.pair, e)


def test_is_in_Np_examples():
    ctx, e1 = rep("sl2-AI")
    pair = ctx.pair
    assert is_in_Np(pair, pair.algebra.zero())
    assert not is_in_Np(pair, pair.algebra.from_matrix([[0, 1], [1, 0]]))
    assert is_in_Np(pair, e1)
    assert not is_in_Np(pair, pair.algebra.from_matrix([[0, 1], [0, 0]]))  # nilpotent, not in p


def test_orbit_dimension_examples():
    assert orbit_dimension(context("sl2-AI").pair, rep("sl2-AI")[1]) == 1
    assert orbit_dimension(context("sl3-AI").pair, rep("sl3-AI")[1]) == 3
    assert orbit_dimension(context("sl3-AI").pair, rep("sl3-AI", "subregular")[1]) == 2


@pytest.mark.parametrize("pid, dim", [("sl2-AI", 1), ("sl2xsl2-diag", 2), ("sl3-AI", 3),
                                      ("sl2-AIII", 1), ("sl3-AIII12", 3)])
def test_principal_orbit_dims(pid, dim):
    ctx, e = rep(pid)
    assert orbit_dimension(ctx.pair, e) == dim == ctx.pair.p.dim - ctx.cartan.r
    assert is_principal(ctx.pair, ctx.cartan, e)


def test_subregular_not_principal():
    ctx, e = rep("sl3-AI", "subregular")
    assert not is_principal(ctx.pair, ctx.cartan, e)


def test_minus1_examples():
    for pid in ("sl2-AI", "sl2xsl2-diag"):
        ctx, t = triple(pid)
        assert minus1_via_centralizer(ctx.pair, t) and minus1_via_grading(ctx.pair, t)
        assert minus1_via_even(ctx.pair, t) is True
        assert is_noticed(ctx.pair, t)
    ctx, t = triple("sl3-AI", "subregular")
    assert not minus1_via_centralizer(ctx.pair, t)
    assert not minus1_via_grading(ctx.pair, t)
    assert minus1_via_even(ctx.pair, t) is None
    assert is_noticed(ctx.pair, t)


def test_even_criterion_dims():
    ctx, t = triple("sl2-AI")
    ev = even_criterion(ctx.pair, t)
    assert (ev.l_minus, ev.u_plus, ev.uu_plus) == (0, 0, 0)
    ctx, t = triple("sl2xsl2-diag")
    ev = even_criterion(ctx.pair, t)
    assert (ev.l_minus, ev.u_plus, ev.uu_plus) == (1, 1, 0)


def test_subregular_witness_is_t():
    ctx, t = triple("sl3-AI", "subregular")
    alg = ctx.pair.algebra
    ps = triple_centralizers(ctx.pair, t)[2]
    tvec = alg.from_matrix(Matrix.diag([1, 1, -2]))
    assert ps == alg.span([tvec])
    w = semisimple_witness(ctx.pair, ps, rng_for(0, ctx.id, "witness"), 100)
    assert w is not None and is_semisimple_element(w)
    assert alg.span([w]) == alg.span([tvec])


def test_witness_absent_cases():
    ctx, e1 = rep("sl2-AI")
    pair = ctx.pair
    assert semisimple_witness(pair, Subspace.zero(3), random.Random(0)) is None
    assert semisimple_witness(pair, pair.algebra.span([e1]), random.Random(0), 100) is None


def test_perp_examples():
    ctx, e1 = rep("sl2-AI")
    pair = ctx.pair
    assert perp_identity_check(pair, pair.algebra.zero())
    assert killing_perp_in_p(pair, tangent_space(pair, pair.algebra.zero())) == pair.p
    assert perp_identity_check(pair, e1)
    assert tangent_space(pair, e1) == pair.algebra.span([e1]) == centralizer(pair.p, [e1])
    ctx, e = rep("sl3-AI", "subregular")
    assert perp_identity_check(ctx.pair, e)
    assert tangent_space(ctx.pair, e).dim == 2 and centralizer(ctx.pair.p, [e]).dim == 3
    with pytest.raises(ValueError):
        perp_identity_check(pair, pair.algebra.from_matrix([[0, 1], [0, 0]]))


@pytest.mark.parametrize("pid, label", REPS)
def test_criteria_agree(pid, label):
    ctx, t = triple(pid, label)
    verdicts = {minus1_via_centralizer(ctx.pair, t), minus1_via_grading(ctx.pair, t)}
    ev = minus1_via_even(ctx.pair, t)
    if ev is not None:
        verdicts.add(ev)
    assert len(verdicts) == 1


@pytest.mark.parametrize("pid, label", REPS)
@pytest.mark.parametrize("lam", [Scalar(2), I, Scalar(-3)])
def test_principal_scale_invariant(pid, label, lam):
    ctx, e = rep(pid, label)
    assert is_principal(ctx.pair, ctx.cartan, e * lam) == is_principal(ctx.pair, ctx.cartan, e)


@pytest.mark.parametrize("pid", ENTRY_IDS)
def test_perp_random_elements(pid):
    ctx = context(pid)
    rng = rng_for(0, pid, "perp-random")
    for _ in range(20):
        x = Element(ctx.pair.algebra, random_element(ctx.pair.p, rng))
        assert perp_identity_check(ctx.pair, x)


def test_rng_streams_are_independent_and_stable():
    a = [rng_for(0, "sl2-AI", "x").random() for _ in range(2)]
    assert a[0] == a[1]
    assert rng_for(0, "sl2-AI", "x").random() != rng_for(0, "sl2-AI", "y").random()


@pytest.mark.parametrize("pid", ENTRY_IDS)
def test_verify_pair_passes(pid):
    report = verify_pair(context(pid), seed=0, samples=100)
    assert report.passed, report.failures
    assert report.theorem_null_p and report.theorem_equality and report.theorem_derived
    assert report.chamber_identities and report.random_perp_identity and report.root_bookkeeping
    for r in report.representatives:
        assert r.criteria_agree and r.perp_identity and r.levi_instance
        if r.minus1:
            assert r.self_duality_bookkeeping and r.centralizer_samples_nilpotent
        else:
            assert r.witness is not None


def test_verify_pair_flags():
    report = verify_pair(context("sl2-AI"))
    assert report.representatives[0].flags() == dict(principal=True, minus1=True, noticed=True, even=True)
    p3 = {r.label: r for r in verify_pair(context("sl3-AI")).representatives}
    assert p3["subregular"].flags() == dict(principal=False, minus1=False, noticed=True, even=False)


def test_diagonal_reduction():
    report = verify_pair(context("sl2xsl2-diag"))
    case = report.diagonal_reduction["cases"][0]
    assert case == {"label": "principal", "minus1": True, "distinguished": True, "dim_g0": 1, "dim_g2": 1}
    from symcheck.catalog import build_sl

    sl2 = build_sl(2)
    assert distinguished_via_grading(sl2.basis()[0]) == (True, 1, 1)


def test_stale_fixture_is_reported(monkeypatch):
    from dataclasses import replace

    from symcheck.catalog import Representative
    from symcheck.criteria import build_context

    entry = get_entry("sl3-AI")
    sub = entry.representatives[1]
    wrong = Representative(sub.label, sub.element, dict(sub.expected, minus1=True))
    ctx = build_context(replace(entry, representatives=(entry.representatives[0], wrong)))
    report = verify_pair(ctx)
    assert not report.passed
    assert any("expected minus1=True" in f for f in report.failures)


def test_analyze_element_rejections():
    ctx = context("sl2-AI")
    pair = ctx.pair
    c1 = analyze_element(pair, ctx.cartan, pair.algebra.from_matrix([[0, 1], [1, 0]]))
    assert not c1.in_Np and c1.note == "semisimple"
    off = analyze_element(pair, ctx.cartan, pair.algebra.from_matrix([[0, 1], [0, 0]]))
    assert not off.in_Np and off.note == "not in p"
    zero = analyze_element(pair, ctx.cartan, pair.algebra.zero())
    assert zero.in_Np and zero.triple is None and "zero element" in zero.note

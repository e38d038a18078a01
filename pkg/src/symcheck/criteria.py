"""Decision procedures on nilpotent elements of p and per-pair verification."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .lie import (
    Element,
    bracket,
    centralizer,
    is_nilpotent_element,
    is_semisimple_element,
)
from .linalg import Matrix, Subspace, kernel
from .sl2 import (
    HGrading,
    NormalizedTriple,
    complete_normalized_triple,
    complete_sl2_triple,
    grading_by_h,
    is_even,
    jm_parabolic,
    levi_instance_check,
    random_element,
    triple_centralizers,
)
from .theta import (
    CartanSubspaceData,
    RestrictedRootData,
    SymmetricPair,
    decompose_kp,
    restricted_roots,
    verify_cartan_subspace,
    verify_chamber_centralizers,
)

DEFAULT_SAMPLES = 100
RANDOM_P_ELEMENTS = 20


def rng_for(seed: int, pair_id: str, check: str) -> random.Random:
    # str seeds hash through sha512, so this is stable across processes
    return random.Random(f"{seed}/{pair_id}/{check}")


def is_in_Np(pair: SymmetricPair, x: Element) -> bool:
    return pair.in_p(x) and is_nilpotent_element(x)


def orbit_dimension(pair: SymmetricPair, e: Element) -> int:
    """dim K.e = dim k - dim k^e."""
    return pair.k.dim - centralizer(pair.k, [e]).dim


def is_principal(pair: SymmetricPair, cartan: CartanSubspaceData, e: Element) -> bool:
    return orbit_dimension(pair, e) == pair.p.dim - cartan.r


def minus1_via_centralizer(pair: SymmetricPair, triple: NormalizedTriple) -> bool:
    return triple_centralizers(pair, triple)[2].is_zero()


def minus1_via_grading(pair: SymmetricPair, triple: NormalizedTriple, grading: HGrading | None = None) -> bool:
    grading = grading or grading_by_h(pair, triple.h)
    return grading.dim_minus(0) == grading.dim_plus(2)


@dataclass(frozen=True)
class EvenCriterion:
    verdict: bool | None
    l_minus: int = 0
    u_plus: int = 0
    uu_plus: int = 0


def even_criterion(pair: SymmetricPair, triple: NormalizedTriple, grading: HGrading | None = None) -> EvenCriterion:
    grading = grading or grading_by_h(pair, triple.h)
    if not is_even(grading):
        return EvenCriterion(None)
    jm = jm_parabolic(pair, grading)
    l_minus = (jm.l & pair.p).dim
    u_plus = jm.u & pair.k
    uu_plus = jm.derived_u & pair.k
    if not u_plus.contains(uu_plus):
        raise ArithmeticError("[u,u]^+ is not contained in u^+")
    return EvenCriterion(l_minus == u_plus.dim - uu_plus.dim, l_minus, u_plus.dim, uu_plus.dim)


def minus1_via_even(pair: SymmetricPair, triple: NormalizedTriple, grading: HGrading | None = None) -> bool | None:
    """None when e is not even."""
    return even_criterion(pair, triple, grading).verdict


def is_noticed(pair: SymmetricPair, triple: NormalizedTriple) -> bool:
    return triple_centralizers(pair, triple)[1].is_zero()


def tangent_space(pair: SymmetricPair, x: Element) -> Subspace:
    """[k, x]."""
    alg = pair.algebra
    return alg.span(bracket(b, x) for b in alg.elements_of(pair.k))


def killing_perp_in_p(pair: SymmetricPair, sub: Subspace) -> Subspace:
    """Killing-orthogonal complement of ``sub`` inside p."""
    gram = pair.killing_gram
    pvecs = pair.p.vectors()
    if sub.is_zero():
        return pair.p
    rows = []
    for w in sub:
        gw = gram @ w
        rows.append([sum((a * b for a, b in zip(v, gw)), start=0 * gw[0]) for v in pvecs])
    coeffs = kernel(Matrix(rows, len(pvecs)))
    return Subspace.span([pair.p.combination(c) for c in coeffs], pair.algebra.dim)


def perp_identity_check(pair: SymmetricPair, x: Element) -> bool:
    """[k, x]^perp inside p equals p^x."""
    if not pair.in_p(x):
        raise ValueError("perp identity needs x in p")
    return killing_perp_in_p(pair, tangent_space(pair, x)) == centralizer(pair.p, [x])


def semisimple_witness(
    pair: SymmetricPair, sub: Subspace, rng: random.Random, samples: int = DEFAULT_SAMPLES
) -> Element | None:
    """First nonzero semisimple sample of ``sub``, or None (zero space or none found)."""
    if sub.is_zero():
        return None
    alg = pair.algebra
    for _ in range(samples):
        x = Element(alg, random_element(sub, rng))
        if is_semisimple_element(x):
            return x
    return None


def distinguished_via_grading(e: Element) -> tuple[bool, int, int]:
    """Plain (non-symmetric) criterion dim g_0 = dim g_2 for e in a semisimple algebra."""
    from .linalg import integer_eigenvalues
    from .lie import ad_matrix
    from .scalar import Scalar

    _, h, _ = complete_sl2_triple(e)
    spaces = integer_eigenvalues(ad_matrix(h), semisimple=True)
    g0 = spaces.get(Scalar(0))
    g2 = spaces.get(Scalar(2))
    d0 = g0.dim if g0 else 0
    d2 = g2.dim if g2 else 0
    return d0 == d2, d0, d2


@dataclass
class RepresentativeReport:
    label: str
    in_Np: bool
    orbit_dim: int
    principal: bool | None = None
    even: bool | None = None
    minus1_centralizer: bool | None = None
    minus1_grading: bool | None = None
    minus1_even: bool | None = None
    noticed: bool | None = None
    perp_identity: bool | None = None
    levi_instance: bool | None = None
    triple: NormalizedTriple | None = None
    grading_dims: dict = field(default_factory=dict)
    dims: dict = field(default_factory=dict)
    witness: Element | None = None
    centralizer_samples_nilpotent: bool | None = None
    a_cap_gs_zero: bool | None = None
    expected_mismatches: list = field(default_factory=list)
    note: str | None = None

    @property
    def minus1(self) -> bool | None:
        return self.minus1_centralizer

    @property
    def criteria_agree(self) -> bool:
        verdicts = [v for v in (self.minus1_centralizer, self.minus1_grading, self.minus1_even) if v is not None]
        return len(set(verdicts)) <= 1

    @property
    def self_duality_bookkeeping(self) -> bool | None:
        d = self.dims
        if "tangent" not in d:
            return None
        return d["tangent"] + d["p^e"] == d["p"]

    def flags(self) -> dict:
        return {
            "principal": self.principal,
            "minus1": self.minus1,
            "noticed": self.noticed,
            "even": self.even,
        }


def analyze_element(
    pair: SymmetricPair,
    cartan: CartanSubspaceData,
    x: Element,
    label: str = "element",
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
) -> RepresentativeReport:
    """Full battery on a single element; elements outside N(p) stop after membership."""
    in_p = pair.in_p(x)
    nilpotent = is_nilpotent_element(x)
    rep = RepresentativeReport(label, in_p and nilpotent, orbit_dimension(pair, x) if in_p else -1)
    if not in_p:
        rep.note = "not in p"
        return rep
    if not nilpotent:
        rep.note = "semisimple" if is_semisimple_element(x) else "not nilpotent"
        return rep
    rep.perp_identity = perp_identity_check(pair, x)
    tangent = tangent_space(pair, x)
    p_x = centralizer(pair.p, [x])
    rep.dims = {"p": pair.p.dim, "tangent": tangent.dim, "p^e": p_x.dim}
    if x.is_zero():
        rep.note = "zero element: triple completion refused"
        return rep
    rep.principal = is_principal(pair, cartan, x)
    triple = complete_normalized_triple(pair, x)
    rep.triple = triple
    grading = grading_by_h(pair, triple.h)
    rep.grading_dims = {d: (grading.dim(d), grading.dim_plus(d), grading.dim_minus(d)) for d in grading.parts}
    rep.even = is_even(grading)
    gs, ks, ps = triple_centralizers(pair, triple)
    rep.dims.update({"g^s": gs.dim, "k^s": ks.dim, "p^s": ps.dim})
    rep.minus1_centralizer = ps.is_zero()
    rep.minus1_grading = minus1_via_grading(pair, triple, grading)
    ev = even_criterion(pair, triple, grading)
    rep.minus1_even = ev.verdict
    if ev.verdict is not None:
        rep.dims.update({"l^-": ev.l_minus, "u^+": ev.u_plus, "[u,u]^+": ev.uu_plus})
    rep.dims.update({"g_0^-": grading.dim_minus(0), "g_2^+": grading.dim_plus(2)})
    rep.noticed = ks.is_zero()
    rep.a_cap_gs_zero = (cartan.a & gs).is_zero()
    lv = levi_instance_check(pair, x, triple, rng_for(seed, pair.id, f"levi:{label}"), samples, grading)
    rep.levi_instance = lv.ok
    rep.dims.update({"g^e": lv.dim_ge, "u_e": lv.dim_ue})
    if rep.minus1_centralizer:
        # p^x lies in N(p) for (-1)-distinguished x
        rng = rng_for(seed, pair.id, f"centralizer-nilpotent:{label}")
        rep.centralizer_samples_nilpotent = all(
            is_nilpotent_element(Element(pair.algebra, random_element(p_x, rng))) for _ in range(samples)
        )
    else:
        rep.witness = semisimple_witness(pair, ps, rng_for(seed, pair.id, f"witness:{label}"), samples)
    return rep


@dataclass
class PairContext:
    """Everything derived once per catalog entry."""

    pair: SymmetricPair
    cartan: CartanSubspaceData
    roots: RestrictedRootData

    @property
    def id(self) -> str:
        return self.pair.id


def build_context(entry) -> PairContext:
    pair = decompose_kp(entry)
    cartan = verify_cartan_subspace(pair, entry.cartan_basis)
    roots = restricted_roots(pair, cartan)
    return PairContext(pair, cartan, roots)


@dataclass
class CriteriaReport:
    pair_id: str
    dims: dict
    roots: RestrictedRootData
    chamber_identities: bool
    chamber_dims: dict
    representatives: list
    theorem_null_p: bool
    theorem_equality: bool
    theorem_derived: bool
    random_perp_identity: bool
    root_bookkeeping: bool
    diagonal_reduction: dict | None
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def _expected_mismatches(rep: RepresentativeReport, expected: dict) -> list[str]:
    got = rep.flags()
    return [
        f"expected {key}={value} but computed {got[key]}"
        for key, value in sorted(expected.items())
        if key in got and got[key] != value
    ]


def verify_pair(ctx: PairContext, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> CriteriaReport:
    pair, cartan, roots = ctx.pair, ctx.cartan, ctx.roots
    entry = pair.entry
    failures = []
    reps = []
    for stored in entry.representatives:
        rep = analyze_element(pair, cartan, stored.element, stored.label, seed, samples)
        rep.expected_mismatches = _expected_mismatches(rep, stored.expected)
        reps.append(rep)
        tag = f"{stored.label}"
        if not rep.in_Np:
            failures.append(f"{tag}: representative is not in N(p)")
            continue
        if not rep.criteria_agree:
            failures.append(f"{tag}: (-1)-distinguishedness criteria disagree")
        if not rep.perp_identity:
            failures.append(f"{tag}: [k,x]^perp != p^x")
        if not rep.levi_instance:
            failures.append(f"{tag}: Levi decomposition of g^e fails")
        if rep.self_duality_bookkeeping is False:
            failures.append(f"{tag}: dim [k,e] + dim p^e != dim p")
        if rep.principal:
            if not rep.even:
                failures.append(f"{tag}: principal but not even")
            if not (rep.minus1_centralizer and rep.minus1_grading and rep.minus1_even):
                failures.append(f"{tag}: principal but not (-1)-distinguished by every criterion")
            if not rep.a_cap_gs_zero:
                failures.append(f"{tag}: principal but a meets g^s")
        if rep.minus1_centralizer and rep.centralizer_samples_nilpotent is False:
            failures.append(f"{tag}: sampled element of p^e is not nilpotent")
        if rep.minus1_centralizer is False and rep.witness is None:
            failures.append(f"{tag}: no semisimple witness found in p^s")
        for msg in rep.expected_mismatches:
            failures.append(f"{tag}: {msg}")

    principal = [r for r in reps if r.principal]
    theorem_null_p = all(r.minus1_centralizer for r in principal)
    theorem_equality = all(r.minus1_grading for r in principal)
    theorem_derived = all(r.minus1_even for r in principal)
    if not principal:
        failures.append("no principal representative in the catalog entry")

    chamber = verify_chamber_centralizers(pair, cartan, roots.chamber_c)
    if not chamber.ok:
        failures.append("chamber identities k^c = k^a, p^c = a fail")

    rng = rng_for(seed, pair.id, "perp-random")
    random_perp = True
    for _ in range(RANDOM_P_ELEMENTS):
        x = Element(pair.algebra, random_element(pair.p, rng))
        if not perp_identity_check(pair, x):
            random_perp = False
            failures.append("perp identity fails on a random element of p")
            break

    positive_mult = sum(roots.multiplicities[f] for f in roots.positives)
    bookkeeping = positive_mult == pair.p.dim - cartan.r
    if not bookkeeping:
        failures.append("sum of positive multiplicities != dim p - r")

    diagonal = None
    if entry.id == "sl2xsl2-diag":
        diagonal = _diagonal_reduction(ctx, reps)
        if not diagonal["agree"]:
            failures.append("diagonal reduction: verdicts disagree")

    return CriteriaReport(
        pair_id=pair.id,
        dims={"g": pair.algebra.dim, "k": pair.k.dim, "p": pair.p.dim, "r": cartan.r},
        roots=roots,
        chamber_identities=chamber.ok,
        chamber_dims={"k^c": chamber.k_c.dim, "k^a": chamber.k_a.dim, "p^c": chamber.p_c.dim},
        representatives=reps,
        theorem_null_p=theorem_null_p,
        theorem_equality=theorem_equality,
        theorem_derived=theorem_derived,
        random_perp_identity=random_perp,
        root_bookkeeping=bookkeeping,
        diagonal_reduction=diagonal,
        failures=failures,
    )


def _diagonal_reduction(ctx: PairContext, reps: list) -> dict:
    """Compare (-1)-distinguishedness of (y, -y) with distinguishedness of y in the factor."""
    from .catalog import build_sl

    sl2 = build_sl(2)
    alg = ctx.pair.algebra
    out = {"agree": True, "cases": []}
    for rep in reps:
        if rep.minus1_centralizer is None:
            continue
        m = alg.to_matrix(rep.triple.e)
        n = sl2.matrix_size
        y = sl2.from_matrix(m.submatrix(range(n), range(n)))
        verdict, d0, d2 = distinguished_via_grading(y)
        agree = verdict == rep.minus1_centralizer
        out["cases"].append({"label": rep.label, "minus1": rep.minus1_centralizer, "distinguished": verdict,
                             "dim_g0": d0, "dim_g2": d2})
        out["agree"] = out["agree"] and agree
    return out

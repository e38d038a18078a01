"""Real forms, Cayley triples and the compactness side of the Kostant-Sekiguchi correspondence."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .lie import Element, centralizer, killing_gram_on
from .linalg import Matrix, Subspace, is_negative_definite, is_positive_definite
from .scalar import I, Scalar
from .sl2 import NormalizedTriple, check_sl2_relations, complete_normalized_triple, triple_centralizers
from .theta import SymmetricPair

NO_REPRESENTATIVE = "no Cayley representative found under convention"
QUARTER_TURNS = (Scalar(1), I, Scalar(-1), -I)


class Convention(enum.Enum):
    """Sign convention tying the complex and real Cayley conditions together.

    PAPER: sigma(e) = -f and theta(e') = f'.
    ADJUSTED: sigma(e) = f and theta(e') = -f'.
    """

    PAPER = "paper"
    ADJUSTED = "adjusted"

    @property
    def sign(self) -> int:
        """sigma(e) = sign * f."""
        return 1 if self is Convention.ADJUSTED else -1


class CayleyError(ValueError):
    pass


class RealFormUnavailable(CayleyError):
    pass


@dataclass(frozen=True)
class RealFormContext:
    pair: SymmetricPair
    k_gram: Matrix
    p_gram: Matrix

    @property
    def algebra(self):
        return self.pair.algebra


def real_form_context(pair: SymmetricPair) -> RealFormContext:
    """Checks that coordinatewise conjugation is a theta-stable real form of Cartan type."""
    entry = pair.entry
    if not entry.real_form:
        raise RealFormUnavailable(f"{entry.id}: real form unavailable")
    alg = pair.algebra
    problems = []
    if not all(c.is_real() for row in alg.structure for v in row for c in v):
        problems.append("conjugation is not an automorphism")
    if not pair.theta.is_real():
        problems.append("conjugation does not commute with theta")
    if not (pair.k.basis.is_real() and pair.p.basis.is_real()):
        problems.append("k or p has no real basis")
    k_gram = killing_gram_on(pair.k, alg)
    p_gram = killing_gram_on(pair.p, alg)
    if not is_negative_definite(k_gram):
        problems.append("Killing form is not negative definite on k_R")
    if not is_positive_definite(p_gram):
        problems.append("Killing form is not positive definite on p_R")
    if problems:
        raise CayleyError(f"{entry.id}: " + "; ".join(problems))
    return RealFormContext(pair, k_gram, p_gram)


def sigma(ctx: RealFormContext, x: Element) -> Element:
    return x.conjugate()


@dataclass(frozen=True)
class RealTriple:
    e: Element
    h: Element
    f: Element

    def elements(self) -> tuple:
        return self.e, self.h, self.f


def is_complex_cayley(ctx: RealFormContext, triple: NormalizedTriple, convention: Convention) -> bool:
    s = convention.sign
    e, h, f = triple.elements()
    return sigma(ctx, e) == f * s and sigma(ctx, h) == -h and sigma(ctx, f) == e * s


def real_condition(ctx: RealFormContext, rt: RealTriple, convention: Convention) -> bool:
    th = ctx.pair.apply_theta
    if convention is Convention.PAPER:
        return th(rt.e) == rt.f
    return th(rt.e) == -rt.f and th(rt.h) == -rt.h


def cayley_real_from_complex(ctx: RealFormContext, triple: NormalizedTriple, convention: Convention) -> RealTriple:
    if not is_complex_cayley(ctx, triple, convention):
        raise CayleyError(f"not a Cayley triple under convention {convention.value}")
    e, h, f = triple.elements()
    half = Fraction(1, 2)
    if convention is Convention.PAPER:
        rt = RealTriple((e + f - h) * (I * half), e - f, (h + e + f) * (-I * half))
    else:
        rt = RealTriple((e + f + h * I) * half, (e - f) * I, (e + f - h * I) * half)
    if not all(x.is_real() for x in rt.elements()):
        raise CayleyError("non-real output")
    problems = check_sl2_relations(*rt.elements())
    if problems or not real_condition(ctx, rt, convention):
        raise CayleyError("real triple fails: " + "; ".join(problems or ["real condition"]))
    return rt


def cayley_complex_from_real(ctx: RealFormContext, rt: RealTriple, convention: Convention) -> NormalizedTriple:
    if not all(x.is_real() for x in rt.elements()) or check_sl2_relations(*rt.elements()):
        raise CayleyError("input is not a real sl2-triple")
    if not real_condition(ctx, rt, convention):
        raise CayleyError(f"real condition fails under convention {convention.value}")
    e1, h1, f1 = rt.elements()
    half = Fraction(1, 2)
    if convention is Convention.PAPER:
        h = (e1 + f1) * I
        e = (h1 - (e1 - f1) * I) * half
        f = (-h1 - (e1 - f1) * I) * half
    else:
        e = (e1 + f1 - h1 * I) * half
        f = (e1 + f1 + h1 * I) * half
        h = (f1 - e1) * I
    pair = ctx.pair
    if not (pair.in_k(h) and pair.in_p(e) and pair.in_p(f)) or check_sl2_relations(e, h, f):
        raise CayleyError("output is not a normalized triple")
    triple = NormalizedTriple(e, h, f, pair.algebra.span((e, h, f)))
    if not is_complex_cayley(ctx, triple, convention):
        raise CayleyError("output fails the complex condition")
    return triple


@dataclass(frozen=True)
class Compactness:
    compact: bool
    z: Subspace
    gram: Matrix


def compactness(ctx: RealFormContext, rt: RealTriple) -> Compactness:
    """Real centralizer z of the triple and the ambient Killing form on it."""
    z = centralizer(ctx.algebra.full_space(), rt.elements())
    if not z.basis.is_real():
        raise CayleyError("centralizer of a real triple has no real basis")
    gram = killing_gram_on(z, ctx.algebra)
    return Compactness(is_negative_definite(gram), z, gram)


def is_compact_element(ctx: RealFormContext, rt: RealTriple) -> bool:
    return compactness(ctx, rt).compact


def _sum_of_two_squares(n: int) -> tuple[int, int] | None:
    x = isqrt(n)
    while x >= 0:
        y2 = n - x * x
        y = isqrt(y2)
        if y * y == y2:
            return x, y
        x -= 1
    return None


def _proportionality(x: Element, y: Element) -> Scalar | None:
    """mu with x = mu y, or None."""
    k = next((j for j, c in enumerate(y.coords) if c), None)
    if k is None:
        return None
    mu = x.coords[k] / y.coords[k]
    return mu if x == y * mu else None


def cayley_scaling(ctx: RealFormContext, triple: NormalizedTriple, convention: Convention) -> tuple:
    """Find lambda with (lambda e, h, lambda^-1 f) complex Cayley; returns (lambda or None, probe log).

    sigma(e) = mu f gives sigma(lambda e) = conj(lambda) mu f, so the condition is
    |lambda|^2 mu = sign.  The four quarter turns are probed first; a Gaussian
    rational of the required modulus is searched when mu is not a unit.
    """
    log = []
    for lam in QUARTER_TURNS:
        ok = is_complex_cayley(ctx, triple.scaled(lam), convention)
        log.append((str(lam), ok))
        if ok:
            return lam, log
    mu = _proportionality(sigma(ctx, triple.e), triple.f)
    if mu is None or not mu.is_real():
        return None, log
    q = Fraction(convention.sign) / mu.re
    if q <= 0:
        return None, log
    rep = _sum_of_two_squares(q.numerator * q.denominator)
    if rep is None:
        return None, log
    lam = Scalar(Fraction(rep[0], q.denominator), Fraction(rep[1], q.denominator))
    ok = is_complex_cayley(ctx, triple.scaled(lam), convention)
    log.append((str(lam), ok))
    return (lam if ok else None), log


@dataclass
class KSRepresentative:
    label: str
    minus1: bool
    status: str
    scaling: Scalar | None = None
    probes: list = field(default_factory=list)
    complex_triple: NormalizedTriple | None = None
    real_triple: RealTriple | None = None
    round_trip: bool | None = None
    compact: bool | None = None
    z_dim: int | None = None
    gram: Matrix | None = None

    @property
    def agrees(self) -> bool | None:
        if self.compact is None:
            return None
        return self.compact == self.minus1


@dataclass
class KSReport:
    pair_id: str
    convention: Convention
    representatives: list

    @property
    def failures(self) -> list[str]:
        out = []
        for r in self.representatives:
            if r.status != "ok":
                out.append(f"{r.label}: {r.status}")
            elif not r.round_trip:
                out.append(f"{r.label}: Cayley round trip is not the identity")
            elif not r.agrees:
                out.append(f"{r.label}: compact={r.compact} but minus1={r.minus1}")
        return out

    @property
    def passed(self) -> bool:
        return not self.failures


def ks_for_element(ctx: RealFormContext, label: str, e: Element, convention: Convention) -> KSRepresentative:
    pair = ctx.pair
    triple = complete_normalized_triple(pair, e)
    minus1 = triple_centralizers(pair, triple)[2].is_zero()
    lam, probes = cayley_scaling(ctx, triple, convention)
    rep = KSRepresentative(label, minus1, "ok", lam, probes)
    if lam is None:
        rep.status = f"{NO_REPRESENTATIVE} {convention.value}"
        return rep
    ct = triple.scaled(lam)
    rt = cayley_real_from_complex(ctx, ct, convention)
    back = cayley_complex_from_real(ctx, rt, convention)
    comp = compactness(ctx, rt)
    rep.complex_triple = ct
    rep.real_triple = rt
    rep.round_trip = back.elements() == ct.elements()
    rep.compact = comp.compact
    rep.z_dim = comp.z.dim
    rep.gram = comp.gram
    return rep


def verify_ks_compact(pair: SymmetricPair, convention: Convention = Convention.ADJUSTED) -> KSReport:
    ctx = real_form_context(pair)
    reps = [ks_for_element(ctx, r.label, r.element, convention) for r in pair.entry.representatives]
    return KSReport(pair.id, convention, reps)


def expected_compact_mismatches(pair: SymmetricPair, report: KSReport) -> list[str]:
    expected = {r.label: r.expected.get("compact") for r in pair.entry.representatives}
    return [
        f"{r.label}: expected compact={expected[r.label]} but computed {r.compact}"
        for r in report.representatives
        if r.compact is not None and expected.get(r.label) is not None and expected[r.label] != r.compact
    ]


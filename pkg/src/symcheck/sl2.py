"""Normalized sl2-triples, the ad h grading and the Jacobson-Morozov parabolic."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .lie import (
    Element,
    ad_matrix,
    bracket,
    brackets_of,
    centralizer,
    derived_subspace,
    is_nilpotent_element,
)
from .linalg import Matrix, NonIntegralSpectrum, Subspace, integer_eigenvalues, solve_linear
from .theta import SymmetricPair


class TripleError(ValueError):
    """The element cannot start a normalized triple (zero, outside p, not nilpotent)."""


class InvariantViolation(RuntimeError):
    """A computation that theory guarantees to succeed did not."""


@dataclass(frozen=True)
class NormalizedTriple:
    e: Element
    h: Element
    f: Element
    s: Subspace

    def scaled(self, lam) -> "NormalizedTriple":
        """(lam e, h, lam^-1 f); still a normalized triple."""
        return NormalizedTriple(self.e * lam, self.h, self.f / lam, self.s)

    def elements(self) -> tuple:
        return self.e, self.h, self.f


def check_sl2_relations(e: Element, h: Element, f: Element) -> list[str]:
    problems = []
    if bracket(h, e) != e * 2:
        problems.append("[h,e] != 2e")
    if bracket(h, f) != f * -2:
        problems.append("[h,f] != -2f")
    if bracket(e, f) != h:
        problems.append("[e,f] != h")
    return problems


def _solve_h(e: Element) -> Element:
    # h0 = [e, y] with [h0, e] = 2e, i.e. (ad e)^2 y = -2e
    ad_e = ad_matrix(e)
    sol = solve_linear(ad_e @ ad_e, (e * -2).coords)
    if sol is None:
        raise InvariantViolation(f"no h in [e, g] with [h, e] = 2e for e = {e}")
    return Element(e.algebra, ad_e @ sol[0])


def _solve_f(e: Element, h: Element) -> Element:
    alg = e.algebra
    n = alg.dim
    ad_h = ad_matrix(h)
    shifted = ad_h + Matrix.identity(n).scale(2)
    system = shifted.stack(ad_matrix(e))
    rhs = (0,) * n + h.coords
    sol = solve_linear(system, rhs)
    if sol is None:
        raise InvariantViolation(f"no f with [h, f] = -2f and [e, f] = h for e = {e}")
    return Element(alg, sol[0])


def complete_sl2_triple(e: Element) -> tuple[Element, Element, Element]:
    """Morozov completion in the ambient algebra, with no involution involved."""
    if e.is_zero():
        raise TripleError("zero element")
    if not is_nilpotent_element(e):
        raise TripleError("element is not nilpotent")
    h = _solve_h(e)
    f = _solve_f(e, h)
    problems = check_sl2_relations(e, h, f)
    if problems:
        raise InvariantViolation("; ".join(problems))
    return e, h, f


def complete_normalized_triple(pair: SymmetricPair, e: Element) -> NormalizedTriple:
    """Complete e in N(p) to (e, h, f) with h in k and e, f in p.

    The raw solutions are always averaged over theta; all solves take the
    particular solution with free variables set to zero.
    """
    if e.is_zero():
        raise TripleError("zero element")
    if not pair.in_p(e):
        raise TripleError("element is not in p")
    if not is_nilpotent_element(e):
        raise TripleError("element is not nilpotent")
    h = pair.plus(_solve_h(e))
    f = pair.minus(_solve_f(e, h))
    problems = check_sl2_relations(e, h, f)
    if not pair.in_k(h):
        problems.append("h not in k")
    if not pair.in_p(f):
        problems.append("f not in p")
    if problems:
        raise InvariantViolation(f"triple completion for {e}: " + "; ".join(problems))
    s = pair.algebra.span((e, h, f))
    if s.dim != 3:
        raise InvariantViolation("triple does not span a 3-dimensional subalgebra")
    return NormalizedTriple(e, h, f, s)


@dataclass(frozen=True)
class HGrading:
    parts: dict
    plus: dict
    minus: dict
    ambient_dim: int

    def part(self, d: int) -> Subspace:
        return self.parts.get(d, Subspace.zero(self.ambient_dim))

    def dim(self, d: int) -> int:
        return self.part(d).dim

    def dim_plus(self, d: int) -> int:
        s = self.plus.get(d)
        return s.dim if s is not None else 0

    def dim_minus(self, d: int) -> int:
        s = self.minus.get(d)
        return s.dim if s is not None else 0

    def degrees(self) -> list[int]:
        return sorted(self.parts)

    def sum_of(self, predicate) -> Subspace:
        vecs = [v for d, s in self.parts.items() if predicate(d) for v in s]
        return Subspace.span(vecs, self.ambient_dim)


def grading_by_h(pair: SymmetricPair, h: Element) -> HGrading:
    spaces = integer_eigenvalues(ad_matrix(h), semisimple=True)
    parts = {}
    for lam, space in spaces.items():
        if not lam.is_real() or lam.re.denominator != 1:
            raise NonIntegralSpectrum(f"ad h has non-integer eigenvalue {lam}")
        parts[int(lam.re)] = space
    plus = {d: s & pair.k for d, s in parts.items()}
    minus = {d: s & pair.p for d, s in parts.items()}
    n = pair.algebra.dim
    if sum(s.dim for s in parts.values()) != n:
        raise InvariantViolation("graded parts do not fill g")
    for d in parts:
        if plus[d].dim + minus[d].dim != parts[d].dim:
            raise InvariantViolation(f"g_{d} is not theta-stable")
    return HGrading(dict(sorted(parts.items())), dict(sorted(plus.items())), dict(sorted(minus.items())), n)


def is_even(grading: HGrading) -> bool:
    return all(d % 2 == 0 for d, s in grading.parts.items() if s.dim)


def triple_centralizers(pair: SymmetricPair, triple: NormalizedTriple) -> tuple[Subspace, Subspace, Subspace]:
    """(g^s, k^s, p^s)."""
    elems = triple.elements()
    gs = centralizer(pair.algebra.full_space(), elems)
    ks = centralizer(pair.k, elems)
    ps = centralizer(pair.p, elems)
    if ks.dim + ps.dim != gs.dim:
        raise InvariantViolation("g^s is not the sum of its k and p parts")
    return gs, ks, ps


@dataclass(frozen=True)
class JMParabolic:
    q: Subspace
    l: Subspace
    u: Subspace
    derived_u: Subspace


def jm_parabolic(pair: SymmetricPair, grading: HGrading) -> JMParabolic:
    alg = pair.algebra
    q = grading.sum_of(lambda d: d >= 0)
    l = grading.part(0)
    u = grading.sum_of(lambda d: d > 0)
    du = derived_subspace(u, alg)
    if not u.contains(du):
        raise InvariantViolation("[u, u] is not contained in u")
    return JMParabolic(q, l, u, du)


def kostant_centralizer_dim(grading: HGrading) -> int:
    """dim g^e read off the grading: sum over d >= 0 of dim g_d - dim g_{d+2}."""
    return sum(grading.dim(d) - grading.dim(d + 2) for d in grading.parts if d >= 0)


def random_element(space: Subspace, rng: random.Random, low: int = -5, high: int = 5) -> tuple:
    """Seeded random vector of ``space`` with small integer coefficients, never zero."""
    if space.is_zero():
        return (0,) * space.ambient_dim
    while True:
        coeffs = [rng.randint(low, high) for _ in range(space.dim)]
        if any(coeffs):
            return space.combination(coeffs)


@dataclass(frozen=True)
class LeviCheck:
    ok: bool
    dim_ge: int
    dim_gs: int
    dim_ue: int
    kostant_dim: int
    failures: tuple = field(default_factory=tuple)


def levi_instance_check(
    pair: SymmetricPair,
    e: Element,
    triple: NormalizedTriple,
    rng: random.Random | None = None,
    samples: int = 100,
    grading: HGrading | None = None,
) -> LeviCheck:
    """g^e = g^s + u_e with u_e = g^e in positive degrees, u_e nilpotent and normalized by g^e."""
    alg = pair.algebra
    rng = rng or random.Random(0)
    grading = grading or grading_by_h(pair, triple.h)
    ge = centralizer(alg.full_space(), [e])
    gs, _, _ = triple_centralizers(pair, triple)
    positive = grading.sum_of(lambda d: d >= 1)
    ue = ge & positive
    failures = []
    if not (gs & ue).is_zero():
        failures.append("g^s and u_e intersect")
    if gs + ue != ge:
        failures.append("g^s + u_e != g^e")
    if not ue.contains(brackets_of(ge, ue, alg)):
        failures.append("[g^e, u_e] not in u_e")
    for _ in range(samples if ue.dim else 0):
        x = Element(alg, random_element(ue, rng))
        if not is_nilpotent_element(x):
            failures.append("non-nilpotent sample in u_e")
            break
    kd = kostant_centralizer_dim(grading)
    if kd != ge.dim:
        failures.append(f"Kostant bookkeeping gives {kd}, centralizer has dim {ge.dim}")
    return LeviCheck(not failures, ge.dim, gs.dim, ue.dim, kd, tuple(failures))

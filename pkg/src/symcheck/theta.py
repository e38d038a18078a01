"""The k/p split, Cartan subspaces, restricted roots and the chamber element."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .catalog import CatalogEntry, apply_linear
from .lie import Element, LieAlgebra, ad_matrix, bracket, centralizer, is_semisimple_element
from .linalg import (
    Matrix,
    NonIntegralSpectrum,
    Subspace,
    integer_eigenvalues,
    kernel,
    poly_format,
    restrict_operator,
    solve_linear,
)
from .scalar import Scalar


class StructureError(ValueError):
    """A structural expectation on the pair failed; carries a witness when useful."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class SymmetricPair:
    entry: CatalogEntry
    k: Subspace
    p: Subspace
    killing_gram: Matrix

    @property
    def id(self) -> str:
        return self.entry.id

    @property
    def algebra(self) -> LieAlgebra:
        return self.entry.algebra

    @property
    def theta(self) -> Matrix:
        return self.entry.theta

    def apply_theta(self, x: Element) -> Element:
        return apply_linear(self.entry.theta, x)

    def plus(self, x: Element) -> Element:
        """Projection onto k."""
        return (x + self.apply_theta(x)) / 2

    def minus(self, x: Element) -> Element:
        """Projection onto p."""
        return (x - self.apply_theta(x)) / 2

    def in_k(self, x: Element) -> bool:
        return self.apply_theta(x) == x

    def in_p(self, x: Element) -> bool:
        return self.apply_theta(x) == -x

    def k_part(self, space: Subspace) -> Subspace:
        return space & self.k

    def p_part(self, space: Subspace) -> Subspace:
        return space & self.p

    @property
    def dims(self) -> dict:
        return {"g": self.algebra.dim, "k": self.k.dim, "p": self.p.dim}


def decompose_kp(entry: CatalogEntry) -> SymmetricPair:
    alg = entry.algebra
    n = alg.dim
    eye = Matrix.identity(n)
    theta = entry.theta
    if theta @ theta != eye:
        raise StructureError("theta is not an involution")
    k = kernel(theta - eye)
    p = kernel(theta + eye)
    if k.dim + p.dim != n or not (k & p).is_zero():
        raise StructureError(f"k + p is not a direct decomposition ({k.dim} + {p.dim} != {n})")
    if p.is_zero():
        raise StructureError("p = 0: theta is the identity")
    pair = SymmetricPair(entry, k, p, alg.killing_gram)
    ks, ps = alg.elements_of(k), alg.elements_of(p)
    for a, b, target, label in ((ks, ks, k, "[k,k] in k"), (ks, ps, p, "[k,p] in p"), (ps, ps, k, "[p,p] in k")):
        for x in a:
            for y in b:
                if bracket(x, y).coords not in target:
                    raise StructureError(f"grading violated: {label}", witness=(x, y))
    return pair


@dataclass(frozen=True)
class CartanSubspaceData:
    a: Subspace
    r: int
    basis: tuple


def verify_cartan_subspace(pair: SymmetricPair, a_basis: Sequence[Element]) -> CartanSubspaceData:
    a_basis = tuple(a_basis)
    for x in a_basis:
        if not pair.in_p(x):
            raise StructureError("cartan basis element is not in p", witness=x)
    for i, x in enumerate(a_basis):
        for y in a_basis[i + 1:]:
            if not bracket(x, y).is_zero():
                raise StructureError("not abelian", witness=(x, y))
    for x in a_basis:
        if not is_semisimple_element(x):
            raise StructureError("not toral", witness=x)
    a = pair.algebra.span(a_basis)
    if a.dim != len(a_basis):
        raise StructureError("cartan basis is linearly dependent")
    pa = centralizer(pair.p, a_basis)
    if pa != a:
        extra = next(v for v in pa if v not in a)
        raise StructureError("not maximal", witness=Element(pair.algebra, extra))
    return CartanSubspaceData(a, len(a_basis), a_basis)


@dataclass(frozen=True)
class RestrictedRoot:
    functional: tuple  # values on the cartan basis
    space: Subspace
    multiplicity: int


@dataclass(frozen=True)
class RestrictedRootData:
    roots: tuple
    zero_space: Subspace
    positives: tuple
    simples: tuple
    chamber_c: Element
    order_base: int

    def root(self, functional: tuple) -> RestrictedRoot | None:
        return next((r for r in self.roots if r.functional == functional), None)

    @property
    def multiplicities(self) -> dict:
        return {r.functional: r.multiplicity for r in self.roots}

    @property
    def reduced(self) -> bool:
        funcs = {r.functional for r in self.roots}
        return not any(tuple(2 * x for x in f) in funcs for f in funcs)


def _joint_eigenspaces(alg: LieAlgebra, elements: Sequence[Element]) -> dict[tuple, Subspace]:
    spaces = {(): alg.full_space()}
    for x in elements:
        ad = ad_matrix(x)
        refined = {}
        for vals, space in spaces.items():
            local = restrict_operator(ad, space)
            try:
                eig = integer_eigenvalues(local, semisimple=True)
            except NonIntegralSpectrum as exc:
                raise NonIntegralSpectrum(
                    f"ad of cartan element {x} has non-integral spectrum: residual {poly_format(exc.residual)}",
                    exc.residual,
                ) from None
            for lam, sub in eig.items():
                if not lam.is_real() or lam.re.denominator != 1:
                    raise NonIntegralSpectrum(f"eigenvalue {lam} of ad {x} is not a rational integer", ())
                ambient = Subspace.span([space.combination(w) for w in sub], alg.dim)
                refined[vals + (int(lam.re),)] = ambient
        spaces = refined
    return spaces


def restricted_roots(pair: SymmetricPair, cartan: CartanSubspaceData) -> RestrictedRootData:
    alg = pair.algebra
    spaces = _joint_eigenspaces(alg, cartan.basis)
    zero = (0,) * cartan.r
    zero_space = spaces.pop(zero, Subspace.zero(alg.dim))
    roots = tuple(
        RestrictedRoot(f, s, s.dim) for f, s in sorted(spaces.items())
    )
    total = zero_space.dim + sum(r.multiplicity for r in roots)
    if total != alg.dim:
        raise StructureError(f"root decomposition fills {total} of {alg.dim}")
    for r in roots:
        neg = tuple(-x for x in r.functional)
        other = spaces.get(neg)
        if other is None or other.dim != r.multiplicity:
            raise StructureError(f"theta pairing fails for root {r.functional}")
        for v in r.space:
            if pair.theta @ v not in other:
                raise StructureError(f"theta does not map the {r.functional}-space onto the opposite space")
    positives, simples, base = simple_system(roots, cartan.r)
    c = chamber_element(cartan, simples)
    return RestrictedRootData(roots, zero_space, positives, simples, c, base)


def _indivisible(f: tuple, funcs: set) -> bool:
    if any(x % 2 for x in f):
        return True
    return tuple(x // 2 for x in f) not in funcs


def simple_system(roots: Sequence[RestrictedRoot], r: int, base: int = 10000) -> tuple[tuple, tuple, int]:
    """Positive roots and simple roots for the order l(a) = sum_j base^j a_j."""
    funcs = [rt.functional for rt in roots]
    if not funcs:
        raise StructureError("empty root system")
    while True:
        values = [sum(base ** j * x for j, x in enumerate(f)) for f in funcs]
        if 0 not in values and len(set(values)) == len(values):
            break
        base *= 10
    positives = tuple(f for f, v in sorted(zip(funcs, values), key=lambda t: t[1]) if v > 0)
    pos_set = set(positives)
    sums = {tuple(a + b for a, b in zip(x, y)) for x in positives for y in positives}
    simples = tuple(f for f in positives if _indivisible(f, pos_set) and f not in sums)
    if len(simples) != r:
        raise StructureError(f"found {len(simples)} simple roots, expected {r}")
    return positives, simples, base


def chamber_element(cartan: CartanSubspaceData, simples: Sequence[tuple]) -> Element:
    """The unique c in a with alpha(c) = 2 for every simple alpha."""
    if len(simples) != cartan.r:
        raise StructureError("need exactly r simple roots")
    system = Matrix([list(f) for f in simples], cartan.r)
    sol = solve_linear(system, [2] * cartan.r)
    if sol is None or not sol[1].is_zero():
        raise StructureError("simple roots do not determine a unique chamber element")
    x, _ = sol
    alg = cartan.basis[0].algebra
    c = alg.zero()
    for coef, b in zip(x, cartan.basis):
        c = c + b * coef
    return c


@dataclass(frozen=True)
class ChamberCheck:
    ok: bool
    k_c: Subspace
    k_a: Subspace
    p_c: Subspace


def verify_chamber_centralizers(pair: SymmetricPair, cartan: CartanSubspaceData, c: Element) -> ChamberCheck:
    k_c = centralizer(pair.k, [c])
    k_a = centralizer(pair.k, cartan.basis)
    p_c = centralizer(pair.p, [c])
    return ChamberCheck(k_c == k_a and p_c == cartan.a, k_c, k_a, p_c)


def functional_value(f: tuple, cartan: CartanSubspaceData, x: Element) -> Scalar:
    """alpha(x) for x in a, alpha given by its values on the cartan basis."""
    coords = cartan.a.coordinates(x.coords)
    # coordinates are in the echelon basis; rewrite them in the cartan basis
    mat = Matrix.from_columns([cartan.a.coordinates(b.coords) for b in cartan.basis])
    sol = solve_linear(mat, coords)
    total = Scalar(0)
    for value, coef in zip(f, sol[0]):
        total = total + coef * value
    return total

"""Concrete algebras A in A(m, Gamma) stored by their canonical coefficient tables.

Built from arbitrary generators by closing the span under multiplication in
F = K[x]/(x^m) and reducing it to row echelon form with the lowest-degree term
as pivot; the reduced rows are exactly the canonical basis {1, f_gamma}.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Mapping, Sequence

from pydantic import ValidationError
from sympy.polys.matrices import DomainMatrix

from coartin.core.exactfield import FieldSpec, Scalar
from coartin.core.truncpoly import ConductorElement, Polynomial, TruncPoly, split_conductor
from coartin.errors import InternalComputationError, InvalidInputError, NotInAmError
from coartin.services.power_basis import PowerBasis, identity_matrix
from coartin.services.semigroup import Gamma, GammaStructure, Vector, structure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CanonicalAlgebra:
    field: FieldSpec
    gamma: Gamma
    # ((gamma, delta), lambda) for every gamma in Gamma and delta in C(Gamma)(gamma), sorted
    lambdas: tuple[tuple[tuple[int, int], Scalar], ...]

    @property
    def m(self) -> int:
        return self.gamma.m

    @property
    def dimension(self) -> int:
        """dim_K of A / x^m K[x]."""
        return 1 + len(self.gamma.members)

    @cached_property
    def lambda_table(self) -> dict[tuple[int, int], Scalar]:
        return dict(self.lambdas)

    def lambda_at(self, gamma: int, delta: int) -> Scalar:
        return self.lambda_table.get((gamma, delta), self.field.zero)

    @cached_property
    def basis(self) -> dict[int, TruncPoly]:
        """f_gamma = x^gamma + sum_delta lambda_{gamma delta} x^delta."""
        K = self.field.domain
        out = {}
        for g in self.gamma.members:
            coeffs = [K.zero] * self.m
            coeffs[g] = K.one
            for d in self.gamma.c_gamma_after(g):
                coeffs[d] = self.lambda_at(g, d)
            out[g] = TruncPoly(self.m, tuple(coeffs), K)
        return out

    @cached_property
    def units(self) -> dict[int, TruncPoly]:
        """Canonical units u_gamma = 1 + sum_delta lambda_{gamma delta} x^(delta - gamma)."""
        K = self.field.domain
        out = {}
        for g in self.gamma.members:
            coeffs = [K.zero] * self.m
            coeffs[0] = K.one
            for d in self.gamma.c_gamma_after(g):
                coeffs[d - g] = self.lambda_at(g, d)
            out[g] = TruncPoly(self.m, tuple(coeffs), K)
        return out

    @cached_property
    def structure(self) -> GammaStructure:
        return structure(self.gamma)

    @cached_property
    def power_basis(self) -> PowerBasis:
        g = self.structure
        return PowerBasis(g, {nu: self.basis[nu] for nu in g.ind}, self.field.domain)

    @property
    def is_monomial(self) -> bool:
        return all(self.field.is_zero(value) for _, value in self.lambdas)

    def nonzero_lambdas(self, gamma: int) -> dict[int, Scalar]:
        return {
            d: self.lambda_at(gamma, d)
            for d in self.gamma.c_gamma_after(gamma)
            if not self.field.is_zero(self.lambda_at(gamma, d))
        }


def _lambda_entries(gamma: Gamma, table: Mapping[tuple[int, int], Scalar], field: FieldSpec):
    return tuple(
        ((g, d), table.get((g, d), field.zero))
        for g in gamma.members
        for d in gamma.c_gamma_after(g)
    )


def _echelon(rows: Sequence[TruncPoly], field: FieldSpec, m: int) -> tuple[list[TruncPoly], tuple[int, ...]]:
    """Reduced row echelon form with columns in increasing degree, zero rows dropped."""
    K = field.domain
    matrix = DomainMatrix([list(r.coeffs) for r in rows], (len(rows), m), K)
    reduced, pivots = matrix.rref()
    entries = reduced.to_list()
    return [TruncPoly(m, tuple(entries[i]), K) for i in range(len(pivots))], tuple(pivots)


def from_generators(field: FieldSpec, m: int, gens: Sequence[Polynomial | TruncPoly]) -> CanonicalAlgebra:
    """The subalgebra of K[x] generated by gens and x^m K[x], in canonical form."""
    if m < 2:
        raise InvalidInputError(f"m must be at least 2, got {m}")
    K = field.domain
    rows = [TruncPoly.one(m, K)]
    for g in gens:
        reduced = g if isinstance(g, TruncPoly) else g.truncate(m)
        if reduced.m != m:
            raise InvalidInputError(f"generator lives in F_{reduced.m}, expected F_{m}")
        rows.append(reduced - TruncPoly.monomial(m, 0, K, reduced.coefficient(0)))

    basis, pivots = _echelon(rows, field, m)
    rounds = 0
    while True:
        rounds += 1
        positive = [r for r in basis if r.order()]
        products = [a * b for i, a in enumerate(positive) for b in positive[i:]]
        grown, grown_pivots = _echelon(basis + [p for p in products if not p.is_zero()], field, m)
        if len(grown) == len(basis):
            break
        basis, pivots = grown, grown_pivots
    logger.debug(f"Closure for m={m} stabilised after {rounds} rounds at dimension {len(basis)}")

    if 1 in pivots:
        raise NotInAmError("the algebra contains an element of order 1, so it is not in A(m)")
    if m - 1 in pivots:
        raise NotInAmError(f"x^{m - 1} lies in the algebra, so its conductor is smaller than x^{m}")
    try:
        gamma = Gamma(m=m, members=pivots[1:])
    except ValidationError as e:
        raise InternalComputationError(f"closure produced an invalid semigroup {pivots[1:]}: {e}")

    rows_by_pivot = dict(zip(pivots, basis))
    table = {
        (g, d): rows_by_pivot[g].coefficient(d)
        for g in gamma.members
        for d in gamma.c_gamma_after(g)
    }
    algebra = CanonicalAlgebra(field, gamma, _lambda_entries(gamma, table, field))
    if any(algebra.basis[g] != rows_by_pivot[g] for g in gamma.members):
        raise InternalComputationError("echelon rows are not in canonical shape")
    logger.info(f"Canonical algebra over {field.label}: m={m} Gamma={list(gamma.members)}")
    return algebra


def from_lambdas(field: FieldSpec, gamma: Gamma, table: Mapping[tuple[int, int], Any]) -> CanonicalAlgebra:
    """Builds A from a coefficient table, rejecting tables whose span is not closed."""
    valid = {(g, d) for g in gamma.members for d in gamma.c_gamma_after(g)}
    unknown = sorted(set(table) - valid)
    if unknown:
        raise InvalidInputError(f"coefficients {unknown} are not canonical positions for Gamma={list(gamma.members)}")
    converted = {key: field.scalar(value) for key, value in table.items()}
    algebra = CanonicalAlgebra(field, gamma, _lambda_entries(gamma, converted, field))
    for i, g1 in enumerate(gamma.members):
        for g2 in gamma.members[i:]:
            if not membership(algebra, algebra.basis[g1] * algebra.basis[g2]).member:
                raise InvalidInputError(f"f_{g1} * f_{g2} leaves the span: the table is not an algebra")
    return algebra


def from_indecomposable_coordinates(
    field: FieldSpec, gamma: Gamma, coords: Mapping[tuple[int, int], Any]
) -> CanonicalAlgebra:
    """Generates A from f_nu = x^nu + sum_j lambda_{nu, j} x^j and requires Gamma_A = Gamma."""
    g = structure(gamma)
    K = field.domain
    gens = []
    for nu in g.ind:
        coeffs = [K.zero] * gamma.m
        coeffs[nu] = K.one
        for j in gamma.c_gamma_after(nu):
            coeffs[j] = field.scalar(coords.get((nu, j), 0))
        gens.append(TruncPoly(gamma.m, tuple(coeffs), K))
    algebra = from_generators(field, gamma.m, gens)
    if algebra.gamma != gamma:
        raise InvalidInputError(
            f"coordinates generate Gamma={list(algebra.gamma.members)}, not {list(gamma.members)}"
        )
    return algebra


def monomial(field: FieldSpec, gamma: Gamma) -> CanonicalAlgebra:
    return CanonicalAlgebra(field, gamma, _lambda_entries(gamma, {}, field))


@dataclass(frozen=True)
class MembershipCertificate:
    member: bool
    constant: Scalar
    coords: dict[int, Scalar]
    conductor: ConductorElement


def membership(algebra: CanonicalAlgebra, p: Polynomial | TruncPoly) -> MembershipCertificate:
    """p lies in A iff its part below x^m is in span{1, f_gamma}."""
    m, K = algebra.m, algebra.field.domain
    if isinstance(p, TruncPoly):
        bar, conductor = p, ConductorElement.zero(m, K)
    else:
        bar, conductor = split_conductor(p, m)
    constant = bar.coefficient(0)
    residual = bar - TruncPoly.monomial(m, 0, K, constant)
    coords = {}
    for g in algebra.gamma.members:
        c = residual.coefficient(g)
        coords[g] = c
        residual = residual - algebra.basis[g].scale(c)
    return MembershipCertificate(residual.is_zero(), constant, coords, conductor)


def product_coefficient(algebra: CanonicalAlgebra, g1: int, g2: int, xi: int) -> Scalar:
    """Coefficient of x^xi in f_{g1} f_{g2}, by the closed lambda formula."""
    gamma = algebra.gamma
    value = algebra.field.zero
    if xi - g2 in gamma.c_gamma_after(g1):
        value += algebra.lambda_at(g1, xi - g2)
    if xi - g1 in gamma.c_gamma_after(g2):
        value += algebra.lambda_at(g2, xi - g1)
    for d1 in gamma.c_gamma_after(g1):
        d2 = xi - d1
        if d2 in gamma.c_gamma_after(g2):
            value += algebra.lambda_at(g1, d1) * algebra.lambda_at(g2, d2)
    return value


def structure_constants(algebra: CanonicalAlgebra) -> dict[tuple[int, int], dict[int, Scalar] | None]:
    """mu_{g1, g2; rho} with f_{g1} f_{g2} = f_{g1+g2} + sum_rho mu f_rho; None where the product is 0 in F."""
    gamma, m = algebra.gamma, algebra.m
    constants: dict[tuple[int, int], dict[int, Scalar] | None] = {}
    for i, g1 in enumerate(gamma.members):
        for g2 in gamma.members[i:]:
            product = algebra.basis[g1] * algebra.basis[g2]
            if g1 + g2 >= m - 1:
                if not product.is_zero():
                    raise InternalComputationError(f"f_{g1} f_{g2} should vanish in F_{m}")
                constants[(g1, g2)] = None
                continue
            top = g1 + g2
            closed = {rho: product_coefficient(algebra, g1, g2, rho) for rho in gamma.gamma_after(top)}
            certificate = membership(algebra, product)
            direct = {rho: certificate.coords[rho] for rho in gamma.gamma_after(top)}
            if not certificate.member or certificate.coords[top] != algebra.field.one or closed != direct:
                raise InternalComputationError(f"structure constants of f_{g1} f_{g2} disagree")
            constants[(g1, g2)] = closed
    return constants


def verify_lambda_recursion(algebra: CanonicalAlgebra) -> None:
    """lambda_{g1+g2, delta} = lambda_{g1, g2; delta} - sum_rho mu_rho lambda_{rho delta} for g1 + g2 < m - 1."""
    gamma, m = algebra.gamma, algebra.m
    constants = structure_constants(algebra)
    for (g1, g2), mu in constants.items():
        if mu is None:
            continue
        top = g1 + g2
        for delta in gamma.c_gamma_after(top):
            expected = product_coefficient(algebra, g1, g2, delta)
            for rho in gamma.gamma_between(top, delta):
                expected -= mu[rho] * algebra.lambda_at(rho, delta)
            if expected != algebra.lambda_at(top, delta):
                raise InternalComputationError(
                    f"lambda recursion fails at ({top}, {delta}) from f_{g1} f_{g2} for m={m}"
                )


@dataclass(frozen=True)
class PowerExpansion:
    value: TruncPoly
    degree: int
    coords: dict[int, Scalar]


def expand_power(algebra: CanonicalAlgebra, a: Vector) -> PowerExpansion:
    """f^a in F and, when a.nu < m, its coordinates f^a = f_{a.nu} + sum c_{gamma'}(f^a) f_{gamma'}."""
    g = algebra.structure
    if len(a) != g.s or any(k < 0 for k in a) or not any(a):
        raise InvalidInputError(f"exponent vector {a} must be a nonzero element of N^{g.s}")
    value = algebra.power_basis.power(a)
    degree = g.degree(a)
    if degree >= algebra.m:
        if not value.is_zero():
            raise InternalComputationError(f"f^{a} of degree {degree} should vanish in F_{algebra.m}")
        return PowerExpansion(value, degree, {})
    coords = {g2: value.coefficient(g2) for g2 in algebra.gamma.gamma_after(degree)}
    rebuilt = algebra.basis[degree]
    for g2, c in coords.items():
        rebuilt = rebuilt + algebra.basis[g2].scale(c)
    if rebuilt != value:
        raise InternalComputationError(f"f^{a} is not f_{degree} plus higher basis elements")
    return PowerExpansion(value, degree, coords)


def eta_coefficients(algebra: CanonicalAlgebra) -> dict[tuple[int, int], Scalar]:
    """eta with f_gamma = f^{a(gamma)} + sum_{gamma' > gamma} eta_{gamma gamma'} f^{a(gamma')}."""
    if algebra.gamma.is_empty:
        raise InvalidInputError("eta coefficients need a nonempty Gamma")
    basis_power = algebra.power_basis
    C, inverse = basis_power.basis_change()
    if (C * inverse).to_list() != identity_matrix(len(algebra.gamma.members), algebra.field.domain).to_list():
        raise InternalComputationError("basis change inverse is wrong")
    eta = basis_power.eta()
    for g in algebra.gamma.members:
        direct, remainder = basis_power.solve(
            algebra.basis[g] - basis_power.chosen_power(g), algebra.gamma.gamma_after(g)
        )
        if not remainder.is_zero():
            raise InternalComputationError(f"f_{g} is not spanned by the chosen powers")
        if any(direct[g2] != eta[(g, g2)] for g2 in direct):
            raise InternalComputationError(f"eta for f_{g} differs between the matrix and direct solves")
    return eta


def theta_coefficients(algebra: CanonicalAlgebra, gamma: int, b: Vector) -> dict[int, Scalar]:
    """theta with f^b = f^{a(gamma)} + sum_{gamma' > gamma} theta_{gamma, gamma'; b} f^{a(gamma')}."""
    g = algebra.structure
    b = tuple(b)
    if gamma not in g.dec_ge2 or b not in g.rel[gamma] or b == g.a_choice[gamma]:
        raise InvalidInputError(f"({gamma}, {b}) is not a pair gamma in dec>=2, b in Rel(gamma) - a(gamma)")
    basis_power = algebra.power_basis
    recursive, remainder = basis_power.theta_recursive(gamma, b)
    if not remainder.is_zero():
        raise InternalComputationError(f"f^{b} - f^a({gamma}) is not spanned by the chosen powers")
    closed = basis_power.theta_closed(gamma, b, basis_power.eta())
    if closed != recursive:
        raise InternalComputationError(f"closed and recursive theta disagree for ({gamma}, {b})")
    return recursive


def product_eta(algebra: CanonicalAlgebra) -> dict[tuple[int, int, int], Scalar]:
    """eta_{nu, a(gamma); delta} with f_nu f^{a(gamma)} = f^{a(nu+gamma)} + sum eta f^{a(delta)}."""
    g = algebra.structure
    out = {}
    for nu in g.ind:
        for gamma in algebra.gamma.members:
            if nu + gamma >= algebra.m:
                continue
            coefficients, remainder = algebra.power_basis.product_eta(nu, gamma)
            if not remainder.is_zero():
                raise InternalComputationError(f"f_{nu} f^a({gamma}) leaves the span")
            out.update({(nu, gamma, delta): c for delta, c in coefficients.items()})
    return out

"""Defining equations of the affine variety A(m, Gamma) in the coordinates lambda_{nu, j}.

The indecomposable basis elements are written with one ring variable per
coefficient, l_{nu}_{j} for j in C(Gamma)(nu), and the power-basis engine runs
over the polynomial ring K[l]. Both equation systems come out of its
division-free unitriangular solves.
"""
import logging
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Iterable, Mapping

from sympy import Symbol
from sympy.polys.domains.domain import Domain
from sympy.polys.orderings import grlex

from coartin.core.exactfield import FieldSpec, Scalar, p_coprime_divisor
from coartin.core.truncpoly import TruncPoly
from coartin.errors import InternalComputationError, InvalidInputError, WrongCaseError
from coartin.services.power_basis import PowerBasis
from coartin.services.semigroup import CaseTag, Gamma, GammaStructure, Vector, order_set_l, relation_rank, structure
from coartin.services.subalgebra import CanonicalAlgebra, from_indecomposable_coordinates
from coartin.services.subalgebra import monomial as monomial_algebra

logger = logging.getLogger(__name__)

Variable = tuple[int, int]
SymPoly = Any


def variable_name(variable: Variable) -> str:
    nu, j = variable
    return f"l_{nu}_{j}"


@dataclass(frozen=True)
class SymbolicAlgebra:
    """The generic algebra of A(m, Gamma): f_nu = x^nu + sum_j l_{nu}_{j} x^j over K[l]."""

    field: FieldSpec
    structure: GammaStructure

    @cached_property
    def variables(self) -> tuple[Variable, ...]:
        g = self.structure
        return tuple((nu, j) for nu in g.ind for j in g.gamma.c_gamma_after(nu))

    @cached_property
    def ring(self) -> Domain:
        symbols = [Symbol(variable_name(v)) for v in self.variables]
        return self.field.domain.poly_ring(*symbols, order=grlex)

    @cached_property
    def generators(self) -> dict[Variable, SymPoly]:
        return dict(zip(self.variables, self.ring.gens))

    @cached_property
    def power_basis(self) -> PowerBasis:
        g, R = self.structure, self.ring
        basis = {}
        for nu in g.ind:
            coeffs = [R.zero] * g.m
            coeffs[nu] = R.one
            for j in g.gamma.c_gamma_after(nu):
                coeffs[j] = self.generators[(nu, j)]
            basis[nu] = TruncPoly(g.m, tuple(coeffs), R)
        return PowerBasis(g, basis, R)

    def variables_of(self, poly: SymPoly) -> set[Variable]:
        return {
            self.variables[k]
            for monomial, _ in poly.terms()
            for k, e in enumerate(monomial)
            if e
        }


@lru_cache(maxsize=64)
def symbolic_algebra(g: GammaStructure, field: FieldSpec) -> SymbolicAlgebra:
    return SymbolicAlgebra(field, g)


@dataclass(frozen=True)
class Equation:
    """The coefficient of x^index of a difference whose leading term sits at x^degree."""

    poly: SymPoly
    degree: int
    index: int
    source: str

    @property
    def weight(self) -> int:
        """Torus weight every monomial of the equation carries."""
        return self.index - self.degree


def _require_general(g: GammaStructure, operation: str) -> None:
    if g.case is not CaseTag.GENERAL:
        raise WrongCaseError(
            f"{operation} needs |ind| >= 2 and dec>=2 nonempty; case {g.case.value} is an affine space, use affine_space_case"
        )


def symbolic_eta(g: GammaStructure, field: FieldSpec = FieldSpec()) -> dict[tuple[int, int, int], SymPoly]:
    """eta_{nu, a(gamma); delta} of f_nu f^a(gamma) = f^a(nu+gamma) + sum_delta eta f^a(delta), over K[l]."""
    algebra = symbolic_algebra(g, field)
    out = {}
    for nu in g.ind:
        for gamma in g.gamma.members:
            if nu + gamma >= g.m:
                continue
            coefficients, _ = algebra.power_basis.product_eta(nu, gamma)
            for delta, poly in coefficients.items():
                late = [v for v in algebra.variables_of(poly) if v[1] >= delta]
                if late:
                    raise InternalComputationError(f"eta({nu}, {gamma}; {delta}) involves {late} beyond x^{delta}")
                out[(nu, gamma, delta)] = poly
    return out


def symbolic_eta_basis(g: GammaStructure, field: FieldSpec = FieldSpec()) -> dict[tuple[int, int], SymPoly]:
    """eta_{gamma gamma'} of f_gamma = f^a(gamma) + sum eta f^a(gamma'), over K[l]."""
    return symbolic_algebra(g, field).power_basis.eta()


def symbolic_theta(g: GammaStructure, field: FieldSpec = FieldSpec()) -> dict[tuple[int, int, Vector], SymPoly]:
    """theta_{gamma, gamma'; b} over K[l], checked against the closed form built from symbolic eta."""
    if not g.dec_ge2:
        raise WrongCaseError("symbolic theta needs dec>=2 nonempty")
    basis = symbolic_algebra(g, field).power_basis
    eta = basis.eta()
    out = {}
    for gamma in g.dec_ge2:
        for b in g.rel[gamma]:
            if b == g.a_choice[gamma]:
                continue
            recursive, _ = basis.theta_recursive(gamma, b)
            if basis.theta_closed(gamma, b, eta) != recursive:
                raise InternalComputationError(f"closed and recursive symbolic theta disagree for ({gamma}, {b})")
            out.update({(gamma, g2, b): poly for g2, poly in recursive.items()})
    return out


def equations_xx(g: GammaStructure, field: FieldSpec = FieldSpec()) -> list[Equation]:
    """c_j(f_nu f^a(gamma) - f^a(nu+gamma) - sum eta f^a(delta)) = 0 where e_nu + a(gamma) != a(nu+gamma)."""
    _require_general(g, "equations_xx")
    basis = symbolic_algebra(g, field).power_basis
    equations = []
    for i, nu in enumerate(g.ind):
        for gamma in g.gamma.members:
            top = nu + gamma
            if top >= g.m:
                continue
            shifted = tuple(a + (1 if k == i else 0) for k, a in enumerate(g.a_choice[gamma]))
            if shifted == g.a_choice[top]:
                continue
            _, remainder = basis.product_eta(nu, gamma)
            equations += [
                Equation(remainder.coefficient(j), top, j, f"f_{nu} f^a({gamma}) at x^{j}")
                for j in g.gamma.c_gamma_after(top)
            ]
    return equations


def expected_l(g: GammaStructure) -> int:
    """l(m, Gamma) = sum over dec>=2 of (|Rel(gamma)| - 1) |C(Gamma)(gamma)|."""
    return sum((len(g.rel[gamma]) - 1) * len(g.gamma.c_gamma_after(gamma)) for gamma in g.dec_ge2)


def equations_xy(g: GammaStructure, field: FieldSpec = FieldSpec()) -> tuple[list[Equation], int, int]:
    """c_j(f^b) = c_j(f^a(gamma)) + sum theta c_j(f^a(gamma')); returns (equations, l, n - l)."""
    _require_general(g, "equations_xy")
    algebra = symbolic_algebra(g, field)
    equations = []
    for gamma in g.dec_ge2:
        for b in g.rel[gamma]:
            if b == g.a_choice[gamma]:
                continue
            _, remainder = algebra.power_basis.theta_recursive(gamma, b)
            equations += [
                Equation(remainder.coefficient(j), gamma, j, f"f^{b} against f^a({gamma}) at x^{j}")
                for j in g.gamma.c_gamma_after(gamma)
            ]
    l = len(equations)
    if l != expected_l(g):
        raise InternalComputationError(f"{l} XY equations, expected {expected_l(g)}")
    return equations, l, len(algebra.variables) - l


@dataclass(frozen=True)
class VarietyPresentation:
    gamma: Gamma
    field: FieldSpec
    case: CaseTag
    variables: tuple[Variable, ...]
    equations_xx: tuple[Equation, ...] = ()
    equations_xy: tuple[Equation, ...] = ()
    l_xy: int = 0
    relation_rank: int = 0
    symbolic: SymbolicAlgebra | None = None

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    @property
    def dim_lower_bound(self) -> int:
        return self.n_vars - self.l_xy

    @property
    def torus_weights(self) -> dict[Variable, int]:
        return {(nu, j): j - nu for nu, j in self.variables}

    def is_homogeneous(self, equation: Equation) -> bool:
        weights = [j - nu for nu, j in self.variables]
        return all(
            sum(e * w for e, w in zip(monomial, weights)) == equation.weight
            for monomial, _ in equation.poly.terms()
        )

    def render(self, poly: SymPoly) -> str:
        return format_sympoly(poly, self.field, self.variables)


def affine_space_case(g: GammaStructure, field: FieldSpec = FieldSpec()) -> VarietyPresentation:
    """A(m, Gamma) is the affine space on the lambda_{nu, j} when |ind| = 1 or dec>=2 is empty."""
    if g.case is CaseTag.GENERAL:
        raise WrongCaseError("affine_space_case applies only when |ind| = 1 or dec>=2 is empty; use equations_xx/equations_xy")
    algebra = symbolic_algebra(g, field)
    return VarietyPresentation(g.gamma, field, g.case, algebra.variables, symbolic=algebra)


def variety_presentation(gamma: Gamma, field: FieldSpec = FieldSpec()) -> VarietyPresentation:
    if gamma.is_empty:
        return VarietyPresentation(gamma, field, CaseTag.EMPTY_GAMMA, ())
    g = structure(gamma)
    if g.case is not CaseTag.GENERAL:
        presentation = affine_space_case(g, field)
    else:
        xy, l, _ = equations_xy(g, field)
        algebra = symbolic_algebra(g, field)
        presentation = VarietyPresentation(
            gamma, field, g.case, algebra.variables,
            tuple(equations_xx(g, field)), tuple(xy), l, relation_rank(g), algebra,
        )
    for equation in presentation.equations_xx + presentation.equations_xy:
        if not presentation.is_homogeneous(equation):
            raise InternalComputationError(f"equation {equation.source} is not torus-homogeneous")
    logger.info(
        f"Variety A(m={gamma.m}, Gamma={list(gamma.members)}): n={presentation.n_vars} "
        f"l={presentation.l_xy} dim>={presentation.dim_lower_bound}"
    )
    return presentation


def format_sympoly(poly: SymPoly, field: FieldSpec, variables: tuple[Variable, ...]) -> str:
    """'3*l_4_5 - 2*l_6_7' in the ring's graded lexicographic order."""
    names = [variable_name(v) for v in variables]
    pieces = []
    for monomial, c in poly.terms():
        factors = [names[k] if e == 1 else f"{names[k]}^{e}" for k, e in enumerate(monomial) if e]
        text = field.format_scalar(c, compact=True)
        negative = text.startswith("-")
        text = text.lstrip("-")
        if not factors:
            body = text
        elif text == "1":
            body = "*".join(factors)
        else:
            body = "*".join([text] + factors)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces) if pieces else "0"


def point_of(algebra: CanonicalAlgebra) -> dict[Variable, Scalar]:
    """The coordinates lambda_{nu, j} of a concrete algebra."""
    if algebra.gamma.is_empty:
        return {}
    g = algebra.structure
    return {(nu, j): algebra.lambda_at(nu, j) for nu in g.ind for j in algebra.gamma.c_gamma_after(nu)}


def _partial(poly: SymPoly, variables: tuple[Variable, ...], point: Mapping[Variable, Scalar], field: FieldSpec) -> dict[tuple, Scalar]:
    """Substitutes the variables present in point; returns the remaining monomials."""
    K = field.domain
    out: dict[tuple, Scalar] = {}
    for monomial, c in poly.terms():
        value = c
        rest = []
        for k, e in enumerate(monomial):
            if e and variables[k] in point:
                value = value * point[variables[k]] ** e
                rest.append(0)
            else:
                rest.append(e)
        key = tuple(rest)
        out[key] = out.get(key, K.zero) + value
    return {key: c for key, c in out.items() if not K.is_zero(c)}


def specialize(poly: SymPoly, variables: tuple[Variable, ...], point: Mapping[Variable, Any], field: FieldSpec) -> Scalar:
    """Evaluates a polynomial in K[l] at a full coefficient point."""
    missing = [v for v in variables if v not in point]
    if missing:
        raise InvalidInputError(f"point has no value for {[variable_name(v) for v in missing]}")
    values = {v: field.scalar(point[v]) for v in variables}
    return _partial(poly, variables, values, field).get((0,) * len(variables), field.zero)


def specialize_all(polys: Mapping[Any, SymPoly], variables: tuple[Variable, ...], point: Mapping[Variable, Any], field: FieldSpec) -> dict[Any, Scalar]:
    return {key: specialize(poly, variables, point, field) for key, poly in polys.items()}


def _solve_linear(equation: Equation, variables: tuple[Variable, ...], point: dict[Variable, Scalar], pinned: set[Variable], field: FieldSpec) -> None:
    """Solves the equation for its last unpinned variable when it is linear there, then pins its variables."""
    present = [variables[k] for monomial, _ in equation.poly.terms() for k, e in enumerate(monomial) if e]
    free = sorted({v for v in present if v not in pinned}, key=variables.index)
    if free:
        pivot = free[-1]
        others = {v: c for v, c in point.items() if v != pivot}
        reduced = _partial(equation.poly, variables, others, field)
        position = variables.index(pivot)
        degrees = {key[position] for key in reduced}
        if degrees <= {0, 1} and any(key[position] == 1 for key in reduced):
            slope = sum((c for key, c in reduced.items() if key[position] == 1), field.zero)
            offset = sum((c for key, c in reduced.items() if key[position] == 0), field.zero)
            if not field.is_zero(slope):
                point[pivot] = -offset / slope
    pinned.update(present)


def _vanishes(equations: Iterable[Equation], variables: tuple[Variable, ...], point: Mapping[Variable, Scalar], field: FieldSpec) -> bool:
    return all(field.is_zero(specialize(e.poly, variables, point, field)) for e in equations)


def sample_points(
    presentation: VarietyPresentation,
    rng: random.Random,
    count: int,
    grid: Iterable[int] = range(-2, 3),
    max_tries: int = 200,
) -> list[tuple[dict[Variable, Scalar], CanonicalAlgebra]]:
    """Random points of A(m, Gamma) with the algebras they define.

    Free coordinates are drawn from the grid; each XY equation is then solved for
    its last unpinned variable when it is linear there. Points that still miss
    an equation are rejected.
    """
    field, variables = presentation.field, presentation.variables
    if presentation.gamma.is_empty:
        return [({}, monomial_algebra(field, presentation.gamma))] * count
    values = [field.scalar(v) for v in grid]
    samples = []
    tries = 0
    while len(samples) < count and tries < max_tries:
        tries += 1
        point = {v: rng.choice(values) for v in variables}
        pinned: set[Variable] = set()
        for equation in presentation.equations_xy:
            _solve_linear(equation, variables, point, pinned, field)
        if not _vanishes(presentation.equations_xy, variables, point, field):
            continue
        if not _vanishes(presentation.equations_xx, variables, point, field):
            raise InternalComputationError("a point satisfies the XY system but not the XX system")
        try:
            algebra = from_indecomposable_coordinates(field, presentation.gamma, point)
        except InvalidInputError as e:
            raise InternalComputationError(f"a point of the XY system does not define an algebra: {e.detail}")
        samples.append((point, algebra))
    logger.debug(f"Sampled {len(samples)} points in {tries} tries for Gamma={list(presentation.gamma.members)}")
    return samples


@dataclass(frozen=True)
class FixedPoints:
    n: int
    killed: tuple[Variable, ...]
    kept: tuple[Variable, ...]
    strata: tuple[int, ...]


def fixed_point_equations(gamma: Gamma, n: int, p: int | None = None) -> FixedPoints:
    """Equations of the C_n-fixed locus: lambda_{gamma, j} = 0 whenever n does not divide j - gamma.

    `killed` covers every canonical coordinate, decomposable gamma included; `kept` lists
    the free variables lambda_{nu, j} of the variety. `strata` are the orders l in
    O(m, Gamma) that n properly divides, whose fixed loci sit inside.
    """
    if n < 1:
        raise InvalidInputError(f"n must be at least 1, got {n}")
    if p and n % p == 0:
        raise InvalidInputError(f"C_{n} has no faithful torus action in characteristic {p}")
    if gamma.is_empty:
        return FixedPoints(n, (), (), ())
    g = structure(gamma)
    variables = [(nu, j) for nu in g.ind for j in gamma.c_gamma_after(nu)]
    killed = tuple((x, j) for x in gamma.members for j in gamma.c_gamma_after(x) if (j - x) % n)
    kept = tuple(v for v in variables if not (v[1] - v[0]) % n)
    orders = {p_coprime_divisor(l, p) if p else l for l in order_set_l(gamma)}
    strata = tuple(sorted(l for l in orders if l % n == 0 and l != n))
    return FixedPoints(n, killed, kept, strata)

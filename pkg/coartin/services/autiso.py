"""Automorphism groups, isomorphism tests and order realization for algebras in A(m).

Every automorphism and isomorphism is a torus element t_lambda: x -> lambda x,
which scales lambda_{gamma delta} by lambda^(delta - gamma). Questions about
them reduce to systems lambda^k = c, decided exactly by a gcd test over the
algebraic closure.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Sequence

from sympy import multiplicity

from coartin.core.exactfield import FieldSpec, Scalar, bezout, nth_root, p_coprime_divisor
from coartin.core.truncpoly import TruncPoly
from coartin.errors import InternalComputationError, InvalidInputError
from coartin.services.families import a_gamma_l
from coartin.services.semigroup import Gamma, enumerate_s, max_finite_order, order_set_l, order_tables, structure
from coartin.services.subalgebra import CanonicalAlgebra, from_generators, from_indecomposable_coordinates

logger = logging.getLogger(__name__)


def exponent_gcd(u: TruncPoly) -> int | float:
    """gcd of the exponents of the non-constant terms of a unit u = 1 + ...; math.inf for u = 1."""
    if u.coefficient(0) != u.domain.one:
        raise InvalidInputError("exponent gcd needs a unit with constant term 1")
    exponents = [k for k, _ in u.terms() if k > 0]
    if not exponents:
        return math.inf
    return math.gcd(*exponents)


def _reduce(n: int, characteristic: int) -> int:
    return p_coprime_divisor(n, characteristic) if characteristic else n


class AutKind(str, Enum):
    FULL_TORUS = "full-torus"
    CYCLIC = "cyclic"


@dataclass(frozen=True)
class AutDescription:
    kind: AutKind
    order: int | None

    @property
    def generator(self) -> str:
        if self.kind is AutKind.FULL_TORUS:
            return "t_lambda for every lambda in K*"
        if self.order == 1:
            return "the identity"
        return f"t_lambda for lambda a primitive {self.order}-th root of unity"


def _units_gcd(algebra: CanonicalAlgebra, members: Sequence[int]) -> int | float:
    values = [exponent_gcd(algebra.units[g]) for g in members]
    finite = [v for v in values if v != math.inf]
    return math.gcd(*finite) if finite else math.inf


def aut_group(algebra: CanonicalAlgebra) -> AutDescription:
    """Aut_K(A): the whole torus when A is monomial, otherwise cyclic of order gcd(A) (its p-co-prime part in char p)."""
    if algebra.gamma.is_empty or algebra.is_monomial:
        return AutDescription(AutKind.FULL_TORUS, None)
    over_ind = _units_gcd(algebra, algebra.structure.ind)
    over_all = _units_gcd(algebra, algebra.gamma.members)
    if over_ind != over_all:
        raise InternalComputationError(
            f"gcd over indecomposables ({over_ind}) differs from gcd over Gamma ({over_all})"
        )
    order = _reduce(int(over_ind), algebra.field.characteristic)
    logger.info(f"Aut of algebra with Gamma={list(algebra.gamma.members)} over {algebra.field.label}: cyclic of order {order}")
    return AutDescription(AutKind.CYCLIC, order)


def aut_order_brute_force(algebra: CanonicalAlgebra) -> int | None:
    """Largest d dividing delta - nu for every nonzero lambda_{nu delta}, nu indecomposable; None when monomial."""
    if algebra.gamma.is_empty or algebra.is_monomial:
        return None
    shifts = [
        delta - nu
        for nu in algebra.structure.ind
        for delta in algebra.nonzero_lambdas(nu)
    ]
    best = max(d for d in range(1, algebra.m + 1) if all(s % d == 0 for s in shifts))
    return _reduce(best, algebra.field.characteristic)


@dataclass(frozen=True)
class IsoWitness:
    """Outcome of solving lambda^k_t = c_t over the algebraic closure.

    forced_power (g, mu) means every solution satisfies lambda^g = mu.
    """

    solvable: bool
    forced_power: tuple[int, Scalar] | None
    constraints: tuple[tuple[int, Scalar], ...]
    reason: str = ""
    rational_witness: Scalar | None = None
    checked: tuple[tuple[int, Scalar], ...] = ()


def torus_solve(constraints: Sequence[tuple[int, Scalar]], field_spec: FieldSpec) -> IsoWitness:
    """Decides whether some lambda in the algebraic closure has lambda^k = c for every (k, c)."""
    constraints = tuple((int(k), field_spec.scalar(c)) for k, c in constraints)
    for k, c in constraints:
        if k == 0 or field_spec.is_zero(c):
            raise InvalidInputError(f"torus constraint ({k}, {field_spec.format_scalar(c)}) needs k != 0 and c != 0")
    if not constraints:
        return IsoWitness(True, (0, field_spec.one), (), "no constraints: every lambda works")

    p = field_spec.characteristic
    checked = []
    for k, c in constraints:
        if p:
            # lambda^(p^s) is a bijection of the closure; on GF(p) its inverse fixes every residue
            s = multiplicity(p, abs(k))
            k = (k // abs(k)) * (abs(k) // p**s)
        checked.append((k, c))

    g, coefficients = bezout([k for k, _ in checked])
    mu = field_spec.one
    for (_, c), a in zip(checked, coefficients):
        mu = mu * field_spec.power(c, a)
    for k, c in checked:
        if field_spec.power(mu, k // g) != c:
            reason = (
                f"lambda^{g} = {field_spec.format_scalar(mu, compact=True)} is forced, "
                f"but then lambda^{k} != {field_spec.format_scalar(c, compact=True)}"
            )
            logger.debug(f"Torus system unsolvable: {reason}")
            return IsoWitness(False, (g, mu), constraints, reason, checked=tuple(checked))
    return IsoWitness(True, (g, mu), constraints, f"solutions are the lambda with lambda^{g} = mu", checked=tuple(checked))


def apply_torus(algebra: CanonicalAlgebra, c: Scalar) -> CanonicalAlgebra:
    """t_c(A), re-canonicalized from the scaled basis."""
    K, F = algebra.field.domain, algebra.field
    c = F.scalar(c)
    if F.is_zero(c):
        raise InvalidInputError("t_0 is not an automorphism of K[x]")
    gens = [
        TruncPoly(algebra.m, tuple(F.power(c, k) * a for k, a in enumerate(algebra.basis[g].coeffs)), K)
        for g in algebra.gamma.members
    ]
    image = from_generators(F, algebra.m, gens)
    expected = {key: F.power(c, key[1] - key[0]) * value for key, value in algebra.lambdas}
    if image.gamma != algebra.gamma or image.lambda_table != expected:
        raise InternalComputationError("t_c(A) disagrees with the scaled coefficient table")
    return image


def iso_test(first: CanonicalAlgebra, second: CanonicalAlgebra) -> IsoWitness:
    """A and A' are isomorphic iff some t_lambda maps one onto the other."""
    if first.field != second.field:
        raise InvalidInputError(f"cannot compare algebras over {first.field.label} and {second.field.label}")
    F = first.field
    if first.m != second.m:
        return IsoWitness(False, None, (), f"conductors differ: m={first.m} vs m={second.m}")
    if first.gamma != second.gamma:
        return IsoWitness(
            False, None, (), f"semigroups differ: {list(first.gamma.members)} vs {list(second.gamma.members)}"
        )
    if first.gamma.is_empty:
        return IsoWitness(True, (0, F.one), (), "both algebras are K + x^m K[x]", F.one)

    constraints = []
    for nu in first.structure.ind:
        support, other = first.nonzero_lambdas(nu), second.nonzero_lambdas(nu)
        if set(support) != set(other):
            return IsoWitness(
                False, None, (),
                f"supports of u_{nu} differ: {sorted(support)} vs {sorted(other)}",
            )
        constraints += [(delta - nu, other[delta] / support[delta]) for delta in sorted(support)]

    witness = torus_solve(constraints, F)
    if not witness.solvable:
        return witness
    g, mu = witness.forced_power
    root = F.one if g == 0 else nth_root(F, mu, g)
    if root is None:
        logger.warning(f"Isomorphic over the closure, but lambda^{g} = {F.format_scalar(mu)} has no root in {F.label}")
        reason = f"isomorphic over the algebraic closure; undetermined over {F.label}"
        return IsoWitness(True, witness.forced_power, witness.constraints, reason, None, witness.checked)
    if apply_torus(first, root).lambda_table != second.lambda_table:
        raise InternalComputationError(f"t_{F.format_scalar(root)} does not map the first algebra onto the second")
    reason = f"t_lambda with lambda = {F.format_scalar(root, compact=True)} is an isomorphism"
    logger.info(f"Isomorphism found for Gamma={list(first.gamma.members)}: {reason}")
    return IsoWitness(True, witness.forced_power, witness.constraints, reason, root, witness.checked)


def iso_brute_force(first: CanonicalAlgebra, second: CanonicalAlgebra) -> Scalar | None:
    """A lambda in GF(p)* with t_lambda(A) = A', by trying every residue."""
    F = first.field
    if not F.characteristic:
        raise InvalidInputError("brute-force orbit search needs a prime field")
    if first.gamma != second.gamma:
        return None
    for value in range(1, F.characteristic):
        if apply_torus(first, value).lambda_table == second.lambda_table:
            return F.scalar(value)
    return None


def realize_orders(m: int, p: int | None = None) -> dict[int, CanonicalAlgebra]:
    """One algebra for each finite automorphism group order in A(m), built as A_{gamma l}."""
    tables = order_tables(m, p)
    F = FieldSpec(characteristic=p or 0)
    bound = max_finite_order(m, p)
    semigroups = [g for g in enumerate_s(m) if not g.is_empty]
    realized: dict[int, CanonicalAlgebra] = {}
    for l in tables.L:
        gamma = next(g for g in semigroups if l in order_set_l(g))
        algebra = a_gamma_l(F, gamma, l)
        expected = _reduce(l, F.characteristic)
        description = aut_group(algebra)
        if description.order != expected or aut_order_brute_force(algebra) != expected:
            raise InternalComputationError(f"A_(gamma l) for l={l} has Aut order {description.order}, expected {expected}")
        if expected > bound:
            raise InternalComputationError(f"order {expected} exceeds the bound {bound} for m={m}")
        realized.setdefault(expected, algebra)
    if tuple(sorted(realized)) != tables.O:
        raise InternalComputationError(f"realized orders {sorted(realized)} differ from O(m)={list(tables.O)}")
    logger.info(f"Realized orders {sorted(realized)} for m={m}, p={p}")
    return dict(sorted(realized.items()))


@dataclass(frozen=True)
class GammaRealization:
    order: int
    algebra: CanonicalAlgebra | None

    @property
    def found(self) -> bool:
        return self.algebra is not None


def realize_orders_for_gamma(gamma: Gamma, p: int | None = None, max_positions: int = 12) -> list[GammaRealization]:
    """Searches A(m, Gamma) for every order l in L(m, Gamma).

    Candidates are f_nu = x^nu + sum c x^j over positions with l | j - nu and c in {0, 1}.
    A miss reports only that the search found nothing.
    """
    if gamma.is_empty:
        raise InvalidInputError("A(m, {}) is a single point")
    F = FieldSpec(characteristic=p or 0)
    g = structure(gamma)
    results = []
    for l in order_set_l(gamma):
        target = _reduce(l, F.characteristic)
        positions = [
            (nu, j) for nu in g.ind for j in gamma.c_gamma_after(nu) if (j - nu) % l == 0
        ][:max_positions]
        found = None
        for bits in product((0, 1), repeat=len(positions)):
            if not any(bits):
                continue
            coords = {key: bit for key, bit in zip(positions, bits) if bit}
            try:
                algebra = from_indecomposable_coordinates(F, gamma, coords)
            except InvalidInputError:
                continue
            if aut_group(algebra).order == target:
                found = algebra
                break
        logger.debug(f"Order {target} for Gamma={list(gamma.members)}: {'found' if found else 'not found'}")
        results.append(GammaRealization(target, found))
    return results

"""Named one-generator algebras with a predictable semigroup and automorphism group.

Each constructor validates its parameters, builds the algebra through
`from_generators` and checks the predicted Gamma and canonical basis.
"""
import logging
from enum import Enum

from coartin.core.exactfield import FieldSpec
from coartin.core.truncpoly import Polynomial, TruncPoly
from coartin.errors import InternalComputationError, InvalidInputError
from coartin.services.semigroup import Gamma, order_set_l
from coartin.services.subalgebra import CanonicalAlgebra, from_generators

logger = logging.getLogger(__name__)


class FamilyKind(str, Enum):
    A_GAMMA_L = "a-gamma-l"
    A_L = "a-l"
    A_I = "a-i"
    EVEN_EXTREMAL = "even-extremal"
    ODD_EXTREMAL = "odd-extremal"
    TRIVIAL_AUT = "trivial-aut"


def _binomial(field: FieldSpec, low: int, high: int) -> Polynomial:
    """x^low + x^high."""
    K = field.domain
    coeffs = [K.zero] * (high + 1)
    coeffs[low] = K.one
    coeffs[high] = K.one
    return Polynomial.from_coeffs(coeffs, K)


def _multiples(step: int, m: int) -> tuple[int, ...]:
    return tuple(range(step, m - 1, step))


def _build(field: FieldSpec, m: int, g: Polynomial, expected: tuple[int, ...], label: str) -> CanonicalAlgebra:
    algebra = from_generators(field, m, [g])
    if algebra.gamma.members != expected:
        raise InternalComputationError(
            f"{label}: expected Gamma={list(expected)}, got {list(algebra.gamma.members)}"
        )
    low = expected[0]
    if algebra.basis[low] != g.truncate(m):
        raise InternalComputationError(f"{label}: the generator is not the canonical f_{low}")
    logger.info(f"Built {label} for m={m}: Gamma={list(expected)}")
    return algebra


def _check_monomial_tail(algebra: CanonicalAlgebra, label: str) -> CanonicalAlgebra:
    """Every canonical basis element past the generator is a monomial."""
    K = algebra.field.domain
    for gamma in algebra.gamma.members[1:]:
        if algebra.basis[gamma] != TruncPoly.monomial(algebra.m, gamma, K):
            raise InternalComputationError(f"{label}: f_{gamma} is not x^{gamma}")
    return algebra


def a_gamma_l(field: FieldSpec, gamma: Gamma, l: int, element: int | None = None) -> CanonicalAlgebra:
    """K + sum K g^i + x^m K[x] for g = x^gamma (1 + x^l), gamma + l a gap of Gamma below m."""
    m = gamma.m
    if gamma.is_empty:
        raise InvalidInputError("A_{gamma l} needs a nonempty Gamma")
    if l not in order_set_l(gamma):
        raise InvalidInputError(f"l={l} is not in L(m={m}, Gamma={list(gamma.members)})")
    candidates = [g for g in gamma.members if g + l not in gamma and g + l <= m - 1]
    if element is None:
        element = candidates[0]
    elif element not in candidates:
        raise InvalidInputError(f"gamma={element} must lie in Gamma with gamma + l <= m - 1 and gamma + l outside Gamma")
    return _build(field, m, _binomial(field, element, element + l), _multiples(element, m), "A_{gamma l}")


def a_l(field: FieldSpec, m: int, l: int) -> CanonicalAlgebra:
    """g_l = x^(m-1-l) + x^(m-1)."""
    if m < 4:
        raise InvalidInputError(f"A_l needs m >= 4, got {m}")
    if not 1 <= l <= m - 3:
        raise InvalidInputError(f"A_l needs 1 <= l <= m - 3, got l={l}")
    low = m - 1 - l
    if (m - 1) % low == 0:
        raise InvalidInputError(f"A_l needs m-1-l={low} not dividing m-1={m - 1}")
    algebra = _build(field, m, _binomial(field, low, m - 1), _multiples(low, m), "A_l")
    return _check_monomial_tail(algebra, "A_l")


def a_i(field: FieldSpec, m: int, i: int) -> CanonicalAlgebra:
    """f_i = x^n(i) + x^(m-2) with n(i) = (m-1)/i - 1."""
    if m < 4:
        raise InvalidInputError(f"A_i needs m >= 4, got {m}")
    if not 2 <= i <= (m - 1) // 2 or (m - 1) % i:
        raise InvalidInputError(f"A_i needs 2 <= i <= (m-1)/2 and i dividing m-1={m - 1}, got i={i}")
    n = (m - 1) // i - 1
    if n < 2:
        raise InvalidInputError(f"A_i needs n(i)={n} >= 2")
    if (m - 1) % n == 0 or (m - 2) % n == 0:
        raise InvalidInputError(f"A_i needs n(i)={n} to divide neither m-1={m - 1} nor m-2={m - 2}")
    # l(i) = (i-1)(m-1)/i, so n(i) + l(i) = m - 2
    algebra = _build(field, m, _binomial(field, n, m - 2), _multiples(n, m), "A_i")
    return _check_monomial_tail(algebra, "A_i")


def even_extremal(field: FieldSpec, m: int) -> CanonicalAlgebra:
    """g = x^2 (1 + x^(m-3)); automorphism group of the maximal finite order m - 3."""
    if m < 4 or m % 2:
        raise InvalidInputError(f"the even extremal algebra needs an even m >= 4, got {m}")
    algebra = _build(field, m, _binomial(field, 2, m - 1), _multiples(2, m), "even extremal")
    return _check_monomial_tail(algebra, "even extremal")


def odd_extremal(field: FieldSpec, m: int) -> CanonicalAlgebra:
    """g = x^3 (1 + x^(m-4)); automorphism group of order m - 4."""
    if m < 5 or m % 2 == 0:
        raise InvalidInputError(f"the odd extremal algebra needs an odd m >= 5, got {m}")
    if (m - 1) % 3 == 0:
        raise InvalidInputError(f"the odd extremal algebra needs 3 not dividing m-1={m - 1}")
    algebra = _build(field, m, _binomial(field, 3, m - 1), _multiples(3, m), "odd extremal")
    return _check_monomial_tail(algebra, "odd extremal")


def trivial_aut(field: FieldSpec, m: int) -> CanonicalAlgebra:
    """K + K x^(m-2)(1 + x) + x^m K[x]."""
    if m < 4:
        raise InvalidInputError(f"the trivial-automorphism example needs m >= 4, got {m}")
    return _build(field, m, _binomial(field, m - 2, m - 1), (m - 2,), "trivial aut")


def example_family(field: FieldSpec, kind: FamilyKind, m: int, **params) -> CanonicalAlgebra:
    if kind is FamilyKind.A_GAMMA_L:
        return a_gamma_l(field, params["gamma"], params["l"], params.get("element"))
    if kind is FamilyKind.A_L:
        return a_l(field, m, params["l"])
    if kind is FamilyKind.A_I:
        return a_i(field, m, params["i"])
    if kind is FamilyKind.EVEN_EXTREMAL:
        return even_extremal(field, m)
    if kind is FamilyKind.ODD_EXTREMAL:
        return odd_extremal(field, m)
    return trivial_aut(field, m)

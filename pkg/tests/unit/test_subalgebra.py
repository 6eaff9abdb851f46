import pytest

from coartin.core.exactfield import FieldSpec
from coartin.core.polyparse import parse_generator_list
from coartin.core.truncpoly import Polynomial, TruncPoly
from coartin.errors import InvalidInputError, NotInAmError
from coartin.services.semigroup import Gamma
from coartin.services.subalgebra import (
    eta_coefficients,
    expand_power,
    from_generators,
    from_indecomposable_coordinates,
    from_lambdas,
    membership,
    monomial,
    product_coefficient,
    structure_constants,
    theta_coefficients,
    verify_lambda_recursion,
)

FIELD = FieldSpec()
K = FIELD.domain
TWO_GEN = Gamma(m=14, members=(4, 6, 8, 10, 12))


def algebra_of(m: int, text: str, field: FieldSpec = FIELD):
    return from_generators(field, m, parse_generator_list(text, field))


@pytest.fixture
def binomial_algebra():
    """A = <x^2 + x^3> for m = 6."""
    return algebra_of(6, "x^2 + x^3")


# --- CANONICAL FORM ---

def test_canonical_form_of_extremal_generator():
    """
    x^2 (1 + x^3) gives Gamma = {2, 4} with canonical basis {1, x^2 + x^5, x^4}.
    """
    # ACT
    algebra = algebra_of(6, "x^2*(1 + x^3)")

    # ASSERT
    assert algebra.gamma.members == (2, 4)
    assert algebra.lambda_at(2, 3) == FIELD.zero
    assert algebra.lambda_at(2, 5) == FIELD.one
    assert algebra.lambda_at(4, 5) == FIELD.zero
    assert algebra.basis[4] == TruncPoly.monomial(6, 4, K)
    assert algebra.dimension == 3


def test_canonical_form_of_binomial(binomial_algebra):
    """
    (x^2 + x^3)^2 = x^4 + 2x^5 mod x^6 puts lambda_{4,5} = 2.
    """
    assert binomial_algebra.gamma.members == (2, 4)
    assert binomial_algebra.lambda_at(2, 3) == FIELD.one
    assert binomial_algebra.lambda_at(2, 5) == FIELD.zero
    assert binomial_algebra.lambda_at(4, 5) == FIELD.scalar(2)
    assert not binomial_algebra.is_monomial


def test_no_generators_gives_the_conductor_algebra():
    algebra = from_generators(FIELD, 6, [])

    assert algebra.gamma.is_empty
    assert algebra.dimension == 1
    assert algebra.lambdas == ()


def test_generators_are_normalized_and_constants_dropped():
    """
    Scaling a generator or adding a constant does not change the algebra.
    """
    first = algebra_of(6, "x^2 + x^3")
    second = algebra_of(6, "5 + 3x^2 + 3x^3")

    assert first == second


def test_element_of_order_one_is_rejected():
    with pytest.raises(NotInAmError):
        algebra_of(6, "x + x^2")


def test_algebra_containing_x_to_m_minus_1_is_rejected():
    """
    For m=5, x^2 squares to x^4 = x^(m-1), so the conductor is smaller than x^5.
    """
    with pytest.raises(NotInAmError) as excinfo:
        algebra_of(5, "x^2")

    assert excinfo.value.status_code == 2


def test_canonical_form_over_prime_field():
    algebra = algebra_of(6, "x^2 + x^3", FieldSpec(characteristic=2))

    assert algebra.gamma.members == (2, 4)
    # 2 = 0 in GF(2)
    assert algebra.lambda_at(4, 5) == algebra.field.zero


# --- TABLES AND COORDINATES ---

def test_from_lambdas_accepts_closed_tables(binomial_algebra):
    rebuilt = from_lambdas(FIELD, Gamma(m=6, members=(2, 4)), {(2, 3): 1, (4, 5): 2})

    assert rebuilt == binomial_algebra


def test_from_lambdas_rejects_non_closed_tables():
    """
    f_2 = x^2 + x^3 squares to x^4 + 2x^5, which is not in span{1, f_2, x^4}.
    """
    with pytest.raises(InvalidInputError):
        from_lambdas(FIELD, Gamma(m=6, members=(2, 4)), {(2, 3): 1})


def test_from_lambdas_rejects_unknown_positions():
    with pytest.raises(InvalidInputError):
        from_lambdas(FIELD, Gamma(m=6, members=(2, 4)), {(2, 4): 1})


def test_from_indecomposable_coordinates():
    algebra = from_indecomposable_coordinates(FIELD, TWO_GEN, {(4, 5): 2, (6, 7): 3})

    assert algebra.gamma == TWO_GEN
    assert algebra.lambda_at(4, 5) == FIELD.scalar(2)
    assert algebra.lambda_at(6, 7) == FIELD.scalar(3)


def test_from_indecomposable_coordinates_off_the_variety():
    """
    3 lambda_{4,5} != 2 lambda_{6,7} puts x^13 into the algebra.
    """
    with pytest.raises(InvalidInputError):
        from_indecomposable_coordinates(FIELD, TWO_GEN, {(4, 5): 1})


# --- MEMBERSHIP ---

def test_membership(binomial_algebra):
    # ARRANGE
    inside = Polynomial.from_coeffs([0, 0, 0, 0, 1, 2], K)
    outside = Polynomial.monomial(5, K)

    # ACT
    certificate = membership(binomial_algebra, inside)

    # ASSERT
    assert certificate.member
    assert certificate.coords[4] == FIELD.one
    assert certificate.coords[2] == FIELD.zero
    assert not membership(binomial_algebra, outside).member
    assert membership(binomial_algebra, Polynomial.monomial(6, K)).member


def test_membership_reports_the_conductor_part(binomial_algebra):
    p = Polynomial.from_coeffs([1, 0, 1, 1, 0, 0, 0, 4], K)

    certificate = membership(binomial_algebra, p)

    assert certificate.member
    assert certificate.constant == FIELD.one
    assert certificate.conductor.coords[1] == (FIELD.scalar(4),)


# --- STRUCTURE CONSTANTS ---

def test_product_coefficient(binomial_algebra):
    """
    c_5(f_2^2) = 2 lambda_{2,3} for f_2 = x^2 + lambda x^3.
    """
    assert product_coefficient(binomial_algebra, 2, 2, 5) == FIELD.scalar(2)
    assert product_coefficient(binomial_algebra, 2, 2, 4) == FIELD.zero


def test_structure_constants(binomial_algebra):
    constants = structure_constants(binomial_algebra)

    assert constants[(2, 2)] == {}
    assert constants[(2, 4)] is None
    assert constants[(4, 4)] is None


def test_products_at_the_top_vanish():
    algebra = monomial(FIELD, TWO_GEN)

    assert structure_constants(algebra)[(4, 10)] is None


def test_lambda_recursion_holds_for_generated_algebras():
    # ARRANGE
    algebra = algebra_of(11, "x^3 + x^4 + 2x^7; x^8 - x^10")

    # ACT / ASSERT
    assert algebra.gamma.members == (3, 6, 8, 9)
    verify_lambda_recursion(algebra)


# --- POWERS, ETA AND THETA ---

def test_expand_power(binomial_algebra):
    # ACT
    expansion = expand_power(binomial_algebra, (2,))

    # ASSERT
    assert expansion.degree == 4
    assert expansion.value == binomial_algebra.basis[4]
    assert expansion.coords == {}


def test_expand_power_of_monomial_algebra():
    expansion = expand_power(monomial(FIELD, TWO_GEN), (3, 0))

    assert expansion.value == TruncPoly.monomial(14, 12, K)


def test_expand_power_rejects_zero_vector(binomial_algebra):
    with pytest.raises(InvalidInputError):
        expand_power(binomial_algebra, (0,))


def test_eta_of_monomial_algebra_vanishes():
    eta = eta_coefficients(monomial(FIELD, TWO_GEN))

    assert eta
    assert all(FIELD.is_zero(value) for value in eta.values())


def test_eta_single_generator(binomial_algebra):
    assert eta_coefficients(binomial_algebra) == {(2, 4): FIELD.zero}


def test_theta_is_empty_at_the_top():
    """
    Gamma(12) is empty, so f^(3,0) = f^(0,2) has no correction terms.
    """
    algebra = from_indecomposable_coordinates(FIELD, TWO_GEN, {(4, 5): 1, (6, 7): "3/2"})

    assert theta_coefficients(algebra, 12, (3, 0)) == {}


def test_theta_rejects_the_chosen_representation():
    with pytest.raises(InvalidInputError):
        theta_coefficients(monomial(FIELD, TWO_GEN), 12, (0, 2))

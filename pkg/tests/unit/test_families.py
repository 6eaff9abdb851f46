import pytest

from coartin.core.exactfield import FieldSpec
from coartin.core.truncpoly import TruncPoly
from coartin.errors import InvalidInputError
from coartin.services.autiso import aut_group
from coartin.services.families import (
    FamilyKind,
    a_gamma_l,
    a_i,
    a_l,
    even_extremal,
    example_family,
    odd_extremal,
    trivial_aut,
)
from coartin.services.semigroup import Gamma

FIELD = FieldSpec()
K = FIELD.domain


def test_even_extremal_for_m6():
    """
    x^2 (1 + x^3) has canonical basis {1, x^2 + x^5, x^4} and Aut of order m - 3.
    """
    # ACT
    algebra = even_extremal(FIELD, 6)

    # ASSERT
    assert algebra.gamma.members == (2, 4)
    assert algebra.lambda_at(2, 5) == FIELD.one
    assert algebra.basis[4] == TruncPoly.monomial(6, 4, K)
    assert aut_group(algebra).order == 3


def test_odd_extremal_reaches_m_minus_4():
    algebra = odd_extremal(FIELD, 9)

    assert algebra.gamma.members == (3, 6)
    assert aut_group(algebra).order == 5


def test_odd_extremal_rejects_even_m():
    with pytest.raises(InvalidInputError):
        odd_extremal(FIELD, 8)


def test_a_gamma_l_with_default_element():
    """
    Gamma = {2, 4}, l = 1: 2 + 1 = 3 is a gap, so g = x^2 (1 + x).
    """
    # ACT
    algebra = a_gamma_l(FIELD, Gamma(m=6, members=(2, 4)), 1)

    # ASSERT
    assert algebra.gamma.members == (2, 4)
    assert algebra.lambda_at(2, 3) == FIELD.one
    assert aut_group(algebra).order == 1


def test_a_gamma_l_rejects_l_outside_order_set():
    with pytest.raises(InvalidInputError):
        a_gamma_l(FIELD, Gamma(m=6, members=(2, 4)), 2)


def test_a_gamma_l_rejects_bad_element():
    with pytest.raises(InvalidInputError):
        a_gamma_l(FIELD, Gamma(m=6, members=(2, 4)), 1, element=3)


def test_a_l():
    # ACT
    algebra = a_l(FIELD, 7, 2)

    # ASSERT
    assert algebra.gamma.members == (4,)
    assert aut_group(algebra).order == 2


def test_a_l_requires_non_divisor():
    """
    m - 1 - l = 3 divides m - 1 = 6.
    """
    with pytest.raises(InvalidInputError):
        a_l(FIELD, 7, 3)


def test_a_i():
    """
    m = 13, i = 2: n(i) = 5 and l(i) = 6.
    """
    algebra = a_i(FIELD, 13, 2)

    assert algebra.gamma.members == (5, 10)
    assert aut_group(algebra).order == 6


def test_a_i_requires_divisor_of_m_minus_1():
    with pytest.raises(InvalidInputError):
        a_i(FIELD, 13, 5)


def test_trivial_aut():
    algebra = trivial_aut(FIELD, 6)

    assert algebra.gamma.members == (4,)
    assert aut_group(algebra).order == 1


@pytest.mark.parametrize(
    "kind, params, members",
    [
        (FamilyKind.EVEN_EXTREMAL, {}, (2, 4)),
        (FamilyKind.TRIVIAL_AUT, {}, (4,)),
        (FamilyKind.A_GAMMA_L, {"gamma": Gamma(m=6, members=(2, 4)), "l": 3}, (2, 4)),
    ],
)
def test_example_family_dispatch(kind, params, members):
    assert example_family(FIELD, kind, 6, **params).gamma.members == members

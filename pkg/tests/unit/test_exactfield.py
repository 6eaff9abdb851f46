import pytest
from fractions import Fraction
from pydantic import ValidationError

from coartin.core.exactfield import FieldSpec, bezout, gcd_of_set, nth_root, p_coprime_divisor
from coartin.errors import InvalidInputError

QQ_FIELD = FieldSpec()
GF7 = FieldSpec(characteristic=7)


def test_field_rejects_composite_characteristic():
    """
    Only 0 and primes are accepted as characteristics.
    """
    with pytest.raises(ValidationError):
        FieldSpec(characteristic=4)


def test_labels():
    assert QQ_FIELD.label == "QQ"
    assert GF7.label == "GF(7)"


def test_rational_scalars_are_serialized_as_num_den():
    """
    Scalars over QQ are written "num/den"; compact mode drops a unit denominator.
    """
    # ARRANGE
    half = QQ_FIELD.scalar("3/2")
    two = QQ_FIELD.scalar(2)

    # ACT / ASSERT
    assert QQ_FIELD.format_scalar(half) == "3/2"
    assert QQ_FIELD.format_scalar(two) == "2/1"
    assert QQ_FIELD.format_scalar(two, compact=True) == "2"
    assert QQ_FIELD.format_scalar(QQ_FIELD.scalar(-1), compact=True) == "-1"
    assert QQ_FIELD.to_fraction(half) == Fraction(3, 2)
    assert QQ_FIELD.parse_scalar("-3/2") == -half


def test_prime_field_scalars_are_residues():
    """
    1/2 in GF(7) is the residue 4, written without a sign.
    """
    # ACT
    value = GF7.scalar(Fraction(1, 2))

    # ASSERT
    assert GF7.format_scalar(value) == "4"
    assert GF7.format_scalar(GF7.scalar(-1)) == "6"
    assert not GF7.is_negative(GF7.scalar(-1))


def test_denominator_divisible_by_p_is_rejected():
    with pytest.raises(InvalidInputError) as excinfo:
        FieldSpec(characteristic=5).scalar("1/5")

    assert excinfo.value.status_code == 2
    assert "not invertible" in excinfo.value.detail


def test_malformed_rational_is_rejected():
    with pytest.raises(InvalidInputError):
        QQ_FIELD.scalar("three")


def test_inverse_and_negative_powers():
    # ARRANGE
    three = QQ_FIELD.scalar(3)

    # ASSERT
    assert QQ_FIELD.inverse(three) == QQ_FIELD.scalar("1/3")
    assert QQ_FIELD.power(three, -2) == QQ_FIELD.scalar("1/9")
    assert QQ_FIELD.power(three, 0) == QQ_FIELD.one
    with pytest.raises(InvalidInputError):
        QQ_FIELD.inverse(QQ_FIELD.zero)


# --- INTEGER HELPERS ---

@pytest.mark.parametrize("n, p, expected", [(12, 2, 3), (7, 7, 1), (45, 5, 9), (1, 3, 1)])
def test_p_coprime_divisor(n, p, expected):
    assert p_coprime_divisor(n, p) == expected


def test_p_coprime_divisor_rejects_bad_arguments():
    with pytest.raises(InvalidInputError):
        p_coprime_divisor(0, 2)
    with pytest.raises(InvalidInputError):
        p_coprime_divisor(12, 4)


@pytest.mark.parametrize("values, expected", [([6, 9], 3), ([5], 5), ([4, 6, 9], 1)])
def test_gcd_of_set(values, expected):
    assert gcd_of_set(values) == expected


def test_gcd_of_empty_set_is_rejected():
    with pytest.raises(InvalidInputError):
        gcd_of_set([])


def test_bezout_coefficients_combine_to_the_gcd():
    """
    The returned coefficients express the gcd as an integer combination.
    """
    # ARRANGE
    values = [12, 18, 27]

    # ACT
    g, coefficients = bezout(values)

    # ASSERT
    assert g == 3
    assert sum(a * v for a, v in zip(coefficients, values)) == 3


def test_bezout_with_negative_entries():
    g, coefficients = bezout([-4, 6])

    assert g == 2
    assert -4 * coefficients[0] + 6 * coefficients[1] == 2


# --- ROOTS ---

def test_rational_roots():
    assert nth_root(QQ_FIELD, QQ_FIELD.scalar("8/27"), 3) == QQ_FIELD.scalar("2/3")
    assert nth_root(QQ_FIELD, QQ_FIELD.scalar(-8), 3) == QQ_FIELD.scalar(-2)
    assert nth_root(QQ_FIELD, QQ_FIELD.scalar(-4), 2) is None
    assert nth_root(QQ_FIELD, QQ_FIELD.scalar(2), 2) is None


def test_prime_field_roots():
    """
    2 is a square mod 7 (3^2 = 9 = 2); 3 is not.
    """
    # ACT
    root = nth_root(GF7, GF7.scalar(2), 2)

    # ASSERT
    assert root is not None
    assert root**2 == GF7.scalar(2)
    assert nth_root(GF7, GF7.scalar(3), 2) is None


def test_root_degree_must_be_positive():
    with pytest.raises(InvalidInputError):
        nth_root(QQ_FIELD, QQ_FIELD.one, 0)

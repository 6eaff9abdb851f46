"""Exact scalars over QQ and GF(p), plus the integer helpers the order formulas need."""
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

from pydantic import BaseModel, ConfigDict, field_validator
from sympy import GF, QQ, integer_nthroot, isprime, multiplicity
from sympy.core.intfunc import igcdex
from sympy.ntheory.residue_ntheory import nthroot_mod
from sympy.polys.domains.domain import Domain

from coartin.errors import InvalidInputError

logger = logging.getLogger(__name__)

# Scalars are plain sympy domain elements; this alias only documents intent.
Scalar = Any


@lru_cache(maxsize=None)
def _domain_for(characteristic: int) -> Domain:
    if characteristic == 0:
        return QQ
    # residues are kept in {0, ..., p-1}
    return GF(characteristic, symmetric=False)


class FieldSpec(BaseModel):
    """The coefficient field: QQ for characteristic 0, GF(p) otherwise."""

    model_config = ConfigDict(frozen=True)

    characteristic: int = 0

    @field_validator("characteristic")
    @classmethod
    def _zero_or_prime(cls, value: int) -> int:
        if value != 0 and not isprime(value):
            raise ValueError(f"characteristic must be 0 or a prime, got {value}")
        return value

    @property
    def domain(self) -> Domain:
        return _domain_for(self.characteristic)

    @property
    def zero(self) -> Scalar:
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        return self.domain.one

    @property
    def label(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def scalar(self, value: int | Fraction | str | Scalar) -> Scalar:
        """Converts an int, Fraction, "num/den" string or domain element into the field."""
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                raise InvalidInputError(f"'{value}' is not a rational number")
        if isinstance(value, Fraction):
            if self.characteristic and value.denominator % self.characteristic == 0:
                raise InvalidInputError(
                    f"denominator {value.denominator} is not invertible in {self.label}"
                )
            return self.domain.convert(value.numerator) / self.domain.convert(value.denominator)
        return self.domain.convert(value)

    def parse_scalar(self, text: str) -> Scalar:
        return self.scalar(text)

    def format_scalar(self, a: Scalar, compact: bool = False) -> str:
        K = self.domain
        if self.characteristic:
            return str(int(K.to_int(a)))
        numerator, denominator = int(K.numer(a)), int(K.denom(a))
        if compact and denominator == 1:
            return str(numerator)
        return f"{numerator}/{denominator}"

    def to_fraction(self, a: Scalar) -> Fraction:
        """Characteristic 0 only."""
        return Fraction(int(self.domain.numer(a)), int(self.domain.denom(a)))

    def is_zero(self, a: Scalar) -> bool:
        return self.domain.is_zero(a)

    def inverse(self, a: Scalar) -> Scalar:
        if self.is_zero(a):
            raise InvalidInputError("zero has no inverse")
        return self.one / a

    def power(self, a: Scalar, k: int) -> Scalar:
        if k >= 0:
            return a**k
        return self.inverse(a**(-k))

    def is_negative(self, a: Scalar) -> bool:
        return self.characteristic == 0 and int(self.domain.numer(a)) < 0


def p_coprime_divisor(n: int, p: int) -> int:
    """Returns n_p where n = p^s * n_p and p does not divide n_p."""
    if n < 1:
        raise InvalidInputError(f"p-co-prime divisor needs n >= 1, got {n}")
    if not isprime(p):
        raise InvalidInputError(f"{p} is not a prime")
    return n // p ** multiplicity(p, n)


def gcd_of_set(values: Sequence[int]) -> int:
    if not values:
        raise InvalidInputError("gcd of an empty set is undefined")
    if any(v < 1 for v in values):
        raise InvalidInputError(f"gcd expects positive integers, got {sorted(values)}")
    return math.gcd(*values)


def bezout(values: Sequence[int]) -> tuple[int, list[int]]:
    """Extended gcd of a list: returns (g, a) with g = sum(a_t * values_t) = gcd(values) >= 0."""
    g, coefficients = 0, []
    for v in values:
        x, y, g = igcdex(g, v)
        coefficients = [c * x for c in coefficients] + [y]
    return int(g), [int(c) for c in coefficients]


def nth_root(field: FieldSpec, a: Scalar, n: int) -> Scalar | None:
    """An n-th root of a lying in the field itself, or None."""
    if n < 1:
        raise InvalidInputError(f"root degree must be positive, got {n}")
    if field.is_zero(a):
        return field.zero
    if field.characteristic:
        root = nthroot_mod(int(field.domain.to_int(a)), n, field.characteristic)
        return None if root is None else field.scalar(int(root))
    value = field.to_fraction(a)
    if value < 0 and n % 2 == 0:
        return None
    top, top_exact = integer_nthroot(abs(value.numerator), n)
    bottom, bottom_exact = integer_nthroot(value.denominator, n)
    if not (top_exact and bottom_exact):
        return None
    sign = -1 if value < 0 else 1
    return field.scalar(Fraction(sign * int(top), int(bottom)))

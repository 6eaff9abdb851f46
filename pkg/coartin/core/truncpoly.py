"""Dense polynomial arithmetic in F = R[x]/(x^m) and in R[x].

R is any sympy domain: QQ, GF(p), or a polynomial ring over them. Nothing here
divides, so the same code serves concrete algebras and the symbolic variety
computations.
"""
import logging
from dataclasses import dataclass
from typing import Any, Callable, Iterator

from sympy.polys.domains.domain import Domain

from coartin.core.exactfield import FieldSpec
from coartin.errors import InternalComputationError, TruncationMismatchError

logger = logging.getLogger(__name__)


def _trim(coeffs: list, domain: Domain) -> tuple:
    end = len(coeffs)
    while end and domain.is_zero(coeffs[end - 1]):
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class Polynomial:
    """An element of R[x]; coeffs[i] is the coefficient of x^i, no trailing zeros."""

    coeffs: tuple
    domain: Domain

    @classmethod
    def from_coeffs(cls, coeffs, domain: Domain) -> "Polynomial":
        return cls(_trim([domain.convert(c) for c in coeffs], domain), domain)

    @classmethod
    def zero(cls, domain: Domain) -> "Polynomial":
        return cls((), domain)

    @classmethod
    def monomial(cls, k: int, domain: Domain, coeff: Any = None) -> "Polynomial":
        c = domain.one if coeff is None else coeff
        return cls.from_coeffs([domain.zero] * k + [c], domain)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, j: int) -> Any:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else self.domain.zero

    def terms(self) -> Iterator[tuple[int, Any]]:
        """Nonzero (degree, coefficient) pairs in increasing degree."""
        for k, c in enumerate(self.coeffs):
            if not self.domain.is_zero(c):
                yield k, c

    def __add__(self, other: "Polynomial") -> "Polynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return Polynomial.from_coeffs(
            [self.coefficient(k) + other.coefficient(k) for k in range(size)], self.domain
        )

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs), self.domain)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: Any) -> "Polynomial":
        return Polynomial.from_coeffs([c * a for a in self.coeffs], self.domain)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial.zero(self.domain)
        out = [self.domain.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in self.terms():
            for j, b in other.terms():
                out[i + j] += a * b
        return Polynomial.from_coeffs(out, self.domain)

    def truncate(self, m: int) -> "TruncPoly":
        return TruncPoly.from_coeffs(m, self.coeffs[:m], self.domain)


@dataclass(frozen=True)
class TruncPoly:
    """An element of F_m = R[x]/(x^m) as a dense vector of exactly m coefficients."""

    m: int
    coeffs: tuple
    domain: Domain

    def __post_init__(self):
        if len(self.coeffs) != self.m:
            raise InternalComputationError(
                f"TruncPoly of order {self.m} built from {len(self.coeffs)} coefficients"
            )

    @classmethod
    def from_coeffs(cls, m: int, coeffs, domain: Domain) -> "TruncPoly":
        padded = [domain.convert(c) for c in list(coeffs)[:m]]
        padded += [domain.zero] * (m - len(padded))
        return cls(m, tuple(padded), domain)

    @classmethod
    def zero(cls, m: int, domain: Domain) -> "TruncPoly":
        return cls(m, (domain.zero,) * m, domain)

    @classmethod
    def one(cls, m: int, domain: Domain) -> "TruncPoly":
        return cls.monomial(m, 0, domain)

    @classmethod
    def monomial(cls, m: int, k: int, domain: Domain, coeff: Any = None) -> "TruncPoly":
        if k >= m:
            return cls.zero(m, domain)
        c = domain.one if coeff is None else coeff
        return cls.from_coeffs(m, [domain.zero] * k + [c], domain)

    def coefficient(self, j: int) -> Any:
        return self.coeffs[j] if 0 <= j < self.m else self.domain.zero

    def terms(self) -> Iterator[tuple[int, Any]]:
        for k, c in enumerate(self.coeffs):
            if not self.domain.is_zero(c):
                yield k, c

    def is_zero(self) -> bool:
        return all(self.domain.is_zero(c) for c in self.coeffs)

    def order(self) -> int | None:
        """Lowest degree with a nonzero coefficient, None for 0."""
        return next((k for k, _ in self.terms()), None)

    def _check(self, other: "TruncPoly") -> None:
        if self.m != other.m:
            raise TruncationMismatchError(f"cannot combine elements of F_{self.m} and F_{other.m}")

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        return TruncPoly(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.domain)

    def __neg__(self) -> "TruncPoly":
        return TruncPoly(self.m, tuple(-a for a in self.coeffs), self.domain)

    def __sub__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        return TruncPoly(self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.domain)

    def scale(self, c: Any) -> "TruncPoly":
        return TruncPoly(self.m, tuple(c * a for a in self.coeffs), self.domain)

    def __mul__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        out = [self.domain.zero] * self.m
        right = list(other.terms())
        for i, a in self.terms():
            for j, b in right:
                if i + j >= self.m:
                    break
                out[i + j] += a * b
        return TruncPoly(self.m, tuple(out), self.domain)

    def __pow__(self, k: int) -> "TruncPoly":
        result = TruncPoly.one(self.m, self.domain)
        for _ in range(k):
            result = result * self
        return result

    def lift(self) -> Polynomial:
        return Polynomial.from_coeffs(self.coeffs, self.domain)


@dataclass(frozen=True)
class ConductorElement:
    """sum_i p_i(x^m) * x^(m+i); coords[i] holds p_i low degree first."""

    m: int
    coords: tuple[tuple, ...]
    domain: Domain

    @classmethod
    def zero(cls, m: int, domain: Domain) -> "ConductorElement":
        return cls(m, ((),) * m, domain)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def expand(self) -> Polynomial:
        out: dict[int, Any] = {}
        for i, p in enumerate(self.coords):
            for k, c in enumerate(p):
                out[self.m * (k + 1) + i] = c
        if not out:
            return Polynomial.zero(self.domain)
        dense = [out.get(d, self.domain.zero) for d in range(max(out) + 1)]
        return Polynomial.from_coeffs(dense, self.domain)

    def words(self) -> Iterator[tuple[Any, int, int]]:
        """(c, k, i) for each term c * (x^m)^k * x^(m+i)."""
        for i, p in enumerate(self.coords):
            for k, c in enumerate(p):
                if not self.domain.is_zero(c):
                    yield c, k, i


def mul_in_f(f: TruncPoly, g: TruncPoly) -> TruncPoly:
    return f * g


def mul_in_kx(f: Polynomial, g: Polynomial, m: int) -> Polynomial:
    """Product in R[x] under the working degree bound max(m^2, 4m)."""
    product = f * g
    bound = max(m * m, 4 * m)
    if product.degree >= bound:
        raise InternalComputationError(
            f"product of degree {product.degree} exceeds the working bound {bound} for m={m}"
        )
    return product


def split_conductor(p: Polynomial, m: int) -> tuple[TruncPoly, ConductorElement]:
    """p = p_bar + [p] with deg p_bar < m and [p] in (x^m) written in Lambda(m) coordinates."""
    buckets: list[list] = [[] for _ in range(m)]
    for d, c in p.terms():
        if d < m:
            continue
        q, i = divmod(d - m, m)
        column = buckets[i]
        column.extend([p.domain.zero] * (q + 1 - len(column)))
        column[q] = c
    coords = tuple(_trim(column, p.domain) for column in buckets)
    return p.truncate(m), ConductorElement(m, coords, p.domain)


def coefficient_at(f: Polynomial | TruncPoly, j: int) -> Any:
    return f.coefficient(j)


def format_terms(terms: list[tuple[int, Any]], render: Callable[[Any], str]) -> str:
    """Renders "x^2 + 3x^5 - 1/2 x^7"; render must return a signed compact scalar."""
    if not terms:
        return "0"
    pieces = []
    for k, c in terms:
        text = render(c)
        negative = text.startswith("-")
        text = text.lstrip("-")
        if k == 0:
            body = text
        else:
            monomial = "x" if k == 1 else f"x^{k}"
            if text == "1":
                body = monomial
            elif "/" in text:
                body = f"{text} {monomial}"
            else:
                body = f"{text}{monomial}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


def format_polynomial(f: Polynomial | TruncPoly, field: FieldSpec) -> str:
    return format_terms(list(f.terms()), lambda c: field.format_scalar(c, compact=True))

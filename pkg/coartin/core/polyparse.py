"""Text import of polynomials in x: "x^2 + 3/2 x^5", "2x^3 - x^4", one per line in files."""
import logging
import re
from fractions import Fraction
from pathlib import Path

from sympy import Poly, Symbol, SympifyError
from sympy.polys.polyerrors import BasePolynomialError
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from coartin.core.exactfield import FieldSpec
from coartin.core.truncpoly import Polynomial
from coartin.errors import InvalidInputError

logger = logging.getLogger(__name__)

X = Symbol("x")
_ALLOWED = re.compile(r"^[0-9x+\-*/^(). ]+$")
_TRANSFORMATIONS = standard_transformations + (convert_xor, implicit_multiplication)


def parse_polynomial(text: str, field: FieldSpec) -> Polynomial:
    """Parses a polynomial in x with rational coefficients into the given field."""
    source = text.strip()
    if not source or not _ALLOWED.match(source):
        raise InvalidInputError(f"malformed polynomial '{text}'")
    try:
        expr = parse_expr(source, local_dict={"x": X}, transformations=_TRANSFORMATIONS)
        poly = Poly(expr, X, domain="QQ")
    except (SympifyError, BasePolynomialError, SyntaxError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InvalidInputError(f"malformed polynomial '{text}': {e}")
    coeffs = [field.zero] * (poly.degree() + 1) if not poly.is_zero else []
    for (k,), c in poly.terms():
        coeffs[k] = field.scalar(Fraction(int(c.p), int(c.q)))
    return Polynomial.from_coeffs(coeffs, field.domain)


def parse_generator_list(text: str, field: FieldSpec) -> list[Polynomial]:
    """Semicolon-separated polynomials, as given on the command line."""
    return [parse_polynomial(chunk, field) for chunk in text.split(";") if chunk.strip()]


def read_generator_file(path: str | Path, field: FieldSpec) -> list[Polynomial]:
    """One polynomial per line; blank lines and '#' comments are skipped."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as e:
        raise InvalidInputError(f"cannot read generator file {path}: {e}")
    gens = []
    for line in lines:
        content = line.split("#", 1)[0].strip()
        if content:
            gens.append(parse_polynomial(content, field))
    logger.info(f"Read {len(gens)} generators from {path}")
    return gens

"""Generators and defining relations of A / x^m K[x] (target BAR) and of A itself (target FULL).

Relations are formal: a word (exponent vector over the generators) equals a
linear combination of words, plus for FULL a bracket term in the conductor
written in Lambda(m) coordinates. Every relation is verified by substituting
the generator values before the presentation is returned.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Any

from sympy.polys.matrices import DomainMatrix

from coartin.core.exactfield import FieldSpec, Scalar
from coartin.core.truncpoly import ConductorElement, Polynomial, TruncPoly, format_polynomial, mul_in_kx, split_conductor
from coartin.errors import InternalComputationError, WrongCaseError
from coartin.services.semigroup import CaseTag, Vector, conductor_ideal_generators, relation_basis
from coartin.services.subalgebra import CanonicalAlgebra, structure_constants, theta_coefficients

logger = logging.getLogger(__name__)


class Target(str, Enum):
    BAR = "bar"
    FULL = "full"


class Style(str, Enum):
    RAW = "raw"
    IRREDUNDANT = "irredundant"
    STRUCTURE = "structure"


class RelationKind(str, Enum):
    DEFINING = "defining"  # f^b against f^a(gamma)
    CONDUCTOR = "conductor"  # f^c, vanishing in F
    STRUCTURE = "structure"  # multiplication table of the canonical basis
    MODULE = "module"  # products involving the conductor generators x^(m+i)


@dataclass(frozen=True)
class Generator:
    name: str
    value: Polynomial
    weight: int


@dataclass(frozen=True)
class Relation:
    kind: RelationKind
    lhs: Vector
    rhs: tuple[tuple[Scalar, Vector], ...]
    bracket: ConductorElement | None = None


@dataclass(frozen=True)
class Presentation:
    field: FieldSpec
    m: int
    target: Target
    style: Style
    case_tag: CaseTag
    generators: tuple[Generator, ...]
    relations: tuple[Relation, ...]

    def of_kind(self, kind: RelationKind) -> list[Relation]:
        return [r for r in self.relations if r.kind == kind]

    def word_text(self, word: Vector) -> str:
        factors = [
            self.generators[k].name if e == 1 else f"({self.generators[k].name})^{e}"
            for k, e in enumerate(word)
            if e
        ]
        return "*".join(factors) if factors else "1"

    def bracket_text(self, bracket: ConductorElement) -> str:
        """The bracket as words in the generators x^m, ..., x^(2m-1)."""
        pieces = []
        for c, k, i in bracket.words():
            factors = ([f"(x^{self.m})^{k}"] if k > 1 else [f"x^{self.m}"] if k == 1 else []) + [f"x^{self.m + i}"]
            pieces.append(f"{self.field.format_scalar(c, compact=True)}*{'*'.join(factors)}")
        return " + ".join(pieces) if pieces else "0"

    def relation_text(self, relation: Relation) -> str:
        rhs = [
            self.word_text(w) if c == self.field.one else f"{self.field.format_scalar(c, compact=True)}*{self.word_text(w)}"
            for c, w in relation.rhs
        ]
        if relation.bracket is not None and not relation.bracket.is_zero():
            rhs.append(f"[{self.bracket_text(relation.bracket)}]")
        return f"{self.word_text(relation.lhs)} = {' + '.join(rhs) if rhs else '0'}"


class _Evaluator:
    """Evaluates words in the generator values, in F (BAR) or in K[x] (FULL)."""

    def __init__(self, generators: list[Generator], m: int, target: Target):
        self._generators = generators
        self._m = m
        self._target = target
        self._cache: dict[Vector, Any] = {}

    def one(self):
        domain = self._generators[0].value.domain if self._generators else None
        if self._target is Target.BAR:
            return TruncPoly.one(self._m, domain)
        return Polynomial.monomial(0, domain)

    def value(self, word: Vector):
        if word not in self._cache:
            nonzero = [k for k, e in enumerate(word) if e]
            if not nonzero:
                self._cache[word] = self.one()
            else:
                k = nonzero[-1]
                lower = word[:k] + (word[k] - 1,) + word[k + 1:]
                generator = self._generators[k].value
                if self._target is Target.BAR:
                    self._cache[word] = self.value(lower) * generator.truncate(self._m)
                else:
                    self._cache[word] = mul_in_kx(self.value(lower), generator, self._m)
        return self._cache[word]

    def holds(self, relation: Relation) -> bool:
        total = None
        for c, w in relation.rhs:
            term = self.value(w).scale(c)
            total = term if total is None else total + term
        if relation.bracket is not None:
            bracket = relation.bracket.expand()
            total = bracket if total is None else total + bracket
        lhs = self.value(relation.lhs)
        if total is None:
            return lhs.is_zero()
        return (lhs - total).is_zero()


def _embed(a: Vector, size: int) -> Vector:
    return tuple(a) + (0,) * (size - len(a))


def _unit(k: int, size: int) -> Vector:
    return tuple(1 if i == k else 0 for i in range(size))


def _conductor_generators(m: int, domain) -> list[Generator]:
    return [Generator(f"x^{m + i}", Polynomial.monomial(m + i, domain), m + i) for i in range(m)]


def _bracket(p: Polynomial, m: int) -> ConductorElement:
    bar, conductor = split_conductor(p, m)
    if not bar.is_zero():
        raise InternalComputationError("bracket term has a part below x^m")
    return conductor


def _module_relations(generators: list[Generator], count: int, m: int) -> list[Relation]:
    """x^(m+i) g = [x^(m+i) g] for the first count generators, and x^(m+i) x^(m+j) = [x^(2m+i+j)]."""
    size = len(generators)
    offset = count
    relations = []
    for i in range(m):
        for k in range(count):
            word = tuple(a + b for a, b in zip(_unit(offset + i, size), _unit(k, size)))
            p = mul_in_kx(generators[offset + i].value, generators[k].value, m)
            relations.append(Relation(RelationKind.MODULE, word, (), _bracket(p, m)))
    # i = 0 would only restate x^m x^(m+j) = [x^(2m+j)]
    for i in range(1, m):
        for j in range(i, m):
            word = tuple(a + b for a, b in zip(_unit(offset + i, size), _unit(offset + j, size)))
            bracket = _bracket(Polynomial.monomial(2 * m + i + j, generators[0].value.domain), m)
            relations.append(Relation(RelationKind.MODULE, word, (), bracket))
    return relations


def _empty_gamma(algebra: CanonicalAlgebra, target: Target, style: Style) -> Presentation:
    m, K = algebra.m, algebra.field.domain
    if target is Target.BAR:
        return Presentation(algebra.field, m, target, style, CaseTag.EMPTY_GAMMA, (), ())
    generators = _conductor_generators(m, K)
    relations = []
    for i in range(1, m):
        for j in range(i, m):
            lhs = tuple(a + b for a, b in zip(_unit(i, m), _unit(j, m)))
            if i + j < m:
                rhs = tuple(a + b for a, b in zip(_unit(0, m), _unit(i + j, m)))
            else:
                rhs = tuple(e + (2 if idx == 0 else 0) for idx, e in enumerate(_unit(i + j - m, m)))
            relations.append(Relation(RelationKind.MODULE, lhs, ((K.one, rhs),)))
    return Presentation(algebra.field, m, target, style, CaseTag.EMPTY_GAMMA, tuple(generators), tuple(relations))


def _defining_relation(
    algebra: CanonicalAlgebra, gamma: int, b: Vector, size: int, evaluator: _Evaluator | None
) -> Relation:
    """f^b = f^a(gamma) + sum theta f^a(gamma'), with the bracket correction for FULL."""
    g = algebra.structure
    theta = theta_coefficients(algebra, gamma, b)
    K = algebra.field.domain
    rhs = [(K.one, _embed(g.a_choice[gamma], size))]
    rhs += [(c, _embed(g.a_choice[g2], size)) for g2, c in theta.items() if not algebra.field.is_zero(c)]
    bracket = None
    if evaluator is not None:
        difference = evaluator.value(_embed(b, size))
        for c, w in rhs:
            difference = difference - evaluator.value(w).scale(c)
        bracket = _bracket(difference, algebra.m)
    return Relation(RelationKind.DEFINING, _embed(b, size), tuple(rhs), bracket)


def _conductor_relations(algebra: CanonicalAlgebra, size: int, evaluator: _Evaluator | None) -> list[Relation]:
    relations = []
    for c in conductor_ideal_generators(algebra.structure):
        word = _embed(c, size)
        bracket = _bracket(evaluator.value(word), algebra.m) if evaluator is not None else None
        relations.append(Relation(RelationKind.CONDUCTOR, word, (), bracket))
    return relations


def _structure_presentation(algebra: CanonicalAlgebra, target: Target) -> Presentation:
    m, K, members = algebra.m, algebra.field.domain, algebra.gamma.members
    generators = [Generator(f"f_{g}", algebra.basis[g].lift(), g) for g in members]
    if target is Target.FULL:
        generators += _conductor_generators(m, K)
    size = len(generators)
    index = {g: k for k, g in enumerate(members)}
    evaluator = _Evaluator(generators, m, target) if target is Target.FULL else None
    relations = []
    for (g1, g2), mu in structure_constants(algebra).items():
        lhs = tuple(a + b for a, b in zip(_unit(index[g1], size), _unit(index[g2], size)))
        rhs: list[tuple[Scalar, Vector]] = []
        if mu is not None:
            rhs.append((K.one, _unit(index[g1 + g2], size)))
            rhs += [(c, _unit(index[rho], size)) for rho, c in mu.items() if not algebra.field.is_zero(c)]
        bracket = None
        if evaluator is not None:
            difference = evaluator.value(lhs)
            for c, w in rhs:
                difference = difference - evaluator.value(w).scale(c)
            bracket = _bracket(difference, m)
        relations.append(Relation(RelationKind.STRUCTURE, lhs, tuple(rhs), bracket))
    if target is Target.FULL:
        relations += _module_relations(generators, len(members), m)
    return Presentation(algebra.field, m, target, Style.STRUCTURE, CaseTag.BAR_ONLY, tuple(generators), tuple(relations))


def present(algebra: CanonicalAlgebra, target: Target = Target.BAR, style: Style = Style.RAW) -> Presentation:
    """Minimal generators and defining relations of A / x^m K[x] or of A."""
    if algebra.gamma.is_empty:
        presentation = _empty_gamma(algebra, target, style)
    elif style is Style.STRUCTURE:
        presentation = _structure_presentation(algebra, target)
    else:
        presentation = _indecomposable_presentation(algebra, target, style)
    evaluator = _Evaluator(list(presentation.generators), algebra.m, target)
    for relation in presentation.relations:
        if not evaluator.holds(relation):
            raise InternalComputationError(f"relation {presentation.relation_text(relation)} fails on substitution")
    logger.info(
        f"Presentation {target.value}/{style.value} for Gamma={list(algebra.gamma.members)}: "
        f"{len(presentation.generators)} generators, {len(presentation.relations)} relations"
    )
    return presentation


def _indecomposable_presentation(algebra: CanonicalAlgebra, target: Target, style: Style) -> Presentation:
    g = algebra.structure
    m, K = algebra.m, algebra.field.domain
    generators = [Generator(f"f_{nu}", algebra.basis[nu].lift(), nu) for nu in g.ind]
    if target is Target.FULL:
        generators += _conductor_generators(m, K)
    size = len(generators)
    evaluator = _Evaluator(generators, m, target) if target is Target.FULL else None

    relations: list[Relation] = []
    tag = g.case
    if tag is CaseTag.GENERAL:
        if style is Style.RAW:
            pairs = [(gamma, b) for gamma in g.dec_ge2 for b in g.rel[gamma] if b != g.a_choice[gamma]]
        else:
            basis = relation_basis(g)
            pairs = list(zip(basis.mu_list, basis.b_list))
            if algebra.is_monomial:
                tag = CaseTag.MONOMIAL
        relations += [_defining_relation(algebra, gamma, b, size, evaluator) for gamma, b in pairs]
    relations += _conductor_relations(algebra, size, evaluator)
    if target is Target.FULL:
        relations += _module_relations(generators, g.s, m)
    return Presentation(algebra.field, m, target, style, tag, tuple(generators), tuple(relations))


def abstract_dimension(presentation: Presentation, algebra: CanonicalAlgebra) -> int:
    """dim of K[y_1..y_s] / (relations) for a BAR presentation on the indecomposable generators.

    The conductor relations kill every monomial of weight >= m - 1, so the quotient
    is computed inside the span of the monomials below that weight.
    """
    if presentation.target is not Target.BAR or presentation.style is Style.STRUCTURE:
        raise WrongCaseError("abstract dimension is defined for BAR presentations on f_nu generators")
    if algebra.gamma.is_empty:
        return 1
    g = algebra.structure
    threshold = algebra.m - 1
    expected = set(conductor_ideal_generators(g))
    if {r.lhs for r in presentation.of_kind(RelationKind.CONDUCTOR)} != expected:
        raise InternalComputationError("presentation is missing conductor relations")

    ranges = [range(threshold // v + 1) for v in g.nu]
    monomials = [a for a in product(*ranges) if g.degree(a) < threshold]
    index = {a: k for k, a in enumerate(monomials)}
    K = algebra.field.domain
    rows = []
    for relation in presentation.of_kind(RelationKind.DEFINING):
        terms = [(K.one, relation.lhs)] + [(-c, w) for c, w in relation.rhs]
        for shift in monomials:
            if g.degree(shift) + g.degree(relation.lhs) >= threshold:
                continue
            row = [K.zero] * len(monomials)
            for c, w in terms:
                moved = tuple(a + b for a, b in zip(w, shift))
                if moved in index:
                    row[index[moved]] += c
            rows.append(row)
    if not rows:
        return len(monomials)
    rank = DomainMatrix(rows, (len(rows), len(monomials)), K).rank()
    return len(monomials) - rank


def generator_text(presentation: Presentation, generator: Generator) -> str:
    return f"{generator.name} = {format_polynomial(generator.value, presentation.field)}"

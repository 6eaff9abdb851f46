"""Combinatorics of the semigroup data Gamma in S(m).

Covers enumeration of S(m), the ind/dec split and relation sets Rel(gamma),
the conductor ideal in N^s, the relation basis with its avoidable and
non-avoidable elements, and the order sets L, B and O.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product
from typing import Mapping

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from coartin.core.exactfield import p_coprime_divisor
from coartin.errors import InvalidInputError, WrongCaseError

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]


class CaseTag(str, Enum):
    EMPTY_GAMMA = "EmptyGamma"
    SINGLE_IND = "SingleInd"
    NO_DEC2 = "NoDec2"
    GENERAL = "General"
    MONOMIAL = "Monomial"
    BAR_ONLY = "BarOnly"


class Gamma(BaseModel):
    """A subset of {2, ..., m-2} closed under addition below m."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=2)
    members: tuple[int, ...] = ()

    @field_validator("members")
    @classmethod
    def _sorted(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sorted(set(value)))

    @model_validator(mode="after")
    def _closed(self) -> "Gamma":
        outside = [g for g in self.members if not 2 <= g <= self.m - 2]
        if outside:
            raise ValueError(f"members {outside} lie outside {{2, ..., {self.m - 2}}}")
        present = set(self.members)
        for a in self.members:
            for b in self.members:
                if a + b < self.m and a + b not in present:
                    raise ValueError(f"{a} + {b} = {a + b} < m={self.m} is missing from Gamma")
        return self

    def __contains__(self, value: int) -> bool:
        return value in self.members

    @property
    def is_empty(self) -> bool:
        return not self.members

    @property
    def complement(self) -> tuple[int, ...]:
        """C(Gamma) = {2, ..., m-1} minus Gamma."""
        return tuple(d for d in range(2, self.m) if d not in self.members)

    def _check_index(self, *indices: int) -> None:
        for i in indices:
            if not 2 <= i <= self.m - 1:
                raise InvalidInputError(f"index {i} outside 2..{self.m - 1}")

    def c_gamma_after(self, i: int) -> tuple[int, ...]:
        self._check_index(i)
        return tuple(d for d in self.complement if d > i)

    def gamma_after(self, i: int) -> tuple[int, ...]:
        self._check_index(i)
        return tuple(g for g in self.members if g > i)

    def c_gamma_between(self, i: int, j: int) -> tuple[int, ...]:
        self._check_index(i, j)
        return tuple(d for d in self.complement if i < d < j)

    def gamma_between(self, i: int, j: int) -> tuple[int, ...]:
        self._check_index(i, j)
        return tuple(g for g in self.members if i < g < j)


def dot(a: Vector, nu: Vector) -> int:
    return sum(x * y for x, y in zip(a, nu))


def unit_vector(i: int, s: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(s))


def _representations(target: int, nu: Vector) -> list[Vector]:
    """All a in N^s with a.nu = target, by depth-first bounded knapsack."""
    found: list[Vector] = []

    def walk(i: int, remaining: int, prefix: list[int]) -> None:
        if i == len(nu):
            if remaining == 0:
                found.append(tuple(prefix))
            return
        for k in range(remaining // nu[i] + 1):
            walk(i + 1, remaining - k * nu[i], prefix + [k])

    walk(0, target, [])
    return sorted(found)


@dataclass(frozen=True)
class _BasisSets:
    everything: frozenset[Vector]
    shifted: frozenset[Vector]
    prime: frozenset[Vector]
    avoidable: tuple[int, ...]
    non_avoidable: tuple[int, ...]


def _basis_sets(rel: Mapping[int, tuple[Vector, ...]], dec_ge2: tuple[int, ...], nu: Vector) -> _BasisSets:
    everything = frozenset(b for g in dec_ge2 for b in rel[g])
    shifted = frozenset(
        b for b in everything
        if any(b[i] > 0 and b[:i] + (b[i] - 1,) + b[i + 1:] in everything for i in range(len(nu)))
    )
    prime = everything - shifted
    values = sorted({dot(b, nu) for b in prime})
    avoidable = tuple(mu for mu in values if not shifted.intersection(rel[mu]))
    non_avoidable = tuple(mu for mu in values if shifted.intersection(rel[mu]))
    return _BasisSets(everything, shifted, prime, avoidable, non_avoidable)


@dataclass(frozen=True)
class GammaStructure:
    gamma: Gamma
    ind: tuple[int, ...]
    dec: tuple[int, ...]
    dec_ge2: tuple[int, ...]
    rel: Mapping[int, tuple[Vector, ...]] = field(hash=False)
    a_choice: Mapping[int, Vector] = field(hash=False)

    @property
    def m(self) -> int:
        return self.gamma.m

    @property
    def s(self) -> int:
        return len(self.ind)

    @property
    def nu(self) -> Vector:
        return self.ind

    def degree(self, a: Vector) -> int:
        return dot(a, self.ind)

    @property
    def case(self) -> CaseTag:
        if self.s == 1:
            return CaseTag.SINGLE_IND
        return CaseTag.GENERAL if self.dec_ge2 else CaseTag.NO_DEC2


def case_of(gamma: Gamma) -> CaseTag:
    if gamma.is_empty:
        return CaseTag.EMPTY_GAMMA
    return structure(gamma).case


def structure(gamma: Gamma, choice: Mapping[int, Vector] | None = None) -> GammaStructure:
    """ind/dec split, Rel tables and the deterministic choice of a(gamma).

    `choice` overrides a(gamma) for selected gamma; overrides must lie in Rel(gamma)
    and respect the non-avoidable constraint.
    """
    if gamma.is_empty:
        raise WrongCaseError("the empty semigroup has no structure; its algebra is K + x^m K[x]")
    present = set(gamma.members)
    ind = tuple(g for g in gamma.members if not any(g - a in present for a in gamma.members if a < g))
    dec = tuple(g for g in gamma.members if g not in ind)
    s = len(ind)
    rel = {g: tuple(_representations(g, ind)) for g in gamma.members}
    dec_ge2 = tuple(g for g in dec if len(rel[g]) >= 2)
    sets = _basis_sets(rel, dec_ge2, ind)

    a_choice: dict[int, Vector] = {}
    for g in gamma.members:
        if g in ind:
            a_choice[g] = unit_vector(ind.index(g), s)
            continue
        allowed = rel[g]
        if g in sets.non_avoidable:
            allowed = tuple(a for a in allowed if a not in sets.prime)
        if choice and g in choice:
            picked = tuple(choice[g])
            if picked not in allowed:
                raise InvalidInputError(f"a({g}) = {picked} is not an admissible element of Rel({g})")
            a_choice[g] = picked
        else:
            a_choice[g] = min(allowed)
    logger.debug(f"Structure of Gamma={list(gamma.members)} m={gamma.m}: ind={ind} dec_ge2={dec_ge2}")
    return GammaStructure(gamma, ind, dec, dec_ge2, rel, a_choice)


@dataclass(frozen=True)
class RelationBasis:
    b_list: tuple[Vector, ...]
    mu_list: tuple[int, ...]
    b_prime: tuple[Vector, ...]
    avoidable: tuple[int, ...]
    non_avoidable: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.b_list)

    def multiplicity(self, mu: int) -> int:
        return self.mu_list.count(mu)


def relation_basis(g: GammaStructure) -> RelationBasis:
    if not g.dec_ge2:
        raise WrongCaseError("relation basis needs dec>=2(Gamma) to be nonempty")
    sets = _basis_sets(g.rel, g.dec_ge2, g.nu)
    dropped = {g.a_choice[mu] for mu in sets.avoidable}
    chosen = sorted((b for b in sets.prime if b not in dropped), key=lambda b: (g.degree(b), b))
    return RelationBasis(
        b_list=tuple(chosen),
        mu_list=tuple(g.degree(b) for b in chosen),
        b_prime=tuple(sorted(sets.prime, key=lambda b: (g.degree(b), b))),
        avoidable=sets.avoidable,
        non_avoidable=sets.non_avoidable,
    )


def conductor_ideal_generators(g: GammaStructure) -> tuple[Vector, ...]:
    """Minimal generators of {c in N^s : c.nu >= m-1}."""
    threshold = g.m - 1
    ranges = [range(math.ceil(threshold / v) + 1) for v in g.nu]
    generators = []
    for c in product(*ranges):
        if g.degree(c) < threshold:
            continue
        if all(c[i] == 0 or g.degree(c) - g.nu[i] < threshold for i in range(g.s)):
            generators.append(tuple(c))
    return tuple(sorted(generators))


def quotient_degrees(g: GammaStructure) -> tuple[int, ...]:
    """Degrees a.nu of the monomials of N^s lying below the conductor ideal."""
    threshold = g.m - 1
    ranges = [range(math.ceil(threshold / v) + 1) for v in g.nu]
    return tuple(sorted({g.degree(a) for a in product(*ranges) if g.degree(a) < threshold}))


def relation_rank(g: GammaStructure) -> int:
    """Rank of the lattice I_Gamma spanned by a - b for a, b in Rel(gamma), gamma in dec>=2."""
    rows = [
        [QQ(x - y) for x, y in zip(a, b)]
        for gamma in g.dec_ge2
        for a, b in combinations(g.rel[gamma], 2)
    ]
    if not rows:
        return 0
    return DomainMatrix(rows, (len(rows), g.s), QQ).rank()


def enumerate_s(m: int) -> list[Gamma]:
    """S(m) by incremental search.

    Candidates are decided in increasing order, so every sum a + b of chosen
    elements is decided after a and b: excluding k is allowed only when no
    chosen pair sums to k, and including k is pruned when it forces m - 1.
    """
    if m < 2:
        raise InvalidInputError(f"m must be at least 2, got {m}")
    found: list[tuple[int, ...]] = []

    def walk(k: int, chosen: list[int], required: set[int]) -> None:
        if k > m - 2:
            found.append(tuple(chosen))
            return
        sums = {k + c for c in chosen + [k] if k + c < m}
        if m - 1 not in sums:
            walk(k + 1, chosen + [k], required | sums)
        if k not in required:
            walk(k + 1, chosen, required)

    walk(2, [], set())
    result = [Gamma(m=m, members=members) for members in sorted(found, key=lambda t: (len(t), t))]
    logger.info(f"Enumerated |S({m})| = {len(result)}")
    return result


def enumerate_s_naive(m: int) -> list[Gamma]:
    candidates = range(2, m - 1)
    found = []
    for size in range(len(candidates) + 1):
        for members in combinations(candidates, size):
            present = set(members)
            if all(a + b >= m or a + b in present for a in members for b in members):
                found.append(Gamma(m=m, members=members))
    return sorted(found, key=lambda g: (len(g.members), g.members))


def order_set_l(gamma: Gamma, p: int | None = None) -> tuple[int, ...]:
    """L(m, Gamma) = {l : (l + Gamma) meets C(Gamma)}, restricted to p-free l when p is given."""
    outside = set(gamma.complement)
    values = [l for l in range(1, gamma.m) if any(l + g in outside for g in gamma.members)]
    if p:
        values = [l for l in values if l % p]
    return tuple(values)


@dataclass(frozen=True)
class OrderTables:
    m: int
    characteristic: int
    L: tuple[int, ...]
    B: tuple[int, ...]
    O: tuple[int, ...]


def order_tables(m: int, p: int | None = None) -> OrderTables:
    if m < 4:
        raise InvalidInputError(f"order tables need m >= 4, got {m}")
    union: set[int] = set()
    for gamma in enumerate_s(m):
        union.update(order_set_l(gamma))
    L = tuple(sorted(union))
    B = tuple(l for l in range(1, m) if l not in union)
    O = tuple(sorted({p_coprime_divisor(l, p) for l in L})) if p else L
    logger.info(f"Order tables for m={m}, p={p}: |L|={len(L)} |B|={len(B)}")
    return OrderTables(m=m, characteristic=p or 0, L=L, B=B, O=O)


def _shift_is_realizable(m: int, i: int) -> bool:
    """i is in L(m) iff some j in 2..m-1-i divides neither m-1 nor i."""
    return any((m - 1) % j and i % j for j in range(2, m - i))


def max_finite_order(m: int, p: int | None = None) -> int:
    """Upper bound for finite automorphism group orders in A(m)."""
    if m < 4:
        raise InvalidInputError(f"order bound needs m >= 4, got {m}")
    if not p:
        return m - 3 if m % 2 == 0 else m - 4
    return max(p_coprime_divisor(i, p) for i in range(1, m - 2) if _shift_is_realizable(m, i))

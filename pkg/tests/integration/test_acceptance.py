"""Property checks on seeded random algebras: closed forms against brute force."""
import random

import pytest

from coartin.core.exactfield import FieldSpec
from coartin.core.truncpoly import Polynomial, split_conductor
from coartin.errors import NotInAmError
from coartin.services.autiso import (
    apply_torus,
    aut_group,
    aut_order_brute_force,
    iso_brute_force,
    iso_test,
    realize_orders,
)
from coartin.services.presentation import Style, Target, abstract_dimension, present
from coartin.services.semigroup import CaseTag, enumerate_s, max_finite_order, order_tables
from coartin.services.subalgebra import from_generators, monomial, verify_lambda_recursion
from coartin.services.variety import point_of, specialize, variety_presentation

SEEDS = range(12)
COEFFICIENTS = [0, 0, 1, -1, 2, -2]


def random_generators(field: FieldSpec, rng: random.Random, m: int) -> list[Polynomial]:
    gens = []
    for _ in range(rng.randint(1, 2)):
        k = rng.randint(2, m - 2)
        coeffs = [0] * k + [1] + [rng.choice(COEFFICIENTS) for _ in range(k + 1, m)]
        gens.append(Polynomial.from_coeffs([field.scalar(c) for c in coeffs], field.domain))
    return gens


def random_algebras(field: FieldSpec, seed: int, count: int = 6):
    """Algebras generated by one or two random polynomials x^k + higher terms; skips those outside A(m)."""
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        m = rng.randint(6, 11)
        try:
            found.append(from_generators(field, m, random_generators(field, rng, m)))
        except NotInAmError:
            continue
    return found


# --- ORDER TABLES ---

@pytest.mark.parametrize("m", range(4, 15))
def test_l_and_b_partition_the_shifts(m):
    tables = order_tables(m)

    assert set(tables.L).isdisjoint(tables.B)
    assert set(tables.L) | set(tables.B) == set(range(1, m))
    assert 1 not in tables.B


@pytest.mark.parametrize("m, expected", [(6, (4, 5)), (8, (6, 7)), (12, (10, 11))])
def test_b_for_m_one_more_than_a_prime(m, expected):
    assert order_tables(m).B == expected


def test_b_contains_the_top_shifts_for_m7():
    """
    m = 3! + 1: m - 1 - i lies in B(m) for 0 <= i <= 3.
    """
    assert {3, 4, 5, 6} <= set(order_tables(7).B)


@pytest.mark.parametrize("m", range(4, 13))
def test_every_order_is_realized(m):
    # ACT
    realized = realize_orders(m)

    # ASSERT
    assert tuple(sorted(realized)) == order_tables(m).O == order_tables(m).L
    assert max(realized) <= max_finite_order(m)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("m", range(4, 13))
def test_every_order_is_realized_in_characteristic_p(m, p):
    realized = realize_orders(m, p)

    assert tuple(sorted(realized)) == order_tables(m, p).O


# --- CHARACTERISTIC 0 ---

@pytest.mark.parametrize("seed", SEEDS)
def test_canonical_form_ignores_generator_choice(seed):
    """
    Rescaling, reordering and adding products of generators leave the algebra unchanged.
    """
    # ARRANGE
    field = FieldSpec()
    rng = random.Random(seed)
    m = rng.choice([6, 8, 10, 14])
    gens = random_generators(field, rng, m)
    try:
        algebra = from_generators(field, m, gens)
    except NotInAmError:
        pytest.skip("random generators leave A(m)")

    # ACT
    rewritten = [g.scale(field.scalar(3)) for g in reversed(gens)] + [gens[0] * gens[-1]]
    same = from_generators(field, m, rewritten)

    # ASSERT
    assert same == algebra
    assert algebra.dimension == 1 + len(algebra.gamma.members)


@pytest.mark.corpus
@pytest.mark.parametrize("m", [6, 8, 10, 14])
def test_canonical_form_on_the_full_corpus(m):
    """
    200 random algebras per m: generator rewriting leaves the canonical form unchanged,
    the bar dimension is 1 + |Gamma|, and the coefficient recursion holds exactly.
    """
    field = FieldSpec()
    rng = random.Random(1000 + m)
    checked = 0
    while checked < 200:
        # ARRANGE
        gens = random_generators(field, rng, m)
        try:
            algebra = from_generators(field, m, gens)
        except NotInAmError:
            continue

        # ACT
        rewritten = [g.scale(field.scalar(rng.choice([2, -1, "1/3"]))) for g in reversed(gens)]
        rewritten.append(gens[0] * gens[-1])
        same = from_generators(field, m, rewritten)

        # ASSERT
        assert same == algebra
        assert algebra.dimension == 1 + len(algebra.gamma.members)
        verify_lambda_recursion(algebra)
        checked += 1


@pytest.mark.parametrize("seed", SEEDS)
def test_aut_order_matches_brute_force(seed):
    for algebra in random_algebras(FieldSpec(), seed):
        assert aut_group(algebra).order == aut_order_brute_force(algebra)


@pytest.mark.parametrize("seed", SEEDS)
def test_iso_is_reflexive(seed):
    for algebra in random_algebras(FieldSpec(), seed):
        witness = iso_test(algebra, algebra)

        assert witness.solvable
        assert witness.rational_witness is not None


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("scale", [2, -1, "3/2"])
def test_torus_images_are_isomorphic(seed, scale):
    """
    t_c(A) is isomorphic to A, with a rational witness, and has the same automorphism group.
    """
    for algebra in random_algebras(FieldSpec(), seed, count=3):
        # ACT
        image = apply_torus(algebra, scale)
        witness = iso_test(algebra, image)

        # ASSERT
        assert witness.solvable
        assert witness.rational_witness is not None
        assert aut_group(image).order == aut_group(algebra).order


@pytest.mark.parametrize("seed", SEEDS)
def test_lambda_recursion_and_quotient_dimension(seed):
    for algebra in random_algebras(FieldSpec(), seed, count=3):
        verify_lambda_recursion(algebra)
        presentation = present(algebra, Target.BAR, Style.IRREDUNDANT)

        assert abstract_dimension(presentation, algebra) == algebra.dimension


@pytest.mark.parametrize("style", [Style.RAW, Style.IRREDUNDANT])
@pytest.mark.parametrize("m", range(4, 11))
def test_quotient_dimension_on_every_gamma(m, style):
    """
    The bar presentation of the monomial algebra of each Gamma in S(m) cuts out 1 + |Gamma| dimensions.
    """
    field = FieldSpec()
    for gamma in enumerate_s(m):
        # ARRANGE
        algebra = monomial(field, gamma)

        # ACT
        presentation = present(algebra, Target.BAR, style)

        # ASSERT
        assert abstract_dimension(presentation, algebra) == 1 + len(gamma.members)


@pytest.mark.parametrize("seed", SEEDS)
def test_coefficient_tables_satisfy_the_variety_equations(seed):
    """
    Every algebra is a point of A(m, Gamma), and so is the monomial algebra.
    """
    for algebra in random_algebras(FieldSpec(), seed, count=4):
        # ARRANGE
        if algebra.structure.case is not CaseTag.GENERAL:
            continue
        presentation = variety_presentation(algebra.gamma)
        equations = presentation.equations_xx + presentation.equations_xy

        # ACT
        at_algebra = [specialize(e.poly, presentation.variables, point_of(algebra), algebra.field) for e in equations]
        at_monomial = [
            specialize(e.poly, presentation.variables, point_of(monomial(algebra.field, algebra.gamma)), algebra.field)
            for e in equations
        ]

        # ASSERT
        assert all(algebra.field.is_zero(v) for v in at_algebra + at_monomial)


@pytest.mark.parametrize("m", range(3, 15))
def test_split_conductor_round_trips(m):
    field = FieldSpec()
    rng = random.Random(m)
    for _ in range(84):
        p = Polynomial.from_coeffs([rng.randint(-3, 3) for _ in range(rng.randint(0, 3 * m + 1))], field.domain)

        bar, conductor = split_conductor(p, m)

        assert bar.lift() + conductor.expand() == p


# --- PRIME FIELDS ---

@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("seed", SEEDS[:6])
def test_aut_order_over_prime_fields(p, seed):
    for algebra in random_algebras(FieldSpec(characteristic=p), seed):
        assert aut_group(algebra).order == aut_order_brute_force(algebra)


@pytest.mark.parametrize("p", [5, 7, 11])
@pytest.mark.parametrize("seed", SEEDS[:6])
def test_iso_agrees_with_brute_force_over_prime_fields(p, seed):
    """
    Over GF(p) a rational witness exists exactly when some residue maps A onto A'.
    """
    # ARRANGE
    field = FieldSpec(characteristic=p)
    rng = random.Random(seed)
    algebras = random_algebras(field, seed)
    pairs = [(a, apply_torus(a, rng.randint(1, p - 1))) for a in algebras]
    pairs += [(a, b) for a in algebras for b in algebras if a.m == b.m]

    for first, second in pairs:
        # ACT
        witness = iso_test(first, second)
        brute = iso_brute_force(first, second)

        # ASSERT
        assert (witness.solvable and witness.rational_witness is not None) == (brute is not None)

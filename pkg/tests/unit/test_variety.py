import random

import pytest

from coartin.core.exactfield import FieldSpec
from coartin.errors import InvalidInputError, WrongCaseError
from coartin.services.semigroup import CaseTag, Gamma, structure
from coartin.services.subalgebra import eta_coefficients, from_indecomposable_coordinates
from coartin.services.variety import (
    equations_xx,
    equations_xy,
    expected_l,
    fixed_point_equations,
    point_of,
    sample_points,
    specialize,
    specialize_all,
    symbolic_eta,
    symbolic_eta_basis,
    symbolic_theta,
    variable_name,
    variety_presentation,
)

FIELD = FieldSpec()
TWO_GEN = Gamma(m=14, members=(4, 6, 8, 10, 12))


@pytest.fixture
def two_gen_variety():
    return variety_presentation(TWO_GEN, FIELD)


def zero_point(presentation):
    return {v: 0 for v in presentation.variables}


# --- COUNTS AND EQUATIONS ---

def test_counts_for_two_generator_semigroup(two_gen_variety):
    """
    n = |C(4)| + |C(6)| = 5 + 4 and a single XY equation.
    """
    assert two_gen_variety.case is CaseTag.GENERAL
    assert two_gen_variety.n_vars == 9
    assert two_gen_variety.l_xy == 1
    assert two_gen_variety.dim_lower_bound == 8
    assert two_gen_variety.relation_rank == 1


def test_xy_equation_text(two_gen_variety):
    # ACT
    (equation,) = two_gen_variety.equations_xy

    # ASSERT
    assert two_gen_variety.render(equation.poly) == "3*l_4_5 - 2*l_6_7"
    assert equation.degree == 12
    assert equation.index == 13
    assert equation.weight == 1


def test_xx_system_for_two_generator_semigroup(two_gen_variety):
    """
    Only f_4 f^a(8) = f_4^3 differs from f^a(12) = f_6^2; it is compared at x^13.
    """
    (equation,) = two_gen_variety.equations_xx

    assert equation.degree == 12
    assert equation.index == 13
    assert equation.poly == two_gen_variety.equations_xy[0].poly


def test_equations_are_torus_homogeneous(two_gen_variety):
    for equation in two_gen_variety.equations_xx + two_gen_variety.equations_xy:
        assert two_gen_variety.is_homogeneous(equation)


def test_torus_weights(two_gen_variety):
    weights = two_gen_variety.torus_weights

    assert weights[(4, 5)] == 1
    assert weights[(6, 13)] == 7


def test_xy_count_matches_formula():
    """
    Even Gamma for m = 20: 12, 16 and 18 each have two representations in f_4 and f_6.
    """
    g = structure(Gamma(m=20, members=(4, 6, 8, 10, 12, 14, 16, 18)))

    equations, l, rest = equations_xy(g, FIELD)

    assert l == expected_l(g) == len(equations)
    assert rest == sum(len(g.gamma.c_gamma_after(nu)) for nu in g.ind) - l


def test_affine_space_case():
    # ACT
    presentation = variety_presentation(Gamma(m=6, members=(2, 4)), FIELD)

    # ASSERT
    assert presentation.case is CaseTag.SINGLE_IND
    assert [variable_name(v) for v in presentation.variables] == ["l_2_3", "l_2_5"]
    assert presentation.equations_xx == ()
    assert presentation.equations_xy == ()
    assert presentation.dim_lower_bound == 2


def test_empty_gamma_is_a_point():
    presentation = variety_presentation(Gamma(m=6), FIELD)

    assert presentation.case is CaseTag.EMPTY_GAMMA
    assert presentation.n_vars == 0


def test_equation_systems_need_the_general_case():
    with pytest.raises(WrongCaseError):
        equations_xx(structure(Gamma(m=8, members=(3, 5, 6))), FIELD)
    with pytest.raises(WrongCaseError):
        equations_xy(structure(Gamma(m=6, members=(2, 4))), FIELD)


# --- SYMBOLIC ETA AND THETA ---

def test_symbolic_theta_is_empty_at_the_top():
    assert symbolic_theta(structure(TWO_GEN), FIELD) == {}


def test_symbolic_theta_needs_repeated_representations():
    with pytest.raises(WrongCaseError):
        symbolic_theta(structure(Gamma(m=8, members=(3, 5, 6))), FIELD)


def test_symbolic_eta_vanishes_on_the_monomial_algebra(two_gen_variety):
    # ARRANGE
    g = structure(TWO_GEN)
    point = zero_point(two_gen_variety)

    # ACT
    values = specialize_all(symbolic_eta(g, FIELD), two_gen_variety.variables, point, FIELD)

    # ASSERT
    assert values
    assert all(FIELD.is_zero(v) for v in values.values())


def test_symbolic_eta_specializes_to_concrete_eta(two_gen_variety):
    """
    Evaluating the symbolic eta at an algebra's coordinates gives that algebra's eta.
    """
    # ARRANGE
    algebra = from_indecomposable_coordinates(FIELD, TWO_GEN, {(4, 5): 2, (6, 7): 3, (4, 7): 1, (6, 9): -1})
    point = point_of(algebra)

    # ACT
    symbolic = specialize_all(symbolic_eta_basis(structure(TWO_GEN), FIELD), two_gen_variety.variables, point, FIELD)

    # ASSERT
    assert symbolic == eta_coefficients(algebra)


def test_specialize_theta_identity(two_gen_variety):
    """
    lambda_{4,5} = 1, lambda_{6,7} = 3/2 satisfies 3 lambda_{4,5} = 2 lambda_{6,7}.
    """
    # ARRANGE
    point = zero_point(two_gen_variety)
    point.update({(4, 5): 1, (6, 7): "3/2"})

    # ACT
    value = specialize(two_gen_variety.equations_xy[0].poly, two_gen_variety.variables, point, FIELD)

    # ASSERT
    assert FIELD.is_zero(value)


def test_specialize_needs_every_variable(two_gen_variety):
    with pytest.raises(InvalidInputError):
        specialize(two_gen_variety.equations_xy[0].poly, two_gen_variety.variables, {(4, 5): 1}, FIELD)


# --- SAMPLING ---

def test_sampled_points_define_algebras(two_gen_variety):
    """
    Points solving the XY system are exactly coordinates of algebras in A(14, Gamma).
    """
    # ACT
    samples = sample_points(two_gen_variety, random.Random(7), 5)

    # ASSERT
    assert len(samples) == 5
    for point, algebra in samples:
        assert algebra.gamma == TWO_GEN
        assert point_of(algebra) == point


def test_sampling_affine_space():
    presentation = variety_presentation(Gamma(m=8, members=(3, 5, 6)), FIELD)

    samples = sample_points(presentation, random.Random(1), 3)

    assert len(samples) == 3
    assert all(algebra.gamma.members == (3, 5, 6) for _, algebra in samples)


# --- FIXED POINTS ---

def test_fixed_points_of_c3():
    # ACT
    result = fixed_point_equations(TWO_GEN, 3)

    # ASSERT
    assert result.kept == ((4, 7), (4, 13), (6, 9))
    assert (4, 5) in result.killed and (6, 7) in result.killed
    assert result.strata == (9,)


def test_fixed_points_of_c2_kill_everything():
    result = fixed_point_equations(TWO_GEN, 2)

    assert result.kept == ()
    assert len(result.killed) == 15
    assert (12, 13) in result.killed


def test_fixed_points_kill_decomposable_coordinates():
    """
    Gamma = {2, 4}, m = 6, n = 3: lambda_{2,5} survives, lambda_{2,3} and lambda_{4,5} vanish.
    """
    # ACT
    result = fixed_point_equations(Gamma(m=6, members=(2, 4)), 3)

    # ASSERT
    assert result.kept == ((2, 5),)
    assert result.killed == ((2, 3), (4, 5))


def test_fixed_points_of_c3_list_every_vanishing_coordinate():
    result = fixed_point_equations(TWO_GEN, 3)

    assert result.killed == (
        (4, 5), (4, 9), (4, 11), (6, 7), (6, 11), (6, 13), (8, 9), (8, 13), (10, 11), (12, 13)
    )


def test_fixed_points_reject_p_divisible_n():
    with pytest.raises(InvalidInputError):
        fixed_point_equations(TWO_GEN, 4, p=2)

import logging
from typing import Sequence

from coartin.core.exactfield import FieldSpec
from coartin.core.truncpoly import Polynomial, format_polynomial
from coartin.errors import InternalComputationError, InvalidInputError
from coartin.models import (
    AlgebraDocument,
    AutDocument,
    BracketTerm,
    ConstraintEntry,
    EnumerationDocument,
    EquationDocument,
    FixedPointsDocument,
    ForcedPower,
    GammaInfoDocument,
    GeneratorEntry,
    IsoDocument,
    LambdaEntry,
    OrdersDocument,
    PresentationDocument,
    RealizationDocument,
    RealizationEntry,
    RelationBasisDocument,
    RelationDocument,
    RelEntry,
    SweepDocument,
    SweepRow,
    SymTerm,
    VarietyDocument,
    WeightEntry,
    WordTerm,
)
from coartin.services.autiso import aut_group, aut_order_brute_force, iso_test, realize_orders, realize_orders_for_gamma
from coartin.services.presentation import Style, Target, abstract_dimension, present
from coartin.services.semigroup import (
    Gamma,
    case_of,
    conductor_ideal_generators,
    enumerate_s,
    max_finite_order,
    order_set_l,
    order_tables,
    relation_basis,
    relation_rank,
    structure,
)
from coartin.services.subalgebra import CanonicalAlgebra, from_generators
from coartin.services.variety import Equation, VarietyPresentation, fixed_point_equations, variable_name, variety_presentation

logger = logging.getLogger(__name__)

SYSTEMS = ("xx", "xy", "both")


class ClassificationService:
    """Maps the algebra services onto the public documents of models.py."""

    def __init__(self, max_m: int = 20):
        self._max_m = max_m

    def _check_m(self, m: int, minimum: int = 2) -> None:
        if m < minimum:
            raise InvalidInputError(f"m must be at least {minimum}, got {m}")
        if m > self._max_m:
            raise InvalidInputError(f"m={m} exceeds COARTIN_MAX_M={self._max_m}")

    def _gamma(self, m: int, members: Sequence[int]) -> Gamma:
        self._check_m(m)
        return Gamma(m=m, members=tuple(members))

    def _algebra(self, field: FieldSpec, m: int, gens: Sequence[Polynomial]) -> CanonicalAlgebra:
        self._check_m(m)
        return from_generators(field, m, list(gens))

    # --- semigroups ---

    def enumerate_s(self, m: int) -> EnumerationDocument:
        self._check_m(m)
        semigroups = [list(g.members) for g in enumerate_s(m)]
        return EnumerationDocument(m=m, count=len(semigroups), semigroups=semigroups)

    def gamma_info(self, m: int, members: Sequence[int]) -> GammaInfoDocument:
        gamma = self._gamma(m, members)
        case = case_of(gamma)
        common = dict(
            m=m,
            gamma=list(gamma.members),
            case=case.value,
            complement=list(gamma.complement),
            order_set_l=list(order_set_l(gamma)),
        )
        if gamma.is_empty:
            return GammaInfoDocument(
                **common, ind=[], dec=[], dec_ge2=[], rel=[], conductor_generators=[], relation_rank=0
            )
        g = structure(gamma)
        basis = None
        if g.dec_ge2:
            rb = relation_basis(g)
            basis = RelationBasisDocument(
                t=rb.t,
                b=[list(b) for b in rb.b_list],
                mu=list(rb.mu_list),
                avoidable=list(rb.avoidable),
                non_avoidable=list(rb.non_avoidable),
            )
        return GammaInfoDocument(
            **common,
            ind=list(g.ind),
            dec=list(g.dec),
            dec_ge2=list(g.dec_ge2),
            rel=[
                RelEntry(gamma=x, vectors=[list(v) for v in g.rel[x]], chosen=list(g.a_choice[x]))
                for x in gamma.members
            ],
            conductor_generators=[list(c) for c in conductor_ideal_generators(g)],
            relation_basis=basis,
            relation_rank=relation_rank(g),
        )

    def orders(self, m: int, p: int | None = None) -> OrdersDocument:
        self._check_m(m, minimum=4)
        tables = order_tables(m, p)
        return OrdersDocument(
            m=m,
            characteristic=tables.characteristic,
            L=list(tables.L),
            B=list(tables.B),
            O=list(tables.O),
            max_finite_order=max_finite_order(m, p),
        )

    def sweep(self, m_from: int, m_to: int, p: int | None = None) -> SweepDocument:
        if m_from > m_to:
            raise InvalidInputError(f"empty range {m_from}..{m_to}")
        self._check_m(m_from, minimum=4)
        self._check_m(m_to, minimum=4)
        rows = []
        for m in range(m_from, m_to + 1):
            tables = order_tables(m, p)
            rows.append(SweepRow(
                m=m,
                semigroups=len(enumerate_s(m)),
                L=list(tables.L),
                B=list(tables.B),
                O=list(tables.O),
                max_finite_order=max_finite_order(m, p),
            ))
        logger.info(f"Sweep over m={m_from}..{m_to}, p={p}")
        return SweepDocument(characteristic=p or 0, rows=rows)

    # --- concrete algebras ---

    def algebra_document(self, algebra: CanonicalAlgebra) -> AlgebraDocument:
        F = algebra.field
        return AlgebraDocument(
            field=F.label,
            m=algebra.m,
            gamma=list(algebra.gamma.members),
            lambdas=[
                LambdaEntry(gamma=g, delta=d, value=F.format_scalar(value))
                for (g, d), value in algebra.lambdas
            ],
            basis=["1"] + [f"f_{g} = {format_polynomial(algebra.basis[g], F)}" for g in algebra.gamma.members],
            dimension=algebra.dimension,
        )

    def canonical(self, field: FieldSpec, m: int, gens: Sequence[Polynomial]) -> AlgebraDocument:
        return self.algebra_document(self._algebra(field, m, gens))

    def present(
        self, field: FieldSpec, m: int, gens: Sequence[Polynomial], target: Target, style: Style
    ) -> PresentationDocument:
        algebra = self._algebra(field, m, gens)
        presentation = present(algebra, target, style)
        dimension = None
        if target is Target.BAR and style is not Style.STRUCTURE:
            dimension = abstract_dimension(presentation, algebra)
            if dimension != algebra.dimension:
                raise InternalComputationError(
                    f"presentation quotient has dimension {dimension}, expected {algebra.dimension}"
                )
        relations = []
        for relation in presentation.relations:
            bracket = None
            if relation.bracket is not None:
                bracket = [
                    BracketTerm(coefficient=field.format_scalar(c), power=k, index=i)
                    for c, k, i in relation.bracket.words()
                ]
            relations.append(RelationDocument(
                kind=relation.kind.value,
                lhs=list(relation.lhs),
                rhs=[WordTerm(coefficient=field.format_scalar(c), word=list(w)) for c, w in relation.rhs],
                bracket=bracket,
                text=presentation.relation_text(relation),
            ))
        return PresentationDocument(
            field=field.label,
            m=m,
            target=target.value,
            style=style.value,
            case=presentation.case_tag.value,
            generators=[
                GeneratorEntry(name=g.name, value=format_polynomial(g.value, field), weight=g.weight)
                for g in presentation.generators
            ],
            relations=relations,
            abstract_dimension=dimension,
        )

    def aut(self, field: FieldSpec, m: int, gens: Sequence[Polynomial]) -> AutDocument:
        algebra = self._algebra(field, m, gens)
        description = aut_group(algebra)
        brute = aut_order_brute_force(algebra)
        if brute != description.order:
            raise InternalComputationError(f"Aut order {description.order} disagrees with the brute-force order {brute}")
        return AutDocument(
            field=field.label,
            m=m,
            gamma=list(algebra.gamma.members),
            kind=description.kind.value,
            order=description.order,
            generator=description.generator,
            brute_force_order=brute,
        )

    def iso(
        self, field: FieldSpec, m: int, gens_a: Sequence[Polynomial], gens_b: Sequence[Polynomial]
    ) -> IsoDocument:
        witness = iso_test(self._algebra(field, m, gens_a), self._algebra(field, m, gens_b))
        forced = None
        if witness.forced_power is not None:
            g, mu = witness.forced_power
            forced = ForcedPower(g=g, mu=field.format_scalar(mu))
        return IsoDocument(
            isomorphic=witness.solvable,
            forced_power=forced,
            reason=witness.reason,
            rational_witness=None if witness.rational_witness is None else field.format_scalar(witness.rational_witness),
            constraints=[ConstraintEntry(k=k, c=field.format_scalar(c)) for k, c in witness.constraints],
        )

    def realize_orders(self, m: int, p: int | None = None, members: Sequence[int] | None = None) -> RealizationDocument:
        self._check_m(m, minimum=4)
        field = FieldSpec(characteristic=p or 0)

        def generators(algebra: CanonicalAlgebra) -> list[str]:
            return [format_polynomial(algebra.basis[nu], field) for nu in algebra.structure.ind]

        if members is None:
            entries = [
                RealizationEntry(order=order, found=True, gamma=list(a.gamma.members), generators=generators(a))
                for order, a in realize_orders(m, p).items()
            ]
            return RealizationDocument(m=m, characteristic=field.characteristic, entries=entries)
        gamma = self._gamma(m, members)
        entries = [
            RealizationEntry(
                order=r.order,
                found=r.found,
                gamma=list(gamma.members) if r.found else None,
                generators=generators(r.algebra) if r.algebra is not None else [],
            )
            for r in realize_orders_for_gamma(gamma, p)
        ]
        return RealizationDocument(m=m, characteristic=field.characteristic, gamma=list(gamma.members), entries=entries)

    # --- varieties ---

    def _equation_document(self, presentation: VarietyPresentation, equation: Equation) -> EquationDocument:
        names = [variable_name(v) for v in presentation.variables]
        terms = [
            SymTerm(
                coefficient=presentation.field.format_scalar(c),
                powers={names[k]: e for k, e in enumerate(monomial) if e},
            )
            for monomial, c in equation.poly.terms()
        ]
        return EquationDocument(
            text=presentation.render(equation.poly),
            degree=equation.degree,
            index=equation.index,
            weight=equation.weight,
            source=equation.source,
            terms=terms,
        )

    def variety(self, m: int, members: Sequence[int], system: str = "both", p: int | None = None) -> VarietyDocument:
        if system not in SYSTEMS:
            raise InvalidInputError(f"system must be one of {', '.join(SYSTEMS)}, got '{system}'")
        gamma = self._gamma(m, members)
        field = FieldSpec(characteristic=p or 0)
        presentation = variety_presentation(gamma, field)
        xx = presentation.equations_xx if system in ("xx", "both") else ()
        xy = presentation.equations_xy if system in ("xy", "both") else ()
        return VarietyDocument(
            m=m,
            gamma=list(gamma.members),
            field=field.label,
            case=presentation.case.value,
            system=system,
            variables=[variable_name(v) for v in presentation.variables],
            torus_weights=[WeightEntry(variable=variable_name(v), weight=w) for v, w in presentation.torus_weights.items()],
            equations_xx=[self._equation_document(presentation, e) for e in xx],
            equations_xy=[self._equation_document(presentation, e) for e in xy],
            n_vars=presentation.n_vars,
            l=presentation.l_xy,
            dim_lower_bound=presentation.dim_lower_bound,
            relation_rank=presentation.relation_rank,
        )

    def fixed_points(self, m: int, members: Sequence[int], n: int, p: int | None = None) -> FixedPointsDocument:
        gamma = self._gamma(m, members)
        result = fixed_point_equations(gamma, n, p)
        return FixedPointsDocument(
            m=m,
            gamma=list(gamma.members),
            n=n,
            killed=[variable_name(v) for v in result.killed],
            kept=[variable_name(v) for v in result.kept],
            strata=list(result.strata),
        )

from pydantic import BaseModel, ConfigDict, Field


def _join(values) -> str:
    return ",".join(str(v) for v in values)


# Output of `enumerate-s`
class EnumerationDocument(BaseModel):
    m: int
    count: int
    semigroups: list[list[int]]

    def as_text(self) -> str:
        lines = [f"|S({self.m})| = {self.count}"]
        lines += ["{" + ", ".join(str(g) for g in members) + "}" for members in self.semigroups]
        return "\n".join(lines)

    def as_rows(self) -> list[list[str]]:
        return [["m", "gamma"]] + [[str(self.m), _join(members)] for members in self.semigroups]


class RelEntry(BaseModel):
    gamma: int
    vectors: list[list[int]]
    chosen: list[int]


class RelationBasisDocument(BaseModel):
    t: int
    b: list[list[int]]
    mu: list[int]
    avoidable: list[int]
    non_avoidable: list[int]


# Output of `gamma-info`
class GammaInfoDocument(BaseModel):
    m: int
    gamma: list[int]
    case: str
    complement: list[int]
    ind: list[int]
    dec: list[int]
    dec_ge2: list[int]
    rel: list[RelEntry]
    conductor_generators: list[list[int]]
    relation_basis: RelationBasisDocument | None = None
    relation_rank: int
    order_set_l: list[int]

    def as_text(self) -> str:
        lines = [
            f"m = {self.m}, Gamma = {{{_join(self.gamma)}}} ({self.case})",
            f"C(Gamma) = {{{_join(self.complement)}}}",
            f"ind = {{{_join(self.ind)}}}, dec = {{{_join(self.dec)}}}, dec>=2 = {{{_join(self.dec_ge2)}}}",
        ]
        lines += [f"Rel({e.gamma}) = {e.vectors}, a({e.gamma}) = {e.chosen}" for e in self.rel]
        lines.append(f"conductor ideal generators: {self.conductor_generators}")
        if self.relation_basis is not None:
            basis = self.relation_basis
            lines.append(f"relation basis (t = {basis.t}): b = {basis.b}, mu = {basis.mu}")
            lines.append(f"avoidable = {basis.avoidable}, non-avoidable = {basis.non_avoidable}")
        lines.append(f"rank of the relation lattice: {self.relation_rank}")
        lines.append(f"L(m, Gamma) = {{{_join(self.order_set_l)}}}")
        return "\n".join(lines)


class LambdaEntry(BaseModel):
    gamma: int
    delta: int
    value: str


# Output of `canonical`: the coefficient table of the canonical basis
class AlgebraDocument(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    field: str
    m: int
    gamma: list[int]
    lambdas: list[LambdaEntry] = Field(alias="lambda")
    basis: list[str]
    dimension: int

    def as_text(self) -> str:
        lines = [f"A over {self.field}, m = {self.m}, Gamma = {{{_join(self.gamma)}}}, dim A/x^m K[x] = {self.dimension}"]
        lines += [f"  {entry}" for entry in self.basis]
        return "\n".join(lines)


class WordTerm(BaseModel):
    coefficient: str
    word: list[int]


class BracketTerm(BaseModel):
    coefficient: str
    power: int
    index: int


class RelationDocument(BaseModel):
    kind: str
    lhs: list[int]
    rhs: list[WordTerm]
    bracket: list[BracketTerm] | None = None
    text: str


class GeneratorEntry(BaseModel):
    name: str
    value: str
    weight: int


# Output of `present`
class PresentationDocument(BaseModel):
    field: str
    m: int
    target: str
    style: str
    case: str
    generators: list[GeneratorEntry]
    relations: list[RelationDocument]
    abstract_dimension: int | None = None

    def as_text(self) -> str:
        lines = [f"{self.target}/{self.style} presentation ({self.case}), m = {self.m}, over {self.field}"]
        lines += [f"  {g.name} = {g.value}" for g in self.generators]
        lines += [f"  {r.text}" for r in self.relations]
        if self.abstract_dimension is not None:
            lines.append(f"quotient dimension: {self.abstract_dimension}")
        return "\n".join(lines)


# Output of `aut`
class AutDocument(BaseModel):
    field: str
    m: int
    gamma: list[int]
    kind: str
    order: int | None = None
    generator: str
    brute_force_order: int | None = None

    def as_text(self) -> str:
        if self.order is None:
            return f"Aut_K(A) is the full torus: {self.generator}"
        return f"Aut_K(A) is cyclic of order {self.order}, generated by {self.generator}"


class ForcedPower(BaseModel):
    g: int
    mu: str


class ConstraintEntry(BaseModel):
    k: int
    c: str


# Output of `iso`; isomorphism is always decided over the algebraic closure
class IsoDocument(BaseModel):
    isomorphic: bool
    forced_power: ForcedPower | None = None
    reason: str
    rational_witness: str | None = None
    constraints: list[ConstraintEntry] = []
    over: str = "algebraic closure"

    def as_text(self) -> str:
        verdict = "isomorphic" if self.isomorphic else "not isomorphic"
        lines = [f"{verdict} over the {self.over}: {self.reason}"]
        if self.forced_power is not None:
            lines.append(f"forced power: lambda^{self.forced_power.g} = {self.forced_power.mu}")
        return "\n".join(lines)


# Output of `orders`
class OrdersDocument(BaseModel):
    m: int
    characteristic: int
    L: list[int]
    B: list[int]
    O: list[int]
    max_finite_order: int

    def as_text(self) -> str:
        return "\n".join([
            f"m = {self.m}, char = {self.characteristic}",
            f"L = {{{_join(self.L)}}}",
            f"B = {{{_join(self.B)}}}",
            f"O = {{{_join(self.O)}}}",
            f"max finite order = {self.max_finite_order}",
        ])

    def as_rows(self) -> list[list[str]]:
        return [["m", "characteristic", "L", "B", "O", "max_finite_order"],
                [str(self.m), str(self.characteristic), _join(self.L), _join(self.B), _join(self.O), str(self.max_finite_order)]]


class RealizationEntry(BaseModel):
    order: int
    found: bool
    gamma: list[int] | None = None
    generators: list[str] = []


# Output of `realize-orders` (with or without --per-gamma)
class RealizationDocument(BaseModel):
    m: int
    characteristic: int
    gamma: list[int] | None = None
    entries: list[RealizationEntry]

    def as_text(self) -> str:
        scope = f"Gamma = {{{_join(self.gamma)}}}" if self.gamma is not None else "all Gamma"
        lines = [f"m = {self.m}, char = {self.characteristic}, {scope}"]
        for e in self.entries:
            if e.found:
                lines.append(f"  order {e.order}: Gamma = {{{_join(e.gamma or [])}}}, generators {'; '.join(e.generators)}")
            else:
                lines.append(f"  order {e.order}: not found")
        return "\n".join(lines)

    def as_rows(self) -> list[list[str]]:
        rows = [["m", "characteristic", "order", "found", "gamma", "generators"]]
        rows += [
            [str(self.m), str(self.characteristic), str(e.order), str(e.found).lower(), _join(e.gamma or []), "; ".join(e.generators)]
            for e in self.entries
        ]
        return rows


class SymTerm(BaseModel):
    coefficient: str
    powers: dict[str, int]


class EquationDocument(BaseModel):
    text: str
    degree: int
    index: int
    weight: int
    source: str
    terms: list[SymTerm]


class WeightEntry(BaseModel):
    variable: str
    weight: int


# Output of `variety`
class VarietyDocument(BaseModel):
    m: int
    gamma: list[int]
    field: str
    case: str
    system: str
    variables: list[str]
    torus_weights: list[WeightEntry]
    equations_xx: list[EquationDocument] = []
    equations_xy: list[EquationDocument] = []
    n_vars: int
    l: int
    dim_lower_bound: int
    relation_rank: int

    def as_text(self) -> str:
        lines = [
            f"A(m={self.m}, Gamma={{{_join(self.gamma)}}}) over {self.field} ({self.case})",
            f"n = {self.n_vars}, l = {self.l}, dim >= {self.dim_lower_bound}, rank of relation lattice = {self.relation_rank}",
        ]
        for name, equations in (("xx", self.equations_xx), ("xy", self.equations_xy)):
            if equations:
                lines.append(f"# {name} system")
                lines += [e.text for e in equations]
        return "\n".join(lines)


# Output of `fixed-points`
class FixedPointsDocument(BaseModel):
    m: int
    gamma: list[int]
    n: int
    killed: list[str]
    kept: list[str]
    strata: list[int]

    def as_text(self) -> str:
        return "\n".join([
            f"C_{self.n}-fixed locus of A(m={self.m}, Gamma={{{_join(self.gamma)}}})",
            *[f"{name} = 0" for name in self.killed],
            f"free: {', '.join(self.kept) or 'none'}",
            f"orders l with {self.n} | l, l != {self.n}: {{{_join(self.strata)}}}",
        ])


class SweepRow(BaseModel):
    m: int
    semigroups: int
    L: list[int]
    B: list[int]
    O: list[int]
    max_finite_order: int


# Output of `sweep`
class SweepDocument(BaseModel):
    characteristic: int
    rows: list[SweepRow]

    def as_text(self) -> str:
        lines = [f"char = {self.characteristic}"]
        lines += [
            f"m = {r.m}: |S| = {r.semigroups}, |B| = {len(r.B)}, O = {{{_join(r.O)}}}, max = {r.max_finite_order}"
            for r in self.rows
        ]
        return "\n".join(lines)

    def as_rows(self) -> list[list[str]]:
        rows = [["m", "characteristic", "semigroups", "L", "B", "B_size", "O", "max_finite_order"]]
        rows += [
            [str(r.m), str(self.characteristic), str(r.semigroups), _join(r.L), _join(r.B), str(len(r.B)), _join(r.O), str(r.max_finite_order)]
            for r in self.rows
        ]
        return rows

import graphene

from surds.engine import SeedMode
from tables.verify import VerifyStatus

# Discriminants and partial quotients overflow GraphQL's 32-bit Int, so every
# big integer is exposed as a decimal String.

SeedModeEnum = graphene.Enum.from_enum(SeedMode)
VerifyStatusEnum = graphene.Enum.from_enum(VerifyStatus)


class FamilyType(graphene.ObjectType):
    name = graphene.String(required=True)
    base = graphene.String(required=True)
    primes = graphene.List(graphene.String, required=True)
    square_divisors = graphene.List(graphene.Int, required=True)
    n_constraint = graphene.String()
    declared_n = graphene.Int()
    formula = graphene.String(required=True)
    title = graphene.String()

    def resolve_base(family, info):
        return str(family.x)

    def resolve_primes(family, info):
        return [str(p) for p in family.sorted_primes]

    def resolve_n_constraint(family, info):
        return str(family.n_constraint) if family.n_constraint else None

    def resolve_formula(family, info):
        return family.formula()


class ExpansionRowType(graphene.ObjectType):
    h = graphene.Int(required=True)
    a = graphene.String(required=True)
    p = graphene.String(required=True)
    q = graphene.String(required=True)
    factors = graphene.String()


class UnitType(graphene.ObjectType):
    u = graphene.String(required=True)
    v = graphene.String(required=True)
    norm = graphene.Int(required=True)
    form = graphene.String(required=True)
    text = graphene.String(required=True)

    def resolve_u(unit, info):
        return str(unit.u)

    def resolve_v(unit, info):
        return str(unit.v)

    def resolve_text(unit, info):
        return str(unit)


class ExpansionType(graphene.ObjectType):
    discriminant = graphene.String(required=True)
    mode = SeedModeEnum(required=True)
    sigma = graphene.Int(required=True)
    rows = graphene.List(graphene.NonNull(ExpansionRowType), required=True)
    period = graphene.Int()
    truncated = graphene.Boolean(required=True)
    symmetric = graphene.Boolean()
    unit = graphene.Field(UnitType)
    regulator = graphene.String()


class PolyRowType(graphene.ObjectType):
    h = graphene.Int(required=True)
    a = graphene.String(required=True)
    p = graphene.String(required=True)
    q = graphene.String(required=True)


class QuasiMarkerType(graphene.ObjectType):
    h = graphene.Int(required=True)
    constant = graphene.String(required=True)


class PolyExpansionType(graphene.ObjectType):
    poly = graphene.String(required=True)
    rows = graphene.List(graphene.NonNull(PolyRowType), required=True)
    period = graphene.Int()
    truncated = graphene.Boolean(required=True)
    quasi_markers = graphene.List(graphene.NonNull(QuasiMarkerType), required=True)


class ScanResultType(graphene.ObjectType):
    n = graphene.Int(required=True)
    period = graphene.Int()
    truncated = graphene.Boolean(required=True)
    pure_rows = graphene.Int(required=True)
    error = graphene.String()


class MismatchType(graphene.ObjectType):
    h = graphene.Int(required=True)
    column = graphene.String(required=True)
    expected = graphene.String(required=True)
    computed = graphene.String(required=True)


class VerifyReportType(graphene.ObjectType):
    fixture_id = graphene.String(required=True)
    status = VerifyStatusEnum(required=True)
    rows_checked = graphene.Int(required=True)
    cells_matched = graphene.Int(required=True)
    skipped_cells = graphene.Int(required=True)
    mismatches = graphene.List(graphene.NonNull(MismatchType), required=True)

import graphene
from django.conf import settings
from graphql import GraphQLError

from families.registry import discriminant, get_family, registry
from families.scanning import scan_periods
from funfield.engine import ff_expand
from surds.engine import SeedMode, detect_symmetry, expand
from surds.units import fundamental_unit, regulator
from tables.output import factor_cell
from tables.parsing import load_fixture
from tables.replay import replay

from .decorators import graphql_errors
from .types import (
    ExpansionRowType,
    ExpansionType,
    FamilyType,
    PolyExpansionType,
    PolyRowType,
    QuasiMarkerType,
    ScanResultType,
    SeedModeEnum,
    VerifyReportType,
)

# A query answered inline must stay small.
MAX_QUERY_STEPS = 100_000


def _parse_big(text, what):
    try:
        return int(text)
    except (TypeError, ValueError):
        raise GraphQLError(f"{what} must be a decimal integer, got {text!r}") from None


def _steps(max_steps, default):
    steps = default if max_steps is None else max_steps
    if steps < 1 or steps > MAX_QUERY_STEPS:
        raise GraphQLError(f"maxSteps must lie in [1, {MAX_QUERY_STEPS}]")
    return steps


def expansion_payload(expansion, primes=None):
    conf = settings.CREEPERS
    rows = [
        ExpansionRowType(
            h=row.h,
            a=str(row.a),
            p=str(row.P),
            q=str(row.Q),
            factors=factor_cell(row.Q, primes) or None,
        )
        for row in expansion.display_rows()
    ]
    payload = ExpansionType(
        discriminant=str(expansion.discriminant),
        mode=expansion.seed_mode,
        sigma=expansion.sigma,
        rows=rows,
        period=expansion.period,
        truncated=expansion.truncated,
    )
    if expansion.period is not None:
        payload.symmetric = detect_symmetry(expansion).symmetric
        payload.unit = fundamental_unit(expansion)
        payload.regulator = str(regulator(expansion, conf["PRECISION_BITS"]))
    return payload


class Query(graphene.ObjectType):
    families = graphene.List(graphene.NonNull(FamilyType), required=True)
    discriminant = graphene.Field(
        graphene.String,
        args={
            "name": graphene.String(required=True),
            "n": graphene.Int(required=True),
            "div": graphene.Int(default_value=1),
        },
    )
    expansion = graphene.Field(
        ExpansionType,
        disc=graphene.String(required=True),
        mode=SeedModeEnum(default_value=SeedMode.ORDER),
        max_steps=graphene.Int(),
        primes=graphene.List(graphene.NonNull(graphene.String)),
    )
    family_expansion = graphene.Field(
        ExpansionType,
        args={
            "name": graphene.String(required=True),
            "n": graphene.Int(required=True),
            "div": graphene.Int(default_value=1),
            "max_steps": graphene.Int(),
        },
    )
    poly_expansion = graphene.Field(
        PolyExpansionType,
        poly=graphene.String(required=True),
        max_steps=graphene.Int(),
    )
    scan_periods = graphene.Field(
        graphene.List(graphene.NonNull(ScanResultType)),
        args={
            "name": graphene.String(required=True),
            "n_from": graphene.Int(required=True),
            "n_to": graphene.Int(required=True),
            "max_steps": graphene.Int(),
        },
    )
    verify_fixture = graphene.Field(VerifyReportType, fixture_id=graphene.String(required=True))

    def resolve_families(self, info):
        return registry()

    @graphql_errors
    def resolve_discriminant(self, info, name, n, div=1):
        return str(discriminant(get_family(name), n, div))

    @graphql_errors
    def resolve_expansion(self, info, disc, mode=SeedMode.ORDER.value, max_steps=None, primes=None):
        D = _parse_big(disc, "disc")
        prime_set = {_parse_big(p, "prime") for p in primes} if primes else None
        if prime_set and any(p < 2 for p in prime_set):
            raise GraphQLError("primes must be at least 2")
        steps = _steps(max_steps, MAX_QUERY_STEPS)
        return expansion_payload(expand(D, mode=SeedMode(mode), max_steps=steps), prime_set)

    @graphql_errors
    def resolve_family_expansion(self, info, name, n, div=1, max_steps=None):
        family = get_family(name)
        D = discriminant(family, n, div)
        steps = _steps(max_steps, MAX_QUERY_STEPS)
        return expansion_payload(expand(D, max_steps=steps), family.primes)

    @graphql_errors
    def resolve_poly_expansion(self, info, poly, max_steps=None):
        steps = _steps(max_steps, settings.CREEPERS["FF_MAX_STEPS"])
        expansion = ff_expand(poly, max_steps=steps)
        return PolyExpansionType(
            poly=str(expansion.D),
            rows=[
                PolyRowType(h=r.h, a=str(r.a), p=str(r.P), q=str(r.Q))
                for r in expansion.records
            ],
            period=expansion.period,
            truncated=expansion.truncated,
            quasi_markers=[
                QuasiMarkerType(h=m.h, constant=str(m.constant))
                for m in expansion.quasi_markers
            ],
        )

    @graphql_errors
    def resolve_scan_periods(self, info, name, n_from, n_to, max_steps=None):
        steps = _steps(max_steps, MAX_QUERY_STEPS)
        return scan_periods(get_family(name), n_from, n_to, max_steps=steps)

    @graphql_errors
    def resolve_verify_fixture(self, info, fixture_id):
        if "/" in fixture_id or "\\" in fixture_id or fixture_id.startswith("."):
            raise GraphQLError("Invalid fixture id")
        path = settings.CREEPERS["FIXTURE_DIR"] / f"{fixture_id}.tsv"
        if not path.exists():
            raise GraphQLError(f"No fixture named {fixture_id!r}")
        _, report = replay(load_fixture(path))
        return report

"""Recompute the expansion a fixture was transcribed from, using its own headers."""

import logging
from dataclasses import dataclass

from families.registry import discriminant, get_family
from funfield.engine import ff_expand
from surds.engine import SeedMode, expand
from surds.exceptions import FixtureParseError

from .verify import verify

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Source:
    """Where an expansion comes from: a family instance, a bare discriminant or a polynomial."""

    family: str | None = None
    n: int | None = None
    div: int = 1
    disc: int | None = None
    mode: SeedMode = SeedMode.ORDER
    poly: str | None = None

    @classmethod
    def from_fixture(cls, fixture):
        src = fixture.source_dict
        source = cls(
            family=src.get("family"),
            n=src.get("n"),
            div=src.get("div", 1),
            disc=src.get("disc"),
            mode=SeedMode(src.get("mode", SeedMode.ORDER.value)),
            poly=src.get("poly"),
        )
        if source.family is None and source.disc is None and source.poly is None:
            raise FixtureParseError(
                f"{fixture.id} names no source; give #family and #n, #disc or #poly"
            )
        if source.family is not None and source.n is None:
            raise FixtureParseError(f"{fixture.id}: #family needs #n")
        return source

    def primes(self):
        return get_family(self.family).primes if self.family else None


def compute(source, max_steps):
    if source.poly is not None:
        return ff_expand(source.poly, max_steps=max_steps)
    if source.family is not None:
        D = discriminant(get_family(source.family), source.n, source.div)
    else:
        D = source.disc
    return expand(D, mode=source.mode, max_steps=max_steps)


def replay_steps(fixture):
    """Prefix tables are recomputed to their length; full tables one row past it."""
    return len(fixture.rows) if fixture.prefix_only else len(fixture.rows) + 1


def replay(fixture, source=None):
    """Recompute ``fixture`` (from its headers unless ``source`` is given) and verify it."""
    source = source or Source.from_fixture(fixture)
    computed = compute(source, replay_steps(fixture))
    report = verify(computed, fixture, primes=source.primes())
    logger.debug("replayed %s: %s", fixture.id, report.status.value)
    return computed, report

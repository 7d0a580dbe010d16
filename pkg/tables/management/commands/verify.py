from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from creepers.decorators import MISMATCH, command_errors
from surds.engine import SeedMode
from tables.parsing import load_fixture
from tables.replay import Source, replay


def locate_fixture(name):
    """A path, or a fixture id looked up in the fixture directory."""
    path = Path(name)
    if path.exists():
        return path
    fixture_dir = settings.CREEPERS["FIXTURE_DIR"]
    for candidate in (fixture_dir / name, fixture_dir / f"{name}.tsv"):
        if candidate.exists():
            return candidate
    return path


class Command(BaseCommand):
    help = "Recompute the expansion behind a fixture table and compare every transcribed cell"

    def add_arguments(self, parser):
        parser.add_argument("--fixture", required=True, help="fixture file or fixture id")
        source = parser.add_mutually_exclusive_group()
        source.add_argument("--name", help="family name (with --n)")
        source.add_argument("--disc", type=int)
        source.add_argument("--poly")
        parser.add_argument("--n", type=int)
        parser.add_argument("--div", type=int, default=1)
        parser.add_argument(
            "--mode", choices=[m.value for m in SeedMode], default=SeedMode.ORDER.value
        )

    @command_errors
    def handle(self, *args, **options):
        fixture = load_fixture(locate_fixture(options["fixture"]))

        source = None
        if options["name"]:
            if options["n"] is None:
                raise CommandError("--name needs --n", returncode=2)
            source = Source(family=options["name"], n=options["n"], div=options["div"])
        elif options["disc"] is not None:
            source = Source(disc=options["disc"], mode=SeedMode(options["mode"]))
        elif options["poly"]:
            source = Source(poly=options["poly"])

        _, report = replay(fixture, source)
        for line in report.lines():
            self.stdout.write(line)
        if not report.ok:
            raise CommandError(
                f"{fixture.id}: {len(report.mismatches)} mismatching cell(s)",
                returncode=MISMATCH,
            )

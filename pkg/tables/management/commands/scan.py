from django.conf import settings
from django.core.management.base import BaseCommand

from creepers.decorators import command_errors
from families.registry import get_family
from families.scanning import scan_periods
from tables.management.options import or_default, positive_int


class Command(BaseCommand):
    help = "Report the period length of a family's expansion for each n in a range"

    def add_arguments(self, parser):
        parser.add_argument("--name", required=True)
        parser.add_argument("--from", dest="n_from", type=int, required=True)
        parser.add_argument("--to", dest="n_to", type=int, required=True)
        parser.add_argument("--div", type=int, default=1)
        parser.add_argument("--max-steps", type=positive_int, default=None)
        parser.add_argument("--workers", type=positive_int, default=None)

    @command_errors
    def handle(self, *args, **options):
        conf = settings.CREEPERS
        family = get_family(options["name"])
        results = scan_periods(
            family,
            options["n_from"],
            options["n_to"],
            max_steps=or_default(options["max_steps"], conf["MAX_STEPS"]),
            workers=or_default(options["workers"], conf["SCAN_WORKERS"]),
            div=options["div"],
        )
        for result in results:
            if result.error is not None:
                self.stdout.write(f"{result.n}\terror\t{result.error}")
            elif result.truncated:
                self.stdout.write(f"{result.n}\ttruncated\t{result.pure_rows}")
            else:
                self.stdout.write(f"{result.n}\t{result.period}\t{result.pure_rows}")

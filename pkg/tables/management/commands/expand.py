from django.conf import settings
from django.core.management.base import BaseCommand

from creepers.decorators import command_errors
from surds.engine import SeedMode, expand
from tables.management.options import or_default, positive_int
from tables.output import render_integer


def prime_list(text):
    primes = set()
    for part in text.split(","):
        part = part.strip()
        if not part.isdigit() or int(part) < 2:
            raise ValueError(f"--factors expects primes separated by commas, got {text!r}")
        primes.add(int(part))
    return primes


class Command(BaseCommand):
    help = "Expand the generator of the quadratic order of discriminant D and print the rows as TSV"

    def add_arguments(self, parser):
        parser.add_argument("--disc", type=int, required=True, help="discriminant D")
        parser.add_argument(
            "--mode",
            choices=[m.value for m in SeedMode],
            default=SeedMode.ORDER.value,
            help="order: generator of the order of discriminant D; raw: sqrt(D)",
        )
        parser.add_argument("--max-steps", type=positive_int, default=None)
        parser.add_argument("--factors", default=None, help="comma separated primes for the factor column")

    @command_errors
    def handle(self, *args, **options):
        conf = settings.CREEPERS
        max_steps = or_default(options["max_steps"], conf["MAX_STEPS"])
        primes = prime_list(options["factors"]) if options["factors"] else None
        D = options["disc"]

        expansion = expand(D, mode=options["mode"], max_steps=max_steps)
        source = [("disc", D), ("mode", options["mode"])]
        for line in render_integer(
            expansion, f"disc-{D}", source, conf["PRECISION_BITS"], primes=primes
        ):
            self.stdout.write(line)

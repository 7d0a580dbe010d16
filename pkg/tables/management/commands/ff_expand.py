from django.conf import settings
from django.core.management.base import BaseCommand

from creepers.decorators import command_errors
from funfield.engine import ff_expand
from funfield.ratpoly import RatPoly
from tables.management.options import or_default, positive_int
from tables.output import render_polynomial


class Command(BaseCommand):
    help = "Expand sqrt(D(X)) for an even-degree polynomial D with rational coefficients"

    def add_arguments(self, parser):
        parser.add_argument("--poly", required=True, help='e.g. "X^6 - 2*X^5 + 1/4*X^2 + 1"')
        parser.add_argument("--max-steps", type=positive_int, default=None)

    @command_errors
    def handle(self, *args, **options):
        D = RatPoly.parse(options["poly"])
        max_steps = or_default(options["max_steps"], settings.CREEPERS["FF_MAX_STEPS"])
        for line in render_polynomial(ff_expand(D, max_steps=max_steps)):
            self.stdout.write(line)

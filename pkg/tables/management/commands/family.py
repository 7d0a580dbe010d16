from django.conf import settings
from django.core.management.base import BaseCommand

from creepers.decorators import command_errors
from families.registry import discriminant, get_family, registry
from surds.engine import expand
from tables.management.options import or_default, positive_int
from tables.output import render_integer


class Command(BaseCommand):
    help = "List, describe, evaluate and expand the registered discriminant families"

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest="action", required=True)

        actions.add_parser("list", help="one line per registered family")

        show = actions.add_parser("show", help="formula and parameters of one family")
        show.add_argument("--name", required=True)

        gen = actions.add_parser("gen", help="print D_n")
        gen.add_argument("--name", required=True)
        gen.add_argument("--n", type=int, required=True)
        gen.add_argument("--div", type=int, default=1)

        exp = actions.add_parser("expand", help="expand D_n with the family primes as factor column")
        exp.add_argument("--name", required=True)
        exp.add_argument("--n", type=int, required=True)
        exp.add_argument("--div", type=int, default=1)
        exp.add_argument("--max-steps", type=positive_int, default=None)
        exp.add_argument(
            "--pure-only",
            action="store_true",
            help="only rows whose Q factors entirely over the family primes",
        )

    @command_errors
    def handle(self, *args, **options):
        getattr(self, f"handle_{options['action']}")(**options)

    def handle_list(self, **options):
        for family in registry():
            primes = ",".join(str(p) for p in family.sorted_primes)
            self.stdout.write(f"{family.name}\t{family.x}\t{primes}\t{family.formula()}")

    def handle_show(self, **options):
        family = get_family(options["name"])
        self.stdout.write(f"name={family.name}")
        self.stdout.write(f"title={family.title}")
        self.stdout.write(f"formula={family.formula()}")
        self.stdout.write(f"x={family.x}")
        self.stdout.write(f"primes={','.join(str(p) for p in family.sorted_primes)}")
        self.stdout.write(f"divisors={','.join(str(d) for d in family.square_divisors)}")
        if family.n_constraint is not None:
            self.stdout.write(f"constraint={family.n_constraint}")
        if family.declared_n is not None:
            self.stdout.write(f"declared_n={family.declared_n}")

    def handle_gen(self, **options):
        family = get_family(options["name"])
        self.stdout.write(str(discriminant(family, options["n"], options["div"])))

    def handle_expand(self, **options):
        conf = settings.CREEPERS
        family = get_family(options["name"])
        n, div = options["n"], options["div"]
        D = discriminant(family, n, div)
        expansion = expand(D, max_steps=or_default(options["max_steps"], conf["MAX_STEPS"]))

        source = [("family", family.name), ("n", n)]
        fixture_id = f"{family.name}.n{n}"
        if div != 1:
            source.append(("div", div))
            fixture_id = f"{family.name}-div{div}.n{n}"
        for line in render_integer(
            expansion,
            fixture_id,
            source,
            conf["PRECISION_BITS"],
            primes=family.primes,
            pure_only=options["pure_only"],
        ):
            self.stdout.write(line)

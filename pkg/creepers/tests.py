import tempfile
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from . import cli
from .decorators import DOMAIN_ERROR, MISMATCH, USAGE_ERROR
from .schema import schema

EASY_ROW_4 = "4\t1718341045\t633208674978\t737\t11*67"


def run_command(*args):
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue().splitlines()


def run_cli(*argv):
    out, err = StringIO(), StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.run(list(argv))
    return code, out.getvalue(), err.getvalue()


class ExpandCommandTests(SimpleTestCase):
    def test_golden_ratio(self):
        lines = run_command("expand", "--disc", "5")
        self.assertIn("#prefix=false", lines)
        self.assertIn("0\t1\t0\t1", lines)
        self.assertIn("## period=1", lines)
        self.assertIn("## unit-norm=-1", lines)
        self.assertIn("## unit=(1 + 1*sqrt(5))/2", lines)
        (reg,) = [line for line in lines if line.startswith("## regulator=")]
        self.assertTrue(reg.startswith("## regulator=0.4812118250596034"), reg)

    def test_raw_mode(self):
        lines = run_command("expand", "--disc", "8", "--mode", "raw")
        self.assertIn("## unit=3 + 1*sqrt(8)", lines)

    def test_factor_column(self):
        lines = run_command("expand", "--disc", "20", "--factors", "2,5")
        self.assertIn("#columns=h,a,P,Q,factors", lines)

    def test_deterministic(self):
        self.assertEqual(run_command("expand", "--disc", "1001"), run_command("expand", "--disc", "1001"))

    def test_errors(self):
        with self.assertRaises(CommandError) as ctx:
            run_command("expand", "--disc", "16")
        self.assertEqual(ctx.exception.returncode, DOMAIN_ERROR)
        with self.assertRaises(CommandError) as ctx:
            run_command("expand", "--disc", "7")
        self.assertEqual(ctx.exception.returncode, DOMAIN_ERROR)
        with self.assertRaises(CommandError) as ctx:
            run_command("expand", "--disc", "5", "--factors", "2,x")
        self.assertEqual(ctx.exception.returncode, USAGE_ERROR)
        with self.assertRaises(CommandError):
            run_command("expand", "--disc", "1001", "--max-steps", "0")

    def test_explicit_budget_is_kept(self):
        lines = run_command("expand", "--disc", "1001", "--max-steps", "1")
        self.assertIn("## truncated", lines)
        self.assertIn("#prefix=true", lines)


class FamilyCommandTests(SimpleTestCase):
    def test_list(self):
        lines = run_command("family", "list")
        self.assertEqual(len(lines), 8)
        self.assertTrue(lines[0].startswith("easy-kreeper-67\t67\t2,11,67\t"))

    def test_show(self):
        lines = run_command("family", "show", "--name", "ml-11")
        self.assertIn("name=ml-11", lines)
        self.assertIn("constraint=n = 3 (mod 12)", lines)
        self.assertIn("declared_n=15", lines)
        self.assertIn("declared_n=21", run_command("family", "show", "--name", "higher-3b"))

    def test_gen(self):
        (line,) = run_command("family", "gen", "--name", "easy-kreeper-67", "--n", "0")
        self.assertEqual(int(line), (14 + 8) ** 2 + 88)

    def test_expand(self):
        lines = run_command("family", "expand", "--name", "easy-kreeper-67", "--n", "6")
        self.assertIn("#id=easy-kreeper-67.n6", lines)
        self.assertIn(EASY_ROW_4, lines)
        self.assertIn("## period=46", lines)

    def test_expand_pure_only(self):
        lines = run_command(
            "family", "expand", "--name", "easy-kreeper-67", "--n", "6", "--pure-only"
        )
        rows = [line for line in lines if not line.startswith("#")]
        self.assertIn(EASY_ROW_4, rows)
        self.assertNotIn("1", [row.split("\t")[0] for row in rows])
        self.assertTrue(all(row.split("\t")[3] == "1" or row.split("\t")[4] for row in rows))

    def test_square_divisor_id(self):
        lines = run_command(
            "family", "expand", "--name", "sq-1319011", "--n", "8", "--div", "15", "--max-steps", "3"
        )
        self.assertIn("#id=sq-1319011-div15.n8", lines)
        self.assertIn("#div=15", lines)

    def test_unknown_family(self):
        with self.assertRaises(CommandError) as ctx:
            run_command("family", "show", "--name", "creeper-9")
        self.assertEqual(ctx.exception.returncode, USAGE_ERROR)

    def test_constraint(self):
        with self.assertRaises(CommandError) as ctx:
            run_command("family", "gen", "--name", "ml-11", "--n", "14")
        self.assertEqual(ctx.exception.returncode, DOMAIN_ERROR)


class FFExpandCommandTests(SimpleTestCase):
    def test_quasi_period(self):
        lines = run_command("ff_expand", "--poly", "X^2 + 2")
        self.assertIn("#kind=polynomial", lines)
        self.assertIn("#poly=X^2 + 2", lines)
        self.assertIn("## period=2", lines)
        self.assertIn("## quasi h=1 Q=2", lines)

    def test_truncated(self):
        lines = run_command(
            "ff_expand",
            "--poly",
            "X^6 - 2*X^5 - 4*X^4 + 2*X^3 + 37/4*X^2 - 15/2*X + 9/4",
            "--max-steps",
            "10",
        )
        self.assertIn("#prefix=true", lines)
        self.assertIn("## truncated", lines)

    def test_errors(self):
        for poly in ("X^2 + 2*X + 1", "X^3 + 1"):
            with self.assertRaises(CommandError) as ctx:
                run_command("ff_expand", "--poly", poly)
            self.assertEqual(ctx.exception.returncode, DOMAIN_ERROR)
        with self.assertRaises(CommandError) as ctx:
            run_command("ff_expand", "--poly", "X^^2")
        self.assertEqual(ctx.exception.returncode, USAGE_ERROR)


class VerifyCommandTests(SimpleTestCase):
    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.tmp = Path(tmp.name)

    def write(self, name, text):
        path = self.tmp / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def test_by_id(self):
        lines = run_command("verify", "--fixture", "easy-kreeper-67.n6")
        self.assertIn("status=exact", lines)
        self.assertIn("rows_checked=47", lines)
        self.assertIn("mismatches=0", lines)

    def test_prefix_table(self):
        lines = run_command("verify", "--fixture", "sleepers-elkies")
        self.assertIn("status=prefix-exact", lines)

    def test_explicit_source(self):
        lines = run_command(
            "verify", "--fixture", "easy-kreeper-67.n6", "--name", "easy-kreeper-67", "--n", "6"
        )
        self.assertIn("status=exact", lines)

    def test_mismatch(self):
        path = settings.CREEPERS["FIXTURE_DIR"] / "easy-kreeper-67.n6.tsv"
        text = path.read_text(encoding="utf-8").replace(EASY_ROW_4, EASY_ROW_4.replace("737", "739"), 1)
        fixture = self.write("mutated.tsv", text)
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command("verify", "--fixture", fixture, stdout=out)
        self.assertEqual(ctx.exception.returncode, MISMATCH)
        self.assertIn("mismatch\t4\tQ\t739\t737", out.getvalue().splitlines())

    def test_expand_output_verifies(self):
        fixture = self.write("disc.tsv", "\n".join(run_command("expand", "--disc", "1001")))
        self.assertIn("status=exact", run_command("verify", "--fixture", fixture))

    def test_missing_fixture(self):
        with self.assertRaises(CommandError) as ctx:
            run_command("verify", "--fixture", str(self.tmp / "absent.tsv"))
        self.assertEqual(ctx.exception.returncode, USAGE_ERROR)

    def test_name_without_n(self):
        with self.assertRaises(CommandError) as ctx:
            run_command("verify", "--fixture", "easy-kreeper-67.n6", "--name", "easy-kreeper-67")
        self.assertEqual(ctx.exception.returncode, USAGE_ERROR)


class ScanCommandTests(SimpleTestCase):
    def test_periods(self):
        lines = run_command("scan", "--name", "easy-kreeper-67", "--from", "6", "--to", "6")
        self.assertEqual(len(lines), 1)
        self.assertTrue(lines[0].startswith("6\t46\t"))

    def test_errors_are_reported_per_n(self):
        lines = run_command("scan", "--name", "ml-11", "--from", "3", "--to", "4", "--max-steps", "5")
        self.assertEqual(lines[0].split("\t")[0], "3")
        self.assertNotEqual(lines[0].split("\t")[1], "error")
        self.assertEqual(lines[1].split("\t")[:2], ["4", "error"])


class CliTests(SimpleTestCase):
    def test_success(self):
        code, out, _ = run_cli("expand", "--disc", "5")
        self.assertEqual(code, 0)
        self.assertIn("## period=1", out.splitlines())

    def test_hyphenated_subcommand(self):
        code, out, _ = run_cli("ff-expand", "--poly", "X^2 + 2")
        self.assertEqual(code, 0)
        self.assertIn("## period=2", out.splitlines())

    def test_exit_codes(self):
        self.assertEqual(run_cli("bogus")[0], USAGE_ERROR)
        self.assertEqual(run_cli()[0], USAGE_ERROR)
        self.assertEqual(run_cli("expand")[0], USAGE_ERROR)
        self.assertEqual(run_cli("expand", "--disc", "16")[0], DOMAIN_ERROR)
        self.assertEqual(run_cli("family", "show", "--name", "creeper-9")[0], USAGE_ERROR)

    def test_budgets_must_be_positive(self):
        for value in ("0", "-3", "ten"):
            self.assertEqual(run_cli("expand", "--disc", "1001", "--max-steps", value)[0], USAGE_ERROR)
            self.assertEqual(run_cli("ff-expand", "--poly", "X^2 + 2", "--max-steps", value)[0], USAGE_ERROR)
            self.assertEqual(
                run_cli("family", "expand", "--name", "negl-131", "--n", "6", "--max-steps", value)[0],
                USAGE_ERROR,
            )
            self.assertEqual(
                run_cli("scan", "--name", "negl-131", "--from", "6", "--to", "6", "--workers", value)[0],
                USAGE_ERROR,
            )

    def test_mismatch_exit_code(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = settings.CREEPERS["FIXTURE_DIR"] / "easy-kreeper-67.n6.tsv"
            text = path.read_text(encoding="utf-8").replace("\t737\t", "\t739\t", 1)
            fixture = Path(tmp) / "mutated.tsv"
            fixture.write_text(text, encoding="utf-8")
            code, _, err = run_cli("verify", "--fixture", str(fixture))
        self.assertEqual(code, MISMATCH)
        self.assertIn("mismatching", err)


class SchemaTests(SimpleTestCase):
    def execute(self, query):
        result = schema.execute(query)
        self.assertIsNone(result.errors, result.errors)
        return result.data

    def assertFails(self, query, fragment):
        result = schema.execute(query)
        self.assertIsNotNone(result.errors)
        self.assertIn(fragment, str(result.errors[0]))

    def test_families(self):
        data = self.execute("{ families { name base primes declaredN formula } }")
        names = [f["name"] for f in data["families"]]
        self.assertEqual(len(names), 8)
        easy = data["families"][0]
        self.assertEqual(easy["name"], "easy-kreeper-67")
        self.assertEqual(easy["primes"], ["2", "11", "67"])
        self.assertEqual(easy["declaredN"], 6)

    def test_discriminant(self):
        data = self.execute('{ discriminant(name: "easy-kreeper-67", n: 0) }')
        self.assertEqual(data["discriminant"], str(22**2 + 88))
        self.assertFails('{ discriminant(name: "ml-11", n: 14) }', "mod 12")
        self.assertFails('{ discriminant(name: "creeper-9", n: 1) }', "creeper-9")

    def test_expansion(self):
        data = self.execute(
            '{ expansion(disc: "5") { sigma mode period truncated symmetric regulator'
            " unit { u v norm form text } rows { h a p q } } }"
        )["expansion"]
        self.assertEqual(data["sigma"], 2)
        self.assertEqual(data["mode"], "ORDER")
        self.assertEqual(data["period"], 1)
        self.assertTrue(data["symmetric"])
        self.assertEqual(data["unit"], {"u": "1", "v": "1", "norm": -1, "form": "half", "text": "(1 + 1*sqrt(5))/2"})
        self.assertTrue(data["regulator"].startswith("0.4812118250596034"))
        self.assertEqual(data["rows"][0], {"h": 0, "a": "1", "p": "0", "q": "1"})

    def test_expansion_arguments(self):
        self.assertFails('{ expansion(disc: "five") { period } }', "decimal integer")
        self.assertFails('{ expansion(disc: "5", maxSteps: 200000) { period } }', "maxSteps")
        self.assertFails('{ expansion(disc: "5", maxSteps: 0) { period } }', "maxSteps")
        self.assertFails('{ expansion(disc: "16") { period } }', "square")
        self.assertFails('{ expansion(disc: "5", primes: ["1"]) { period } }', "at least 2")

    def test_family_expansion(self):
        data = self.execute(
            '{ familyExpansion(name: "easy-kreeper-67", n: 6) { period rows { h q factors } } }'
        )["familyExpansion"]
        self.assertEqual(data["period"], 46)
        self.assertEqual(data["rows"][4], {"h": 4, "q": "737", "factors": "11*67"})
        self.assertIsNone(data["rows"][1]["factors"])

    def test_poly_expansion(self):
        data = self.execute(
            '{ polyExpansion(poly: "X^2 + 2") { poly period truncated quasiMarkers { h constant } } }'
        )["polyExpansion"]
        self.assertEqual(data["period"], 2)
        self.assertEqual(data["quasiMarkers"], [{"h": 1, "constant": "2"}])
        self.assertFails('{ polyExpansion(poly: "X^3") { period } }', "")

    def test_scan_periods(self):
        data = self.execute(
            '{ scanPeriods(name: "negl-131", nFrom: 6, nTo: 6) { n period truncated error } }'
        )
        self.assertEqual(
            data["scanPeriods"], [{"n": 6, "period": 56, "truncated": False, "error": None}]
        )

    def test_verify_fixture(self):
        data = self.execute(
            '{ verifyFixture(fixtureId: "ffkreeper.n9") { status rowsChecked mismatches { h } } }'
        )["verifyFixture"]
        self.assertEqual(data, {"status": "EXACT", "rowsChecked": 21, "mismatches": []})
        self.assertFails('{ verifyFixture(fixtureId: "../settings") { status } }', "Invalid fixture id")
        self.assertFails('{ verifyFixture(fixtureId: "absent") { status } }', "No fixture")

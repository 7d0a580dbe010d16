from django.conf import settings
from django.test import SimpleTestCase

from families.registry import discriminant, get_family
from funfield.engine import PolyExpansion, ff_expand
from funfield.ratpoly import RatPoly
from surds.engine import expand
from surds.exceptions import FixtureParseError, KindMismatchError

from .output import factor_cell, render_integer, render_polynomial
from .parsing import (
    FactorExpression,
    FixtureRow,
    load_fixture,
    parse_fixture,
    serialize_fixture,
)
from .replay import Source, replay
from .verify import Mismatch, VerifyStatus, admissibility_precheck, verify

SHIPPED = {
    "easy-kreeper-67.n6": (VerifyStatus.EXACT, 47),
    "lkreeper-43.n11": (VerifyStatus.EXACT, 71),
    "negl-131.n6": (VerifyStatus.EXACT, 57),
    "ml-2.n26": (VerifyStatus.PREFIX_EXACT, 53),
    "ml-11.n15": (VerifyStatus.PREFIX_EXACT, 71),
    "sq-1319011.n8": (VerifyStatus.PREFIX_EXACT, 161),
    "sq-1319011-div15.n8": (VerifyStatus.PREFIX_EXACT, 66),
    "higher-3a.n14": (VerifyStatus.PREFIX_EXACT, 32),
    "sleepers-leprevost": (VerifyStatus.EXACT, 23),
    "sleepers-elkies": (VerifyStatus.PREFIX_EXACT, 51),
    "ffkreeper.n9": (VerifyStatus.EXACT, 21),
}

HEADER = "#id=t\n#kind=integer\n#prefix=true\n#columns=h,a,P,Q,factors\n"


def fixture_path(fixture_id):
    return settings.CREEPERS["FIXTURE_DIR"] / f"{fixture_id}.tsv"


def fixture_text(fixture_id):
    return fixture_path(fixture_id).read_text(encoding="utf-8")


class FactorExpressionTests(SimpleTestCase):
    def test_typeset_forms(self):
        cases = {
            "(2)(67)^5": "2*67^5",
            "(11)(67)": "11*67",
            "5\\cdot 43^8": "5*43^8",
            "5,\\cdot 43^8": "5*43^8",
            "7\\cdot 43^{11}": "7*43^11",
            "3^2J": "3^2*J",
            "509x^7": "509*x^7",
            "2*67^5": "2*67^5",
        }
        for text, canonical in cases.items():
            self.assertEqual(str(FactorExpression.parse(text)), canonical, text)

    def test_evaluate_with_symbols(self):
        self.assertEqual(FactorExpression.parse("3^2*J").evaluate({"J": 4782970}), 43046730)
        self.assertEqual(4782970, 3**14 + 1)
        with self.assertRaises(FixtureParseError):
            FactorExpression.parse("x^2").evaluate({})

    def test_rejects_garbage(self):
        for text in ("", "2+3", "^5", "2^"):
            with self.assertRaises(ValueError, msg=text):
                FactorExpression.parse(text)


class ParseFixtureTests(SimpleTestCase):
    def test_published_rows(self):
        table = load_fixture(fixture_path("easy-kreeper-67.n6"))
        self.assertEqual(
            table.row(5),
            FixtureRow(5, 469, 633208675187, 2700250214, FactorExpression(((2, 1), (67, 5)))),
        )
        self.assertIsNone(table.row(1).factors)
        self.assertEqual(table.source_dict, {"family": "easy-kreeper-67", "n": 6})

        table = load_fixture(fixture_path("sq-1319011.n8"))
        row = table.row(2)
        self.assertEqual(row.a, 408144037624565082345625145279739816272309)
        self.assertIsNone(row.Q)
        self.assertEqual(str(row.factors), "3^2*11*5^2*7*x")
        self.assertEqual(table.symbol_dict, {"x": 1319011})

    def test_polynomial_cells(self):
        table = load_fixture(fixture_path("sleepers-leprevost"))
        self.assertEqual(table.kind, "polynomial")
        self.assertEqual(table.row(1).a, RatPoly.parse("1/4*X + 1/8"))

    def test_short_rows_are_padded(self):
        table = parse_fixture(HEADER + "0\t5\n1\t2\t\t\t\n")
        self.assertEqual(table.rows[0], FixtureRow(0, 5))
        self.assertEqual(table.rows[1], FixtureRow(1, 2))

    def test_errors_carry_line_numbers(self):
        cases = [
            (HEADER + "0\t5\t0\t1\nx\t1\n", 6),
            (HEADER + "0\t5\t0\t1\n2\t1\n", 6),
            (HEADER + "0\t5\t0\t1\t\t9\n", 5),
            (HEADER + "0\t5\t0\tq\n", 5),
            (HEADER + "0\t\t\t\t2^2\n", 5),
            (HEADER + "#bogus=1\n0\t5\n", 5),
            (HEADER + "#kind=integer\n0\t5\n", 5),
        ]
        for text, line in cases:
            with self.assertRaises(FixtureParseError, msg=text) as ctx:
                parse_fixture(text)
            self.assertEqual(ctx.exception.line, line, text)

    def test_missing_headers(self):
        with self.assertRaises(FixtureParseError):
            parse_fixture("#id=t\n#kind=integer\n0\t5\n")
        with self.assertRaises(FixtureParseError):
            parse_fixture(HEADER)

    def test_bad_polynomial_cell(self):
        text = "#id=p\n#kind=polynomial\n#prefix=true\n#columns=h,a\n0\tX^^2\n"
        with self.assertRaises(FixtureParseError) as ctx:
            parse_fixture(text)
        self.assertEqual(ctx.exception.line, 5)

    def test_round_trip(self):
        for fixture_id in SHIPPED:
            table = parse_fixture(fixture_text(fixture_id))
            again = parse_fixture(serialize_fixture(table))
            self.assertEqual(again, table, fixture_id)
            self.assertEqual(again.comments, table.comments, fixture_id)


class VerifyTests(SimpleTestCase):
    def test_every_shipped_fixture(self):
        for fixture_id, (status, rows) in SHIPPED.items():
            table = load_fixture(fixture_path(fixture_id))
            self.assertEqual(len(table.rows), rows, fixture_id)
            computed, report = replay(table)
            self.assertEqual(report.mismatches, (), fixture_id)
            self.assertEqual(report.status, status, fixture_id)
            self.assertEqual(report.rows_checked, rows, fixture_id)

    def test_replayed_states_multiply_to_the_radicand(self):
        for fixture_id in SHIPPED:
            computed, _ = replay(load_fixture(fixture_path(fixture_id)))
            target = computed.D if isinstance(computed, PolyExpansion) else computed.radicand.N
            for row, nxt in zip(computed.records, computed.records[1:]):
                self.assertEqual(row.Q * nxt.Q + nxt.P * nxt.P, target, (fixture_id, row.h))

    def test_lkreeper_typo_row(self):
        table = load_fixture(fixture_path("lkreeper-43.n11"))
        self.assertEqual(str(table.row(67).factors), "5*43^8")
        computed, _ = replay(table)
        self.assertEqual(computed.display_rows()[67].Q, 5 * 43**8)

    def test_published_acceptance_values(self):
        computed, _ = replay(load_fixture(fixture_path("lkreeper-43.n11")))
        rows = computed.display_rows()
        self.assertEqual(rows[0].a, 4646468697356133413)
        self.assertEqual(rows[35].Q, 5)
        self.assertEqual(rows[34].Q, 7 * 43**11)
        self.assertEqual(rows[36].Q, 7 * 43**11)

        computed, _ = replay(load_fixture(fixture_path("higher-3a.n14")))
        rows = computed.display_rows()
        self.assertEqual(rows[1].Q, 3**14)
        self.assertEqual(rows[3].Q, 3**2 * (3**14 + 1))

        computed, _ = replay(load_fixture(fixture_path("sq-1319011.n8")))
        self.assertEqual(
            computed.records[0].a, 4663426341517151789800515754636230026215015084843995
        )

    def test_mutated_cell_is_reported(self):
        text = fixture_text("easy-kreeper-67.n6").replace(
            "4\t1718341045\t633208674978\t737\t", "4\t1718341045\t633208674978\t739\t", 1
        )
        table = parse_fixture(text)
        _, report = replay(table)
        self.assertEqual(report.status, VerifyStatus.MISMATCH)
        self.assertEqual(report.mismatches, (Mismatch(4, "Q", "739", "737"),))
        self.assertFalse(report.ok)

    def test_mutated_factor_cell_is_reported(self):
        text = fixture_text("easy-kreeper-67.n6").replace("\t737\t11*67", "\t737\t2*67", 1)
        _, report = replay(parse_fixture(text))
        self.assertEqual(report.mismatches, (Mismatch(4, "factors", "2*67", "11*67"),))

    def test_wrong_family_parameter(self):
        table = load_fixture(fixture_path("easy-kreeper-67.n6"))
        _, report = replay(table, Source(family="easy-kreeper-67", n=5))
        self.assertEqual(report.status, VerifyStatus.MISMATCH)

    def test_kind_mismatch(self):
        table = load_fixture(fixture_path("easy-kreeper-67.n6"))
        with self.assertRaises(KindMismatchError):
            verify(ff_expand("X^2 + 2"), table)
        with self.assertRaises(KindMismatchError):
            replay(table, Source(poly="X^2 + 2"))

    def test_fixture_without_source(self):
        with self.assertRaises(FixtureParseError):
            replay(parse_fixture(HEADER + "0\t5\n"))

    def test_admissibility_precheck(self):
        for fixture_id in ("easy-kreeper-67.n6", "lkreeper-43.n11", "ml-11.n15", "higher-3a.n14",
                           "negl-131.n6", "ml-2.n26"):
            table = load_fixture(fixture_path(fixture_id))
            src = table.source_dict
            D = discriminant(get_family(src["family"]), src["n"])
            self.assertEqual(admissibility_precheck(table, D), [], fixture_id)

    def test_precheck_catches_a_transcription_slip(self):
        text = fixture_text("easy-kreeper-67.n6").replace(
            "4\t1718341045\t633208674978\t", "4\t1718341045\t633208674979\t", 1
        )
        D = discriminant(get_family("easy-kreeper-67"), 6)
        self.assertEqual(admissibility_precheck(parse_fixture(text), D), [4])


class OutputTests(SimpleTestCase):
    def test_factor_cells(self):
        primes = {2, 11, 67}
        self.assertEqual(factor_cell(737, primes), "11*67")
        self.assertEqual(factor_cell(723667057343, primes), "")
        self.assertEqual(factor_cell(1, primes), "")
        self.assertEqual(factor_cell(737, None), "")

    def test_rendered_expansion_verifies_against_itself(self):
        family = get_family("easy-kreeper-67")
        expansion = expand(discriminant(family, 6))
        lines = render_integer(
            expansion, "easy-kreeper-67.n6", [("family", family.name), ("n", 6)], 128, family.primes
        )
        self.assertIn("4\t1718341045\t633208674978\t737\t11*67", lines)
        self.assertIn("## period=46", lines)
        self.assertIn("## unit-norm=+1", lines)
        table = parse_fixture("\n".join(lines))
        _, report = replay(table)
        self.assertEqual(report.status, VerifyStatus.EXACT)

    def test_truncated_output_is_a_prefix(self):
        D = discriminant(get_family("easy-kreeper-67"), 6)
        lines = render_integer(expand(D, max_steps=3), "disc", [("disc", D)], 64)
        self.assertIn("#prefix=true", lines)
        self.assertIn("## truncated", lines)
        self.assertFalse(any(line.startswith("## regulator") for line in lines))
        _, report = replay(parse_fixture("\n".join(lines)))
        self.assertEqual(report.status, VerifyStatus.PREFIX_EXACT)

    def test_rendered_polynomial_verifies_against_itself(self):
        lines = render_polynomial(ff_expand("X^2 + 2"))
        self.assertIn("## quasi h=1 Q=2", lines)
        _, report = replay(parse_fixture("\n".join(lines)))
        self.assertEqual(report.status, VerifyStatus.EXACT)

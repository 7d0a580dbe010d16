from fractions import Fraction

from django.test import SimpleTestCase
from sympy import Poly, Rational, div, symbols

from surds.exceptions import (
    NoPeriodError,
    NotQuadraticFunctionFieldError,
    PolynomialSyntaxError,
    RationalSurdError,
)

from .engine import ff_expand
from .ratpoly import RatPoly
from .series import sqrt_series

X = RatPoly.X()

LEPREVOST = RatPoly.parse("4*X^6 - 4*X^5 + X^4 - 8*X^3 + 20*X^2 - 16*X + 4")
ELKIES = RatPoly.parse("X^6 - 2*X^5 - 4*X^4 + 2*X^3 + 37/4*X^2 - 15/2*X + 9/4")
FFKREEPER = RatPoly.parse(
    "X^18 + 2*X^12 + 2*X^11 + 2*X^9 + X^6 + 2*X^5 + 5*X^4 + 6*X^3 + 6*X^2 + 4*X + 1"
)

x = symbols("x")


def to_sympy(poly):
    return Poly(
        [Rational(c.numerator, c.denominator) for c in reversed(poly.coeffs)] or [0], x
    )


def from_sympy(poly):
    return RatPoly(
        Fraction(int(c.p), int(c.q)) for c in reversed(Poly(poly, x).all_coeffs())
    )


class RatPolyTests(SimpleTestCase):
    def test_canonical_text(self):
        for text in (
            "2*X^3 - X^2 - 2",
            "1/4*X + 1/8",
            "-X^2 + X",
            "-1/2*X^7 - 1/2*X - 1/2",
            "X^9 + X^3 + X^2 + 1",
            "0",
            "-3",
        ):
            self.assertEqual(str(RatPoly.parse(text)), text)

    def test_parse_collects_terms(self):
        self.assertEqual(str(RatPoly.parse("X + X - 1/2 + 1/2")), "2*X")
        self.assertEqual(str(RatPoly.parse(" 2 X ^ 2 ")), "2*X^2")

    def test_parse_errors(self):
        for text in ("", "X^", "2**X", "1/0", "Y + 1", "2*"):
            with self.assertRaises(PolynomialSyntaxError, msg=text):
                RatPoly.parse(text)

    def test_degree_and_zero(self):
        self.assertEqual(RatPoly().degree(), -1)
        self.assertTrue(RatPoly([0, 0]).is_zero())
        self.assertEqual(RatPoly([1, 0, 3, 0]).degree(), 2)

    def test_arithmetic(self):
        f = RatPoly.parse("X^2 - 1")
        g = RatPoly.parse("X - 1")
        self.assertEqual(divmod(f, g), (RatPoly.parse("X + 1"), RatPoly()))
        self.assertEqual(f + g, RatPoly.parse("X^2 + X - 2"))
        self.assertEqual(f - g, RatPoly.parse("X^2 - X"))
        self.assertEqual(-g, RatPoly.parse("-X + 1"))
        self.assertEqual(g * g, RatPoly.parse("X^2 - 2*X + 1"))
        self.assertEqual(2 * g, RatPoly.parse("2*X - 2"))
        self.assertEqual(g**3, g * g * g)

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            divmod(X, RatPoly())

    def test_divmod_agrees_with_sympy(self):
        pairs = [
            (LEPREVOST, RatPoly.parse("16*X^2 - 16*X")),
            (ELKIES, RatPoly.parse("-2/15*X^2 + 2/15*X + 1/3")),
            (FFKREEPER, RatPoly.parse("4*X^4 + 4*X^3 + 4*X^2 + 4*X")),
            (RatPoly.parse("1/3*X"), RatPoly.parse("X^2 + 1")),
            (RatPoly.parse("7/2"), RatPoly.parse("3/5")),
        ]
        for f, g in pairs:
            q, r = divmod(f, g)
            sq, sr = div(to_sympy(f), to_sympy(g))
            self.assertEqual(q, from_sympy(sq))
            self.assertEqual(r, from_sympy(sr))
            self.assertEqual(q * g + r, f)
            self.assertLess(r.degree(), g.degree() if g.degree() > 0 else 0)

    def test_leprevost_from_its_factored_form(self):
        D = (2 * X**3 + X**2 - 4 * X + 2) ** 2 - 8 * X**3 * (X - 1) ** 2
        self.assertEqual(D, LEPREVOST)

    def test_ffkreeper_near_square(self):
        a0 = RatPoly.parse("X^9 + X^3 + X^2 + 1")
        rest = FFKREEPER - a0 * a0
        self.assertLessEqual(rest.degree(), 8)
        self.assertEqual(rest, RatPoly.parse("4*X^4 + 4*X^3 + 4*X^2 + 4*X"))

    def test_height(self):
        self.assertEqual(RatPoly.parse("-2/15*X^2 + 2/15*X + 1/3").height(), 15)
        self.assertEqual(RatPoly().height(), 0)


class SqrtSeriesTests(SimpleTestCase):
    def test_binomial_series(self):
        series = sqrt_series(RatPoly.parse("X^2 + 1"), 3)
        self.assertEqual(series.poly_part, X)
        self.assertEqual(series.tail, (Fraction(1, 2), Fraction(0), Fraction(-1, 8)))
        self.assertTrue(series.matches(RatPoly.parse("X^2 + 1")))

    def test_exact_square(self):
        series = sqrt_series(RatPoly.parse("X^2 + 2*X + 1"), 4)
        self.assertEqual(series.poly_part, RatPoly.parse("X + 1"))
        self.assertTrue(all(t == 0 for t in series.tail))

    def test_leprevost(self):
        series = sqrt_series(LEPREVOST, 30)
        self.assertEqual(str(series.poly_part), "2*X^3 - X^2 - 2")
        self.assertEqual(len(series.tail), 30)
        self.assertTrue(series.matches(LEPREVOST))

    def test_rational_leading_square(self):
        series = sqrt_series(RatPoly.parse("9/4*X^2 + 1"), 2)
        self.assertEqual(series.poly_part, RatPoly.parse("3/2*X"))

    def test_not_a_quadratic_function_field(self):
        for text in ("X^3 + 1", "2*X^2 + 1", "-X^2 + 1", "5"):
            with self.assertRaises(NotQuadraticFunctionFieldError, msg=text):
                sqrt_series(RatPoly.parse(text), 4)

    def test_truncated_laurent_division(self):
        series = sqrt_series(RatPoly.parse("X^2 + 1"), 4)
        # X^4 * (X + 1/(2X) - 1/(8X^3)) = X^5 + 1/2*X^3 - 1/8*X
        self.assertEqual(series.truncated(4), RatPoly.parse("X^5 + 1/2*X^3 - 1/8*X"))


class FFExpandTests(SimpleTestCase):
    def test_leprevost(self):
        expansion = ff_expand(LEPREVOST)
        self.assertEqual(expansion.period, 22)
        self.assertEqual(len(expansion.records), 23)
        rows = expansion.records
        self.assertEqual(str(rows[0].a), "2*X^3 - X^2 - 2")
        self.assertEqual(str(rows[1].a), "1/4*X + 1/8")
        self.assertEqual(str(rows[1].Q), "16*X^2 - 16*X")
        self.assertEqual(rows[22].a, 2 * rows[0].a)
        self.assertEqual(rows[22].Q, RatPoly.constant(1))
        self.assertEqual(expansion.quasi_markers, ())

    def test_ffkreeper(self):
        expansion = ff_expand(FFKREEPER)
        self.assertEqual(expansion.period, 20)
        rows = expansion.records
        self.assertEqual(str(rows[20].a), "2*X^9 + 2*X^3 + 2*X^2 + 2")
        self.assertEqual(rows[20].Q, RatPoly.constant(1))
        self.assertEqual(str(rows[8].Q), "X^4")

    def test_elkies_never_closes(self):
        expansion = ff_expand(ELKIES, max_steps=51)
        self.assertIsNone(expansion.period)
        self.assertTrue(expansion.truncated)
        rows = expansion.records
        self.assertEqual(str(rows[1].a), "-2/15*X^2 + 2/15*X + 1/3")
        self.assertEqual(str(rows[49].a), "2401/5598720000*X + 26411/11197440000")
        with self.assertRaises(NoPeriodError):
            expansion.require_period()

    def test_elkies_heights_explode(self):
        heights = [r.a.height() for r in ff_expand(ELKIES, max_steps=51).records]
        self.assertEqual(heights[10], 200)
        self.assertEqual(heights[49], 11197440000)
        self.assertEqual(heights[50], 20155392000)
        self.assertGreater(heights[49], max(heights[:49]))
        self.assertGreater(heights[50], max(heights[:50]))
        self.assertGreater(heights[50], 10**6 * heights[10])

    def test_quasi_period(self):
        expansion = ff_expand(RatPoly.parse("X^2 + 2"))
        self.assertEqual(expansion.period, 2)
        self.assertEqual([(m.h, m.constant) for m in expansion.quasi_markers], [(1, 2)])
        self.assertEqual(expansion.quasi_marker.h, 1)
        self.assertEqual(expansion.records[2].a, RatPoly.parse("2*X"))

    def test_accepts_text(self):
        self.assertEqual(ff_expand("X^2 + 2").period, 2)

    def test_square_is_rejected(self):
        with self.assertRaises(RationalSurdError):
            ff_expand(RatPoly.parse("X^2 + 2*X + 1"))
        with self.assertRaises(RationalSurdError):
            ff_expand((X**3 - 1 / Fraction(3)) ** 2)

    def test_odd_degree_is_rejected(self):
        with self.assertRaises(NotQuadraticFunctionFieldError):
            ff_expand(RatPoly.parse("X^5 + X + 1"))

    def test_structure_of_the_three_curves(self):
        for D, steps in ((LEPREVOST, 200), (FFKREEPER, 200), (ELKIES, 51)):
            d = D.degree() // 2
            expansion = ff_expand(D, max_steps=steps)
            series = sqrt_series(D, 4 * d + 4)
            deep = sqrt_series(D, 8 * d + 8)
            rows = expansion.records
            for row, nxt in zip(rows, rows[1:]):
                self.assertEqual(row.Q * nxt.Q + nxt.P * nxt.P, D)
                self.assertLessEqual(nxt.Q.degree(), 2 * d - 2)
                self.assertLessEqual(nxt.P.degree(), d)
            for row in rows:
                if row.h >= 1:
                    self.assertGreaterEqual(row.a.degree(), 1)
                self.assertEqual(series.polynomial_part_of(row.P, row.Q), row.a)
                self.assertEqual(deep.polynomial_part_of(row.P, row.Q), row.a)

    def test_periodic_mirror(self):
        for D in (LEPREVOST, FFKREEPER):
            expansion = ff_expand(D)
            ell = expansion.require_period()
            rows = expansion.records
            for h in range(1, ell):
                self.assertEqual(rows[h].Q, rows[ell - h].Q)
                self.assertEqual(rows[h].a, rows[ell - h].a)

    def test_max_steps(self):
        with self.assertRaises(ValueError):
            ff_expand(LEPREVOST, max_steps=0)
        self.assertEqual(len(ff_expand(LEPREVOST, max_steps=5).records), 5)

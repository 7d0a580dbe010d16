import random
from fractions import Fraction

import mpmath
from django.test import SimpleTestCase
from sympy import divisors, floor, integer_nthroot, sqrt
from sympy.ntheory.continued_fraction import continued_fraction_periodic

from .engine import (
    Radicand,
    SeedMode,
    SurdState,
    detect_symmetry,
    expand,
    isqrt,
    seed,
    step,
)
from .exceptions import (
    DomainError,
    InvariantViolation,
    NoPeriodError,
    NotADiscriminantError,
    RationalSurdError,
)
from .units import (
    convergents,
    format_real,
    fundamental_unit,
    log_sum_regulator,
    regulator,
)

EASY_D6 = (14 * 67**6 + 8) ** 2 + 88 * 67**6
NEGL_D6 = (77 * 131**6 + 14) ** 2 - 644 * 131**6

LN_GOLDEN_RATIO = 0.48121182505960347
LN_SILVER_RATIO = 0.88137358701954302


def sympy_terms(p, q, d, count):
    """First ``count`` partial quotients of (p + sqrt(d))/q according to sympy."""
    expansion = continued_fraction_periodic(p, q, d)
    prefix, cycle = expansion[:-1], expansion[-1]
    terms = list(prefix)
    while len(terms) < count:
        terms.extend(cycle)
    return terms[:count], len(cycle)


def textbook_terms(p, q, d):
    """Partial quotients of (p + sqrt(d))/q through the first repeat of (p, q)."""
    terms = []
    first = None
    for h in range(10_000):
        a = (p + integer_nthroot(d, 2)[0]) // q
        terms.append(a)
        p = a * q - p
        q = (d - p * p) // q
        if h == 0:
            first = (p, q)
        elif (p, q) == first:
            return terms, h
    return terms, None


def order_oracle(D):
    if D % 4 == 0:
        return 0, 1, D // 4
    return 1, 2, D


class IsqrtTests(SimpleTestCase):
    def test_small_values(self):
        self.assertEqual(isqrt(0), 0)
        self.assertEqual(isqrt(1), 1)
        self.assertEqual(isqrt(4489), 67)
        self.assertEqual(isqrt(4488), 66)

    def test_easy_kreeper_floor(self):
        self.assertEqual(isqrt(EASY_D6 // 4), 633208675188)

    def test_agrees_with_sympy_on_big_numbers(self):
        rng = random.Random(20240601)
        for bits in (10, 64, 200, 700):
            for _ in range(25):
                n = rng.getrandbits(bits)
                self.assertEqual(isqrt(n), integer_nthroot(n, 2)[0])

    def test_negative(self):
        with self.assertRaises(DomainError):
            isqrt(-1)


class SeedTests(SimpleTestCase):
    def test_zero_mod_four(self):
        radicand, state = seed(8)
        self.assertEqual((radicand.N, radicand.source_D), (2, 8))
        self.assertEqual((state.P, state.Q), (0, 1))

    def test_one_mod_four(self):
        radicand, state = seed(5)
        self.assertEqual(radicand.N, 5)
        self.assertEqual((state.P, state.Q), (1, 2))

    def test_raw_mode_uses_sqrt_d(self):
        radicand, state = seed(7, SeedMode.RAW)
        self.assertEqual(radicand.N, 7)
        self.assertEqual((state.P, state.Q), (0, 1))

    def test_not_a_discriminant(self):
        for D in (7, 10, 14):
            with self.assertRaises(NotADiscriminantError):
                seed(D)

    def test_square(self):
        with self.assertRaises(RationalSurdError):
            seed(9)
        with self.assertRaises(RationalSurdError):
            expand(16, mode="raw")

    def test_nonpositive(self):
        for D in (0, -5):
            with self.assertRaises(DomainError):
                seed(D)


class StepTests(SimpleTestCase):
    def test_sqrt_two(self):
        radicand = Radicand.of(2)
        a, state = step(SurdState(0, 1), radicand)
        self.assertEqual((a, state.P, state.Q, state.h), (1, 1, 1, 1))
        a, state = step(state, radicand)
        self.assertEqual((a, state.P, state.Q), (2, 1, 1))

    def test_easy_kreeper_rows_three_to_four(self):
        radicand = Radicand.of(EASY_D6 // 4, source_D=EASY_D6)
        a, state = step(SurdState(452291910879, 361833528619, 3), radicand)
        self.assertEqual(a, 3)
        self.assertEqual((state.P, state.Q, state.h), (633208674978, 737, 4))

    def test_negative_q_uses_the_exact_floor(self):
        rng = random.Random(150)
        checked = 0
        while checked < 300:
            N = rng.randrange(2, 100_000)
            if integer_nthroot(N, 2)[1]:
                continue
            P = rng.randrange(-1000, 1000)
            norm = N - P * P
            if norm == 0:
                continue
            Q = -rng.choice(divisors(abs(norm)))
            a, nxt = step(SurdState(P, Q), Radicand.of(N))
            self.assertEqual(a, int(floor((P + sqrt(N)) / Q)), (N, P, Q))
            self.assertEqual(nxt.P, a * Q - P)
            self.assertEqual(Q * nxt.Q + nxt.P * nxt.P, N)
            checked += 1

    def test_inadmissible_state(self):
        with self.assertRaises(InvariantViolation):
            step(SurdState(1, 3), Radicand.of(2))


class ExpandTests(SimpleTestCase):
    def test_sqrt_two(self):
        expansion = expand(8)
        self.assertEqual(expansion.period, 1)
        self.assertEqual(expansion.partial_quotients(), [1, 2])
        self.assertFalse(expansion.truncated)

    def test_golden_ratio_display_rows(self):
        expansion = expand(5)
        self.assertEqual(expansion.sigma, 2)
        self.assertEqual(expansion.period, 1)
        self.assertEqual(expansion.partial_quotients(), [1, 1])
        self.assertEqual([(r.P, r.Q) for r in expansion.display_rows()], [(0, 1), (0, 1)])

    def test_sqrt_seven_raw(self):
        expansion = expand(7, mode="raw")
        self.assertEqual(expansion.partial_quotients(), [2, 1, 1, 1, 4])
        self.assertEqual(expansion.sigma, 1)

    def test_easy_kreeper_period(self):
        expansion = expand(EASY_D6)
        self.assertEqual(expansion.period, 46)
        self.assertEqual(expansion.records[0].a, 633208675188)
        self.assertEqual(expansion.records[46].a, 1266417350376)

    def test_negative_l_period(self):
        expansion = expand(NEGL_D6)
        self.assertEqual(expansion.sigma, 2)
        self.assertEqual(expansion.period, 56)
        self.assertEqual(expansion.records[0].a, 194575656054823)
        self.assertEqual(expansion.records[56].a, 389151312109645)

    def test_display_recurrence_for_half_integral_basis(self):
        rows = expand(NEGL_D6).display_rows()
        for row, nxt in zip(rows, rows[1:]):
            self.assertEqual(nxt.P, row.a * row.Q - row.P - 1)

    def test_truncation(self):
        expansion = expand(EASY_D6, max_steps=10)
        self.assertEqual(len(expansion.records), 10)
        self.assertIsNone(expansion.period)
        self.assertTrue(expansion.truncated)
        with self.assertRaises(NoPeriodError):
            expansion.require_period()

    def test_max_steps_must_be_positive(self):
        with self.assertRaises(DomainError):
            expand(8, max_steps=0)

    def test_raw_mode_matches_textbook_recurrence_below_2000(self):
        for N in range(2, 2000):
            if integer_nthroot(N, 2)[1]:
                continue
            expansion = expand(N, mode=SeedMode.RAW)
            expected, period = textbook_terms(0, 1, N)
            self.assertEqual(expansion.partial_quotients(), expected, N)
            self.assertEqual(expansion.period, period, N)

    def test_order_mode_matches_textbook_recurrence_below_2000(self):
        for D in range(5, 2000):
            if D % 4 not in (0, 1) or integer_nthroot(D, 2)[1]:
                continue
            expansion = expand(D)
            expected, period = textbook_terms(*order_oracle(D))
            self.assertEqual(expansion.partial_quotients(), expected, D)
            self.assertEqual(expansion.period, period, D)

    def test_sampled_agreement_with_sympy(self):
        rng = random.Random(2000)
        for D in rng.sample(range(5, 2000), 40):
            if integer_nthroot(D, 2)[1]:
                continue
            expansion = expand(D, mode=SeedMode.RAW)
            expected, cycle = sympy_terms(0, 1, D, len(expansion.records))
            self.assertEqual(expansion.partial_quotients(), expected, D)
            self.assertEqual(expansion.period, cycle, D)
            if D % 4 in (0, 1):
                expansion = expand(D)
                expected, cycle = sympy_terms(*order_oracle(D), len(expansion.records))
                self.assertEqual(expansion.partial_quotients(), expected, D)
                self.assertEqual(expansion.period, cycle, D)

    def test_consecutive_states_multiply_to_radicand(self):
        for D in (EASY_D6, NEGL_D6, 244, 1001):
            expansion = expand(D)
            N = expansion.radicand.N
            for row, nxt in zip(expansion.records, expansion.records[1:]):
                self.assertEqual(row.Q * nxt.Q + nxt.P * nxt.P, N)

    def test_reduced_bounds(self):
        expansion = expand(EASY_D6)
        root = expansion.radicand.isqrt_N
        for row in expansion.records[1:]:
            self.assertTrue(0 < row.P <= root)
            self.assertTrue(0 < row.Q <= 2 * root)


class SymmetryTests(SimpleTestCase):
    def test_every_period_below_1000_is_symmetric(self):
        for N in range(2, 1000):
            if integer_nthroot(N, 2)[1]:
                continue
            self.assertTrue(detect_symmetry(expand(N, mode="raw")).symmetric, N)
            if N % 4 in (0, 1) and N > 4:
                self.assertTrue(detect_symmetry(expand(N)).symmetric, N)

    def test_easy_kreeper(self):
        report = detect_symmetry(expand(EASY_D6))
        self.assertTrue(report.palindrome)
        self.assertTrue(report.q_mirror)
        self.assertTrue(report.p_mirror)
        self.assertEqual(report.midpoint, Fraction(23))

    def test_needs_a_period(self):
        with self.assertRaises(NoPeriodError):
            detect_symmetry(expand(EASY_D6, max_steps=5))


class ConvergentTests(SimpleTestCase):
    def test_sqrt_five(self):
        conv = convergents(expand(5, mode="raw"))
        self.assertEqual([(c.p, c.q) for c in conv], [(2, 1), (9, 4)])

    def test_determinant_identity(self):
        for D in (EASY_D6, 244, 1001, 5 * 4**5):
            conv = convergents(expand(D))
            for h in range(1, len(conv)):
                det = conv[h].p * conv[h - 1].q - conv[h - 1].p * conv[h].q
                self.assertEqual(det, (-1) ** (h - 1))


class FundamentalUnitTests(SimpleTestCase):
    def test_silver_ratio(self):
        unit = fundamental_unit(expand(8))
        self.assertEqual((unit.u, unit.v, unit.norm, unit.form, unit.root), (1, 1, -1, "integral", 2))

    def test_golden_ratio(self):
        unit = fundamental_unit(expand(5))
        self.assertEqual((unit.u, unit.v, unit.norm, unit.form), (1, 1, -1, "half"))
        self.assertEqual(str(unit), "(1 + 1*sqrt(5))/2")

    def test_half_forms(self):
        unit = fundamental_unit(expand(13))
        self.assertEqual((unit.u, unit.v, unit.norm, unit.form), (3, 1, -1, "half"))
        unit = fundamental_unit(expand(21))
        self.assertEqual((unit.u, unit.v, unit.norm, unit.form), (5, 1, 1, "half"))

    def test_even_half_form_is_reduced(self):
        unit = fundamental_unit(expand(37))
        self.assertEqual((unit.u, unit.v, unit.norm, unit.form, unit.root), (6, 1, -1, "integral", 37))

    def test_positive_norm(self):
        unit = fundamental_unit(expand(12))
        self.assertEqual((unit.u, unit.v, unit.norm), (2, 1, 1))
        unit = fundamental_unit(expand(20))
        self.assertEqual((unit.u, unit.v, unit.norm), (2, 1, -1))

    def test_sqrt_sixty_one(self):
        unit = fundamental_unit(expand(244))
        self.assertEqual((unit.u, unit.v, unit.norm), (29718, 3805, -1))

    def test_norm_equation_for_every_small_order(self):
        for D in range(5, 600):
            if D % 4 not in (0, 1) or integer_nthroot(D, 2)[1]:
                continue
            expansion = expand(D)
            unit = fundamental_unit(expansion)
            self.assertEqual(unit.norm, (-1) ** expansion.period, D)
            self.assertEqual(unit.norm_identity(), unit.norm, D)

    def test_easy_kreeper_norm(self):
        unit = fundamental_unit(expand(EASY_D6))
        self.assertEqual(unit.norm, 1)
        self.assertEqual(unit.u**2 - (EASY_D6 // 4) * unit.v**2, 1)


class RegulatorTests(SimpleTestCase):
    def test_known_constants(self):
        self.assertAlmostEqual(float(regulator(expand(5)).value), LN_GOLDEN_RATIO, places=15)
        self.assertAlmostEqual(float(regulator(expand(8)).value), LN_SILVER_RATIO, places=15)

    def test_log_sum_agrees(self):
        for D in (5, 8, 13, 21, 37, 244, 1001, EASY_D6, NEGL_D6):
            expansion = expand(D)
            exact = regulator(expansion, 128).value
            summed = log_sum_regulator(expansion, 128).value
            self.assertLess(abs(exact - summed) / exact, mpmath.mpf("1e-9"), D)

    def test_precision_floor(self):
        with self.assertRaises(DomainError):
            regulator(expand(5), precision_bits=16)

    def test_format_never_scientific(self):
        with mpmath.workprec(128):
            value = mpmath.mpf(10) ** 30
        text = format_real(value, 128)
        self.assertNotIn("e", text)
        self.assertTrue(text.startswith("1000000000000000000000000000000"))
        self.assertEqual(format_real(mpmath.mpf(1) / 3, 53, digits=5), "0.33333")

    def test_string_form(self):
        self.assertTrue(str(regulator(expand(5))).startswith("0.481211825059603"))

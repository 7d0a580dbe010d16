import random

import mpmath
from django.test import SimpleTestCase
from sympy import Integer, Symbol, factorint, sympify

from surds.engine import detect_symmetry, expand, isqrt
from surds.exceptions import FamilyConstraintError, RationalSurdError, UnknownFamilyError
from surds.units import fundamental_unit, log_sum_regulator, regulator

from .patterns import factor_pattern
from .registry import (
    Congruence,
    FamilySpec,
    PowerSum,
    PowerTerm,
    discriminant,
    get_family,
    registry,
)
from .scanning import scan_periods

# The D_n headings as typeset, before any arithmetic is folded into constants.
TYPESET_FORMULAS = {
    "easy-kreeper-67": "(7*2*67**n + (67-11)/7)**2 + 4*2*11*67**n",
    "lkreeper-43": "(2*5*43**n + (43**3-7)/2)**2 + 4*5*7*43**n",
    "negl-131": "(11*7*131**n + (131-(-23))/11)**2 + 4*7*(-23)*131**n",
    "ml-2": "(2**n - 5*2**2 - 11)**2 + 4*11*2**n",
    "ml-11": "(4*11**n + 7*11**2 - 3)**2 + 4*4*3*11**n",
    "sq-1319011": "(2*509*x**n + (3**2*11*x - 5**2*7)/2)**2 + 4*509*5**2*7*x**n",
    "higher-3a": "(3**(2*n+2) + 3**(n+2) + 3**n - 1)**2 + 4*3**n",
    "higher-3b": "(3**(2*n+3) - 31*3**n + 10)**2 + 40*3**n",
}

EASY_PRIMES = {2, 11, 67}


def typeset_value(name, n):
    expr = sympify(TYPESET_FORMULAS[name])
    value = expr.subs({Symbol("n"): n, Symbol("x"): 1319011})
    return int(Integer(value))


class RegistryTests(SimpleTestCase):
    def test_built_in_families(self):
        names = [f.name for f in registry()]
        self.assertEqual(names, list(TYPESET_FORMULAS))

    def test_easy_kreeper_base(self):
        self.assertEqual(get_family("easy-kreeper-67").x, 67)

    def test_higher_3b_additive_part(self):
        family = get_family("higher-3b")
        self.assertEqual(family.T.terms[0].c, 40)
        self.assertEqual(family.T.constant, 0)

    def test_ml_11_constraint(self):
        family = get_family("ml-11")
        self.assertEqual(family.n_constraint, Congruence(3, 12))
        self.assertTrue(family.n_constraint.admits(15))
        self.assertFalse(family.n_constraint.admits(14))

    def test_square_divisor_options(self):
        self.assertEqual(get_family("sq-1319011").square_divisors, (1, 15))

    def test_unknown_family(self):
        with self.assertRaises(UnknownFamilyError):
            get_family("creeper-9")

    def test_primes_are_checked(self):
        with self.assertRaises(ValueError):
            FamilySpec(
                name="bad",
                x=6,
                S=PowerSum((PowerTerm(1),)),
                T=PowerSum((PowerTerm(1),)),
                primes=frozenset({2, 4}),
            )

    def test_composite_base_joins_the_factor_set(self):
        self.assertEqual(factorint(1319011), {41: 1, 53: 1, 607: 1})
        family = get_family("sq-1319011")
        self.assertIn(family.x, family.primes)
        self.assertEqual(family.sorted_primes[-1], 1319011)
        family = FamilySpec(
            name="six",
            x=6,
            S=PowerSum((PowerTerm(1),)),
            T=PowerSum((PowerTerm(1),)),
            primes=frozenset({2, 6}),
        )
        self.assertEqual(family.sorted_primes, (2, 6))

    def test_declared_n(self):
        self.assertEqual(get_family("higher-3b").declared_n, 21)
        self.assertEqual([f.declared_n for f in registry()][:3], [6, 11, 6])

    def test_formula_text(self):
        self.assertEqual(
            get_family("easy-kreeper-67").formula(), "D_n = (14*67^n + 8)^2 + 88*67^n"
        )
        self.assertEqual(get_family("negl-131").formula(), "D_n = (77*131^n + 14)^2 - 644*131^n")
        self.assertIn("3^(2n+2)", get_family("higher-3a").formula())


class DiscriminantTests(SimpleTestCase):
    def test_folded_constants_match_typeset_formulas(self):
        for family in registry():
            for n in range(0, 13):
                S = family.S.evaluate(family.x, n)
                T = family.T.evaluate(family.x, n)
                self.assertEqual(S * S + T, typeset_value(family.name, n), (family.name, n))

    def test_easy_kreeper(self):
        D = discriminant(get_family("easy-kreeper-67"), 6)
        self.assertEqual(D % 4, 0)
        self.assertEqual(isqrt(D // 4), 633208675188)

    def test_higher_creeper(self):
        D = discriminant(get_family("higher-3a"), 14)
        self.assertEqual(D // 4, 102945589962169**2 + 3**14)

    def test_negative_l(self):
        D = discriminant(get_family("negl-131"), 6)
        self.assertEqual(D % 4, 1)
        self.assertEqual((1 + isqrt(D)) // 2, 194575656054823)

    def test_square_divisor(self):
        family = get_family("sq-1319011")
        self.assertEqual(discriminant(family, 8, 15) * 225, discriminant(family, 8))
        expansion = expand(discriminant(family, 8, 15), max_steps=1)
        self.assertEqual(
            expansion.records[0].a, 310895089434476785986701050309082001747667672322933
        )

    def test_constraint_violation(self):
        with self.assertRaises(FamilyConstraintError):
            discriminant(get_family("ml-11"), 14)
        with self.assertRaises(FamilyConstraintError):
            discriminant(get_family("easy-kreeper-67"), -1)

    def test_unknown_divisor(self):
        with self.assertRaises(FamilyConstraintError):
            discriminant(get_family("sq-1319011"), 8, 7)
        with self.assertRaises(FamilyConstraintError):
            discriminant(get_family("easy-kreeper-67"), 6, 15)

    def test_square_and_nonpositive(self):
        squares = FamilySpec(
            name="squares", x=2, S=PowerSum((PowerTerm(1),)), T=PowerSum(()), primes=frozenset({2})
        )
        with self.assertRaises(RationalSurdError):
            discriminant(squares, 3)
        negative = FamilySpec(
            name="negative", x=2, S=PowerSum(()), T=PowerSum((PowerTerm(-1),)), primes=frozenset({2})
        )
        with self.assertRaises(FamilyConstraintError):
            discriminant(negative, 3)

    def test_rows_three_and_four_of_easy_kreeper(self):
        rows = expand(discriminant(get_family("easy-kreeper-67"), 6)).records
        self.assertEqual(rows[4].P, rows[3].a * rows[3].Q - rows[3].P)
        self.assertEqual(rows[4].Q, 737)


class FactorPatternTests(SimpleTestCase):
    def test_published_cells(self):
        pattern = factor_pattern(737, EASY_PRIMES)
        self.assertEqual((pattern.cofactor, pattern.as_dict()), (1, {11: 1, 67: 1}))
        self.assertEqual(pattern.expression(), "11*67")

        pattern = factor_pattern(2700250214, EASY_PRIMES)
        self.assertEqual((pattern.cofactor, pattern.as_dict()), (1, {2: 1, 67: 5}))
        self.assertEqual(pattern.expression(), "2*67^5")

        pattern = factor_pattern(723667057343, EASY_PRIMES)
        self.assertEqual((pattern.cofactor, pattern.as_dict()), (723667057343, {}))
        self.assertFalse(pattern.is_pure)

    def test_one(self):
        pattern = factor_pattern(1, EASY_PRIMES)
        self.assertTrue(pattern.is_pure)
        self.assertEqual(pattern.expression(), "1")

    def test_mixed(self):
        pattern = factor_pattern(3 * 5 * 43**8, {2, 5, 7, 43})
        self.assertEqual(pattern.cofactor, 3)
        self.assertEqual(pattern.expression(), "3*5*43^8")

    def test_reconstruction(self):
        rng = random.Random(67)
        primes = {2, 3, 5, 7, 11, 509, 1319011}
        for _ in range(100_000):
            Q = rng.randrange(1, 10**12)
            if rng.random() < 0.5:
                Q *= rng.choice(sorted(primes)) ** rng.randrange(1, 9)
            pattern = factor_pattern(Q, primes)
            self.assertEqual(pattern.value(), Q)
            for p in primes:
                self.assertNotEqual(pattern.cofactor % p, 0)

    def test_rejects_zero(self):
        with self.assertRaises(ValueError):
            factor_pattern(0, EASY_PRIMES)


class ScanTests(SimpleTestCase):
    def test_published_periods(self):
        for name, n, period in (
            ("easy-kreeper-67", 6, 46),
            ("lkreeper-43", 11, 70),
            ("negl-131", 6, 56),
        ):
            (result,) = scan_periods(get_family(name), n, n, max_steps=10_000)
            self.assertEqual(result.period, period, name)
            self.assertFalse(result.truncated)
            self.assertGreaterEqual(result.pure_rows, 4)

    def test_errors_are_reported_per_n(self):
        results = scan_periods(get_family("ml-11"), 3, 4, max_steps=200)
        self.assertEqual([r.n for r in results], [3, 4])
        self.assertTrue(results[0].ok)
        self.assertFalse(results[1].ok)
        self.assertIn("mod 12", results[1].error)

    def test_truncation_is_reported(self):
        (result,) = scan_periods(get_family("easy-kreeper-67"), 6, 6, max_steps=10)
        self.assertTrue(result.truncated)
        self.assertIsNone(result.period)

    def test_higher_3b_small_n(self):
        results = scan_periods(get_family("higher-3b"), 1, 3, max_steps=2000)
        self.assertEqual([r.n for r in results], [1, 2, 3])
        self.assertTrue(all(r.ok for r in results))

    def test_workers_preserve_order(self):
        family = get_family("easy-kreeper-67")
        serial = scan_periods(family, 1, 5, max_steps=5000)
        parallel = scan_periods(family, 1, 5, max_steps=5000, workers=2)
        self.assertEqual(serial, parallel)

    def test_invalid_range(self):
        with self.assertRaises(ValueError):
            scan_periods(get_family("ml-2"), 5, 2, max_steps=10)


class PeriodicInstanceTests(SimpleTestCase):
    """Every family instance with n <= 8 (lkreeper up to 11) whose period closes."""

    def instances(self):
        for family in registry():
            top = 11 if family.name == "lkreeper-43" else 8
            for n in range(0, top + 1):
                try:
                    D = discriminant(family, n)
                except (FamilyConstraintError, RationalSurdError):
                    continue
                expansion = expand(D, max_steps=20_000)
                if expansion.period is not None:
                    yield family.name, n, expansion

    def test_units_symmetry_and_regulators(self):
        seen = set()
        for name, n, expansion in self.instances():
            seen.add((name, n))
            unit = fundamental_unit(expansion)
            self.assertEqual(unit.norm, (-1) ** expansion.period, (name, n))
            if unit.form == "half":
                self.assertEqual(
                    unit.u**2 - unit.root * unit.v**2, 4 * unit.norm, (name, n)
                )
            else:
                self.assertEqual(unit.norm_identity(), unit.norm, (name, n))
            self.assertTrue(detect_symmetry(expansion).symmetric, (name, n))
            exact = regulator(expansion, 128).value
            summed = log_sum_regulator(expansion, 128).value
            self.assertLess(abs(exact - summed) / exact, mpmath.mpf("1e-9"), (name, n))
        self.assertIn(("easy-kreeper-67", 6), seen)
        self.assertIn(("lkreeper-43", 11), seen)
        self.assertIn(("negl-131", 6), seen)

"""Parameterized discriminant families D_n = S(n)^2 + T(n).

S and T are sums of power terms c * x^(alpha*n + beta) plus a constant, which
covers every kreeper, creeper and higher creeper shape in one evaluator.
"""

import logging
from dataclasses import dataclass, field

from sympy import isprime

from surds.engine import is_square
from surds.exceptions import FamilyConstraintError, RationalSurdError, UnknownFamilyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PowerTerm:
    c: int
    alpha: int = 1
    beta: int = 0

    def exponent(self, n):
        return self.alpha * n + self.beta

    def evaluate(self, x, n):
        e = self.exponent(n)
        if e < 0:
            raise FamilyConstraintError(f"exponent {self.alpha}n+{self.beta} is negative at n={n}")
        return self.c * x**e

    def describe(self, x):
        if self.alpha == 0:
            power = f"{x}^{self.beta}"
        elif self.beta == 0:
            power = f"{x}^({self.alpha}n)" if self.alpha != 1 else f"{x}^n"
        else:
            head = "n" if self.alpha == 1 else f"{self.alpha}n"
            power = f"{x}^({head}{self.beta:+d})"
        return power if self.c == 1 else f"{self.c}*{power}"


@dataclass(frozen=True)
class PowerSum:
    terms: tuple
    constant: int = 0

    def evaluate(self, x, n):
        return sum(term.evaluate(x, n) for term in self.terms) + self.constant

    def describe(self, x):
        text = " + ".join(term.describe(x) for term in self.terms)
        if self.constant:
            text += f" {'+' if self.constant > 0 else '-'} {abs(self.constant)}"
        return text.replace("+ -", "- ")


@dataclass(frozen=True)
class Congruence:
    residue: int
    modulus: int

    def admits(self, n):
        return n % self.modulus == self.residue % self.modulus

    def __str__(self):
        return f"n = {self.residue} (mod {self.modulus})"


@dataclass(frozen=True)
class FamilySpec:
    name: str
    x: int
    S: PowerSum
    T: PowerSum
    primes: frozenset
    square_divisors: tuple = (1,)
    n_constraint: Congruence | None = None
    declared_n: int | None = None
    title: str = ""
    sorted_primes: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.x < 2:
            raise ValueError(f"family {self.name}: base must be at least 2")
        # the base x may itself be composite; every other factor must be prime
        bad = sorted(p for p in self.primes if p != self.x and not isprime(p))
        if bad:
            raise ValueError(f"family {self.name}: {bad} are neither prime nor the base")
        object.__setattr__(self, "sorted_primes", tuple(sorted(self.primes)))

    def formula(self):
        return f"D_n = ({self.S.describe(self.x)})^2 + {self.T.describe(self.x)}".replace(
            "+ -", "- "
        )


def _sum(*terms, constant=0):
    return PowerSum(terms=tuple(terms), constant=constant)


_REGISTRY = (
    FamilySpec(
        name="easy-kreeper-67",
        x=67,
        S=_sum(PowerTerm(14), constant=8),
        T=_sum(PowerTerm(88)),
        primes=frozenset({2, 11, 67}),
        declared_n=6,
        title="Easy kreeper (7*2*67^n + (67-11)/7)^2 + 4*2*11*67^n",
    ),
    FamilySpec(
        name="lkreeper-43",
        x=43,
        S=_sum(PowerTerm(10), constant=39750),
        T=_sum(PowerTerm(140)),
        primes=frozenset({2, 5, 7, 43}),
        declared_n=11,
        title="Easy kreeper (2*5*43^n + (43^3-7)/2)^2 + 4*5*7*43^n",
    ),
    FamilySpec(
        name="negl-131",
        x=131,
        S=_sum(PowerTerm(77), constant=14),
        T=_sum(PowerTerm(-644)),
        primes=frozenset({7, 23, 131}),
        declared_n=6,
        title="Negative l: (11*7*131^n + (131+23)/11)^2 + 4*7*(-23)*131^n",
    ),
    FamilySpec(
        name="ml-2",
        x=2,
        S=_sum(PowerTerm(1), constant=-31),
        T=_sum(PowerTerm(44)),
        primes=frozenset({2, 5, 11}),
        declared_n=26,
        title="Non-unit l and m: (2^n - 5*2^2 - 11)^2 + 4*11*2^n",
    ),
    FamilySpec(
        name="ml-11",
        x=11,
        S=_sum(PowerTerm(4), constant=844),
        T=_sum(PowerTerm(48)),
        primes=frozenset({2, 3, 7, 11}),
        n_constraint=Congruence(3, 12),
        declared_n=15,
        title="Non-unit l and m: (4*11^n + 7*11^2 - 3)^2 + 4*4*3*11^n",
    ),
    FamilySpec(
        name="sq-1319011",
        x=1319011,
        S=_sum(PowerTerm(1018), constant=(99 * 1319011 - 175) // 2),
        T=_sum(PowerTerm(356300)),
        primes=frozenset({3, 5, 7, 11, 509, 1319011}),
        square_divisors=(1, 15),
        declared_n=8,
        title="Square factors: (2*509*x^n + (3^2*11*x - 5^2*7)/2)^2 + 4*509*5^2*7*x^n",
    ),
    FamilySpec(
        name="higher-3a",
        x=3,
        S=_sum(PowerTerm(1, 2, 2), PowerTerm(1, 1, 2), PowerTerm(1), constant=-1),
        T=_sum(PowerTerm(4)),
        primes=frozenset({3}),
        declared_n=14,
        title="Higher creeper (3^(2n+2) + 3^(n+2) + 3^n - 1)^2 + 4*3^n",
    ),
    FamilySpec(
        name="higher-3b",
        x=3,
        S=_sum(PowerTerm(1, 2, 3), PowerTerm(-31), constant=10),
        T=_sum(PowerTerm(40)),
        primes=frozenset({2, 3, 5}),
        declared_n=21,
        title="Higher creeper (3^(2n+3) - 31*3^n + 10)^2 + 40*3^n",
    ),
)


def registry():
    return list(_REGISTRY)


def get_family(name):
    for family in _REGISTRY:
        if family.name == name:
            return family
    known = ", ".join(f.name for f in _REGISTRY)
    raise UnknownFamilyError(f"unknown family {name!r}; known families: {known}")


def discriminant(family, n, div=1):
    """Exact D_n, divided by div^2 when that divisor option is selected."""
    if n < 0:
        raise FamilyConstraintError(f"{family.name}: n must be nonnegative, got {n}")
    if family.n_constraint is not None and not family.n_constraint.admits(n):
        raise FamilyConstraintError(
            f"{family.name} is declared only for {family.n_constraint}, got n={n}"
        )
    if div not in family.square_divisors:
        raise FamilyConstraintError(
            f"{family.name} has no square divisor option {div}; "
            f"options are {list(family.square_divisors)}"
        )

    S = family.S.evaluate(family.x, n)
    T = family.T.evaluate(family.x, n)
    D = S * S + T
    if D <= 0:
        raise FamilyConstraintError(f"{family.name}: D_{n} = {D} is not positive")
    if D % (div * div):
        raise FamilyConstraintError(f"{family.name}: {div}^2 does not divide D_{n}")
    D //= div * div
    if is_square(D):
        raise RationalSurdError(f"{family.name}: D_{n} is a perfect square")
    logger.debug("%s n=%d div=%d: D has %d digits", family.name, n, div, len(str(D)))
    return D

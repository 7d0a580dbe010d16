"""Square roots of even-degree polynomials as Laurent series at infinity.

For D = D_0 X^(2d) + D_1 X^(2d-1) + ... with D_0 a rational square,
sqrt(D) = X^d (t_0 + t_1/X + t_2/X^2 + ...) where t_0 = sqrt(D_0) > 0 and

    2 t_0 t_j = D_j - sum(t_i t_(j-i) for 0 < i < j)

with D_j = 0 beyond the constant term.
"""

from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from surds.exceptions import NotQuadraticFunctionFieldError

from .ratpoly import RatPoly


def rational_sqrt(c):
    """Positive square root of a rational square, or None."""
    c = Fraction(c)
    if c <= 0:
        return None
    if not (gmpy2.is_square(c.numerator) and gmpy2.is_square(c.denominator)):
        return None
    return Fraction(int(gmpy2.isqrt(c.numerator)), int(gmpy2.isqrt(c.denominator)))


def half_degree(D):
    if D.degree() < 2 or D.degree() % 2:
        raise NotQuadraticFunctionFieldError(
            f"{D} has degree {D.degree()}; a real quadratic function field needs even degree >= 2"
        )
    if rational_sqrt(D.leading()) is None:
        raise NotQuadraticFunctionFieldError(
            f"leading coefficient {D.leading()} of {D} is not a positive rational square"
        )
    return D.degree() // 2


@dataclass(frozen=True)
class SqrtSeries:
    poly_part: RatPoly
    tail: tuple
    depth: int

    @property
    def d(self):
        return self.poly_part.degree()

    def coefficients(self):
        """t_0, t_1, ... t_(d+depth), highest power of X first."""
        d = self.d
        return tuple(self.poly_part[d - j] for j in range(d + 1)) + self.tail

    def matches(self, D):
        """The truncated series squares to D through its top d + depth + 1 coefficients."""
        t = self.coefficients()
        top = 2 * self.d
        for j in range(len(t)):
            square = sum(t[i] * t[j - i] for i in range(j + 1))
            if square != D[top - j]:
                return False
        return True

    def truncated(self, k):
        """X^k times the series cut after its X^(d-k) term, as a polynomial."""
        if k > self.depth:
            raise ValueError(f"series only carries {self.depth} tail terms, asked for {k}")
        # tail[i] multiplies X^(-1-i), hence X^(k-1-i) after the shift
        low = RatPoly(self.tail[k - 1 - e] for e in range(k))
        return self.poly_part.shift(k) + low

    def polynomial_part_of(self, P, Q, k=None):
        """Polynomial part of (P + sqrt(D))/Q by Laurent division at depth k."""
        k = self.depth if k is None else k
        numerator = P.shift(k) + self.truncated(k)
        return numerator // Q.shift(k)


def sqrt_series(D, k):
    """Laurent expansion of sqrt(D) at infinity carrying k coefficients below X^0."""
    if k < 0:
        raise ValueError("series depth must be nonnegative")
    d = half_degree(D)
    top = 2 * d
    coeff = [D[top - j] for j in range(top + 1)]
    t = [rational_sqrt(coeff[0])]
    for j in range(1, d + k + 1):
        Dj = coeff[j] if j <= top else Fraction(0)
        acc = sum(t[i] * t[j - i] for i in range(1, j))
        t.append((Dj - acc) / (2 * t[0]))
    poly_part = RatPoly(t[d - e] for e in range(d + 1))
    return SqrtSeries(poly_part=poly_part, tail=tuple(t[d + 1 :]), depth=k)

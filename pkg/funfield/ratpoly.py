"""Dense univariate polynomials over the rationals.

Coefficients are ``Fraction`` values stored in ascending degree with no
trailing zeros, so the zero polynomial has an empty coefficient tuple and
degree -1.
"""

import re
from fractions import Fraction

from surds.exceptions import PolynomialSyntaxError

_TERM = re.compile(r"^(?P<coef>\d+(?:/\d+)?)?(?P<star>\*)?(?P<x>X(?:\^(?P<exp>\d+))?)?$")


class RatPoly:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, c, e):
        if e < 0:
            raise ValueError("monomial exponent must be nonnegative")
        return cls([0] * e + [c])

    @classmethod
    def X(cls):
        return cls([0, 1])

    @property
    def coeffs(self):
        return self._coeffs

    def degree(self):
        return len(self._coeffs) - 1

    def is_zero(self):
        return not self._coeffs

    def is_constant(self):
        return len(self._coeffs) <= 1

    def leading(self):
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __getitem__(self, e):
        if 0 <= e < len(self._coeffs):
            return self._coeffs[e]
        return Fraction(0)

    def height(self):
        """Largest of |numerator| and denominator over all coefficients."""
        return max((max(abs(c.numerator), c.denominator) for c in self._coeffs), default=0)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly.constant(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __neg__(self):
        return RatPoly(-c for c in self._coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self._coeffs), len(other._coeffs))
        return RatPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result, base = RatPoly.constant(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        dg = other.degree()
        lead = other.leading()
        quot = [Fraction(0)] * max(len(rem) - dg, 0)
        for k in range(len(rem) - 1 - dg, -1, -1):
            c = rem[k + dg] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other._coeffs):
                    rem[k + j] -= c * b
        return RatPoly(quot), RatPoly(rem[:dg] if dg > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def shift(self, k):
        """Multiply by X^k."""
        if self.is_zero():
            return self
        return RatPoly([0] * k + list(self._coeffs))

    def __repr__(self):
        return f"RatPoly({str(self)!r})"

    def __str__(self):
        parts = []
        for e in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[e]
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if e == 0 else ("X" if e == 1 else f"X^{e}")
            if e == 0:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text):
        """Read the canonical form, e.g. ``"2*X^3 - X^2 - 2"`` or ``"1/4*X + 1/8"``."""
        compact = re.sub(r"\s+", "", text or "")
        if not compact:
            raise PolynomialSyntaxError("empty polynomial")
        if compact[0] not in "+-":
            compact = "+" + compact
        coeffs = {}
        for sign, body in re.findall(r"([+-])([^+-]*)", compact):
            m = _TERM.match(body)
            if not body or m is None or not (m["coef"] or m["x"]):
                raise PolynomialSyntaxError(f"cannot read term {sign}{body!r} in {text!r}")
            if m["star"] and not (m["coef"] and m["x"]):
                raise PolynomialSyntaxError(f"dangling '*' in term {body!r}")
            try:
                c = Fraction(m["coef"]) if m["coef"] else Fraction(1)
            except ZeroDivisionError:
                raise PolynomialSyntaxError(f"zero denominator in {body!r}") from None
            if sign == "-":
                c = -c
            e = 0 if not m["x"] else int(m["exp"] or 1)
            coeffs[e] = coeffs.get(e, Fraction(0)) + c
        top = max(coeffs)
        return cls(coeffs.get(e, 0) for e in range(top + 1))

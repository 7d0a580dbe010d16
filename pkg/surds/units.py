"""Convergents, fundamental units and regulators of periodic expansions."""

import logging
from dataclasses import dataclass

import mpmath

from .exceptions import DomainError, InvariantViolation

logger = logging.getLogger(__name__)

MIN_PRECISION_BITS = 32
GUARD_BITS = 16


@dataclass(frozen=True)
class Convergent:
    h: int
    p: int
    q: int


def convergents(expansion):
    """p_h / q_h for every recorded partial quotient."""
    out = []
    p_prev2, p_prev = 0, 1
    q_prev2, q_prev = 1, 0
    for record in expansion.records:
        p = record.a * p_prev + p_prev2
        q = record.a * q_prev + q_prev2
        out.append(Convergent(h=record.h, p=p, q=q))
        p_prev2, p_prev = p_prev, p
        q_prev2, q_prev = q_prev, q
    return out


@dataclass(frozen=True)
class FundamentalUnit:
    """eps = u + v*sqrt(root) ("integral") or (u + v*sqrt(root))/2 ("half")."""

    u: int
    v: int
    norm: int
    form: str
    root: int

    def norm_identity(self):
        value = self.u * self.u - self.root * self.v * self.v
        return value // 4 if self.form == "half" else value

    def to_mpf(self):
        value = mpmath.mpf(self.u) + mpmath.mpf(self.v) * mpmath.sqrt(self.root)
        return value / 2 if self.form == "half" else value

    def __str__(self):
        body = f"{self.u} + {self.v}*sqrt({self.root})"
        return f"({body})/2" if self.form == "half" else body


def fundamental_unit(expansion):
    ell = expansion.require_period()
    conv = convergents(expansion)[ell - 1]
    norm = -1 if ell % 2 else 1
    N = expansion.radicand.N

    if expansion.sigma == 1:
        unit = FundamentalUnit(u=conv.p, v=conv.q, norm=norm, form="integral", root=N)
    else:
        # p - q*w' with w' = (1 - sqrt(D))/2
        u, v = 2 * conv.p - conv.q, conv.q
        if u % 2 == 0 and v % 2 == 0:
            unit = FundamentalUnit(u=u // 2, v=v // 2, norm=norm, form="integral", root=N)
        else:
            unit = FundamentalUnit(u=u, v=v, norm=norm, form="half", root=N)

    if unit.form == "half" and (unit.u * unit.u - N * unit.v * unit.v) != 4 * norm:
        raise InvariantViolation(f"unit {unit} fails the norm equation")
    if unit.form == "integral" and unit.norm_identity() != norm:
        raise InvariantViolation(f"unit {unit} fails the norm equation")
    return unit


@dataclass(frozen=True)
class Regulator:
    value: mpmath.mpf
    precision_bits: int

    def __str__(self):
        return format_real(self.value, self.precision_bits)


def format_real(value, precision_bits, digits=None):
    """Fixed-point decimal text, never scientific notation."""
    if digits is None:
        digits = max(10, int(precision_bits * 0.30103) - 2)
    return mpmath.nstr(
        value, digits, min_fixed=-float("inf"), max_fixed=float("inf")
    )


def _check_precision(precision_bits):
    if precision_bits < MIN_PRECISION_BITS:
        raise DomainError(
            f"precision_bits must be at least {MIN_PRECISION_BITS}, got {precision_bits}"
        )


def regulator(expansion, precision_bits=128):
    """ln(eps), from the exact unit and a single high-precision logarithm."""
    _check_precision(precision_bits)
    unit = fundamental_unit(expansion)
    with mpmath.workprec(precision_bits + GUARD_BITS):
        value = mpmath.log(unit.to_mpf())
    logger.debug("regulator of %s: %s", expansion.discriminant, value)
    return Regulator(value=value, precision_bits=precision_bits)


def log_sum_regulator(expansion, precision_bits=128):
    """Sum of ln((P_h + sqrt(N))/Q_h) over one period; an independent route to ln(eps)."""
    _check_precision(precision_bits)
    ell = expansion.require_period()
    with mpmath.workprec(precision_bits + GUARD_BITS):
        root = mpmath.sqrt(expansion.radicand.N)
        total = mpmath.mpf(0)
        for record in expansion.records[1 : ell + 1]:
            total += mpmath.log((record.P + root) / record.Q)
    return Regulator(value=total, precision_bits=precision_bits)

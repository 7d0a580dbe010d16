"""Continued fraction expansion of sqrt(D(X)) over the rationals.

Mirrors the integer engine with polynomial division in place of the
integer floor: a_h is the polynomial part of (P_h + sqrt(D))/Q_h.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from surds.exceptions import InvariantViolation, NoPeriodError, RationalSurdError

from .ratpoly import RatPoly
from .series import sqrt_series

logger = logging.getLogger(__name__)

DEFAULT_FF_MAX_STEPS = 200


@dataclass(frozen=True)
class PolyRecord:
    h: int
    a: RatPoly
    P: RatPoly
    Q: RatPoly


@dataclass(frozen=True)
class QuasiMarker:
    h: int
    constant: Fraction


@dataclass(frozen=True)
class PolyExpansion:
    D: RatPoly
    records: tuple
    period: int | None
    quasi_markers: tuple
    truncated: bool

    def display_rows(self):
        return list(self.records)

    def partial_quotients(self):
        return [r.a for r in self.records]

    def require_period(self):
        if self.period is None:
            raise NoPeriodError(
                f"expansion of {self.D} was truncated after {len(self.records)} steps"
            )
        return self.period

    @property
    def quasi_marker(self):
        """First constant, non-unit Q_h, if any."""
        return self.quasi_markers[0] if self.quasi_markers else None


def ff_expand(D, max_steps=DEFAULT_FF_MAX_STEPS):
    """Expand sqrt(D) from P_0 = 0, Q_0 = 1 until (P, Q) repeats or max_steps rows exist."""
    if max_steps < 1:
        raise ValueError(f"max_steps must be positive, got {max_steps}")
    if isinstance(D, str):
        D = RatPoly.parse(D)
    root = sqrt_series(D, 0).poly_part
    if root * root == D:
        raise RationalSurdError(f"{D} is the square of {root}")

    P, Q = RatPoly(), RatPoly.constant(1)
    records = []
    markers = []
    first = None
    period = None
    for h in range(max_steps):
        a = (P + root) // Q
        if h >= 1 and a.degree() < 1:
            raise InvariantViolation(f"partial quotient {a} at h={h} is constant")
        records.append(PolyRecord(h=h, a=a, P=P, Q=Q))
        if h >= 1 and Q.is_constant() and Q != 1:
            markers.append(QuasiMarker(h=h, constant=Q.leading()))

        P_next = a * Q - P
        Q_next, rem = divmod(D - P_next * P_next, Q)
        if not rem.is_zero():
            raise InvariantViolation(f"Q_{h} = {Q} does not divide D - P_{h + 1}^2")

        if h == 0:
            first = (P_next, Q_next)
        elif (P_next, Q_next) == first:
            period = h
            break
        P, Q = P_next, Q_next

    if period is None:
        logger.debug("%s truncated after %d steps", D, len(records))
    else:
        logger.debug("%s closed with period %d", D, period)
    return PolyExpansion(
        D=D,
        records=tuple(records),
        period=period,
        quasi_markers=tuple(markers),
        truncated=period is None,
    )

"""Continued fraction expansion of quadratic irrationals (P + sqrt(N)) / Q.

All arithmetic is exact. A state (P, Q) is admissible when Q divides
N - P^2; the recurrence keeps it so, and every step re-checks it.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import gmpy2

from .exceptions import (
    DomainError,
    InvariantViolation,
    NoPeriodError,
    NotADiscriminantError,
    RationalSurdError,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_STEPS = 1_000_000


class SeedMode(str, Enum):
    ORDER = "order"
    RAW = "raw"


def isqrt(n):
    """Return the integer r with r^2 <= n < (r + 1)^2."""
    if n < 0:
        raise DomainError(f"isqrt of a negative number: {n}")
    return int(gmpy2.isqrt(n))


def is_square(n):
    return n >= 0 and bool(gmpy2.is_square(n))


@dataclass(frozen=True)
class Radicand:
    N: int
    isqrt_N: int
    source_D: int

    @classmethod
    def of(cls, N, source_D=None):
        if N <= 0:
            raise DomainError(f"radicand must be positive, got {N}")
        if is_square(N):
            raise RationalSurdError(f"{N} is a perfect square; its square root is rational")
        source_D = N if source_D is None else source_D
        if source_D not in (N, 4 * N):
            raise DomainError(f"discriminant {source_D} does not match radicand {N}")
        return cls(N=N, isqrt_N=isqrt(N), source_D=source_D)


@dataclass(frozen=True)
class SurdState:
    P: int
    Q: int
    h: int = 0

    def is_admissible(self, radicand):
        return self.Q != 0 and (radicand.N - self.P * self.P) % self.Q == 0


@dataclass(frozen=True)
class ExpansionRecord:
    h: int
    a: int
    P: int
    Q: int


@dataclass(frozen=True)
class Expansion:
    radicand: Radicand
    seed_mode: SeedMode
    records: tuple
    period: int | None
    truncated: bool

    @property
    def sigma(self):
        """2 when the order generator is (1 + sqrt(D))/2, else 1."""
        if self.seed_mode is SeedMode.ORDER and self.radicand.source_D == self.radicand.N:
            return 2
        return 1

    @property
    def discriminant(self):
        return self.radicand.source_D

    def display_rows(self):
        """Rows in the coordinates of the order basis, as the tables print them.

        For sigma = 2 the complete quotient (P + sqrt(D))/Q is written as
        (P' + w)/Q' with w = (1 + sqrt(D))/2, so P' = (P - 1)/2 and Q' = Q/2.
        """
        if self.sigma == 1:
            return list(self.records)
        return [
            ExpansionRecord(r.h, r.a, (r.P - 1) // 2, r.Q // 2) for r in self.records
        ]

    def partial_quotients(self):
        return [r.a for r in self.records]

    def require_period(self):
        if self.period is None:
            raise NoPeriodError(
                f"expansion of {self.radicand.N} was truncated after "
                f"{len(self.records)} steps without closing a period"
            )
        return self.period


def seed(D, mode=SeedMode.ORDER):
    """Return the radicand and initial state for the order of discriminant D."""
    mode = SeedMode(mode)
    if D <= 0:
        raise DomainError(f"discriminant must be positive, got {D}")
    if is_square(D):
        raise RationalSurdError(f"{D} is a perfect square; its square root is rational")
    if mode is SeedMode.RAW:
        return Radicand.of(D), SurdState(P=0, Q=1)
    if D % 4 == 0:
        return Radicand.of(D // 4, source_D=D), SurdState(P=0, Q=1)
    if D % 4 == 1:
        return Radicand.of(D, source_D=D), SurdState(P=1, Q=2)
    raise NotADiscriminantError(f"{D} is {D % 4} mod 4 and is not a discriminant")


def step(state, radicand):
    """One step of the expansion: (a, next state)."""
    if not state.is_admissible(radicand):
        raise InvariantViolation(
            f"state (P={state.P}, Q={state.Q}) at h={state.h} is not admissible "
            f"for N={radicand.N}"
        )
    P, Q = state.P, state.Q
    if Q > 0:
        a = (P + radicand.isqrt_N) // Q
    else:
        a = (P + radicand.isqrt_N + 1) // Q
    P_next = a * Q - P
    Q_next = (radicand.N - P_next * P_next) // Q
    return a, SurdState(P=P_next, Q=Q_next, h=state.h + 1)


def expand(D, mode=SeedMode.ORDER, max_steps=DEFAULT_MAX_STEPS):
    """Expand the order generator of D until the period closes or max_steps rows exist."""
    if max_steps < 1:
        raise DomainError(f"max_steps must be positive, got {max_steps}")
    radicand, state = seed(D, mode)
    mode = SeedMode(mode)
    records = []
    first = None
    period = None
    for _ in range(max_steps):
        a, nxt = step(state, radicand)
        records.append(ExpansionRecord(h=state.h, a=a, P=state.P, Q=state.Q))
        if state.h == 0:
            first = (nxt.P, nxt.Q)
        elif (nxt.P, nxt.Q) == first:
            period = state.h
            break
        state = nxt

    expansion = Expansion(
        radicand=radicand,
        seed_mode=mode,
        records=tuple(records),
        period=period,
        truncated=period is None,
    )
    if period is None:
        logger.debug("D=%s truncated after %d steps", D, len(records))
    else:
        _check_terminal_quotient(expansion)
        logger.debug("D=%s closed with period %d", D, period)
    return expansion


def _check_terminal_quotient(expansion):
    a0 = expansion.records[0].a
    expected = 2 * a0 - 1 if expansion.sigma == 2 else 2 * a0
    closing = expansion.records[expansion.period].a
    if closing != expected:
        raise InvariantViolation(
            f"closing partial quotient {closing} differs from {expected}"
        )


@dataclass(frozen=True)
class SymmetryReport:
    period: int
    palindrome: bool
    q_mirror: bool
    p_mirror: bool
    midpoint: Fraction

    @property
    def symmetric(self):
        return self.palindrome and self.q_mirror and self.p_mirror


def detect_symmetry(expansion):
    """Check the mirror structure of one period.

    a_1 .. a_{l-1} must be a palindrome, Q_h = Q_{l-h} for 1 <= h <= l-1 and
    P_h = P_{l+1-h} for 1 <= h <= l.
    """
    ell = expansion.require_period()
    rows = expansion.records
    inner = [rows[h].a for h in range(1, ell)]
    q_mirror = all(rows[h].Q == rows[ell - h].Q for h in range(1, ell))
    p_mirror = all(rows[h].P == rows[ell + 1 - h].P for h in range(1, ell + 1))
    return SymmetryReport(
        period=ell,
        palindrome=inner == inner[::-1],
        q_mirror=q_mirror,
        p_mirror=p_mirror,
        midpoint=Fraction(ell, 2),
    )

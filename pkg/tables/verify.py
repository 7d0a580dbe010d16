import logging
from dataclasses import dataclass
from enum import Enum

from families.patterns import factor_pattern
from funfield.engine import PolyExpansion
from surds.engine import Expansion, SeedMode
from surds.exceptions import KindMismatchError

from .parsing import INTEGER, POLYNOMIAL, VALUE_COLUMNS

logger = logging.getLogger(__name__)


class VerifyStatus(str, Enum):
    EXACT = "exact"
    PREFIX_EXACT = "prefix-exact"
    MISMATCH = "mismatch"


@dataclass(frozen=True)
class Mismatch:
    h: int
    column: str
    expected: str
    computed: str

    def __str__(self):
        return f"h={self.h} {self.column}: expected {self.expected}, computed {self.computed}"


@dataclass(frozen=True)
class VerifyReport:
    fixture_id: str
    rows_checked: int
    cells_matched: int
    skipped_cells: int
    mismatches: tuple
    status: VerifyStatus

    @property
    def ok(self):
        return self.status is not VerifyStatus.MISMATCH

    def lines(self):
        out = [
            f"fixture={self.fixture_id}",
            f"status={self.status.value}",
            f"rows_checked={self.rows_checked}",
            f"cells_matched={self.cells_matched}",
            f"skipped_cells={self.skipped_cells}",
            f"mismatches={len(self.mismatches)}",
        ]
        out += [f"mismatch\t{m.h}\t{m.column}\t{m.expected}\t{m.computed}" for m in self.mismatches]
        return out


def _kind_of(computed):
    if isinstance(computed, Expansion):
        return INTEGER
    if isinstance(computed, PolyExpansion):
        return POLYNOMIAL
    raise KindMismatchError(f"cannot verify a {type(computed).__name__}")


def _pattern_text(value, primes):
    if value < 1:
        return str(value)
    return factor_pattern(value, primes).expression()


def verify(computed, fixture, primes=None):
    """Compare every present cell of the fixture against the computed rows.

    Integer expansions are compared in display coordinates. A factor cell
    matches when its value equals the computed Q; on mismatch both sides are
    reported as factor patterns over ``primes``.
    """
    kind = _kind_of(computed)
    if kind != fixture.kind:
        raise KindMismatchError(
            f"{kind} expansion cannot be checked against the {fixture.kind} table {fixture.id}"
        )

    rows = {row.h: row for row in computed.display_rows()}
    symbols = fixture.symbol_dict
    checked_columns = [c for c in fixture.columns if c != "h"]
    mismatches = []
    matched = skipped = checked = 0

    for row in fixture.rows:
        got = rows.get(row.h)
        if got is None:
            mismatches.append(Mismatch(row.h, "h", "present", "absent"))
            continue
        checked += 1
        for column in checked_columns:
            expected = row.cell(column)
            if expected is None:
                skipped += 1
                continue
            if column in VALUE_COLUMNS:
                actual = getattr(got, column)
                if actual == expected:
                    matched += 1
                else:
                    mismatches.append(Mismatch(row.h, column, str(expected), str(actual)))
                continue

            value = expected.evaluate(symbols)
            if value == got.Q:
                matched += 1
            else:
                bases = primes or {b for b, _ in expected.factors if isinstance(b, int) and b > 1}
                mismatches.append(
                    Mismatch(row.h, "factors", str(expected), _pattern_text(got.Q, bases))
                )

    if not fixture.prefix_only and len(rows) != len(fixture.rows):
        mismatches.append(
            Mismatch(len(fixture.rows), "rows", str(len(fixture.rows)), str(len(rows)))
        )

    if mismatches:
        status = VerifyStatus.MISMATCH
    elif fixture.prefix_only:
        status = VerifyStatus.PREFIX_EXACT
    else:
        status = VerifyStatus.EXACT
    logger.debug(
        "%s: %s, %d cells matched, %d skipped", fixture.id, status.value, matched, skipped
    )
    return VerifyReport(
        fixture_id=fixture.id,
        rows_checked=checked,
        cells_matched=matched,
        skipped_cells=skipped,
        mismatches=tuple(mismatches),
        status=status,
    )


def admissibility_precheck(fixture, D, mode=SeedMode.ORDER):
    """Rows whose printed P and Q cannot come from any expansion of D.

    Checks Q | N - P^2 in sqrt(N) coordinates, and Q | P^2 + P - (D - 1)/4
    when the table is printed in the basis (1 + sqrt(D))/2.
    """
    if fixture.kind != INTEGER:
        raise KindMismatchError(f"{fixture.id} is not an integer table")
    mode = SeedMode(mode)
    if mode is SeedMode.ORDER and D % 4 == 1:
        c = (D - 1) // 4

        def norm(P):
            return P * P + P - c

    else:
        N = D // 4 if mode is SeedMode.ORDER else D

        def norm(P):
            return N - P * P

    return [
        row.h
        for row in fixture.rows
        if row.P is not None and row.Q is not None and norm(row.P) % row.Q != 0
    ]

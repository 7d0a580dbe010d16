"""TSV rendering of computed expansions in the fixture format.

A rendered expansion parses back with ``parse_fixture`` and replays from its
own headers, so ``verify`` run on it is always exact.
"""

from families.patterns import factor_pattern
from surds.exceptions import NoPeriodError
from surds.units import fundamental_unit, regulator

from .parsing import INTEGER, POLYNOMIAL


def factor_cell(Q, primes):
    """Pattern of Q over the primes, or empty when none of them divides Q."""
    if not primes or Q < 1:
        return ""
    pattern = factor_pattern(Q, primes)
    return pattern.expression() if pattern.exponents else ""


def _summary(expansion):
    if expansion.period is None:
        return ["## truncated"]
    return [f"## period={expansion.period}"]


def integer_headers(expansion, fixture_id, source, with_factors):
    columns = "h,a,P,Q,factors" if with_factors else "h,a,P,Q"
    lines = [
        f"#id={fixture_id}",
        f"#kind={INTEGER}",
        f"#prefix={'true' if expansion.truncated else 'false'}",
        f"#columns={columns}",
    ]
    lines += [f"#{key}={value}" for key, value in source]
    return lines


def integer_rows(expansion, primes=None, pure_only=False):
    with_factors = primes is not None
    for row in expansion.display_rows():
        if pure_only and not factor_pattern(abs(row.Q), primes).is_pure:
            continue
        cells = [str(row.h), str(row.a), str(row.P), str(row.Q)]
        if with_factors:
            cells.append(factor_cell(row.Q, primes))
        yield "\t".join(cells)


def integer_trailer(expansion, precision_bits):
    lines = _summary(expansion)
    try:
        unit = fundamental_unit(expansion)
    except NoPeriodError:
        return lines
    lines.append(f"## unit-norm={unit.norm:+d}")
    lines.append(f"## unit={unit}")
    lines.append(f"## regulator={regulator(expansion, precision_bits)}")
    return lines


def render_integer(expansion, fixture_id, source, precision_bits, primes=None, pure_only=False):
    lines = integer_headers(expansion, fixture_id, source, primes is not None)
    lines += integer_rows(expansion, primes, pure_only)
    lines += integer_trailer(expansion, precision_bits)
    return lines


def render_polynomial(expansion, fixture_id="poly"):
    lines = [
        f"#id={fixture_id}",
        f"#kind={POLYNOMIAL}",
        f"#prefix={'true' if expansion.truncated else 'false'}",
        "#columns=h,a,P,Q",
        f"#poly={expansion.D}",
    ]
    for row in expansion.records:
        lines.append(f"{row.h}\t{row.a}\t{row.P}\t{row.Q}")
    lines += _summary(expansion)
    lines += [f"## quasi h={m.h} Q={m.constant}" for m in expansion.quasi_markers]
    return lines

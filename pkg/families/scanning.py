import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from surds.engine import expand
from surds.exceptions import CreepersError

from .patterns import factor_pattern
from .registry import discriminant, get_family

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScanResult:
    n: int
    period: int | None = None
    truncated: bool = False
    pure_rows: int = 0
    error: str | None = None

    @property
    def ok(self):
        return self.error is None


def scan_one(name, n, max_steps, div=1):
    family = get_family(name)
    try:
        D = discriminant(family, n, div)
        expansion = expand(D, max_steps=max_steps)
    except CreepersError as exc:
        return ScanResult(n=n, error=str(exc))
    pure = sum(
        1
        for row in expansion.display_rows()
        if factor_pattern(abs(row.Q), family.primes).is_pure
    )
    return ScanResult(
        n=n,
        period=expansion.period,
        truncated=expansion.truncated,
        pure_rows=pure,
    )


def scan_periods(family, n_from, n_to, max_steps, workers=1, div=1):
    """Period length (or truncation) for every n in [n_from, n_to], in ascending n."""
    if n_from < 0 or n_to < n_from:
        raise ValueError(f"invalid n range [{n_from}, {n_to}]")
    ns = range(n_from, n_to + 1)
    logger.info("scanning %s for n in [%d, %d] with %d worker(s)", family.name, n_from, n_to, workers)

    if workers <= 1:
        return [scan_one(family.name, n, max_steps, div) for n in ns]

    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order, whatever order the workers finish in
        return list(
            pool.map(
                scan_one,
                [family.name] * len(ns),
                ns,
                [max_steps] * len(ns),
                [div] * len(ns),
            )
        )

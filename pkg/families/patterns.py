from dataclasses import dataclass

import gmpy2


@dataclass(frozen=True)
class FactorPattern:
    """Q = cofactor * prod(p^e) with the cofactor coprime to every family prime."""

    cofactor: int
    exponents: tuple

    @property
    def is_pure(self):
        return self.cofactor == 1

    def as_dict(self):
        return dict(self.exponents)

    def value(self):
        out = self.cofactor
        for p, e in self.exponents:
            out *= p**e
        return out

    def expression(self):
        parts = [] if self.cofactor == 1 else [str(self.cofactor)]
        parts.extend(str(p) if e == 1 else f"{p}^{e}" for p, e in self.exponents)
        return "*".join(parts) or "1"

    def __str__(self):
        return self.expression()


def factor_pattern(Q, primes):
    """Divide each family prime out of Q; whatever is left is the cofactor."""
    if Q < 1:
        raise ValueError(f"factor_pattern needs Q >= 1, got {Q}")
    rest = gmpy2.mpz(Q)
    exponents = []
    for p in sorted(primes):
        rest, e = gmpy2.remove(rest, p)
        if e:
            exponents.append((p, int(e)))
    return FactorPattern(cofactor=int(rest), exponents=tuple(exponents))

"""Exact integer helpers: factorization, integer square roots, prime supports.

Everything here works on Python ints, so values far beyond 64 bits are fine.
No floating point is used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class FactoredInteger:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors!r}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors!r} do not multiply to {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.factors)

    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    def render(self) -> str:
        """``2^10*5^4`` style; ``1`` for the empty product."""
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" for p, e in self.factors)


def _wheel():
    yield 2
    yield 3
    yield 5
    d = 7
    # mod-30 wheel; skips multiples of 2, 3, 5
    steps = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while True:
        yield d
        d += steps[i]
        i = (i + 1) % 8


def factorize(n: int) -> FactoredInteger:
    """Trial division up to sqrt(n)."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    factors = []
    m = n
    for d in _wheel():
        if d * d > m:
            break
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
    if m > 1:
        factors.append((m, 1))
    return FactoredInteger(n, tuple(factors))


def factorize_over(n: int, primes: Iterable[int]) -> tuple[FactoredInteger | None, int]:
    """Split n over a known prime set.

    Returns ``(factored, cofactor)``.  ``factored`` is only present when the
    cofactor is 1, i.e. n is supported entirely on ``primes``.
    """
    if n < 1:
        raise ValueError(f"factorize_over needs n >= 1, got {n}")
    factors = []
    m = n
    for p in sorted(set(primes)):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    if m != 1:
        return None, m
    return FactoredInteger(n, tuple(factors)), 1


def integer_sqrt(n: int) -> tuple[int, bool]:
    """Return ``(floor(sqrt(n)), n is a perfect square)``.

    Newton iteration on integers, then a correction step.
    """
    if n < 0:
        raise ValueError(f"integer_sqrt needs n >= 0, got {n}")
    if n < 2:
        return n, True
    x = 1 << ((n.bit_length() + 1) // 2)  # >= sqrt(n)
    while True:
        y = (x + n // x) // 2
        if y >= x:
            break
        x = y
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x, x * x == n


def is_square(n: int) -> bool:
    return n >= 0 and integer_sqrt(n)[1]


def prime_support(n: int) -> frozenset[int]:
    if n < 1:
        raise ValueError(f"prime_support needs n >= 1, got {n}")
    return frozenset(factorize(n).primes)


def divisors(f: FactoredInteger) -> list[int]:
    """All positive divisors, ascending."""
    divs = [1]
    for p, e in f.factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def multiply(a: FactoredInteger, b: FactoredInteger) -> FactoredInteger:
    exps: dict[int, int] = {}
    for p, e in a.factors + b.factors:
        exps[p] = exps.get(p, 0) + e
    return FactoredInteger(a.value * b.value, tuple(sorted(exps.items())))


def factor_table(limit: int) -> list[FactoredInteger]:
    """Factorizations of 0..limit via a smallest-prime-factor sieve (index 0 is a placeholder)."""
    spf = list(range(limit + 1))
    i = 2
    while i * i <= limit:
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    table = [FactoredInteger(1, ())] * (limit + 1)
    for n in range(2, limit + 1):
        p = spf[n]
        m = n // p
        prev = table[m].factors
        if prev and prev[0][0] == p:
            facs = ((p, prev[0][1] + 1),) + prev[1:]
        else:
            facs = ((p, 1),) + prev
        table[n] = FactoredInteger(n, facs)
    return table

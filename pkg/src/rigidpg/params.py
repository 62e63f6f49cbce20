"""Partial-geometry parameter triples, their PDS parameters, and the candidate search.

A rigid-type pg(s, t, alpha) with an abelian Singer group yields a regular PDS
in a group of order v.  The search walks alpha, s and the witness c of the
line-multiplier condition and keeps every triple passing the divisibility
conditions, the Sylow-cyclicity filter, the v/Delta prime-support filter and
the Delta/(s+1) prime-support filter.

Note on mu: the printed statement of the point-graph parameters has
``alpha*(t-1)`` for mu, but the tabulated data (81, 30, 9, 12) for pg(5,5,2)
and the search code use ``alpha*(t+1)``.  We use ``alpha*(t+1)``, which is
the standard value for the collinearity graph of a partial geometry.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from rigidpg.numth import (
    FactoredInteger,
    factor_table,
    factorize,
    factorize_over,
    integer_sqrt,
    prime_support,
)


class NonIntegralV(ValueError):
    """alpha does not divide (s+1)(st+alpha); the triple cannot be a pg."""


@dataclass(frozen=True, order=True)
class GeometryParams:
    s: int
    t: int
    alpha: int

    def __post_init__(self):
        if self.alpha < 2 or self.alpha >= min(self.s, self.t):
            raise ValueError(f"need 2 <= alpha < min(s, t), got {self}")

    @property
    def delta(self) -> int:
        return self.s + self.t - self.alpha + 1

    def label(self) -> str:
        return f"pg({self.s},{self.t},{self.alpha})"


@dataclass(frozen=True)
class PdsParams:
    v: int
    k: int
    lam: int
    mu: int

    @property
    def beta(self) -> int:
        return self.lam - self.mu

    @property
    def Delta(self) -> int:
        return self.beta**2 + 4 * (self.k - self.mu)

    @property
    def delta(self) -> int | None:
        if self.Delta < 0:
            return None
        root, exact = integer_sqrt(self.Delta)
        return root if exact else None

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def satisfies_counting(self) -> bool:
        return self.k * (self.k - self.lam - 1) == (self.v - self.k - 1) * self.mu


@dataclass(frozen=True)
class CandidateRow:
    geometry: GeometryParams
    x: int
    c: int
    pds: PdsParams
    v_factored: FactoredInteger

    @property
    def s(self) -> int:
        return self.geometry.s

    @property
    def t(self) -> int:
        return self.geometry.t

    @property
    def alpha(self) -> int:
        return self.geometry.alpha


def derive_pds_params(g: GeometryParams) -> PdsParams:
    s, t, a = g.s, g.t, g.alpha
    num = (s + 1) * (s * t + a)
    if num % a:
        raise NonIntegralV(f"{g.label()}: alpha={a} does not divide {num}")
    return PdsParams(num // a, s * (t + 1), s + t * (a - 1) - 1, a * (t + 1))


def check_divisibility_a(g: GeometryParams) -> bool:
    return (g.s + 1) * (g.t + 1) % g.delta == 0


def check_divisibility_b(g: GeometryParams) -> bool:
    return derive_pds_params(g).v % g.delta == 0


def solve_line_multiplier(s: int, alpha: int, c: int) -> int | None:
    den = (alpha + 1) ** 2 - c * (s + 1)
    if den <= 0:
        return None
    num = c * (s - alpha)
    if num <= 0 or num % den:
        return None
    return num // den


def check_ma2a(v_factored: FactoredInteger) -> bool:
    # applied unconditionally, also to prime powers; v = p^1 cannot occur here
    return all(e >= 2 for e in v_factored.exponents)


def check_ma3(v: int, delta: int) -> bool:
    return prime_support(v) <= prime_support(delta)


def check_mls(s: int, alpha: int, delta: int, *, as_code: bool = False) -> bool:
    """Every prime of delta divides s+1, required once s > 2*alpha - 1.

    ``as_code=True`` uses the weaker guard of the original search script,
    which skips the test for s <= 2*alpha.
    """
    vacuous = s <= 2 * alpha if as_code else s <= 2 * alpha - 1
    if vacuous:
        return True
    return prime_support(delta) <= prime_support(s + 1)


def _passes_filters(
    alpha: int, s: int, x: int, c: int, mls_as_code: bool
) -> CandidateRow | None:
    t = x * (s + 1) - 1
    delta = s + t - alpha + 1
    if (s + 1) * (t + 1) % delta:
        return None
    num = (s + 1) * (s * t + alpha)
    if num % alpha:
        return None
    v = num // alpha
    if v % delta:
        return None
    # Factor delta (small), then split v over its primes: a leftover cofactor
    # means v has a prime outside supp(delta), which already fails Ma3.
    delta_f = factorize(delta)
    v_f, _ = factorize_over(v, delta_f.primes)
    if v_f is None or not check_ma2a(v_f):
        return None
    if not check_mls(s, alpha, delta, as_code=mls_as_code):
        return None
    g = GeometryParams(s, t, alpha)
    return CandidateRow(g, x, c, derive_pds_params(g), v_f)


def _dedup_sorted(rows: list[CandidateRow]) -> list[CandidateRow]:
    best: dict[tuple[int, int, int], CandidateRow] = {}
    for r in rows:
        key = (r.alpha, r.s, r.x)
        if key not in best or r.c < best[key].c:
            best[key] = r
    return sorted(best.values(), key=lambda r: (r.alpha, r.s, r.x))


def _alpha_loop(alpha: int, mls_as_code: bool, tight: bool) -> list[CandidateRow]:
    """Direct triple loop over (s, c) for one alpha; the reference engine."""
    A = (alpha + 1) ** 2
    out = []
    for s in range(alpha + 1, A - 1):
        c = 1
        while c < alpha + 2:
            if tight and c * (s + 1) >= A:
                break
            x = solve_line_multiplier(s, alpha, c)
            if x is not None:
                row = _passes_filters(alpha, s, x, c, mls_as_code)
                if row is not None:
                    out.append(row)
            c += 1
    return out


_SMALL = None


def _small_factors(n: int) -> FactoredInteger:
    global _SMALL
    if _SMALL is None or n >= len(_SMALL):
        _SMALL = factor_table(max(2 * n, 4096))
    return _SMALL[n]


def _alpha_divisors(alpha: int, mls_as_code: bool) -> list[CandidateRow]:
    """Same output as the loop engine, by enumerating divisors instead of s.

    Write A = (alpha+1)^2 and D = A - c(s+1) for the line-multiplier
    denominator.  Then c(s - alpha) = A - D - c(alpha+1), so D divides the
    numerator iff D divides (alpha+1)(alpha+1-c).  For each c we walk the
    divisors of that product and recover s = (A - D)/c - 1.
    """
    a1 = alpha + 1
    A = a1 * a1
    f_a1 = _small_factors(a1)
    out = []
    # s >= alpha+1 forces c(alpha+2) < A, hence c <= alpha
    for c in range(1, a1):
        f_b = _small_factors(a1 - c)
        exps: dict[int, int] = dict(f_a1.factors)
        for p, e in f_b.factors:
            exps[p] = exps.get(p, 0) + e
        divs = [1]
        for p, e in exps.items():
            divs = [d * p**i for d in divs for i in range(e + 1)]
        M = a1 * (a1 - c)
        for D in divs:
            rest = A - D
            if rest % c:
                continue
            s = rest // c - 1
            if s < alpha + 1 or s > A - 2:
                continue
            x = (M - D) // D  # = c(s - alpha)/D
            if x <= 0:
                continue
            row = _passes_filters(alpha, s, x, c, mls_as_code)
            if row is not None:
                out.append(row)
    return out


def _worker(args) -> list[CandidateRow]:
    lo, hi, engine, mls_as_code = args
    rows: list[CandidateRow] = []
    for alpha in range(lo, hi + 1):
        if engine == "divisor":
            rows.extend(_alpha_divisors(alpha, mls_as_code))
        elif engine == "loop":
            rows.extend(_alpha_loop(alpha, mls_as_code, tight=True))
        elif engine == "loop-loose":
            rows.extend(_alpha_loop(alpha, mls_as_code, tight=False))
        else:
            raise ValueError(f"unknown engine {engine!r}")
    return rows


def _chunks(lo: int, hi: int, n: int) -> Iterator[tuple[int, int]]:
    # work per alpha grows roughly like alpha^2; interleave chunk sizes by count only
    size = max(1, (hi - lo + 1) // (n * 8) or 1)
    a = lo
    while a <= hi:
        b = min(hi, a + size - 1)
        yield a, b
        a = b + 1


def default_workers() -> int:
    env = os.environ.get("RIGIDPG_THREADS")
    if env:
        return max(1, int(env))
    return 1


def enumerate_candidates(
    alpha_min: int,
    alpha_max: int,
    *,
    engine: str = "divisor",
    mls_as_code: bool = False,
    workers: int | None = None,
) -> list[CandidateRow]:
    """All parameter triples with alpha in [alpha_min, alpha_max] surviving the filters.

    ``engine`` selects the traversal: ``"divisor"`` (default, fast),
    ``"loop"`` (direct s/c loop with c(s+1) < (alpha+1)^2) or ``"loop-loose"``
    (c over [1, alpha+1] guarded only by denominator positivity).  All three
    return identical rows.
    """
    if not 2 <= alpha_min <= alpha_max:
        raise ValueError(f"need 2 <= alpha_min <= alpha_max, got {alpha_min}, {alpha_max}")
    workers = default_workers() if workers is None else workers
    jobs = [(lo, hi, engine, mls_as_code) for lo, hi in _chunks(alpha_min, alpha_max, workers)]
    rows: list[CandidateRow] = []
    if workers <= 1 or len(jobs) == 1:
        for job in jobs:
            rows.extend(_worker(job))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_worker, jobs):
                rows.extend(part)
    return _dedup_sorted(rows)


def congruence_holds(row: CandidateRow) -> bool:
    """x(alpha+1)^2 == 0 mod (x+1)(s+1) - (alpha+1), checked without c."""
    mod = (row.x + 1) * (row.s + 1) - (row.alpha + 1)
    return row.x * (row.alpha + 1) ** 2 % mod == 0


def candidate_from_triple(s: int, t: int, alpha: int) -> CandidateRow:
    """Rebuild a CandidateRow for a triple, recovering x and the witness c.

    Only structural conditions are checked (integral x, c and v); the
    feasibility filters are not re-applied.
    """
    g = GeometryParams(s, t, alpha)
    if (t + 1) % (s + 1):
        raise ValueError(f"{g.label()}: s+1 does not divide t+1")
    x = (t + 1) // (s + 1)
    den = (x + 1) * (s + 1) - (alpha + 1)
    num = x * (alpha + 1) ** 2
    if num % den:
        raise ValueError(f"{g.label()}: no integral line-multiplier witness c")
    pds = derive_pds_params(g)
    return CandidateRow(g, x, num // den, pds, factorize(pds.v))

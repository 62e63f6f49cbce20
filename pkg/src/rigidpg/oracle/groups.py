"""Explicit finite abelian groups and brute-force PDS checks.

Elements are tuples of residues, one per invariant factor.  Internally the
hot loops work on mixed-radix indices (first component least significant),
which also gives the deterministic element order used everywhere.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Iterable

from rigidpg.params import PdsParams

GroupElement = tuple[int, ...]

DEFAULT_ORDER_BOUND = 10**6


class NotAPds(ValueError):
    def __init__(self, element: GroupElement, count: int, expected: int, in_d: bool):
        where = "in D" if in_d else "outside D"
        super().__init__(f"element {element} ({where}) is represented {count} times, expected {expected}")
        self.element = element
        self.count = count
        self.expected = expected


class NotASubgroup(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroup:
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(self.invariant_factors))
        if any(n < 2 for n in self.invariant_factors):
            raise ValueError(f"invariant factors must be >= 2, got {self.invariant_factors}")

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.invariant_factors, 1)

    @property
    def exponent(self) -> int:
        return reduce(lcm, self.invariant_factors, 1)

    @property
    def identity(self) -> GroupElement:
        return (0,) * len(self.invariant_factors)

    def elements(self) -> list[GroupElement]:
        """All elements in index order."""
        return [self.element(i) for i in range(self.order)]

    def index(self, g: GroupElement) -> int:
        i = 0
        for r, n in zip(reversed(g), reversed(self.invariant_factors)):
            i = i * n + r
        return i

    def element(self, i: int) -> GroupElement:
        out = []
        for n in self.invariant_factors:
            i, r = divmod(i, n)
            out.append(r)
        return tuple(out)

    def contains(self, g: Iterable[int]) -> bool:
        g = tuple(g)
        return len(g) == len(self.invariant_factors) and all(
            0 <= r < n for r, n in zip(g, self.invariant_factors)
        )

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.invariant_factors))

    def sub(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return tuple((x - y) % n for x, y, n in zip(a, b, self.invariant_factors))

    def neg(self, a: GroupElement) -> GroupElement:
        return tuple(-x % n for x, n in zip(a, self.invariant_factors))

    def scale(self, a: GroupElement, s: int) -> GroupElement:
        return tuple(x * s % n for x, n in zip(a, self.invariant_factors))

    def element_order(self, a: GroupElement) -> int:
        return reduce(lcm, (n // gcd(x, n) for x, n in zip(a, self.invariant_factors)), 1)

    @property
    def sub_table(self) -> list[list[int]]:
        """``sub_table[i][j]`` is the index of element(i) - element(j)."""
        return _sub_table(self.invariant_factors)


@lru_cache(maxsize=16)
def _sub_table(factors: tuple[int, ...]) -> list[list[int]]:
    group = AbelianGroup(factors)
    els = group.elements()
    return [[group.index(group.sub(a, b)) for b in els] for a in els]


@dataclass(frozen=True)
class PdsCandidate:
    group: AbelianGroup
    elements: frozenset[GroupElement] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(tuple(g) for g in self.elements))
        bad = [g for g in self.elements if not self.group.contains(g)]
        if bad:
            raise ValueError(f"{bad[0]} is not an element of Z_{self.group.invariant_factors}")

    @property
    def k(self) -> int:
        return len(self.elements)

    def indices(self) -> list[int]:
        return sorted(self.group.index(g) for g in self.elements)


@dataclass(frozen=True)
class PdsCheck:
    params: PdsParams
    inverse_closed: bool


def _difference_counts(group: AbelianGroup, idx: list[int]) -> Counter:
    if group.order <= 4096:
        table = group.sub_table
        return Counter(table[a][b] for a in idx for b in idx if a != b)
    els = [group.element(i) for i in idx]
    return Counter(group.index(group.sub(a, b)) for a in els for b in els if a != b)


def verify_pds(candidate: PdsCandidate, *, order_bound: int = DEFAULT_ORDER_BOUND) -> PdsCheck:
    """Count all ordered differences and read off (v, k, lambda, mu).

    Raises NotAPds naming the first element (in index order) whose count
    disagrees with the first count seen in its class.
    """
    group = candidate.group
    if group.order > order_bound:
        raise ValueError(f"group order {group.order} exceeds bound {order_bound}")
    if group.identity in candidate.elements:
        raise ValueError("identity must not be in D")
    idx = candidate.indices()
    in_d = set(idx)
    counts = _difference_counts(group, idx)
    lam = mu = None
    for i in range(1, group.order):
        c = counts.get(i, 0)
        if i in in_d:
            if lam is None:
                lam = c
            elif c != lam:
                raise NotAPds(group.element(i), c, lam, True)
        else:
            if mu is None:
                mu = c
            elif c != mu:
                raise NotAPds(group.element(i), c, mu, False)
    # vacuous classes (D empty, or D = G minus e) report 0
    params = PdsParams(group.order, len(idx), lam or 0, mu or 0)
    inv = all(group.neg(g) in candidate.elements for g in candidate.elements)
    return PdsCheck(params, inv)


def involution_free(candidate: PdsCandidate) -> bool:
    return all(candidate.group.element_order(g) != 2 for g in candidate.elements)


def multiplier_closed(candidate: PdsCandidate, s: int) -> bool:
    """Is D mapped into itself by g -> g^s (written s*g additively)?"""
    return all(candidate.group.scale(g, s) in candidate.elements for g in candidate.elements)


def check_subgroup(group: AbelianGroup, subgroup: Iterable[GroupElement]) -> frozenset[GroupElement]:
    sub = frozenset(tuple(g) for g in subgroup)
    if group.identity not in sub:
        raise NotASubgroup("subgroup does not contain the identity")
    for a in sub:
        if not group.contains(a):
            raise NotASubgroup(f"{a} is not a group element")
        for b in sub:
            if group.sub(a, b) not in sub:
                raise NotASubgroup(f"{a} - {b} leaves the set")
    return sub


@dataclass(frozen=True)
class CosetProfile:
    k1: int
    counts: tuple[int, ...]  # B_i for the nontrivial cosets, ordered by least representative

    @property
    def n_cosets(self) -> int:
        return len(self.counts)

    def variance(self) -> int:
        """Scaled variance n_c * sum B_i^2 - (sum B_i)^2 from the actual counts."""
        return self.n_cosets * sum(b * b for b in self.counts) - sum(self.counts) ** 2


def coset_profile(candidate: PdsCandidate, subgroup: Iterable[GroupElement]) -> CosetProfile:
    group = candidate.group
    sub = check_subgroup(group, subgroup)
    seen: set[GroupElement] = set()
    k1 = len(sub & candidate.elements)
    seen |= sub
    counts = []
    for g in group.elements():
        if g in seen:
            continue
        coset = {group.add(g, h) for h in sub}
        seen |= coset
        counts.append(len(coset & candidate.elements))
    return CosetProfile(k1, tuple(counts))


def pairs_with_difference_in(candidate: PdsCandidate, subgroup: Iterable[GroupElement]) -> int:
    """Ordered pairs (d, d'), d != d', of D with d - d' in N minus the identity."""
    group = candidate.group
    sub = frozenset(subgroup)
    els = sorted(candidate.elements)
    return sum(1 for a in els for b in els if a != b and group.sub(a, b) in sub)


def sylow_subgroup(group: AbelianGroup, p: int) -> frozenset[GroupElement]:
    out = set()
    for g in group.elements():
        o = group.element_order(g)
        while o % p == 0:
            o //= p
        if o == 1:
            out.add(g)
    return frozenset(out)


def span(group: AbelianGroup, gens: Iterable[GroupElement]) -> frozenset[GroupElement]:
    current = {group.identity}
    frontier = [group.identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = group.add(a, g)
                if b not in current:
                    current.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(current)


def elementary_abelian_subgroups(group: AbelianGroup, max_order: int = 81) -> list[frozenset[GroupElement]]:
    """Every subgroup (= subspace) of Z_p^n, for groups of order <= max_order.

    Sorted by (size, sorted element list) for determinism.
    """
    factors = set(group.invariant_factors)
    if len(factors) != 1 or group.order > max_order:
        raise ValueError(f"need an elementary abelian group of order <= {max_order}")
    p = factors.pop()
    if any(p % q == 0 for q in range(2, p)):
        raise ValueError(f"{p} is not prime")
    found = {frozenset([group.identity])}
    frontier = list(found)
    els = group.elements()
    while frontier:
        nxt = []
        for s in frontier:
            for g in els:
                if g in s:
                    continue
                # s is a subspace, so <s, g> is the union of the cosets s + j*g
                t = frozenset(group.add(h, group.scale(g, j)) for h in s for j in range(p))
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def parse_pds_text(text: str) -> PdsCandidate:
    """Read the plain-text PDS format.

    First content line: comma-separated invariant factors.  Each further
    non-empty line: one element as comma-separated residues.  ``#`` starts a
    comment.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append((lineno, tuple(int(x) for x in line.split(","))))
        except ValueError:
            raise ValueError(f"line {lineno}: expected comma-separated integers, got {raw!r}") from None
    if not rows:
        raise ValueError("empty PDS file")
    group = AbelianGroup(rows[0][1])
    elements = []
    for lineno, g in rows[1:]:
        if not group.contains(g):
            raise ValueError(f"line {lineno}: {g} is not an element of Z_{group.invariant_factors}")
        elements.append(g)
    return PdsCandidate(group, frozenset(elements))


def format_pds_text(candidate: PdsCandidate, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(",".join(map(str, candidate.group.invariant_factors)))
    for i in candidate.indices():
        lines.append(",".join(map(str, candidate.group.element(i))))
    return "\n".join(lines) + "\n"

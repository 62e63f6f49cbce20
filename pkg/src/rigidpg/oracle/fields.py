"""Small prime-power fields and cyclotomic classes.

A field element is stored as an int ``sum(a_i * p**i)`` over its coefficient
vector in the polynomial basis.  Comparing these ints is the same as comparing
coefficient vectors high degree first, which is the ordering used to pick the
modulus and the primitive element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

from rigidpg.numth import factorize
from rigidpg.oracle.groups import AbelianGroup, GroupElement, NotAPds, PdsCandidate, verify_pds
from rigidpg.params import PdsParams


def _is_prime(p: int) -> bool:
    return p >= 2 and factorize(p).factors == ((p, 1),)


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo monic m; coefficient lists are low degree first."""
    a = a[:]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _is_irreducible(m: list[int], p: int) -> bool:
    """No monic factor of degree 1..deg/2 (brute force; fine for tiny fields)."""
    f = len(m) - 1
    for d in range(1, f // 2 + 1):
        for low in product(range(p), repeat=d):
            div = list(low) + [1]
            if not any(_poly_mod(m, div, p)):
                return False
    return True


def least_irreducible(p: int, f: int) -> tuple[int, ...]:
    """Least monic irreducible of degree f over GF(p), coefficients high degree first."""
    # product() yields (a_{f-1}, ..., a_0) in lexicographic order
    for tail in product(range(p), repeat=f):
        m = list(reversed(tail)) + [1]
        if f == 1 or _is_irreducible(m, p):
            return (1,) + tail
    raise AssertionError(f"no irreducible polynomial of degree {f} over GF({p})")


@dataclass(frozen=True)
class FiniteField:
    p: int
    f: int
    modulus: tuple[int, ...]  # monic, high degree first
    primitive_element: int

    @property
    def q(self) -> int:
        return self.p**self.f

    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.f):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_coeffs(self, cs) -> int:
        a = 0
        for c in reversed(list(cs)):
            a = a * self.p + c
        return a

    def add(self, a: int, b: int) -> int:
        return self.from_coeffs((x + y) % self.p for x, y in zip(self.coeffs(a), self.coeffs(b)))

    def mul(self, a: int, b: int) -> int:
        return _raw_mul(a, b, self.p, self.f, self.modulus)

    @cached_property
    def _exp(self) -> list[int]:
        g = self.primitive_element
        out = [1]
        for _ in range(self.q - 2):
            out.append(self.mul(out[-1], g))
        return out

    def power_of_primitive(self, e: int) -> int:
        return self._exp[e % (self.q - 1)]

    @cached_property
    def additive_group(self) -> AbelianGroup:
        return AbelianGroup((self.p,) * self.f)

    def to_group(self, a: int) -> GroupElement:
        """Coefficient vector (low degree first) as an element of Z_p^f."""
        return tuple(self.coeffs(a))


def _raw_mul(a: int, b: int, p: int, f: int, modulus: tuple[int, ...]) -> int:
    def coeffs(x):
        out = []
        for _ in range(f):
            x, r = divmod(x, p)
            out.append(r)
        return out

    ca, cb = coeffs(a), coeffs(b)
    prod = [0] * (2 * f - 1)
    for i, x in enumerate(ca):
        if x:
            for j, y in enumerate(cb):
                prod[i + j] += x * y
    m = list(reversed(modulus))
    r = _poly_mod(prod, m, p) if f > 1 else [prod[0] % p]
    out = 0
    for c in reversed(r):
        out = out * p + c
    return out


def make_field(p: int, f: int) -> FiniteField:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f < 1:
        raise ValueError(f"degree must be >= 1, got {f}")
    modulus = least_irreducible(p, f)
    q = p**f
    for g in range(1, q):
        x, order = g, 1
        while x != 1:
            x = _raw_mul(x, g, p, f, modulus)
            order += 1
        if order == q - 1:
            return FiniteField(p, f, modulus, g)
    raise AssertionError("multiplicative group has no generator")


@dataclass(frozen=True)
class CyclotomicClassSet:
    field: FiniteField
    ord_e: int
    classes: tuple[frozenset[int], ...]

    @property
    def class_size(self) -> int:
        return (self.field.q - 1) // self.ord_e

    def union(self, indices) -> PdsCandidate:
        F = self.field
        els = frozenset(F.to_group(a) for i in indices for a in self.classes[i])
        return PdsCandidate(F.additive_group, els)


def cyclotomic_classes(p: int, f: int, ord_e: int) -> CyclotomicClassSet:
    q = p**f
    if ord_e < 1 or (q - 1) % ord_e:
        raise ValueError(f"cyclotomy order {ord_e} does not divide {q - 1}")
    F = make_field(p, f)
    size = (q - 1) // ord_e
    classes = tuple(
        frozenset(F.power_of_primitive(ord_e * j + i) for j in range(size)) for i in range(ord_e)
    )
    return CyclotomicClassSet(F, ord_e, classes)


def find_cyclotomic_pds(classes: CyclotomicClassSet, target: PdsParams) -> list[tuple[int, ...]]:
    """Every union of classes (as index tuples, lexicographic) that is a PDS with the target parameters."""
    size = classes.class_size
    if target.v != classes.field.q or target.k % size:
        return []
    r = target.k // size
    found = []
    for idx in combinations(range(classes.ord_e), r):
        try:
            check = verify_pds(classes.union(idx))
        except NotAPds:
            continue
        if check.params == target:
            found.append(idx)
    return found

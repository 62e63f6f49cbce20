"""Sub-PDS reduction and the three nonexistence tests.

For a subgroup N of G with gcd(|N|, |G|/|N|) = 1 and |G|/|N| odd, a regular
PDS D with square Delta intersects N in a regular PDS whose parameters are
fixed up to the sign of a square root.  Each admissible N gives a reduction;
from it

* T1: the discriminant d must be a perfect square,
* T2: a Sylow-type N (or quotient) forces p-1 | k1 (or p-1 | k-k1),
* T3: the coset variance of |Nh ∩ D| must be non-negative.

A case is excluded when some admissible N kills every k1 branch.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from math import gcd

from rigidpg.numth import FactoredInteger, factorize, integer_sqrt
from rigidpg.params import CandidateRow, GeometryParams, PdsParams, derive_pds_params


class T1Status(enum.Enum):
    DeadNegative = "negative"
    DeadNonsquare = "nonsquare"
    Inconclusive = "square"

    @property
    def dead(self) -> bool:
        return self is not T1Status.Inconclusive


class BranchStatus(enum.Enum):
    DeadT2Subgroup = "DeadT2Subgroup"
    DeadT2Quotient = "DeadT2Quotient"
    DeadT3 = "DeadT3"
    Alive = "Alive"

    @property
    def dead(self) -> bool:
        return self is not BranchStatus.Alive


class Verdict(enum.Enum):
    ExcludedT1 = "ExcludedT1"
    ExcludedT2 = "ExcludedT2"
    ExcludedT3 = "ExcludedT3"
    ExcludedMixed = "ExcludedMixed"
    Open = "Open"

    @property
    def excluded(self) -> bool:
        return self is not Verdict.Open


@dataclass(frozen=True, order=True)
class SubgroupChoice:
    order: int
    order_factored: FactoredInteger = field(compare=False)
    quotient_order: int = field(compare=False)

    def __post_init__(self):
        if gcd(self.order, self.quotient_order) != 1 or self.quotient_order % 2 == 0:
            raise ValueError(f"inadmissible subgroup order {self.order} (quotient {self.quotient_order})")
        if self.order <= 1 or self.quotient_order <= 1:
            raise ValueError(f"subgroup order {self.order} is not proper and nontrivial")

    def label(self) -> str:
        primes = self.order_factored.primes
        if len(primes) == 1:
            return f"Sylow-{primes[0]}"
        return "Hall-{" + ",".join(map(str, primes)) + "}"


@dataclass(frozen=True)
class SubPdsReduction:
    subgroup: SubgroupChoice
    pi: int
    theta: int
    beta1: int
    Delta1: int
    discriminant: int
    k1_candidates: tuple[int, ...]

    def lambda1(self, k1: int) -> int:
        return self.beta1 + self.mu1(k1)

    def mu1(self, k1: int) -> int:
        # reduce_sub_pds only admits roots when 4 divides Delta1 - beta1^2
        return k1 - (self.Delta1 - self.beta1**2) // 4


@dataclass(frozen=True)
class BranchVerdict:
    k1: int
    status: BranchStatus
    var_value: int | None = None
    divisibility_witness: tuple[int, int] | None = None


@dataclass(frozen=True)
class SubgroupOutcome:
    reduction: SubPdsReduction
    branches: tuple[BranchVerdict, ...]
    t1_status: T1Status

    @property
    def killed(self) -> bool:
        return self.t1_status.dead or all(b.status.dead for b in self.branches)

    @property
    def no_admissible_root(self) -> bool:
        return not self.t1_status.dead and not self.branches

    @property
    def technique(self) -> Verdict | None:
        """Which exclusion this subgroup delivers on its own, if any."""
        if not self.killed:
            return None
        if self.t1_status.dead or self.no_admissible_root:
            return Verdict.ExcludedT1
        kinds = {_TECHNIQUE[b.status] for b in self.branches}
        return kinds.pop() if len(kinds) == 1 else Verdict.ExcludedMixed

    @property
    def alive_k1(self) -> tuple[int, ...]:
        return tuple(sorted(b.k1 for b in self.branches if not b.status.dead))


_TECHNIQUE = {
    BranchStatus.DeadT2Subgroup: Verdict.ExcludedT2,
    BranchStatus.DeadT2Quotient: Verdict.ExcludedT2,
    BranchStatus.DeadT3: Verdict.ExcludedT3,
}

# preference when several subgroups kill the case independently
_PRIORITY = [Verdict.ExcludedT1, Verdict.ExcludedT2, Verdict.ExcludedT3, Verdict.ExcludedMixed]


@dataclass(frozen=True)
class CaseReport:
    row: CandidateRow
    per_subgroup: dict[SubgroupChoice, SubgroupOutcome]
    verdict: Verdict
    structural_facts: tuple[str, ...]

    @property
    def killing_subgroups(self) -> list[SubgroupChoice]:
        return [n for n, o in self.per_subgroup.items() if o.technique is self.verdict]


def admissible_subgroup_orders(v_factored: FactoredInteger) -> list[SubgroupChoice]:
    facs = v_factored.factors
    out = []
    for r in range(1, len(facs)):
        for chosen in itertools.combinations(facs, r):
            order = 1
            for p, e in chosen:
                order *= p**e
            quot = v_factored.value // order
            if quot % 2 == 0:
                continue
            out.append(SubgroupChoice(order, FactoredInteger(order, chosen), quot))
    return sorted(out)


def reduce_sub_pds(pds: PdsParams, subgroup: SubgroupChoice) -> SubPdsReduction:
    delta = pds.delta
    if delta is None:
        raise ValueError(f"Delta = {pds.Delta} is not a perfect square")
    n = subgroup.order
    pi = gcd(n, delta)
    theta = (pds.beta + pi) // (2 * pi)  # floor, not truncation: theta < 0 throughout
    beta1 = pds.beta - 2 * theta * pi
    Delta1 = pi * pi
    d = (n + beta1) ** 2 - (Delta1 - beta1**2) * (n - 1)
    cands: list[int] = []
    # mu1 = k1 - (Delta1 - beta1^2)/4 must be integral, else no sub-PDS exists
    if d >= 0 and (Delta1 - beta1 * beta1) % 4 == 0:
        root, exact = integer_sqrt(d)
        if exact and (n + beta1 + root) % 2 == 0:
            for num in (n + beta1 + root, n + beta1 - root):
                k1 = num // 2
                if 0 <= k1 <= n - 1 and k1 not in cands:
                    cands.append(k1)
    return SubPdsReduction(subgroup, pi, theta, beta1, Delta1, d, tuple(cands))


def check_t1(reduction: SubPdsReduction) -> T1Status:
    d = reduction.discriminant
    if d < 0:
        return T1Status.DeadNegative
    if not integer_sqrt(d)[1]:
        return T1Status.DeadNonsquare
    return T1Status.Inconclusive


def check_t2(reduction: SubPdsReduction, pds: PdsParams, k1: int) -> BranchVerdict:
    sub = reduction.subgroup
    if sub.order_factored.is_prime_power():
        p = sub.order_factored.primes[0]
        if k1 % (p - 1):
            return BranchVerdict(k1, BranchStatus.DeadT2Subgroup, divisibility_witness=(p, k1))
    quot = factorize(sub.quotient_order)
    if quot.is_prime_power():
        p = quot.primes[0]
        if (pds.k - k1) % (p - 1):
            return BranchVerdict(k1, BranchStatus.DeadT2Quotient, divisibility_witness=(p, pds.k - k1))
    return BranchVerdict(k1, BranchStatus.Alive)


def coset_sums(pds: PdsParams, order: int, k1: int) -> tuple[int, int, int]:
    """(number of nontrivial cosets, sum B_i, sum B_i^2) forced by the PDS counts.

    Valid for any subgroup of the given order meeting D in k1 elements.
    """
    n_c = pds.v // order - 1
    s1 = pds.k - k1
    s2 = k1 * pds.lam + (order - 1 - k1) * pds.mu - k1 * (k1 - 1) + s1
    return n_c, s1, s2


def coset_variance(pds: PdsParams, order: int, k1: int) -> int:
    n_c, s1, s2 = coset_sums(pds, order, k1)
    return n_c * s2 - s1 * s1


def check_t3(pds: PdsParams, subgroup: SubgroupChoice, k1: int) -> tuple[int, bool]:
    var = coset_variance(pds, subgroup.order, k1)
    return var, var < 0


def evaluate_subgroup(pds: PdsParams, subgroup: SubgroupChoice) -> SubgroupOutcome:
    red = reduce_sub_pds(pds, subgroup)
    t1 = check_t1(red)
    branches = []
    if not t1.dead:
        for k1 in red.k1_candidates:
            b = check_t2(red, pds, k1)
            var, dead = check_t3(pds, subgroup, k1)
            if b.status is BranchStatus.Alive and dead:
                b = BranchVerdict(k1, BranchStatus.DeadT3, var_value=var)
            else:
                b = BranchVerdict(k1, b.status, var_value=var, divisibility_witness=b.divisibility_witness)
            branches.append(b)
    return SubgroupOutcome(red, tuple(branches), t1)


def _fact(sub: SubgroupChoice, outcome: SubgroupOutcome) -> str:
    alive = outcome.alive_k1
    if len(alive) == 1:
        return f"{sub.label()}: k1={alive[0]}"
    return f"{sub.label()}: k1 in {{{','.join(map(str, alive))}}}"


def sieve_case(row: CandidateRow) -> CaseReport:
    per = {sub: evaluate_subgroup(row.pds, sub) for sub in admissible_subgroup_orders(row.v_factored)}
    techniques = {o.technique for o in per.values()} - {None}
    verdict = next((v for v in _PRIORITY if v in techniques), Verdict.Open)
    facts = []
    if verdict is Verdict.Open:
        facts = [_fact(sub, o) for sub, o in per.items()]
    else:
        facts = [f"{sub.label()}: no admissible k1 root" for sub, o in per.items() if o.no_admissible_root]
    return CaseReport(row, per, verdict, tuple(facts))


# -- the family alpha = 2^n + 1 ------------------------------------------------


@dataclass(frozen=True)
class FamilyInstance:
    n: int
    alpha: int
    m: int
    r: int
    pds: PdsParams

    @property
    def geometry(self) -> GeometryParams:
        a = self.alpha
        return GeometryParams(a * a + a - 1, a**3 - a - 1, a)


@dataclass(frozen=True)
class FamilyExclusion:
    instance: FamilyInstance
    reduction: SubPdsReduction
    k1_plus: int
    k1_minus: int
    var_plus: int
    var_minus: int
    closed_form_match: bool

    @property
    def excluded(self) -> bool:
        return self.var_plus < 0 and self.var_minus < 0


def family_instance(n: int) -> FamilyInstance:
    if n < 2:
        raise ValueError(f"family needs n >= 2, got {n}")
    a = 2**n + 1
    m = (a + 1) ** 2 * (a - 1)
    r = a * a - 1
    pds = PdsParams(m * m, r * (m + 1), -m + r * r + 3 * r, r * r + r)
    inst = FamilyInstance(n, a, m, r, pds)
    if derive_pds_params(inst.geometry) != pds:
        raise AssertionError(f"family n={n}: closed-form parameters disagree with the pg formulas")
    return inst


def family_var_plus_closed(n: int) -> int:
    p = 2**n
    return -(2 ** (4 * n - 4)) * (p + 2) * (7 * p - 2) * (p**3 + 15 * p**2 + 9 * 2 ** (n + 2) + 28)


def family_var_minus_closed(n: int) -> int:
    p = 2**n
    return (
        -(2 ** (2 * n - 4))
        * (p + 2)
        * (7 * p**2 - 3 * 2 ** (n + 1) - 8)
        * (p**4 + 15 * p**3 + 2 ** (2 * n + 5) + 3 * 2 ** (n + 2) - 16)
    )


def family_exclude(n: int) -> FamilyExclusion:
    inst = family_instance(n)
    order = 2 ** (2 * n + 4)
    quot = inst.pds.v // order
    sub = SubgroupChoice(order, FactoredInteger(order, ((2, 2 * n + 4),)), quot)
    red = reduce_sub_pds(inst.pds, sub)
    k1_plus = 2 ** (2 * n + 3) + 2 ** (n + 1)
    k1_minus = 2 ** (2 * n + 3) - 2 ** (n + 1)
    if set(red.k1_candidates) != {k1_plus, k1_minus}:
        raise AssertionError(f"family n={n}: unexpected k1 roots {red.k1_candidates}")
    var_plus, _ = check_t3(inst.pds, sub, k1_plus)
    var_minus, _ = check_t3(inst.pds, sub, k1_minus)
    match = var_plus == family_var_plus_closed(n) and var_minus == family_var_minus_closed(n)
    return FamilyExclusion(inst, red, k1_plus, k1_minus, var_plus, var_minus, match)

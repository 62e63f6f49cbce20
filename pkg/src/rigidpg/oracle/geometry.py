"""Line systems carried by a PDS, and the partial-geometry axioms.

If a pg has a sharply transitive abelian group G, the lines through the
identity minus the identity partition D into cliques of Cay(G, D).  We search
for such partitions by backtracking, translate the blocks around the group,
and check the axioms on the result.
"""

from __future__ import annotations

from dataclasses import dataclass

from rigidpg.oracle.groups import AbelianGroup, GroupElement, PdsCandidate


class AxiomViolation(ValueError):
    def __init__(self, axiom: str, witness):
        super().__init__(f"{axiom}: {witness}")
        self.axiom = axiom
        self.witness = witness


@dataclass(frozen=True)
class Geometry:
    group: AbelianGroup
    lines: frozenset[frozenset[GroupElement]]

    def lines_through(self, point: GroupElement) -> list[frozenset[GroupElement]]:
        return [L for L in self.lines if point in L]


@dataclass(frozen=True)
class PgMeasurement:
    s: int
    t: int
    alpha: int

    @property
    def proper(self) -> bool:
        return 0 < self.alpha < min(self.s, self.t)

    def label(self) -> str:
        return f"pg({self.s},{self.t},{self.alpha})"


def partition_into_lines(
    candidate: PdsCandidate, line_size: int, *, limit: int | None = None
) -> list[tuple[frozenset[GroupElement], ...]]:
    """Partitions of D into blocks of ``line_size - 1`` pairwise adjacent elements.

    Adjacency is that of Cay(G, D).  Blocks are chosen around the least
    uncovered element, so each partition is produced once.  ``limit`` caps
    the number returned (``limit=1`` for first-only).
    """
    group = candidate.group
    b = line_size - 1
    if b < 1 or candidate.k % b:
        raise ValueError(f"block size {b} does not divide |D| = {candidate.k}")
    idx = candidate.indices()
    in_d = set(idx)
    adj = {a: {c for c in idx if c != a and group.index(group.sub(group.element(a), group.element(c))) in in_d} for a in idx}
    out: list[tuple[frozenset[int], ...]] = []

    def cliques(chosen: list[int], pool: list[int]):
        if len(chosen) == b:
            yield chosen
            return
        for i, c in enumerate(pool):
            yield from cliques(chosen + [c], [d for d in pool[i + 1 :] if d in adj[c]])

    def search(uncovered: list[int], blocks: list[frozenset[int]]) -> bool:
        if not uncovered:
            out.append(tuple(blocks))
            return limit is not None and len(out) >= limit
        pivot = uncovered[0]
        pool = [c for c in uncovered[1:] if c in adj[pivot]]
        for block in cliques([pivot], pool):
            taken = set(block)
            if search([u for u in uncovered if u not in taken], blocks + [frozenset(block)]):
                return True
        return False

    search(idx, [])
    return [tuple(frozenset(group.element(i) for i in blk) for blk in part) for part in out]


def build_geometry(candidate: PdsCandidate, blocks) -> Geometry:
    group = candidate.group
    covered = [g for blk in blocks for g in blk]
    if len(covered) != len(set(covered)) or set(covered) != set(candidate.elements):
        raise ValueError("blocks do not partition D")
    lines = set()
    for blk in blocks:
        base = [group.identity] + sorted(blk)
        for g in group.elements():
            lines.add(frozenset(group.add(g, p) for p in base))
    return Geometry(group, frozenset(lines))


def check_pg_axioms(geometry: Geometry) -> PgMeasurement:
    lines = sorted(geometry.lines, key=sorted)
    points = geometry.group.elements()
    if not lines:
        raise AxiomViolation("no lines", None)
    size = len(lines[0])
    for L in lines:
        if len(L) != size:
            raise AxiomViolation("line size not constant", sorted(L))
    through: dict[GroupElement, list[int]] = {p: [] for p in points}
    for i, L in enumerate(lines):
        for p in L:
            through[p].append(i)
    degree = len(through[points[0]])
    for p in points:
        if len(through[p]) != degree:
            raise AxiomViolation("point degree not constant", p)
    for p in points:
        ls = through[p]
        for a in range(len(ls)):
            for b in range(a + 1, len(ls)):
                common = lines[ls[a]] & lines[ls[b]]
                if len(common) > 1:
                    raise AxiomViolation("two lines share more than one point", (sorted(lines[ls[a]]), sorted(lines[ls[b]])))
    alpha = None
    for L in lines:
        for p in points:
            if p in L:
                continue
            n = sum(1 for i in through[p] if lines[i] & L)
            if alpha is None:
                alpha = n
            elif n != alpha:
                raise AxiomViolation("alpha not constant over anti-flags", (p, sorted(L), n, alpha))
    return PgMeasurement(size - 1, degree - 1, alpha if alpha is not None else 0)


def check_rigid(geometry: Geometry) -> bool:
    """True iff no non-identity translation fixes a line."""
    group = geometry.group
    e = group.identity
    for L in geometry.lines:
        pts = sorted(L)
        # a stabilizing g maps pts[0] into L, so g is one of the differences q - pts[0]
        for q in pts[1:]:
            g = group.sub(q, pts[0])
            if g != e and frozenset(group.add(g, p) for p in L) == L:
                return False
    return True


def pds_from_geometry(geometry: Geometry) -> PdsCandidate:
    e = geometry.group.identity
    els = set()
    for L in geometry.lines_through(e):
        els |= L
    els.discard(e)
    return PdsCandidate(geometry.group, frozenset(els))

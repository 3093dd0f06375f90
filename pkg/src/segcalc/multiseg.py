"""Multisegments: finite multisets of segments kept in canonical order."""

from __future__ import annotations

from collections import Counter, deque
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .cusp import CuspContext, CuspPoint
from .errors import ExplicitlyTooLarge
from .segment import Segment, expo_seg, intersection, linked, tilde_seg, union

ZELEVINSKY_MAX_SIZE = 12


class Multisegment:
    """Immutable multiset of segments, stored sorted; hashes are cached."""

    __slots__ = ("segs", "_hash")

    def __init__(self, segs: Iterable[Segment] = ()):
        object.__setattr__(self, "segs", tuple(sorted(segs)))
        object.__setattr__(self, "_hash", hash(self.segs))

    def __setattr__(self, name, value):
        raise AttributeError("Multisegment is immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Multisegment):
            return NotImplemented
        return self._hash == other._hash and self.segs == other.segs

    def __lt__(self, other: "Multisegment") -> bool:
        return self.segs < other.segs

    def __le__(self, other: "Multisegment") -> bool:
        return self.segs <= other.segs

    def __gt__(self, other: "Multisegment") -> bool:
        return self.segs > other.segs

    def __ge__(self, other: "Multisegment") -> bool:
        return self.segs >= other.segs

    def __repr__(self) -> str:
        return f"Multisegment({self})"

    def __reduce__(self):
        return Multisegment, (self.segs,)

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.segs)

    def __len__(self) -> int:
        return len(self.segs)

    def __bool__(self) -> bool:
        return bool(self.segs)

    def __add__(self, other: "Multisegment") -> "Multisegment":
        return Multisegment(self.segs + other.segs)

    def __str__(self) -> str:
        return " + ".join(map(str, self.segs)) if self.segs else "0"

    @property
    def lines(self) -> tuple[str, ...]:
        return tuple(sorted({s.line for s in self.segs}))

    def size(self) -> int:
        """Number of cuspidal points counted with multiplicity."""
        return sum(len(s) for s in self.segs)

    def degree(self, ctx: CuspContext) -> int:
        return sum(len(s) * ctx.line(s.line).deg for s in self.segs)

    def support(self) -> frozenset[CuspPoint]:
        return frozenset(p for s in self.segs for p in s.points())

    def data(self) -> Counter:
        """Cuspidal support counted with multiplicity."""
        return Counter(p for s in self.segs for p in s.points())

    def count(self, seg: Segment) -> int:
        return self.segs.count(seg)

    def replace(self, old: Iterable[Segment], new: Iterable[Optional[Segment]]) -> "Multisegment":
        """Remove one copy of each segment in ``old`` and add the non-empty ones in ``new``."""
        segs = list(self.segs)
        for s in old:
            segs.remove(s)
        segs.extend(s for s in new if s is not None)
        return Multisegment(segs)

    def on_line(self, line: str) -> "Multisegment":
        return Multisegment(s for s in self.segs if s.line == line)


def mseg(*segs: Segment) -> Multisegment:
    return Multisegment(segs)


def tilde_multi(ctx: CuspContext, m: Multisegment) -> Multisegment:
    return Multisegment(tilde_seg(ctx, s) for s in m)


def split_by_sign(ctx: CuspContext, m: Multisegment) -> tuple[Multisegment, Multisegment, Multisegment]:
    pos, zero, neg = [], [], []
    for s in m:
        x = expo_seg(ctx, s)
        (pos if x > 0 else zero if x == 0 else neg).append(s)
    return Multisegment(pos), Multisegment(zero), Multisegment(neg)


def positive_part(ctx: CuspContext, m: Multisegment) -> Multisegment:
    return split_by_sign(ctx, m)[0]


def nonpositive_part(ctx: CuspContext, m: Multisegment) -> Multisegment:
    _, zero, neg = split_by_sign(ctx, m)
    return zero + neg


def pstv(ctx: CuspContext, s: Segment) -> Segment:
    return s if expo_seg(ctx, s) >= 0 else tilde_seg(ctx, s)


def pstv_multi(ctx: CuspContext, m: Multisegment) -> Multisegment:
    return Multisegment(pstv(ctx, s) for s in m)


def is_ladder(m: Multisegment) -> bool:
    if len(m.lines) > 1:
        return False
    segs = m.segs  # canonical order sorts by b, then e
    return all(a.b < c.b and a.e < c.e for a, c in zip(segs, segs[1:]))


def pairwise_unlinked(m: Multisegment) -> bool:
    segs = m.segs
    return not any(linked(segs[i], segs[j]) for i in range(len(segs)) for j in range(i + 1, len(segs)))


def linkage_components(m: Multisegment) -> list[Multisegment]:
    """Split ``m`` into the connected components of the linkage graph."""
    segs = m.segs
    parent = list(range(len(segs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if linked(segs[i], segs[j]):
                parent[find(i)] = find(j)
    groups: dict[int, list[Segment]] = {}
    for i, s in enumerate(segs):
        groups.setdefault(find(i), []).append(s)
    return sorted(Multisegment(g) for g in groups.values())


def line_factorization(ctx: CuspContext, m: Multisegment) -> list[tuple[tuple[str, ...], Multisegment]]:
    """Group segments by tilde-orbit of lines (a paired line joins its partner)."""
    groups: dict[tuple[str, ...], list[Segment]] = {}
    for s in m:
        groups.setdefault(ctx.orbit_key(s.line), []).append(s)
    return [(key, Multisegment(groups[key])) for key in sorted(groups)]


def elementary_moves(m: Multisegment) -> Iterator[Multisegment]:
    """All multisegments obtained by one union/intersection move on a linked pair."""
    seen = set()
    segs = m.segs
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            a, c = segs[i], segs[j]
            if (a, c) in seen or not linked(a, c):
                continue
            seen.add((a, c))
            yield m.replace([a, c], [union(a, c), intersection(a, c)])


def zelevinsky_leq(m1: Multisegment, m2: Multisegment) -> bool:
    """Whether ``m1`` is reachable from ``m2`` by elementary linked-pair moves."""
    if m1.data() != m2.data():
        return False
    if m2.size() > ZELEVINSKY_MAX_SIZE:
        raise ExplicitlyTooLarge(f"support of size {m2.size()} exceeds {ZELEVINSKY_MAX_SIZE}")
    if m1 == m2:
        return True
    seen = {m2}
    queue = deque([m2])
    while queue:
        cur = queue.popleft()
        for nxt in elementary_moves(cur):
            if nxt == m1:
                return True
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def seg_to_L(s: Segment) -> Multisegment:
    """The Langlands class of a segment written on the Zelevinsky side: all its singletons."""
    return Multisegment(Segment.point(s.line, n) for n in range(s.b, s.e + 1))


def expo_multi(ctx: CuspContext, m: Multisegment) -> Fraction:
    """Degree-weighted mean exponent; zero for the empty multisegment."""
    total = m.degree(ctx)
    if total == 0:
        return Fraction(0)
    return sum((expo_seg(ctx, s) * len(s) * ctx.line(s.line).deg for s in m), Fraction(0)) / total

"""Segments ``[r[b], r[e]]`` on a cuspidal line and the linkage relation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .cusp import CuspContext, CuspPoint, tilde_index
from .errors import InvalidSegment, NotCombinable


@dataclass(frozen=True, order=True, slots=True)
class Segment:
    line: str
    b: int
    e: int

    def __post_init__(self):
        if self.e < self.b:
            raise InvalidSegment(f"segment on {self.line!r} with e={self.e} < b={self.b}")

    @classmethod
    def point(cls, line: str, n: int) -> "Segment":
        return cls(line, n, n)

    def __len__(self) -> int:
        return self.e - self.b + 1

    def __contains__(self, p: object) -> bool:
        return isinstance(p, CuspPoint) and p.line == self.line and self.b <= p.index <= self.e

    @property
    def begin(self) -> CuspPoint:
        return CuspPoint(self.line, self.b)

    @property
    def end(self) -> CuspPoint:
        return CuspPoint(self.line, self.e)

    def points(self) -> list[CuspPoint]:
        return [CuspPoint(self.line, n) for n in range(self.b, self.e + 1)]

    def lshrink(self) -> Optional["Segment"]:
        """Drop the first point; ``None`` for a singleton."""
        return Segment(self.line, self.b + 1, self.e) if self.e > self.b else None

    def minus(self) -> Optional["Segment"]:
        """Drop the last point; ``None`` for a singleton."""
        return Segment(self.line, self.b, self.e - 1) if self.e > self.b else None

    def lextend(self) -> "Segment":
        return Segment(self.line, self.b - 1, self.e)

    def plus(self) -> "Segment":
        return Segment(self.line, self.b, self.e + 1)

    def shift(self, k: int) -> "Segment":
        return Segment(self.line, self.b + k, self.e + k)

    def __str__(self) -> str:
        return f"[{self.line}[{self.b}],{self.line}[{self.e}]]"


def interval(line: str, b: int, e: int) -> Optional[Segment]:
    """``[b, e]`` as a segment, or ``None`` when ``e == b - 1`` (the empty segment)."""
    if e == b - 1:
        return None
    return Segment(line, b, e)


class SegmentData(NamedTuple):
    length: int
    deg: int
    b: CuspPoint
    e: CuspPoint
    lshrink: Optional[Segment]
    minus: Optional[Segment]
    lextend: Segment
    plus: Segment
    shift_left: Segment
    shift_right: Segment


def seg_basic(ctx: CuspContext, seg: Segment) -> SegmentData:
    return SegmentData(
        length=len(seg),
        deg=len(seg) * ctx.line(seg.line).deg,
        b=seg.begin,
        e=seg.end,
        lshrink=seg.lshrink(),
        minus=seg.minus(),
        lextend=seg.lextend(),
        plus=seg.plus(),
        shift_left=seg.shift(-1),
        shift_right=seg.shift(1),
    )


def expo_seg(ctx: CuspContext, seg: Segment) -> Fraction:
    # midpoint of the endpoint exponents
    return ctx.line(seg.line).expo0 + Fraction(seg.b + seg.e, 2)


def tilde_seg(ctx: CuspContext, seg: Segment) -> Segment:
    line, b = tilde_index(ctx, seg.line, seg.e)
    _, e = tilde_index(ctx, seg.line, seg.b)
    return Segment(line, b, e)


def precedes(s1: Segment, s2: Segment) -> bool:
    """``s1 < s2`` in the linkage sense: s2 starts strictly later, ends strictly
    later, and the two overlap or abut."""
    return s1.line == s2.line and s1.b < s2.b <= s1.e + 1 and s1.e < s2.e


def linked(s1: Segment, s2: Segment) -> bool:
    return precedes(s1, s2) or precedes(s2, s1)


def union(s1: Segment, s2: Segment) -> Segment:
    if s1.line != s2.line or s2.b > s1.e + 1 or s1.b > s2.e + 1:
        raise NotCombinable(f"{s1} and {s2} do not form a segment")
    return Segment(s1.line, min(s1.b, s2.b), max(s1.e, s2.e))


def intersection(s1: Segment, s2: Segment) -> Optional[Segment]:
    if s1.line != s2.line:
        return None
    b, e = max(s1.b, s2.b), min(s1.e, s2.e)
    return Segment(s1.line, b, e) if b <= e else None

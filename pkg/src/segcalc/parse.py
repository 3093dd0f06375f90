"""Text grammar for points, segments and multisegments.

    point := IDENT '[' INT ']'
    seg   := '[' point ',' point ']'
    mseg  := seg ('+' seg)* | '0' | '∅'

Whitespace is free between tokens.  Errors carry 1-based line and column.
"""

from __future__ import annotations

import re
from typing import Optional

from .cusp import CuspContext, CuspPoint
from .errors import QuerySyntaxError
from .multiseg import Multisegment
from .segment import Segment

_TOKEN = re.compile(r"\s*(?:(?P<int>[+-]?\d+(?![\w]))|(?P<ident>[A-Za-z_]\w*)|(?P<sym>[\[\],+∅]))")


class _Scanner:
    def __init__(self, text: str, ctx: Optional[CuspContext]):
        self.text = text
        self.pos = 0
        self.ctx = ctx

    def where(self, pos: Optional[int] = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        before = self.text[:pos]
        line = before.count("\n") + 1
        col = pos - (before.rfind("\n") + 1) + 1
        return line, col

    def fail(self, message: str, pos: Optional[int] = None):
        raise QuerySyntaxError(message, *self.where(pos))

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> Optional[tuple[str, str, int]]:
        self.skip_ws()
        if self.pos >= len(self.text):
            return None
        mt = _TOKEN.match(self.text, self.pos)
        if not mt:
            self.fail(f"unexpected character {self.text[self.pos]!r}")
        kind = mt.lastgroup
        return kind, mt.group(kind), mt.start(kind)

    def take(self, kind: str, value: Optional[str] = None) -> str:
        tok = self.peek()
        want = value or kind
        if tok is None:
            self.fail(f"expected {want!r}, got end of input")
        k, v, start = tok
        # a bare '+' before a number is a sign, not a separator
        if k == "int" and kind == "sym" and value == "+" and v.startswith("+"):
            self.pos = start + 1
            return "+"
        if k != kind or (value is not None and v != value):
            self.fail(f"expected {want!r}, got {v!r}", start)
        self.pos = start + len(v)
        return v

    def at_end(self) -> bool:
        return self.peek() is None

    def point(self) -> tuple[CuspPoint, int]:
        tok = self.peek()
        start = tok[2] if tok else self.pos
        name = self.take("ident")
        if self.ctx is not None and name not in self.ctx:
            self.ctx.line(name)
        self.take("sym", "[")
        n = int(self.take("int"))
        self.take("sym", "]")
        return CuspPoint(name, n), start

    def segment(self) -> Segment:
        tok = self.peek()
        start = tok[2] if tok else self.pos
        self.take("sym", "[")
        p, _ = self.point()
        self.take("sym", ",")
        q, qpos = self.point()
        self.take("sym", "]")
        if p.line != q.line:
            self.fail(f"segment endpoints on different lines {p.line!r} and {q.line!r}", qpos)
        if q.index < p.index:
            self.fail(f"segment end {q} precedes its beginning {p}", start)
        return Segment(p.line, p.index, q.index)

    def multisegment(self) -> Multisegment:
        tok = self.peek()
        if tok is None:
            self.fail("empty input; write 0 for the empty multisegment")
        if tok[1] in ("0", "∅"):
            self.take(tok[0])
            return Multisegment()
        segs = [self.segment()]
        while not self.at_end():
            self.take("sym", "+")
            segs.append(self.segment())
        return Multisegment(segs)

    def finish(self) -> None:
        tok = self.peek()
        if tok is not None:
            self.fail(f"unexpected trailing {tok[1]!r}", tok[2])


def parse_point(text: str, ctx: Optional[CuspContext] = None) -> CuspPoint:
    sc = _Scanner(text, ctx)
    p, _ = sc.point()
    sc.finish()
    return p


def parse_segment(text: str, ctx: Optional[CuspContext] = None) -> Segment:
    sc = _Scanner(text, ctx)
    s = sc.segment()
    sc.finish()
    return s


def parse_multisegment(text: str, ctx: Optional[CuspContext] = None) -> Multisegment:
    """Parse a multisegment; with ``ctx`` given, unknown line names raise ``UnknownLine``."""
    sc = _Scanner(text, ctx)
    m = sc.multisegment()
    sc.finish()
    return m


def parse_points(text: str, ctx: Optional[CuspContext] = None) -> frozenset[CuspPoint]:
    """Comma-separated points, possibly empty."""
    if not text.strip():
        return frozenset()
    sc = _Scanner(text, ctx)
    pts = [sc.point()[0]]
    while not sc.at_end():
        sc.take("sym", ",")
        pts.append(sc.point()[0])
    return frozenset(pts)


def parse_window(text: str) -> tuple[int, int]:
    mt = re.fullmatch(r"\s*([+-]?\d+)\s*\.\.\s*([+-]?\d+)\s*", text)
    if not mt:
        raise QuerySyntaxError(f"window must look like a..b, got {text!r}")
    lo, hi = int(mt.group(1)), int(mt.group(2))
    if hi < lo:
        raise QuerySyntaxError(f"empty window {text!r}", 1, mt.start(2) + 1)
    return lo, hi

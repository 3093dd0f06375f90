"""Cuspidal lines, lattice points on them, exponents and the tilde involution.

A line is a copy of the integers: the point ``r[n]`` stands for the twist of a
fixed cuspidal representation by ``|det|^n``.  Each line either is carried to
itself by the tilde involution (``n -> t0 - n``) or is exchanged with a partner
line (``n -> c - n`` on the partner).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import (
    BadExponentOffset,
    BrokenPairing,
    CuspredOnNonSelfDualLine,
    MultipleReducibilityOrbits,
    UnknownLine,
)


@dataclass(frozen=True, slots=True)
class SelfDual:
    t0: int


@dataclass(frozen=True, slots=True)
class Paired:
    partner: str
    c: int


TildeKind = Union[SelfDual, Paired]


@dataclass(frozen=True, slots=True)
class CuspLine:
    name: str
    deg: int
    tilde: TildeKind
    expo0: Fraction

    @classmethod
    def self_dual(cls, name: str, t0: int = 0, deg: int = 1) -> "CuspLine":
        """Line with the exponent offset derived from ``t0``."""
        return cls(name, deg, SelfDual(t0), Fraction(-t0, 2))

    @property
    def is_self_dual(self) -> bool:
        return isinstance(self.tilde, SelfDual)


@dataclass(frozen=True, order=True, slots=True)
class CuspPoint:
    line: str
    index: int

    def shift(self, k: int) -> "CuspPoint":
        return CuspPoint(self.line, self.index + k)

    def __str__(self) -> str:
        return f"{self.line}[{self.index}]"


@dataclass(frozen=True)
class CuspContext:
    lines: Mapping[str, CuspLine] = field(default_factory=dict)

    @classmethod
    def of(cls, *lines: CuspLine) -> "CuspContext":
        return cls({ln.name: ln for ln in lines})

    def line(self, name: str) -> CuspLine:
        try:
            return self.lines[name]
        except KeyError:
            raise UnknownLine(f"unknown cuspidal line {name!r}") from None

    def __contains__(self, name: object) -> bool:
        return name in self.lines

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(tuple(sorted(self.lines.items()))))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CuspContext) and dict(self.lines) == dict(other.lines)

    def tilde_line(self, name: str) -> str:
        t = self.line(name).tilde
        return name if isinstance(t, SelfDual) else t.partner

    def orbit_key(self, name: str) -> tuple[str, ...]:
        """Names of the lines in the tilde-orbit of ``name``, sorted."""
        return tuple(sorted({name, self.tilde_line(name)}))


def expo_point(ctx: CuspContext, p: CuspPoint) -> Fraction:
    return ctx.line(p.line).expo0 + p.index


def tilde_index(ctx: CuspContext, line: str, n: int) -> tuple[str, int]:
    t = ctx.line(line).tilde
    if isinstance(t, SelfDual):
        return line, t.t0 - n
    return t.partner, t.c - n


def tilde_point(ctx: CuspContext, p: CuspPoint) -> CuspPoint:
    line, n = tilde_index(ctx, p.line, p.index)
    return CuspPoint(line, n)


def check_lines(ctx: CuspContext) -> None:
    """Check the per-line invariants and the closure of the pairing."""
    for name, ln in ctx.lines.items():
        if ln.name != name:
            raise UnknownLine(f"line registered as {name!r} is named {ln.name!r}")
        if ln.deg < 1:
            raise BadExponentOffset(f"line {name!r}: degree must be positive")
        if isinstance(ln.tilde, SelfDual):
            if ln.expo0 != Fraction(-ln.tilde.t0, 2):
                raise BadExponentOffset(
                    f"line {name!r}: expo0={ln.expo0} but t0={ln.tilde.t0} forces {Fraction(-ln.tilde.t0, 2)}"
                )
            continue
        partner_name = ln.tilde.partner
        if partner_name == name:
            raise BrokenPairing(f"line {name!r} is paired with itself")
        if partner_name not in ctx.lines:
            raise BrokenPairing(f"line {name!r}: partner {partner_name!r} is not configured")
        partner = ctx.lines[partner_name]
        if not isinstance(partner.tilde, Paired) or partner.tilde.partner != name:
            raise BrokenPairing(f"pairing {name!r} <-> {partner_name!r} is not an involution")
        if partner.tilde.c != ln.tilde.c:
            raise BrokenPairing(f"pairing {name!r} <-> {partner_name!r}: offsets differ")
        if partner.deg != ln.deg:
            raise BrokenPairing(f"pairing {name!r} <-> {partner_name!r}: degrees differ")
        if partner.expo0 != -(ln.expo0 + ln.tilde.c):
            raise BadExponentOffset(
                f"pairing {name!r} <-> {partner_name!r}: expo0 values are not opposite after offset"
            )


def validate_context(ctx: CuspContext, cuspred: Iterable[CuspPoint]) -> None:
    """Raise unless ``ctx`` is well formed and ``cuspred`` is admissible for it.

    Reducibility points may only sit on self-dual lines, and each line carries
    at most one tilde-orbit of them.
    """
    check_lines(ctx)
    orbits: dict[str, set[frozenset[CuspPoint]]] = {}
    for p in cuspred:
        ln = ctx.line(p.line)
        if not ln.is_self_dual:
            raise CuspredOnNonSelfDualLine(f"{p} lies on the paired line {p.line!r}")
        orbit = frozenset({p, tilde_point(ctx, p)})
        orbits.setdefault(p.line, set()).add(orbit)
    for name, found in orbits.items():
        if len(found) > 1:
            listing = ", ".join(sorted("{" + ",".join(map(str, sorted(o))) + "}" for o in found))
            raise MultipleReducibilityOrbits(f"line {name!r} carries several orbits: {listing}")

"""Left/right reducedness, derivatives and the minimal/critical predicates.

A point ``rho`` is in ``lnrset(m)`` when the segments starting at ``rho``
cannot be injected into the segments starting at ``rho + 1`` along the
precedence relation.  Right-side notions are obtained by reflecting indices
``n -> -n`` on every line, which swaps starts with ends and reverses
precedence.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence

from .classical import SigmaContext
from .cusp import CuspContext, CuspPoint, expo_point, tilde_point
from .errors import ClassificationGap, DerivativeMismatch
from .multiseg import Multisegment
from .segment import Segment, precedes

PointSet = frozenset  # frozenset[CuspPoint]


def max_matching(left: Sequence, right: Sequence, edge: Callable[[object, object], bool]) -> int:
    """Size of a maximum matching in the bipartite graph ``edge(l, r)`` (augmenting paths)."""
    owner: list[Optional[int]] = [None] * len(right)

    def augment(i: int, seen: list[bool]) -> bool:
        for j, r in enumerate(right):
            if seen[j] or not edge(left[i], r):
                continue
            seen[j] = True
            if owner[j] is None or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    return sum(augment(i, [False] * len(right)) for i in range(len(left)))


def _starting_at(m: Multisegment, line: str, n: int) -> list[Segment]:
    return [s for s in m if s.line == line and s.b == n]


def _reflect(m: Multisegment) -> Multisegment:
    return Multisegment(Segment(s.line, -s.e, -s.b) for s in m)


def _reflect_point(p: CuspPoint) -> CuspPoint:
    return CuspPoint(p.line, -p.index)


def is_left_reduced_at(m: Multisegment, rho: CuspPoint) -> bool:
    """Whether the segments starting at ``rho`` inject into those starting at ``rho + 1``."""
    xs = _starting_at(m, rho.line, rho.index)
    if not xs:
        return True
    ys = _starting_at(m, rho.line, rho.index + 1)
    return max_matching(xs, ys, precedes) == len(xs)


def lnrset(ctx: CuspContext, m: Multisegment) -> PointSet:
    for line in m.lines:
        ctx.line(line)
    begins = {s.begin for s in m}
    return frozenset(p for p in begins if not is_left_reduced_at(m, p))


def rnrset(ctx: CuspContext, m: Multisegment) -> PointSet:
    return frozenset(_reflect_point(p) for p in lnrset(ctx, _reflect(m)))


def ladder_lnrset(m: Multisegment) -> PointSet:
    """Closed form for a ladder: starts whose left neighbour is not also a start."""
    begins = {s.begin for s in m}
    return frozenset(p for p in begins if p not in {q.shift(-1) for q in begins})


def _left_derivative(m: Multisegment, rho: CuspPoint) -> Multisegment:
    xs = sorted(_starting_at(m, rho.line, rho.index), key=lambda s: -s.e)
    free = sorted(_starting_at(m, rho.line, rho.index + 1), key=lambda s: s.e)
    truncated = []
    for x in xs:
        partner = next((y for y in free if precedes(x, y)), None)
        if partner is None:
            truncated.append(x)
        else:
            free.remove(partner)
    if not truncated:
        return m
    return m.replace(truncated, [s.lshrink() for s in truncated])


def left_derivative(ctx: CuspContext, m: Multisegment, rho: CuspPoint) -> Multisegment:
    """Highest left ``rho``-derivative.

    Segments starting at ``rho`` are matched, longest first, to the shortest
    still-free segment they precede among those starting at ``rho + 1``; the
    unmatched ones lose their first point.
    """
    ctx.line(rho.line)
    return _left_derivative(m, rho)


def right_derivative(ctx: CuspContext, m: Multisegment, rho: CuspPoint) -> Multisegment:
    ctx.line(rho.line)
    return _reflect(_left_derivative(_reflect(m), _reflect_point(rho)))


def _iterate(ctx: CuspContext, m: Multisegment, pts: Iterable[CuspPoint], step) -> Multisegment:
    pts = sorted(pts)
    while True:
        before = m
        for p in pts:
            m = step(ctx, m, p)
        if m == before:
            return m


def left_derivative_set(ctx: CuspContext, m: Multisegment, pts: Iterable[CuspPoint]) -> Multisegment:
    return _iterate(ctx, m, pts, left_derivative)


def right_derivative_set(ctx: CuspContext, m: Multisegment, pts: Iterable[CuspPoint]) -> Multisegment:
    return _iterate(ctx, m, pts, right_derivative)


def derivative_DAB(
    ctx: CuspContext, m: Multisegment, A: Iterable[CuspPoint], B: Iterable[CuspPoint]
) -> Multisegment:
    """Left derivatives over ``A`` and right derivatives over ``B``, in both orders."""
    A, B = frozenset(A), frozenset(B)
    left_first = right_derivative_set(ctx, left_derivative_set(ctx, m, A), B)
    right_first = left_derivative_set(ctx, right_derivative_set(ctx, m, B), A)
    if left_first != right_first:
        raise DerivativeMismatch(f"{m}: R∘L gives {left_first}, L∘R gives {right_first}")
    return left_first


def left_derivative_candidates(m: Multisegment, rho: CuspPoint) -> set[Multisegment]:
    """Results of truncating the unmatched part of *every* maximum matching.

    Used to report inputs where the choice of maximum matching changes the
    resulting multisegment.
    """
    xs = _starting_at(m, rho.line, rho.index)
    ys = _starting_at(m, rho.line, rho.index + 1)
    best = max_matching(xs, ys, precedes)
    out = set()
    for kept in combinations(range(len(xs)), best):
        chosen = [xs[i] for i in kept]
        if max_matching(chosen, ys, precedes) == best:
            dropped = [xs[i] for i in range(len(xs)) if i not in kept]
            out.add(m.replace(dropped, [s.lshrink() for s in dropped]))
    return out


def is_minimal(ctx: CuspContext, sigma: SigmaContext, m: Multisegment) -> bool:
    return (lnrset(ctx, m) | rnrset(ctx, m)) <= sigma.cuspred


def is_critical(ctx: CuspContext, sigma: SigmaContext, m: Multisegment) -> bool:
    if not m or not is_minimal(ctx, sigma, m):
        return False
    for rho in sigma.cuspred:
        d = derivative_DAB(ctx, m, {rho}, {tilde_point(ctx, rho)})
        if d != m and d.support() & sigma.cuspred:
            return False
    return True


@dataclass(frozen=True)
class CriticalType:
    """Pattern instantiated by a critical multisegment.

    ``kind`` is one of ``"AlphaPowers"`` (``k`` copies of alpha, ``l`` of its
    tilde), ``"ZPower"`` (``k`` copies of ``[tilde alpha, alpha]``),
    ``"LPower"`` (``k`` copies of every point of that segment) and
    ``"SelfDualMixed"`` (``k`` copies of alpha and ``l`` copies of
    ``[alpha, alpha+1] + [alpha-1, alpha]``).
    """

    kind: str
    alpha: CuspPoint
    k: int
    l: int = 0

    def __str__(self) -> str:
        return f"{self.kind}(alpha={self.alpha}, k={self.k}, l={self.l})"


def positive_alpha(ctx: CuspContext, sigma: SigmaContext, line: str) -> Optional[CuspPoint]:
    """The reducibility point on ``line`` with non-negative exponent, if any."""
    pts = [p for p in sigma.cuspred if p.line == line and expo_point(ctx, p) >= 0]
    return min(pts) if pts else None


def pattern_instance(ctx: CuspContext, ct: CriticalType) -> Multisegment:
    """The multisegment described by a pattern."""
    a = ct.alpha
    at = tilde_point(ctx, a)
    line = a.line
    if ct.kind == "AlphaPowers":
        return Multisegment([Segment.point(line, a.index)] * ct.k + [Segment.point(line, at.index)] * ct.l)
    if ct.kind == "ZPower":
        return Multisegment([Segment(line, at.index, a.index)] * ct.k)
    if ct.kind == "LPower":
        return Multisegment(Segment.point(line, n) for n in range(at.index, a.index + 1) for _ in range(ct.k))
    if ct.kind == "SelfDualMixed":
        pair = [Segment(line, a.index, a.index + 1), Segment(line, a.index - 1, a.index)]
        return Multisegment([Segment.point(line, a.index)] * ct.k + pair * ct.l)
    raise ValueError(f"unknown pattern {ct.kind!r}")


def critical_patterns(ctx: CuspContext, alpha: CuspPoint, max_size: int) -> dict[Multisegment, CriticalType]:
    """Every pattern instance of total size ``<= max_size``, keyed by multisegment.

    When one multisegment fits several patterns the first in the order
    AlphaPowers, ZPower, LPower, SelfDualMixed is kept.
    """
    at = tilde_point(ctx, alpha)
    span = alpha.index - at.index + 1
    cands: list[CriticalType] = []
    for k in range(max_size + 1):
        for l in range(max_size + 1 - k):
            if k + l == 0:
                continue
            if at == alpha and l:
                continue
            if at.index == alpha.index - 1 and k * l:
                continue
            cands.append(CriticalType("AlphaPowers", alpha, k, l))
    for k in range(1, max_size // span + 1):
        cands.append(CriticalType("ZPower", alpha, k))
        cands.append(CriticalType("LPower", alpha, k))
    if at == alpha:
        for l in range(1, max_size // 4 + 1):
            for k in range(max_size - 4 * l + 1):
                cands.append(CriticalType("SelfDualMixed", alpha, k, l))
    out: dict[Multisegment, CriticalType] = {}
    for ct in cands:
        out.setdefault(pattern_instance(ctx, ct), ct)
    return out


def classify_critical(ctx: CuspContext, sigma: SigmaContext, m: Multisegment) -> Optional[CriticalType]:
    """Pattern of a critical ``m``; ``None`` when ``m`` is not critical."""
    if not is_critical(ctx, sigma, m):
        return None
    if len(m.lines) != 1:
        raise ClassificationGap(f"critical {m} spans several lines; patterns are stated per line")
    alpha = positive_alpha(ctx, sigma, m.lines[0])
    if alpha is None:
        raise ClassificationGap(f"critical {m} lies on a line without reducibility points")
    found = critical_patterns(ctx, alpha, m.size()).get(m)
    if found is None:
        raise ClassificationGap(f"critical {m} matches no known pattern")
    return found

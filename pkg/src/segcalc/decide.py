"""Certificate-producing reducibility decisions for ``Z(m) ⋊ sigma``.

Each rule is a function returning ``None`` when it does not apply, or a
status with the record of how it was obtained.  :func:`decide` runs the
rules in order, stops at the first verdict and then re-runs the remaining
structural rules that also apply, refusing to answer if any of them
disagrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Optional

from .classical import SigmaContext
from .cusp import CuspContext, tilde_point
from .errors import InconsistentRules, MissingSocleHint, PreconditionViolated
from .multiseg import (
    Multisegment,
    is_ladder,
    line_factorization,
    nonpositive_part,
    pairwise_unlinked,
    positive_part,
    split_by_sign,
    tilde_multi,
)
from .segment import Segment, expo_seg, linked, precedes, tilde_seg


class Status(str, Enum):
    REDUCIBLE = "reducible"
    IRREDUCIBLE = "irreducible"
    UNKNOWN = "unknown"


R, I, U = Status.REDUCIBLE, Status.IRREDUCIBLE, Status.UNKNOWN


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    anchor: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"rule": self.rule, "anchor": self.anchor, "witness": self.witness}


@dataclass(frozen=True)
class Decision:
    status: Status
    certificate: tuple[RuleApplication, ...] = ()
    reason: str = ""

    @property
    def rule(self) -> Optional[str]:
        return self.certificate[0].rule if self.certificate else None

    def to_json(self) -> dict:
        out = {"status": self.status.value, "certificate": [c.to_json() for c in self.certificate]}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class GlProductVerdict:
    status: Status
    witness: Optional[tuple] = None


def _ladder_triple(m: Multisegment, mp: Multisegment) -> Optional[tuple[int, int, int]]:
    """Search ``(i, j, l)`` certifying that ``soc(Z(m) × Z(mp)) != Z(m + mp)``.

    Both ladders are indexed from the segment with the largest start.
    """
    d, dp = m.segs[::-1], mp.segs[::-1]
    t, tp = len(d), len(dp)
    for i in range(t):
        for j in range(tp):
            for l in range(1, min(t - i, tp - j) + 1):
                if not precedes(d[i + l - 1], dp[j + l - 1]):
                    break
                left_ok = i == 0 or not precedes(d[i - 1].shift(-1), dp[j])
                right_ok = j + l == tp or not precedes(d[i + l - 1].shift(-1), dp[j + l])
                if left_ok and right_ok:
                    return (i, j, l)
    return None


def _line_product(m1: Multisegment, m2: Multisegment) -> GlProductVerdict:
    if is_ladder(m1) and is_ladder(m2):
        for order, (a, b) in (("m1,m2", (m1, m2)), ("m2,m1", (m2, m1))):
            triple = _ladder_triple(a, b)
            if triple is not None:
                return GlProductVerdict(R, (order,) + triple)
        return GlProductVerdict(I)
    if pairwise_unlinked(m1) and pairwise_unlinked(m2):
        for s in m1:
            for s2 in m2:
                if linked(s, s2):
                    return GlProductVerdict(R, (s, s2))
        return GlProductVerdict(I)
    return GlProductVerdict(U)


def gl_irreducible_product(ctx: CuspContext, m1: Multisegment, m2: Multisegment) -> GlProductVerdict:
    """Irreducibility of ``Z(m1) × Z(m2)`` where a criterion is available."""
    for line in m1.lines + m2.lines:
        ctx.line(line)
    if not m1 or not m2:
        return GlProductVerdict(I)
    unknown = False
    for line in sorted(set(m1.lines) & set(m2.lines)):
        v = _line_product(m1.on_line(line), m2.on_line(line))
        if v.status is R:
            return v
        unknown = unknown or v.status is U
    return GlProductVerdict(U if unknown else I)


def _witness_text(v: GlProductVerdict) -> str:
    if v.witness is None:
        return ""
    if isinstance(v.witness[0], Segment):
        return f"linked {v.witness[0]}, {v.witness[1]}"
    order, i, j, l = v.witness
    return f"order {order}: i={i}, j={j}, l={l}"


def _meets(sigma: SigmaContext, m: Multisegment) -> bool:
    return bool(m.support() & sigma.cuspred)


def decide_two_segments(ctx: CuspContext, sigma: SigmaContext, d1: Segment, d2: Segment) -> Decision:
    """Two-segment criterion: reducible iff ``d1`` is linked to ``tilde d2`` and
    either ``d1, d2`` are unlinked or their exponents have opposite signs."""
    if _meets(sigma, Multisegment([d1, d2])):
        raise PreconditionViolated("the segments meet the reducibility set")
    with_tilde = linked(d1, tilde_seg(ctx, d2))
    unlinked = not linked(d1, d2)
    e1, e2 = expo_seg(ctx, d1), expo_seg(ctx, d2)
    opposite = e1 * e2 < 0
    status = R if with_tilde and (unlinked or opposite) else I
    witness = {
        "d1": str(d1),
        "d2": str(d2),
        "linked_with_tilde": with_tilde,
        "unlinked": unlinked,
        "expo_product": str(e1 * e2),
    }
    return Decision(status, (RuleApplication("R4-two-segments", "two-segment criterion", witness),))


RuleResult = Optional[tuple[Status, RuleApplication]]


def _rule_support(ctx, sigma, m, rules) -> RuleResult:
    hit = sorted(m.support() & sigma.cuspred)
    if not hit:
        return None
    return R, RuleApplication("R1-support", "support meets the reducibility set", {"points": [str(p) for p in hit]})


def _rule_lines(ctx, sigma, m, rules) -> RuleResult:
    groups = line_factorization(ctx, m)
    if len(groups) == 1 and ctx.line(groups[0][0][0]).is_self_dual:
        return None
    verdicts = []
    factors = []
    for key, part in groups:
        if len(key) == 1 and ctx.line(key[0]).is_self_dual:
            sub = decide(ctx, sigma, part, rules)
            status = sub.status
            detail = sub.rule or sub.reason
        elif len(key) == 1:
            status, detail = I, "paired line without partner"
        else:
            p, q = key
            v = gl_irreducible_product(ctx, part.on_line(p), tilde_multi(ctx, part.on_line(q)))
            status, detail = v.status, f"product with tilde of partner: {_witness_text(v) or v.status.value}"
        verdicts.append(status)
        factors.append({"lines": "/".join(key), "part": str(part), "status": status.value, "via": detail})
    if R in verdicts:
        status = R
    elif U in verdicts:
        status = U
    else:
        status = I
    return status, RuleApplication("R2-line-factorization", "factorization along tilde-orbits of lines", {"factors": factors})


def _rule_unlinked(ctx, sigma, m, rules) -> RuleResult:
    if not pairwise_unlinked(m):
        return None
    segs = m.segs
    for i, s in enumerate(segs):
        for j, s2 in enumerate(segs):
            if i != j and linked(s, tilde_seg(ctx, s2)):
                w = {"segment": str(s), "tilde_of": str(s2), "tilde": str(tilde_seg(ctx, s2))}
                return R, RuleApplication("R3-unlinked", "pairwise unlinked segments", w)
    return I, RuleApplication("R3-unlinked", "pairwise unlinked segments", {"linked_with_tilde": None})


def _rule_two(ctx, sigma, m, rules) -> RuleResult:
    if len(m) != 2:
        return None
    d = decide_two_segments(ctx, sigma, *m.segs)
    return d.status, d.certificate[0]


def _sign_product(ctx, m) -> tuple[Multisegment, Multisegment, GlProductVerdict]:
    pos = positive_part(ctx, m)
    tpos = positive_part(ctx, tilde_multi(ctx, m))
    return pos, tpos, gl_irreducible_product(ctx, pos, tpos)


def _rule_ladder(ctx, sigma, m, rules) -> RuleResult:
    if not is_ladder(m):
        return None
    pos, tpos, v = _sign_product(ctx, m)
    w = {"m_pos": str(pos), "m_tilde_pos": str(tpos)}
    if v.witness is not None:
        w["product_witness"] = _witness_text(v)
    return v.status, RuleApplication("R5-ladder", "ladder: positive part times its tilde", w)


def _rule_small_alpha(ctx, sigma, m, rules) -> RuleResult:
    if len(m.lines) != 1:
        return None
    line = m.lines[0]
    gaps = [abs(p.index - tilde_point(ctx, p).index) for p in sigma.cuspred if p.line == line]
    if not any(g <= 2 for g in gaps):
        return None
    pos, tpos, v = _sign_product(ctx, m)
    if v.status is U:
        return None
    w = {"m_pos": str(pos), "m_tilde_pos": str(tpos), "alpha_gap": max(gaps)}
    return v.status, RuleApplication("R6-small-alpha", "reducibility point within two steps of its tilde", w)


RULES: dict[str, Callable[..., RuleResult]] = {
    "R1-support": _rule_support,
    "R2-line-factorization": _rule_lines,
    "R3-unlinked": _rule_unlinked,
    "R4-two-segments": _rule_two,
    "R5-ladder": _rule_ladder,
    "R6-small-alpha": _rule_small_alpha,
}
ALL_RULES = frozenset(RULES)
CORROBORATING = ("R3-unlinked", "R4-two-segments", "R5-ladder", "R6-small-alpha")


def apply_rule(ctx: CuspContext, sigma: SigmaContext, m: Multisegment, rule: str) -> RuleResult:
    """Evaluate one rule in isolation (``None`` if it does not apply).

    Rules from R2 on presuppose that the support avoids the reducibility set.
    """
    if rule != "R1-support" and _meets(sigma, m):
        return None
    return RULES[rule](ctx, sigma, m, ALL_RULES)


def decide(
    ctx: CuspContext, sigma: SigmaContext, m: Multisegment, rules: Iterable[str] = ALL_RULES
) -> Decision:
    """Decide whether ``Z(m) ⋊ sigma`` is reducible.

    ``rules`` restricts the rules that may be used (R1-R3 are structural and
    are normally always kept).
    """
    rules = frozenset(rules)
    for line in m.lines:
        ctx.line(line)
    for name, fn in RULES.items():
        if name not in rules:
            continue
        res = fn(ctx, sigma, m, rules)
        if res is None:
            continue
        status, app = res
        if status is U and name != "R2-line-factorization":
            continue
        cert = [app]
        if name in CORROBORATING:
            for other in CORROBORATING:
                if other == name or other not in rules:
                    continue
                res2 = RULES[other](ctx, sigma, m, rules)
                if res2 is None or res2[0] is U:
                    continue
                if res2[0] is not status:
                    raise InconsistentRules(
                        f"{m}: {name} gives {status.value} but {other} gives {res2[0].value}"
                    )
                cert.append(res2[1])
        if status is U:
            return Decision(U, tuple(cert), "some line-orbit factor is undecided")
        return Decision(status, tuple(cert))
    return Decision(U, (), "no implemented criterion applies")


def _show(m: Multisegment) -> str:
    return str(m) if m else "∅"


def socle_descriptor(
    ctx: CuspContext, sigma: SigmaContext, m: Multisegment, soc_hint: Optional[Multisegment] = None
) -> str:
    """Formal descriptor ``Z(n; Z(m_=0) ⋊ sigma)`` of the socle of ``Z(m) ⋊ sigma``.

    ``n`` is the multisegment of the socle of ``Z(m_+) × Z(tilde m)_+``; it is
    computed only when that product is irreducible, otherwise it must be given.
    """
    low = nonpositive_part(ctx, m)
    if decide(ctx, sigma, low).status is not I:
        raise PreconditionViolated(f"Z({_show(low)}) ⋊ {sigma.name} is not known to be irreducible")
    _, zero, _ = split_by_sign(ctx, m)
    if soc_hint is None:
        pos, tpos, v = _sign_product(ctx, m)
        if v.status is not I:
            raise MissingSocleHint(f"Z({_show(pos)}) × Z({_show(tpos)}) is not known to be irreducible")
        soc_hint = pos + tpos
    return f"Z({_show(soc_hint)}; Z({_show(zero)})⋊{sigma.name})"

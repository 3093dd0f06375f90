"""Exhaustive enumeration and the named verification suites."""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .classical import SigmaContext, induced_terms, jacmin_length_classical
from .config import single_line
from .cusp import CuspContext, CuspPoint
from .decide import Status, apply_rule, decide, gl_irreducible_product
from .derivative import (
    classify_critical,
    critical_patterns,
    derivative_DAB,
    is_critical,
    is_left_reduced_at,
    ladder_lnrset,
    left_derivative,
    left_derivative_candidates,
    lnrset,
    positive_alpha,
    right_derivative,
    rnrset,
)
from .errors import SegcalcError, UnknownSuite
from .multiseg import Multisegment, positive_part, tilde_multi
from .ring import (
    GrElement,
    Label,
    comod_terms_closed,
    comod_terms_via_comult2,
    comodmax,
    comodmax_terms_closed,
    comult2,
    comult2_right,
    jacmin_length,
    two_segment_jacmin_closed,
)
from .segment import Segment, precedes

Window = tuple[int, int]


def window_segments(line: str, window: Window) -> list[Segment]:
    lo, hi = window
    return [Segment(line, b, e) for b in range(lo, hi + 1) for e in range(b, hi + 1)]


def enumerate_multisegments(
    ctx: CuspContext, line: str, window: Window, max_degree: int
) -> Iterator[Multisegment]:
    """Every multisegment on ``line`` with endpoints in ``window`` and degree
    at most ``max_degree``, once each, in increasing canonical order."""
    deg = ctx.line(line).deg
    segs = window_segments(line, window)

    def rec(start: int, acc: tuple[Segment, ...], used: int):
        yield Multisegment(acc)
        for j in range(start, len(segs)):
            d = len(segs[j]) * deg
            if used + d <= max_degree:
                yield from rec(j, acc + (segs[j],), used + d)

    yield from rec(0, (), 0)


def enumerate_ladders(line: str, window: Window, max_segments: int) -> Iterator[Multisegment]:
    """Non-empty ladders with at most ``max_segments`` segments inside ``window``."""
    segs = window_segments(line, window)

    def rec(acc: tuple[Segment, ...]):
        if acc:
            yield Multisegment(acc)
        if len(acc) == max_segments:
            return
        for s in segs:
            if not acc or (s.b > acc[-1].b and s.e > acc[-1].e):
                yield from rec(acc + (s,))

    yield from rec(())


@dataclass
class SuiteReport:
    suite: str
    cases: int = 0
    failures: list[tuple[str, str, str]] = field(default_factory=list)
    wall_time: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, case, expected, got) -> None:
        self.failures.append((str(case), str(expected), str(got)))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "cases": self.cases,
            "failures": [{"input": i, "expected": e, "got": g} for i, e, g in sorted(self.failures)],
            "wall_time": round(self.wall_time, 3),
            "notes": self.notes,
        }

    def __str__(self) -> str:
        head = f"{self.suite}: {'pass' if self.passed else 'FAIL'} ({self.cases} cases, {self.wall_time:.2f}s)"
        lines = [head] + [f"  note: {n}" for n in self.notes]
        lines += [f"  {i}: expected {e}, got {g}" for i, e, g in sorted(self.failures)[:20]]
        if len(self.failures) > 20:
            lines.append(f"  ... {len(self.failures) - 20} more")
        return "\n".join(lines)


@dataclass
class SuiteOptions:
    ctx: Optional[CuspContext] = None
    sigma: Optional[SigmaContext] = None
    window: Optional[Window] = None
    max_degree: Optional[int] = None

    def line_ctx(self) -> tuple[CuspContext, str]:
        """Context and a self-dual line to run single-line suites on."""
        if self.ctx is None:
            ctx, _ = single_line(0)
            return ctx, "r"
        for name in sorted(self.ctx.lines):
            if self.ctx.line(name).is_self_dual:
                return self.ctx, name
        return self.ctx, sorted(self.ctx.lines)[0]


def _ladder_lnrset(rep: SuiteReport, opts: SuiteOptions) -> None:
    ctx, line = opts.line_ctx()
    for m in enumerate_ladders(line, opts.window or (-4, 4), 4):
        rep.cases += 1
        got, want = lnrset(ctx, m), ladder_lnrset(m)
        if got != want:
            rep.fail(m, sorted(map(str, want)), sorted(map(str, got)))


def _coassoc_inputs(line: str, window: Window) -> Iterator[Multisegment]:
    for s in window_segments(line, window):
        if len(s) <= 5:
            yield Multisegment([s])
    for m in enumerate_ladders(line, window, 3):
        if len(m) > 1:
            yield m


def _coassociativity(rep: SuiteReport, opts: SuiteOptions) -> None:
    ctx, line = opts.line_ctx()
    for m in _coassoc_inputs(line, opts.window or (-4, 4)):
        rep.cases += 1
        g = GrElement.z(m)
        if comult2(ctx, g) != comult2_right(ctx, g):
            rep.fail(m, "(comult⊗id)∘comult", "differs from (id⊗comult)∘comult")


def _comod_symmetry(rep: SuiteReport, opts: SuiteOptions) -> None:
    ctx, line = opts.line_ctx()
    for m in _coassoc_inputs(line, opts.window or (-4, 4)):
        rep.cases += 1
        if induced_terms(ctx, GrElement.z(m)) != induced_terms(ctx, GrElement.z(tilde_multi(ctx, m))):
            rep.fail(m, "comod(Z(m)) ⋊ σ = comod(Z(tilde m)) ⋊ σ", "differs")
        label = Label(m)
        if len(m) == 1:
            closed = comod_terms_closed(ctx, label)
            derived = comod_terms_via_comult2(ctx, label)
            if Counter(closed) != Counter(derived):
                rep.fail(m, "closed comod expansion", "differs from twisted comult²")
            k = len(m.segs[0])
            if not len(closed) == len(derived) == (k + 1) * (k + 2) // 2:
                rep.fail(m, (k + 1) * (k + 2) // 2, (len(closed), len(derived)))
            if GrElement.from_keys(comodmax_terms_closed(ctx, label)) != comodmax(ctx, GrElement.z(m)):
                rep.fail(m, "closed comodmax expansion", "differs")


def _binomial(rep: SuiteReport, opts: SuiteOptions) -> None:
    ctx, line = opts.line_ctx()
    sigma = opts.sigma or SigmaContext()
    segs = window_segments(line, opts.window or (-4, 4))
    for small in segs:
        for big in segs:
            if not precedes(small, big):
                continue
            rep.cases += 1
            m = Multisegment([small, big])
            want = two_segment_jacmin_closed(big, small)
            got = jacmin_length(ctx, GrElement.z(m))
            if got != want:
                rep.fail(m, want, got)
            n = m.size()
            if jacmin_length_classical(ctx, sigma, m) != 2**n * want:
                rep.fail(f"{m} ⋊ σ", 2**n * want, jacmin_length_classical(ctx, sigma, m))
    anchor = Multisegment([Segment(line, 0, 2), Segment(line, -1, 0)])
    rep.cases += 1
    if (jacmin_length(ctx, GrElement.z(anchor)), jacmin_length_classical(ctx, sigma, anchor)) != (5, 160):
        rep.fail(anchor, (5, 160), (jacmin_length(ctx, GrElement.z(anchor)), jacmin_length_classical(ctx, sigma, anchor)))


def _cross_consistency(rep: SuiteReport, opts: SuiteOptions) -> None:
    configs = [(opts.ctx, opts.sigma)] if opts.sigma is not None else [single_line(0, (a,)) for a in (3, 4, 5)]
    for ctx, sigma in configs:
        line = opts.line_ctx()[1] if opts.ctx is not None else "r"
        segs = window_segments(line, opts.window or (-4, 4))
        for small in segs:
            for big in segs:
                if not precedes(small, big):
                    continue
                m = Multisegment([small, big])
                if m.support() & sigma.cuspred:
                    continue
                rep.cases += 1
                two, ladder = apply_rule(ctx, sigma, m, "R4-two-segments"), apply_rule(ctx, sigma, m, "R5-ladder")
                if two is None or ladder is None or two[0] is not ladder[0]:
                    rep.fail(f"{m} with {sorted(map(str, sigma.cuspred))}", two and two[0].value, ladder and ladder[0].value)


def critical_configs() -> list[tuple[str, CuspContext, SigmaContext]]:
    out = []
    for a in (0, 1):
        ctx, sigma = single_line(0, (a,))
        out.append((f"t0=0, alpha=r[{a}]", ctx, sigma))
    ctx, sigma = single_line(-1, (0,), name="s")
    out.append(("t0=-1, alpha=s[0]", ctx, sigma))
    return out


def _critical(rep: SuiteReport, opts: SuiteOptions) -> None:
    window = opts.window or (-3, 3)
    max_degree = opts.max_degree if opts.max_degree is not None else 6
    if opts.sigma is not None:
        ctx = opts.ctx or single_line(0)[0]
        lines = sorted({p.line for p in opts.sigma.cuspred})
        configs = [(f"line {ln}", ctx, opts.sigma, ln) for ln in lines]
    else:
        configs = [(name, ctx, sigma, sorted(ctx.lines)[0]) for name, ctx, sigma in critical_configs()]
    lo, hi = window
    for name, ctx, sigma, line in configs:
        found = set()
        for m in enumerate_multisegments(ctx, line, window, max_degree):
            rep.cases += 1
            if is_critical(ctx, sigma, m):
                found.add(m)
                try:
                    classify_critical(ctx, sigma, m)
                except SegcalcError as exc:
                    rep.fail(f"{m} [{name}]", "a pattern", exc)
        alpha = positive_alpha(ctx, sigma, line)
        deg = ctx.line(line).deg
        expected = set()
        if alpha is not None:
            for m in critical_patterns(ctx, alpha, max_degree // deg):
                if all(lo <= s.b and s.e <= hi for s in m):
                    expected.add(m)
        for m in sorted(found - expected):
            rep.fail(f"{m} [{name}]", "not critical", "critical")
        for m in sorted(expected - found):
            rep.fail(f"{m} [{name}]", "critical", "not critical")
        rep.notes.append(f"{name}: {len(found)} critical multisegments")


def counterexample_cases() -> list[tuple[str, Callable[[], tuple[object, object]]]]:
    """Named checks returning ``(expected, got)``."""

    def alike_pair():
        ctx, sigma = single_line(-1, (), name="s")
        m = Multisegment([Segment.point("s", 0)] * 2)
        return Status.REDUCIBLE, decide(ctx, sigma, m).status

    def alike_pair_far():
        ctx, sigma = single_line(-1, (6,), name="s")
        m = Multisegment([Segment.point("s", 0)] * 2)
        return Status.REDUCIBLE, decide(ctx, sigma, m).status

    def doubled_segment():
        ctx, sigma = single_line(0, (2,))
        m = Multisegment([Segment("r", 0, 1)] * 2)
        pos = positive_part(ctx, m)
        tpos = positive_part(ctx, tilde_multi(ctx, m))
        return (
            (Status.REDUCIBLE, Status.IRREDUCIBLE),
            (decide(ctx, sigma, m).status, gl_irreducible_product(ctx, pos, tpos).status),
        )

    return [
        ("s[0]+s[0] with tilde(s[0]) = s[-1], empty reducibility set", alike_pair),
        ("s[0]+s[0] with tilde(s[0]) = s[-1], reducibility at s[6]", alike_pair_far),
        ("[r0,r1]+[r0,r1] with reducibility at r[2]", doubled_segment),
    ]


def _counterexamples(rep: SuiteReport, opts: SuiteOptions) -> None:
    for name, fn in counterexample_cases():
        rep.cases += 1
        expected, got = fn()
        if expected != got:
            rep.fail(name, expected, got)


def _derivative_algebra(rep: SuiteReport, opts: SuiteOptions) -> None:
    ctx, line = opts.line_ctx()
    window = opts.window or (-2, 2)
    max_degree = opts.max_degree if opts.max_degree is not None else 8
    for m in enumerate_multisegments(ctx, line, window, max_degree):
        rep.cases += 1
        supp = sorted(m.support())
        for rho in supp:
            lm = left_derivative(ctx, m, rho)
            if left_derivative(ctx, lm, rho) != lm or not is_left_reduced_at(lm, rho):
                rep.fail(f"L_{rho}({m})", "idempotent and left-reduced", lm)
            rm = right_derivative(ctx, m, rho)
            if right_derivative(ctx, rm, rho) != rm or rho in rnrset(ctx, rm):
                rep.fail(f"R_{rho}({m})", "idempotent and right-reduced", rm)
            if (rho in lnrset(ctx, m)) == (lm == m):
                rep.fail(f"L_{rho}({m})", "changes m exactly when rho is in lnrset", lm)
            for other in supp:
                try:
                    d = derivative_DAB(ctx, m, {rho}, {other})
                except SegcalcError as exc:
                    rep.fail(f"D_{{{rho};{other}}}({m})", "R∘L = L∘R", exc)
                    continue
                if not d.support() >= m.support() - {rho, other}:
                    rep.fail(f"D_{{{rho};{other}}}({m})", "support kept off A∪B", d)
        for s in m:
            for n in range(s.b + 1, s.e + 1):
                rho = CuspPoint(line, n)
                if rho not in left_derivative(ctx, m, rho).support():
                    rep.fail(f"L_{rho}({m})", f"contains {rho}", left_derivative(ctx, m, rho))
                for other in supp:
                    if other == rho == s.end:
                        continue
                    if rho not in derivative_DAB(ctx, m, {rho}, {other}).support():
                        rep.fail(f"D_{{{rho};{other}}}({m})", f"contains {rho}", "missing")
        full = frozenset(supp)
        try:
            derivative_DAB(ctx, m, full, full)
        except SegcalcError as exc:
            rep.fail(f"D_{{supp;supp}}({m})", "R∘L = L∘R", exc)


def _derivative_uniqueness(rep: SuiteReport, opts: SuiteOptions) -> None:
    ctx, line = opts.line_ctx()
    window = opts.window or (-2, 2)
    max_degree = opts.max_degree if opts.max_degree is not None else 6
    ambiguous = []
    for m in enumerate_multisegments(ctx, line, window, max_degree):
        for rho in sorted({s.begin for s in m}):
            rep.cases += 1
            chosen = left_derivative(ctx, m, rho)
            valid = {c for c in left_derivative_candidates(m, rho) if is_left_reduced_at(c, rho)}
            if chosen not in valid:
                rep.fail(f"L_{rho}({m})", sorted(map(str, valid)), chosen)
            elif len(valid) > 1:
                ambiguous.append(f"L_{rho}({m})")
    rep.notes.append(f"{len(ambiguous)} inputs where maximum matchings disagree on the result")
    rep.notes.extend(ambiguous[:5])


SUITES: dict[str, Callable[[SuiteReport, SuiteOptions], None]] = {
    "ladder-lnrset": _ladder_lnrset,
    "coassociativity": _coassociativity,
    "comod-symmetry": _comod_symmetry,
    "binomial-jacquet": _binomial,
    "rule-cross-consistency": _cross_consistency,
    "critical-classification": _critical,
    "counterexamples": _counterexamples,
    "derivative-algebra": _derivative_algebra,
    "derivative-uniqueness": _derivative_uniqueness,
}


def run_suite(
    name: str,
    ctx: Optional[CuspContext] = None,
    sigma: Optional[SigmaContext] = None,
    window: Optional[Window] = None,
    max_degree: Optional[int] = None,
) -> SuiteReport:
    """Run a named suite.  Without ``ctx``/``sigma`` each suite uses its own
    standard configurations; ``window`` and ``max_degree`` override defaults."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    rep = SuiteReport(name)
    start = time.perf_counter()
    SUITES[name](rep, SuiteOptions(ctx, sigma, window, max_degree))
    rep.wall_time = time.perf_counter() - start
    return rep

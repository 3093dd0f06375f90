import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segcalc.config import single_line
from segcalc.decide import (
    ALL_RULES,
    Status,
    apply_rule,
    decide,
    decide_two_segments,
    gl_irreducible_product,
    socle_descriptor,
)
from segcalc.errors import MissingSocleHint, PreconditionViolated, UnknownLine
from segcalc.multiseg import Multisegment, mseg, positive_part, tilde_multi

from conftest import ms, seg

R, I, U = Status.REDUCIBLE, Status.IRREDUCIBLE, Status.UNKNOWN
segments = st.builds(lambda b, n: seg(b, b + n), st.integers(-3, 3), st.integers(0, 2))


def rules_of(d):
    return [c.rule for c in d.certificate]


def test_gl_product(plain):
    ctx, _ = plain
    v = gl_irreducible_product(ctx, ms("[r[0],r[1]]"), ms("[r[1],r[2]]"))
    assert v.status is R and v.witness == ("m1,m2", 0, 0, 1)
    assert gl_irreducible_product(ctx, ms("[r[0],r[2]]"), ms("[r[0],r[1]]")).status is I
    assert gl_irreducible_product(ctx, Multisegment(), ms("[r[0],r[1]]")).status is I
    assert gl_irreducible_product(ctx, ms("[r[0],r[0]]"), ms("[r[5],r[5]]")).status is I


@settings(max_examples=150)
@given(segments, segments)
def test_gl_product_of_segments_is_linkage(a, b):
    ctx, _ = single_line(0)
    from segcalc.segment import linked

    v = gl_irreducible_product(ctx, mseg(a), mseg(b))
    assert (v.status is R) == linked(a, b)


def test_two_segments(cfg1):
    ctx, sigma = cfg1
    assert decide_two_segments(ctx, sigma, seg(0, 2), seg(-3, -1)).status is R
    assert decide_two_segments(ctx, sigma, seg(0, 2), seg(-1, 0)).status is I
    assert decide_two_segments(ctx, sigma, seg(1, 2), seg(-2, -1)).status is I
    with pytest.raises(PreconditionViolated):
        decide_two_segments(ctx, sigma, seg(3, 4), seg(0, 0))


def test_decide_support(cfg0):
    ctx, sigma = cfg0
    d = decide(ctx, sigma, ms("[r[1],r[1]]"))
    assert d.status is R and d.rule == "R1-support"


def test_decide_neighbour_tilde():
    ctx, sigma = single_line(-1, (5,), name="s")
    d = decide(ctx, sigma, ms("[s[0],s[0]] + [s[0],s[0]]"))
    assert d.status is R and d.rule == "R3-unlinked"
    assert decide(ctx, sigma, ms("[s[0],s[0]]")).status is I


def test_decide_large_alpha_counterexample():
    ctx, sigma = single_line(0, (2,))
    m = ms("[r[0],r[1]] + [r[0],r[1]]")
    d = decide(ctx, sigma, m)
    assert d.status is R and d.rule == "R3-unlinked"
    pos, tpos = positive_part(ctx, m), positive_part(ctx, tilde_multi(ctx, m))
    assert gl_irreducible_product(ctx, pos, tpos).status is I


def test_decide_ladder(cfg1):
    ctx, sigma = cfg1
    d = decide(ctx, sigma, ms("[r[0],r[2]] + [r[-1],r[0]]"))
    assert d.status is I
    assert "R5-ladder" in rules_of(d)
    (lad,) = [c for c in d.certificate if c.rule == "R5-ladder"]
    assert lad.witness == {"m_pos": "[r[0],r[2]]", "m_tilde_pos": "[r[0],r[1]]"}
    data = d.to_json()
    assert data["status"] == "irreducible"
    assert json.loads(json.dumps(data, sort_keys=True)) == data


def test_decide_unknown_line(cfg1):
    ctx, sigma = cfg1
    with pytest.raises(UnknownLine):
        decide(ctx, sigma, mseg(seg(0, 0, "x")))


def test_decide_reports_unknown(cfg1):
    ctx, sigma = cfg1
    m = ms("[r[0],r[2]] + [r[1],r[1]] + [r[-1],r[0]]")
    d = decide(ctx, sigma, m)
    assert d.status is U and d.reason


def test_paired_lines(paired):
    ctx, sigma = paired
    d = decide(ctx, sigma, mseg(seg(0, 1, "p"), seg(-3, -2, "q")))
    assert d.rule == "R2-line-factorization"
    assert d.status is R
    assert decide(ctx, sigma, mseg(seg(0, 0, "p"))).status is I


@settings(max_examples=150, deadline=None)
@given(
    st.lists(segments, min_size=1, max_size=3).map(Multisegment),
    st.sampled_from([(), (3,), (4,), (1,), (0,)]),
    st.sets(st.sampled_from(["R3-unlinked", "R4-two-segments", "R5-ladder", "R6-small-alpha"])),
)
def test_dropping_rules_only_loses_information(m, cusp, dropped):
    ctx, sigma = single_line(0, cusp)
    full = decide(ctx, sigma, m)
    part = decide(ctx, sigma, m, ALL_RULES - dropped)
    assert part.status in (full.status, U)


def test_apply_rule(cfg1):
    ctx, sigma = cfg1
    m = ms("[r[0],r[2]] + [r[-1],r[0]]")
    assert apply_rule(ctx, sigma, m, "R3-unlinked") is None
    status, app = apply_rule(ctx, sigma, m, "R4-two-segments")
    assert status is I and app.rule == "R4-two-segments"


def test_socle_descriptor(cfg1):
    ctx, sigma = cfg1
    m = ms("[r[0],r[2]] + [r[-1],r[0]]")
    assert socle_descriptor(ctx, sigma, m) == "Z([r[0],r[1]] + [r[0],r[2]]; Z(∅)⋊σ)"
    assert socle_descriptor(ctx, sigma, ms("[r[-2],r[2]]")) == "Z(∅; Z([r[-2],r[2]])⋊σ)"
    linked_case = ms("[r[1],r[2]] + [r[-1],r[0]]")
    with pytest.raises(MissingSocleHint):
        socle_descriptor(ctx, sigma, linked_case)
    hint = ms("[r[0],r[2]] + [r[1],r[1]]")
    assert socle_descriptor(ctx, sigma, linked_case, hint) == "Z([r[0],r[2]] + [r[1],r[1]]; Z(∅)⋊σ)"

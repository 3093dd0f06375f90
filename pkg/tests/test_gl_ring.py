from collections import Counter
from functools import lru_cache
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segcalc.errors import NotLinked, UnknownLine, UnsupportedLabel
from segcalc.harness import enumerate_ladders
from segcalc.multiseg import Multisegment, mseg
from segcalc.ring import (
    ONE,
    OPAQUE,
    GrElement,
    Label,
    TensorElement,
    Word,
    comod,
    comod_terms_closed,
    comod_terms_via_comult2,
    comodmax,
    comodmax_terms_closed,
    comult,
    comult2,
    comult2_right,
    comult_label,
    comult_terms,
    jacmin_length,
    tilde_element,
    two_seg_exact_sequence,
    two_segment_jacmin_closed,
    z_class,
)

from conftest import ms, seg


def Z(text):
    return z_class(ms(text))


def L(text):
    return Label(ms(text))


segments = st.builds(lambda b, n: seg(b, b + n), st.integers(-3, 3), st.integers(0, 3))
small_ladders = list(enumerate_ladders("r", (-2, 2), 3))


def test_comult_segment(plain):
    ctx, _ = plain
    got = comult_label(ctx, L("[r[0],r[1]]"))
    assert got == TensorElement.from_keys(
        [(ONE, Z("[r[0],r[1]]")), (Z("[r[0],r[0]]"), Z("[r[1],r[1]]")), (Z("[r[0],r[1]]"), ONE)]
    )
    assert comult_label(ctx, L("[r[0],r[0]]")) == TensorElement.from_keys(
        [(ONE, Z("[r[0],r[0]]")), (Z("[r[0],r[0]]"), ONE)]
    )


def test_comult_of_products_and_unit(plain):
    ctx, _ = plain
    g = GrElement.product(ms("[r[0],r[0]]"), ms("[r[1],r[1]]"))
    assert g == GrElement({Word([L("[r[0],r[0]]"), L("[r[1],r[1]]")]): 1})
    assert len(comult(ctx, g)) == 4
    assert comult(ctx, GrElement.one()) == TensorElement.one()


def test_comult_rejects_unknown_lines_and_opaque_labels(plain):
    ctx, _ = plain
    with pytest.raises(UnknownLine):
        comult(ctx, GrElement.z(mseg(seg(0, 0, "x"))))
    opaque = ms("[r[0],r[2]] + [r[1],r[1]] + [r[-1],r[0]]")
    (lab,) = z_class(opaque)
    assert lab.kind == OPAQUE
    with pytest.raises(UnsupportedLabel):
        comult_terms(lab)
    with pytest.raises(UnsupportedLabel):
        jacmin_length(ctx, GrElement.z(opaque))


def test_z_class_splits_unlinked_components():
    w = Z("[r[0],r[2]] + [r[1],r[1]]")
    assert w == Word([L("[r[0],r[2]]"), L("[r[1],r[1]]")])
    assert len(Z("[r[0],r[2]] + [r[-1],r[0]]")) == 1


@given(segments)
def test_comult_segment_shape(s):
    terms = comult_terms(Label(mseg(s)))
    assert len(terms) == len(s) + 1
    for a, b in terms:
        assert len(a) <= 1 and len(b) <= 1
        assert (a.mseg() + b.mseg()).data() == mseg(s).data()


@pytest.mark.parametrize("m", small_ladders, ids=str)
def test_comult_counit_and_support(plain, m):
    ctx, _ = plain
    t = comult(ctx, GrElement.z(m))
    assert t[(ONE, z_class(m))] == 1 and t[(z_class(m), ONE)] == 1
    assert sum(v for (a, _), v in t.items() if not a) == 1
    for (a, b), _ in t.items():
        assert (a.mseg() + b.mseg()).data() == m.data()


@pytest.mark.parametrize("m", small_ladders, ids=str)
def test_coassociativity_small(plain, m):
    ctx, _ = plain
    g = GrElement.z(m)
    assert comult2(ctx, g) == comult2_right(ctx, g)


def test_comod_example(plain):
    ctx, _ = plain
    r0 = Z("[r[0],r[0]]")
    assert comod(ctx, GrElement.z(ms("[r[0],r[0]]"))) == TensorElement({(r0, ONE): 2, (ONE, r0): 1})


def test_comodmax_example(plain):
    ctx, _ = plain
    got = comodmax(ctx, GrElement.z(ms("[r[0],r[1]]")))
    want = GrElement.from_keys(
        [Z("[r[-1],r[0]]"), Word([L("[r[0],r[0]]"), L("[r[-1],r[-1]]")]), Z("[r[0],r[1]]")]
    )
    assert got == want
    assert comodmax(ctx, GrElement.one()) == GrElement.one()


@pytest.mark.parametrize("k", range(1, 6))
def test_comod_segment_term_count(plain, k):
    ctx, _ = plain
    lab = Label(mseg(seg(-1, k - 2)))
    closed = comod_terms_closed(ctx, lab)
    assert len(closed) == (k + 1) * (k + 2) // 2
    assert Counter(closed) == Counter(comod_terms_via_comult2(ctx, lab))


@pytest.mark.parametrize("m", small_ladders, ids=str)
def test_ladder_comod_closed_forms(plain, m):
    ctx, _ = plain
    if not m:
        return
    lab = Label(m)
    assert Counter(comod_terms_closed(ctx, lab)) == Counter(comod_terms_via_comult2(ctx, lab))
    assert GrElement.from_keys(comodmax_terms_closed(ctx, lab)) == comodmax(ctx, GrElement.z(m))


def test_tilde_element(plain):
    ctx, _ = plain
    g = GrElement.z(ms("[r[0],r[2]] + [r[-1],r[0]]"))
    assert tilde_element(ctx, g) == GrElement.z(ms("[r[-2],r[0]] + [r[0],r[1]]"))
    assert tilde_element(ctx, tilde_element(ctx, g)) == g


def test_ring_arithmetic():
    a = GrElement.z(ms("[r[0],r[0]]"))
    b = GrElement.z(ms("[r[1],r[1]]"))
    assert (a + b) - b == a
    assert (a * b) * GrElement.one() == a * b == b * a
    assert 3 * a - a - a - a == GrElement()
    assert str(2 * a + GrElement.one()) == "1 + 2·(Z([r[0],r[0]]))"


@lru_cache(maxsize=None)
def _ladder_paths(cuts: tuple, ends: tuple) -> int:
    """Monotone lattice paths advancing one cut at a time, cuts kept strictly decreasing."""
    if cuts == ends:
        return 1
    total = 0
    for i, (c, e) in enumerate(zip(cuts, ends)):
        if c < e and (i == 0 or cuts[i - 1] > c + 1):
            total += _ladder_paths(cuts[:i] + (c + 1,) + cuts[i + 1:], ends)
    return total


def _ladder_oracle(m: Multisegment) -> int:
    segs = m.segs[::-1]
    return _ladder_paths(tuple(s.b - 1 for s in segs), tuple(s.e for s in segs))


@pytest.mark.parametrize("m", list(enumerate_ladders("r", (-2, 3), 4)), ids=str)
def test_jacmin_ladders_against_path_count(plain, m):
    ctx, _ = plain
    assert jacmin_length(ctx, GrElement.z(m)) == _ladder_oracle(m)


def test_jacmin_examples(plain):
    ctx, _ = plain
    assert jacmin_length(ctx, GrElement.z(ms("[r[0],r[2]] + [r[-1],r[0]]"))) == comb(5, 3) - comb(5, 1) == 5
    assert jacmin_length(ctx, GrElement.z(ms("[r[0],r[2]]"))) == 1
    assert jacmin_length(ctx, GrElement.product(ms("[r[0],r[0]]"), ms("[r[1],r[1]]"))) == 2


def test_exact_sequence(plain):
    ctx, _ = plain
    assert two_seg_exact_sequence(ctx, seg(-1, 0), seg(0, 2)) == (
        ms("[r[-1],r[2]] + [r[0],r[0]]"),
        ms("[r[0],r[2]] + [r[-1],r[0]]"),
    )
    assert two_seg_exact_sequence(ctx, seg(-2, -1), seg(0, 1)) == (
        ms("[r[-2],r[1]]"),
        ms("[r[0],r[1]] + [r[-2],r[-1]]"),
    )
    with pytest.raises(NotLinked):
        two_seg_exact_sequence(ctx, seg(0, 2), seg(0, 1))


@settings(max_examples=60)
@given(segments, segments)
def test_jacmin_is_additive_on_the_exact_sequence(plain_ctx_small, a, b):
    ctx = plain_ctx_small
    from segcalc.segment import precedes

    if not precedes(a, b):
        return
    sub, quot = two_seg_exact_sequence(ctx, a, b)
    product = GrElement.product(mseg(a), mseg(b))
    total = jacmin_length(ctx, GrElement.z(sub)) + jacmin_length(ctx, GrElement.z(quot))
    assert jacmin_length(ctx, product) == comb(len(a) + len(b), len(a)) == total
    assert jacmin_length(ctx, GrElement.z(quot)) == two_segment_jacmin_closed(b, a)


@pytest.fixture(scope="module")
def plain_ctx_small():
    from segcalc.config import single_line

    return single_line(0)[0]


@pytest.mark.parametrize("t0", [-1, 0, 1])
def test_comod_keeps_every_term(t0):
    """Merging never loses multiplicity, whatever was computed before."""
    from segcalc.config import single_line

    ctx, _ = single_line(t0)
    for m in small_ladders:
        g = GrElement.z(m)
        assert comod(ctx, g).total() == comult2(ctx, g).total()

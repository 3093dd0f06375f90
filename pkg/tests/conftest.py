from fractions import Fraction

import pytest

from segcalc.classical import SigmaContext
from segcalc.config import single_line
from segcalc.cusp import CuspContext, CuspLine, Paired
from segcalc.parse import parse_multisegment
from segcalc.segment import Segment


def seg(b: int, e: int, line: str = "r") -> Segment:
    return Segment(line, b, e)


def ms(text: str):
    return parse_multisegment(text)


@pytest.fixture
def cfg0():
    """Line r with t0=0 and reducibility at r[1], r[-1]."""
    return single_line(0, (1,))


@pytest.fixture
def cfg1():
    """Line r with t0=0 and reducibility at r[4], r[-4]."""
    return single_line(0, (4,))


@pytest.fixture
def plain():
    """Line r with t0=0 and no reducibility points."""
    return single_line(0)


@pytest.fixture
def paired():
    """Self-dual line r plus lines p, q exchanged by n -> -n."""
    ctx = CuspContext.of(
        CuspLine.self_dual("r", 0),
        CuspLine("p", 1, Paired("q", 0), Fraction(0)),
        CuspLine("q", 1, Paired("p", 0), Fraction(0)),
    )
    return ctx, SigmaContext.build(ctx)

import pytest
from segcalc.classical import (
    GTensorElement,
    Induced,
    cuspred_query,
    induced_word,
    jacmin_length_classical,
    mu_star,
)
from segcalc.config import single_line
from segcalc.cusp import CuspPoint
from segcalc.harness import enumerate_ladders
from segcalc.multiseg import Multisegment, tilde_multi
from segcalc.ring import ONE, GrElement, comod, z_class

from conftest import ms

def r(n):
    return CuspPoint("r", n)


def test_cuspred_query(cfg0, cfg1):
    _, sigma = cfg0
    assert cuspred_query(sigma, r(1)) and cuspred_query(sigma, r(-1))
    assert not cuspred_query(sigma, r(0))
    assert not cuspred_query(cfg1[1], r(1))


@pytest.mark.parametrize("which", ["cfg0", "cfg1"])
def test_mu_star_point(request, which):
    ctx, sigma = request.getfixturevalue(which)
    r0 = z_class(ms("[r[0],r[0]]"))
    got = mu_star(ctx, sigma, GrElement.z(ms("[r[0],r[0]]")))
    assert got == GTensorElement({(r0, Induced(ONE)): 2, (ONE, Induced(r0)): 1})
    assert str(got) == "1 ⊗ Z([r[0],r[0]]) ⋊ σ + 2·(Z([r[0],r[0]]) ⊗ σ)"


def test_mu_star_unit(cfg0):
    ctx, sigma = cfg0
    assert mu_star(ctx, sigma, GrElement.one()) == GTensorElement({(ONE, Induced(ONE)): 1})


def test_induced_label_rendering():
    w = z_class(ms("[r[0],r[0]] + [r[2],r[2]]"))
    assert str(Induced(w)) == "(Z([r[0],r[0]]) × Z([r[2],r[2]])) ⋊ σ"
    assert str(Induced(ONE, "τ")) == "τ"


@pytest.mark.parametrize("t0", [-1, 0, 1])
@pytest.mark.parametrize("m", [m for m in enumerate_ladders("r", (-2, 2), 3) if m], ids=str)
def test_mu_star_is_tilde_invariant(m, t0):
    """Checked on single irreducible labels; words of labels are not a basis,
    so equal classes built from products may be written differently."""
    ctx, sigma = single_line(t0)
    a = mu_star(ctx, sigma, GrElement.z(m))
    b = mu_star(ctx, sigma, GrElement.z(tilde_multi(ctx, m)))
    assert a == b
    assert sum(a.values()) == comod(ctx, GrElement.z(m)).total()


def test_comod_alone_is_not_tilde_invariant(plain):
    """The second slot only agrees after inducing, as r[1] and r[-1] differ in GL."""
    ctx, _ = plain
    g, tg = GrElement.z(ms("[r[1],r[1]]")), GrElement.z(ms("[r[-1],r[-1]]"))
    assert comod(ctx, g) != comod(ctx, tg)
    assert induced_word(ctx, z_class(ms("[r[1],r[1]]"))) == induced_word(ctx, z_class(ms("[r[-1],r[-1]]")))


def test_jacmin_classical(cfg1):
    ctx, sigma = cfg1
    assert jacmin_length_classical(ctx, sigma, ms("[r[0],r[2]] + [r[-1],r[0]]")) == 160
    assert jacmin_length_classical(ctx, sigma, ms("[r[0],r[0]]")) == 2
    assert jacmin_length_classical(ctx, sigma, Multisegment()) == 1

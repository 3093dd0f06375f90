"""The classical-group side, with sigma known only through its reducibility set."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple

from .cusp import CuspContext, CuspPoint, tilde_point, validate_context
from .multiseg import Multisegment
from .ring import (
    ONE,
    GrElement,
    Label,
    Word,
    intern_word,
    tilde_interned,
    comult,
    comult_word,
    jacmin_length,
    tilde_word,
    unintern,
)

SIGMA = "σ"


@dataclass(frozen=True)
class SigmaContext:
    """A supercuspidal sigma given by the points rho with ``rho ⋊ sigma`` reducible.

    Build it with :meth:`build`, which validates against the context and
    closes the set under tilde.
    """

    cuspred: frozenset[CuspPoint] = field(default_factory=frozenset)
    name: str = SIGMA

    @classmethod
    def build(cls, ctx: CuspContext, cuspred: Iterable[CuspPoint] = (), name: str = SIGMA) -> "SigmaContext":
        pts = list(cuspred)
        validate_context(ctx, pts)
        closed = frozenset(pts) | {tilde_point(ctx, p) for p in pts}
        return cls(closed, name)


def cuspred_query(sigma: SigmaContext, rho: CuspPoint) -> bool:
    return rho in sigma.cuspred


class Induced(NamedTuple):
    """Formal class ``Z-word ⋊ sigma``; never decomposed further."""

    word: Word
    sigma: str = SIGMA

    def __str__(self) -> str:
        if not self.word:
            return self.sigma
        body = str(self.word)
        if len(self.word) > 1:
            body = f"({body})"
        return f"{body} ⋊ {self.sigma}"


class GTensorElement(dict):
    """Integer combination of ``(Word, Induced)`` pairs; zero coefficients are dropped."""

    def __init__(self, terms=None):
        super().__init__({k: v for k, v in (terms or {}).items() if v})

    def sorted_items(self):
        return sorted(self.items())

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        for (w, c), k in self.sorted_items():
            body = f"{w} ⊗ {c}"
            parts.append(body if k == 1 else f"{k}·({body})")
        return " + ".join(parts)


@lru_cache(maxsize=None)
def induced_word(ctx: CuspContext, w: Word) -> Word:
    """Canonical word for ``w ⋊ sigma``.

    ``pi ⋊ sigma`` and ``tilde(pi) ⋊ sigma`` have the same composition factors,
    and this applies to each factor of a product separately, so every label
    is replaced by the smaller of itself and its tilde.
    """
    out = ONE
    for lab in w:
        out = out * _induced_label(ctx, lab)
    return out


@lru_cache(maxsize=None)
def _induced_label(ctx: CuspContext, lab: Label) -> Word:
    own = Word((lab,))
    return min(own, tilde_word(ctx, own))


@lru_cache(maxsize=None)
def _comult_induced(ctx: CuspContext, word: Word) -> tuple:
    """``comult(word)`` with the right slot induced, merged; left slot interned."""
    acc: dict = {}
    for (a1, a2), v in comult_word(word).items():
        key = (intern_word(a1), induced_word(ctx, a2))
        acc[key] = acc.get(key, 0) + v
    return tuple((a1, b, v) for (a1, b), v in acc.items() if v)


def induced_terms(ctx: CuspContext, g: GrElement) -> dict:
    """``mu_star`` in compact form: keys are ``(interned first slot, canonical induced word)``.

    Two elements have equal ``mu_star`` exactly when these dictionaries are equal.
    """
    acc: dict = {}
    for (a, c), k in comult(ctx, g).items():
        tc = tilde_interned(ctx, c)
        for a1, b, v in _comult_induced(ctx, a):
            key = (tuple(sorted(a1 + tc)) if a1 and tc else a1 or tc, b)
            acc[key] = acc.get(key, 0) + k * v
    return {key: v for key, v in acc.items() if v}


def mu_star(ctx: CuspContext, sigma: SigmaContext, g: GrElement) -> GTensorElement:
    """Jacquet comultiplication of ``g ⋊ sigma`` for supercuspidal sigma.

    This is ``comod(g)`` with the right slot induced to sigma.
    """
    return GTensorElement(
        {(unintern(a), Induced(b, sigma.name)): v for (a, b), v in induced_terms(ctx, g).items()}
    )


def jacmin_length_classical(ctx: CuspContext, sigma: SigmaContext, m: Multisegment) -> int:
    """``2^N`` times the GL count, ``N`` the number of cuspidal points of ``m``."""
    return 2 ** m.size() * jacmin_length(ctx, GrElement.z(m))

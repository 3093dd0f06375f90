"""Exact computations in the Grothendieck ring of GL and its tensor powers.

Elements are integer combinations of *words*: commutative products of
irreducible classes ``Z(m)``.  Only segment and ladder classes carry a closed
formula for the Jacquet comultiplication; any other class is kept opaque and
every formula-dependent operation rejects it.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Hashable, Iterable, Iterator, Optional

from .cusp import CuspContext
from .errors import MixedLines, NotLinked, UnsupportedLabel
from .multiseg import Multisegment, is_ladder, linkage_components, tilde_multi
from .segment import Segment, intersection, interval, precedes, union

SEG, LADDER, OPAQUE = "seg", "ladder", "opaque"


class Label(tuple):
    """The irreducible class ``Z(m)`` of a non-empty multisegment.

    Stored as the tuple of ``(line, b, e)`` triples of ``m`` so that hashing,
    equality and ordering stay cheap in the inner loops.
    """

    __slots__ = ()

    def __new__(cls, mseg: Multisegment):
        lab = super().__new__(cls, ((s.line, s.b, s.e) for s in mseg))
        _MSEG.setdefault(lab, mseg)
        return lab

    @property
    def mseg(self) -> Multisegment:
        m = _MSEG.get(self)
        if m is None:
            m = _MSEG[self] = Multisegment(Segment(*t) for t in self)
        return m

    def __repr__(self) -> str:
        return f"Label({self})"

    @property
    def kind(self) -> str:
        if len(self.mseg) == 1:
            return SEG
        if is_ladder(self.mseg):
            return LADDER
        return OPAQUE

    def __str__(self) -> str:
        return f"Z({self.mseg})"


_MSEG: dict = {}


class Word(tuple):
    """A sorted tuple of labels standing for their product (the ring is commutative)."""

    __slots__ = ()

    def __new__(cls, labels: Iterable[Label] = ()):
        return super().__new__(cls, sorted(labels))

    def __mul__(self, other: "Word") -> "Word":  # type: ignore[override]
        if not other:
            return self
        if not self:
            return other
        return Word(tuple.__add__(self, other))

    @classmethod
    def presorted(cls, labels: tuple) -> "Word":
        """Wrap a tuple that is already in canonical order."""
        return tuple.__new__(cls, labels)

    def mseg(self) -> Multisegment:
        return Multisegment(s for lab in self for s in lab.mseg)

    def size(self) -> int:
        return sum(lab.mseg.size() for lab in self)

    def degree(self, ctx: CuspContext) -> int:
        return sum(lab.mseg.degree(ctx) for lab in self)

    def __str__(self) -> str:
        return " × ".join(map(str, self)) if self else "1"

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


ONE = Word()


@lru_cache(maxsize=None)
def z_class(m: Multisegment) -> Word:
    """Canonical word for ``Z(m)``.

    Per line, ``m`` is cut into linkage components; when every component is a
    ladder the class is the product of the component classes, otherwise the
    whole line part stays a single opaque label.
    """
    labels = []
    for line in m.lines:
        part = m.on_line(line)
        comps = linkage_components(part)
        if all(is_ladder(c) for c in comps):
            labels.extend(Label(c) for c in comps)
        else:
            labels.append(Label(part))
    return Word(labels)


def _mul_keys(k1, k2):
    if isinstance(k1, Word):
        return k1 * k2
    return tuple(a * b for a, b in zip(k1, k2))


class Combination:
    """Finite integer combination over hashable keys; zero coefficients are dropped."""

    arity = 1
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Hashable, int]]):
        acc: dict = {}
        for k, c in pairs:
            acc[k] = acc.get(k, 0) + c
        return cls(acc)

    @classmethod
    def from_keys(cls, keys: Iterable[Hashable]):
        return cls(dict(Counter(keys)))

    def __iter__(self) -> Iterator:
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, key) -> int:
        return self.terms.get(key, 0)

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other):
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, 0) + c
        return type(self)(acc)

    def __neg__(self):
        return type(self)({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n: int):
        return type(self)({k: n * c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        acc: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = _mul_keys(k1, k2)
                acc[k] = acc.get(k, 0) + c1 * c2
        return type(self)(acc)

    def map_keys(self, fn: Callable, cls=None):
        cls = cls or type(self)
        return cls.from_terms((fn(k), c) for k, c in self.terms.items())

    def total(self) -> int:
        return sum(self.terms.values())

    def sorted_items(self):
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.sorted_items():
            body = " ⊗ ".join(map(str, k)) if isinstance(k, tuple) and not isinstance(k, Word) else str(k)
            parts.append(body if c == 1 else f"{c}·({body})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


class GrElement(Combination):
    arity = 1
    __slots__ = ()

    @classmethod
    def one(cls) -> "GrElement":
        return cls({ONE: 1})

    @classmethod
    def z(cls, m: Multisegment) -> "GrElement":
        return cls({z_class(m): 1})

    @classmethod
    def product(cls, *ms: Multisegment) -> "GrElement":
        w = ONE
        for m in ms:
            w = w * z_class(m)
        return cls({w: 1})


class TensorElement(Combination):
    arity = 2
    __slots__ = ()

    @classmethod
    def one(cls) -> "TensorElement":
        return cls({(ONE, ONE): 1})


class TripleElement(Combination):
    arity = 3
    __slots__ = ()


def _check_lines(ctx: CuspContext, label: Label) -> None:
    for line in label.mseg.lines:
        ctx.line(line)


def ladder_cuts(m: Multisegment) -> Iterator[tuple[int, ...]]:
    """Cut points ``rho_1 > ... > rho_k`` with ``rho_i`` in the left extension of
    the i-th segment, segments listed by decreasing start."""
    segs = m.segs[::-1]

    def rec(i: int, bound: Optional[int], acc: tuple[int, ...]):
        if i == len(segs):
            yield acc
            return
        s = segs[i]
        hi = s.e if bound is None else min(s.e, bound - 1)
        for r in range(s.b - 1, hi + 1):
            yield from rec(i + 1, r, acc + (r,))

    yield from rec(0, None, ())


def _pieces(segs: tuple[Segment, ...], lo: Iterable[int], hi: Iterable[int]) -> Multisegment:
    """Multisegment of the non-empty intervals ``[lo_i, hi_i]`` on each segment's line."""
    out = []
    for s, a, z in zip(segs, lo, hi):
        piece = interval(s.line, a, z)
        if piece is not None:
            out.append(piece)
    return Multisegment(out)


def comult_terms(label: Label) -> list[tuple[Word, Word]]:
    """Raw (unmerged) Jacquet terms of a segment or ladder class."""
    kind = label.kind
    m = label.mseg
    if kind == SEG:
        (s,) = m.segs
        return [
            (z_class(_pieces((s,), [s.b], [r])), z_class(_pieces((s,), [r + 1], [s.e])))
            for r in range(s.b - 1, s.e + 1)
        ]
    if kind == LADDER:
        segs = m.segs[::-1]
        out = []
        for cut in ladder_cuts(m):
            left = _pieces(segs, [s.b for s in segs], cut)
            right = _pieces(segs, [r + 1 for r in cut], [s.e for s in segs])
            out.append((z_class(left), z_class(right)))
        return out
    raise UnsupportedLabel(f"no comultiplication formula for {label}")


@lru_cache(maxsize=None)
def _comult_label_cached(label: Label) -> TensorElement:
    return TensorElement.from_keys(comult_terms(label))


def comult_label(ctx: CuspContext, label: Label) -> TensorElement:
    _check_lines(ctx, label)
    return _comult_label_cached(label)


@lru_cache(maxsize=None)
def comult_word(word: Word) -> TensorElement:
    """Comultiplication of a single word (no line checks; cached)."""
    out = TensorElement.one()
    for lab in word:
        out = out * _comult_label_cached(lab)
    return out


def comult(ctx: CuspContext, g: GrElement) -> TensorElement:
    acc: dict = {}
    for w, c in g.items():
        for lab in w:
            _check_lines(ctx, lab)
        for k, v in comult_word(w).items():
            acc[k] = acc.get(k, 0) + c * v
    return TensorElement(acc)


def comult2(ctx: CuspContext, g: GrElement) -> TripleElement:
    """``(comult ⊗ id) ∘ comult``."""
    acc: dict = {}
    for (a, c), k in comult(ctx, g).items():
        for (a1, a2), v in comult_word(a).items():
            key = (a1, a2, c)
            acc[key] = acc.get(key, 0) + k * v
    return TripleElement(acc)


def comult2_right(ctx: CuspContext, g: GrElement) -> TripleElement:
    """``(id ⊗ comult) ∘ comult``; equal to :func:`comult2` by coassociativity."""
    acc: dict = {}
    for (a, c), k in comult(ctx, g).items():
        for (c1, c2), v in comult_word(c).items():
            key = (a, c1, c2)
            acc[key] = acc.get(key, 0) + k * v
    return TripleElement(acc)


@lru_cache(maxsize=None)
def _tilde_label(ctx: CuspContext, lab: Label) -> Word:
    return z_class(tilde_multi(ctx, lab.mseg))


def tilde_word(ctx: CuspContext, w: Word) -> Word:
    out = ONE
    for lab in w:
        out = out * _tilde_label(ctx, lab)
    return out


def tilde_element(ctx: CuspContext, g: GrElement) -> GrElement:
    return g.map_keys(lambda w: tilde_word(ctx, w))


_LABEL_IDS: dict = {}
_LABELS: list = []


def intern_word(w: Word) -> tuple[int, ...]:
    """Sorted label ids of ``w``; equal words always give equal tuples."""
    out = []
    for lab in w:
        i = _LABEL_IDS.get(lab)
        if i is None:
            i = _LABEL_IDS[lab] = len(_LABELS)
            _LABELS.append(lab)
        out.append(i)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _comult_interned(word: Word) -> tuple:
    return tuple((intern_word(a1), a2, v) for (a1, a2), v in comult_word(word).items())


@lru_cache(maxsize=None)
def tilde_interned(ctx: CuspContext, w: Word) -> tuple[int, ...]:
    return intern_word(tilde_word(ctx, w))


def twisted_terms(ctx: CuspContext, g: GrElement) -> dict:
    """``comod(g)`` keyed by ``(first slot as interned label ids, second slot word)``.

    Label ids keep hashing and sorting cheap in this, the hottest loop of the
    package; :func:`unintern` turns the first slot back into a word.
    """
    acc: dict = {}
    for (a, c), k in comult(ctx, g).items():
        tc = tilde_interned(ctx, c)
        for a1, a2, v in _comult_interned(a):
            key = (tuple(sorted(a1 + tc)) if a1 and tc else a1 or tc, a2)
            acc[key] = acc.get(key, 0) + k * v
    return acc


def unintern(ids: tuple[int, ...]) -> Word:
    return Word(_LABELS[i] for i in ids)


def comod(ctx: CuspContext, g: GrElement) -> TensorElement:
    """Twisted comultiplication: ``a ⊗ b ⊗ c  ↦  a × tilde(c) ⊗ b``."""
    return TensorElement({(unintern(a), b): v for (a, b), v in twisted_terms(ctx, g).items()})


def comodmax(ctx: CuspContext, g: GrElement) -> GrElement:
    """``a ⊗ b  ↦  a × tilde(b)``."""
    acc: dict = {}
    for (a, b), k in comult(ctx, g).items():
        key = a * tilde_word(ctx, b)
        acc[key] = acc.get(key, 0) + k
    return GrElement(acc)


def comod_terms_via_comult2(ctx: CuspContext, label: Label) -> list[tuple[Word, Word]]:
    """Unmerged comod terms obtained by expanding the Jacquet formula twice."""
    _check_lines(ctx, label)
    out = []
    for a, c in comult_terms(label):
        tc = tilde_word(ctx, c)
        for a1, a2 in _word_terms(a):
            out.append((a1 * tc, a2))
    return out


def _word_terms(w: Word) -> list[tuple[Word, Word]]:
    terms = [(ONE, ONE)]
    for lab in w:
        terms = [(x1 * y1, x2 * y2) for x1, x2 in terms for y1, y2 in comult_terms(lab)]
    return terms


def comod_terms_closed(ctx: CuspContext, label: Label) -> list[tuple[Word, Word]]:
    """Unmerged comod terms from the closed two-cut formula.

    For each segment two cuts ``rho_i <= rho'_i`` are chosen, both sequences
    strictly decreasing; the pieces ``[b, rho]`` and ``tilde [rho'+1, e]`` go
    left and ``[rho+1, rho']`` goes right.
    """
    _check_lines(ctx, label)
    if label.kind not in (SEG, LADDER):
        raise UnsupportedLabel(f"no comod formula for {label}")
    m = label.mseg
    segs = m.segs[::-1]
    cuts = list(ladder_cuts(m))
    out = []
    for lo in cuts:
        for hi in cuts:
            if any(r > r2 for r, r2 in zip(lo, hi)):
                continue
            first = _pieces(segs, [s.b for s in segs], lo)
            twisted = _pieces(segs, [r + 1 for r in hi], [s.e for s in segs])
            middle = _pieces(segs, [r + 1 for r in lo], hi)
            out.append((z_class(first) * z_class(tilde_multi(ctx, twisted)), z_class(middle)))
    return out


def comodmax_terms_closed(ctx: CuspContext, label: Label) -> list[Word]:
    _check_lines(ctx, label)
    if label.kind not in (SEG, LADDER):
        raise UnsupportedLabel(f"no comodmax formula for {label}")
    m = label.mseg
    segs = m.segs[::-1]
    out = []
    for cut in ladder_cuts(m):
        left = _pieces(segs, [s.b for s in segs], cut)
        right = _pieces(segs, [r + 1 for r in cut], [s.e for s in segs])
        out.append(z_class(left) * z_class(tilde_multi(ctx, right)))
    return out


@lru_cache(maxsize=None)
def _jacmin_label(label: Label) -> int:
    total = 0
    for (a, b), c in _comult_label_cached(label).items():
        if a.size() == 1:
            total += c * _jacmin_word(b)
    return total


@lru_cache(maxsize=None)
def _jacmin_word(w: Word) -> int:
    # shuffles of the factors' complete peel sequences
    sizes = [lab.mseg.size() for lab in w]
    count = factorial(sum(sizes))
    for n in sizes:
        count //= factorial(n)
    for lab in w:
        count *= _jacmin_label(lab)
    return count


def jacmin_length(ctx: CuspContext, g: GrElement) -> int:
    """Length of the Jacquet module down to the minimal Levi (all blocks cuspidal)."""
    lines = {line for w in g for lab in w for line in lab.mseg.lines}
    if len(lines) > 1:
        raise MixedLines(f"jacmin_length needs a single line, got {sorted(lines)}")
    for w in g:
        for lab in w:
            _check_lines(ctx, lab)
            if lab.kind == OPAQUE:
                raise UnsupportedLabel(f"no comultiplication formula for {lab}")
    return sum(c * _jacmin_word(w) for w, c in g.items())


def two_segment_jacmin_closed(big: Segment, small: Segment) -> int:
    """Binomial count for ``Z(big + small)`` with ``small`` preceding ``big``."""
    n = len(big) + len(small)
    common = intersection(big, small)
    return comb(n, len(big)) - comb(n, len(common) if common else 0)


def two_seg_exact_sequence(
    ctx: CuspContext, small: Segment, big: Segment
) -> tuple[Multisegment, Multisegment]:
    """Sub and quotient of ``Z(small) × Z(big)`` for a linked pair ``small ≺ big``."""
    ctx.line(small.line)
    if not precedes(small, big):
        raise NotLinked(f"{small} does not precede {big}")
    common = intersection(small, big)
    sub = Multisegment([union(small, big)] + ([common] if common else []))
    return sub, Multisegment([small, big])

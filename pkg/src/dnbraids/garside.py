"""Word problem in the Artin groups of types A, B and D.

Elements are put in left-greedy normal form ``Delta^inf * x_1 * ... * x_k``
where the simple factors ``x_i`` are Coxeter group elements (the positive
lifts of W), none equal to the identity or the longest element, and each pair
is left-weighted: ``D_L(x_{i+1})`` is contained in ``D_R(x_i)``.

>>> from dnbraids.coxeter import CoxeterType
>>> A2 = CoxeterType("A", 3)
>>> nf = normal_form(parse_word(A2, "sig1 sig2 sig1^-1"))
>>> nf.inf, len(nf.factors)
(-1, 2)
>>> words_equal(parse_word(A2, "sig1 sig2 sig1^-1"), parse_word(A2, "sig2^-1 sig1 sig2"))
True
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .coxeter import (
    CoxeterType,
    SignedPermutation,
    compose,
    identity,
    left_descents,
    longest_element,
    right_descents,
    _generator,
)
from .errors import UsageError

_PREFIX = {"A": "sig", "B": "s", "D": "t"}


def letter_of(ctype: CoxeterType, index: int, sign: int = 1) -> int:
    """Letter encoding of a generator: index + 1 for B/D, the index itself for A."""
    if index not in ctype.generator_indices:
        raise UsageError(f"generator index {index} out of range for {ctype}")
    return sign * (index if ctype.family == "A" else index + 1)


def index_of(ctype: CoxeterType, letter: int) -> int:
    return abs(letter) if ctype.family == "A" else abs(letter) - 1


@dataclass(frozen=True)
class ArtinWord:
    """A word in the Artin generators and their inverses."""

    ctype: CoxeterType
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(int(k) for k in self.letters))
        valid = self.ctype.generator_indices
        for k in self.letters:
            if k == 0 or index_of(self.ctype, k) not in valid:
                raise UsageError(f"letter {k} is not a generator of {self.ctype}")

    def __mul__(self, other: ArtinWord) -> ArtinWord:
        if other.ctype != self.ctype:
            raise UsageError(f"type mismatch: {self.ctype} vs {other.ctype}")
        return ArtinWord(self.ctype, self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> ArtinWord:
        return ArtinWord(self.ctype, tuple(-k for k in reversed(self.letters)))

    def image(self) -> SignedPermutation:
        """Image in the Coxeter group."""
        w = identity(self.ctype)
        for k in self.letters:
            w = compose(w, _generator(self.ctype, index_of(self.ctype, k)))
        return w

    def __str__(self) -> str:
        return format_word(self)


def empty_word(ctype: CoxeterType) -> ArtinWord:
    return ArtinWord(ctype, ())


def concat(ctype: CoxeterType, words: Iterable[ArtinWord]) -> ArtinWord:
    letters: list[int] = []
    for w in words:
        if w.ctype != ctype:
            raise UsageError(f"type mismatch: {w.ctype} vs {ctype}")
        letters.extend(w.letters)
    return ArtinWord(ctype, tuple(letters))


_TOKEN = re.compile(r"^(sig|s|t)(\d+)(\^-1|\^\(-1\)|')?$")


def parse_word(ctype: CoxeterType, text: str) -> ArtinWord:
    """Parse ``"t0 t2 t0^-1"``; prefixes are ``s`` (B), ``t`` (D), ``sig`` (A)."""
    letters = []
    for token in text.replace(",", " ").split():
        m = _TOKEN.match(token)
        if not m:
            raise UsageError(f"bad word token {token!r}")
        prefix, index, inv = m.group(1), int(m.group(2)), m.group(3)
        if prefix != _PREFIX[ctype.family]:
            raise UsageError(f"token {token!r} does not name a generator of {ctype}")
        letters.append(letter_of(ctype, index, -1 if inv else 1))
    return ArtinWord(ctype, tuple(letters))


def format_word(word: ArtinWord) -> str:
    prefix = _PREFIX[word.ctype.family]
    return " ".join(
        f"{prefix}{index_of(word.ctype, k)}" + ("^-1" if k < 0 else "") for k in word.letters
    )


# ---------------------------------------------------------------- positive lifts


@dataclass(frozen=True)
class PositiveLift:
    source: SignedPermutation
    word: ArtinWord


@lru_cache(maxsize=1 << 16)
def _lift_letters(w: SignedPermutation) -> tuple[int, ...]:
    letters = []
    while True:
        d = left_descents(w)
        if not d:
            return tuple(letters)
        s = min(d)
        letters.append(letter_of(w.ctype, s))
        w = compose(_generator(w.ctype, s), w)


def positive_lift(w: SignedPermutation) -> PositiveLift:
    """Reduced word built by always peeling off the smallest left descent."""
    return PositiveLift(w, ArtinWord(w.ctype, _lift_letters(w)))


def lift_word(w: SignedPermutation) -> ArtinWord:
    return ArtinWord(w.ctype, _lift_letters(w))


def delta_power(ctype: CoxeterType, k: int) -> ArtinWord:
    d = lift_word(longest_element(ctype))
    return ArtinWord(ctype, (d.letters if k >= 0 else d.inverse().letters) * abs(k))


def tau(w: SignedPermutation) -> SignedPermutation:
    """Conjugation by the longest element."""
    w0 = longest_element(w.ctype)
    return compose(compose(w0, w), w0)


# ---------------------------------------------------------------- normal forms


@dataclass(frozen=True)
class GarsideNormalForm:
    ctype: CoxeterType
    inf: int
    factors: tuple[SignedPermutation, ...]

    @property
    def sup(self) -> int:
        return self.inf + len(self.factors)

    def image(self) -> SignedPermutation:
        w = identity(self.ctype)
        w0 = longest_element(self.ctype)
        if self.inf % 2:
            w = w0
        for f in self.factors:
            w = compose(w, f)
        return w

    def to_word(self) -> ArtinWord:
        parts = [delta_power(self.ctype, self.inf)] + [lift_word(f) for f in self.factors]
        return concat(self.ctype, parts)

    def to_json(self) -> dict:
        return {"inf": self.inf, "sup": self.sup, "factors": [list(f.window) for f in self.factors]}


def _left_weight(a: SignedPermutation, b: SignedPermutation) -> tuple[SignedPermutation, SignedPermutation, bool]:
    """Slide letters of ``b`` into ``a`` until ``D_L(b)`` lies in ``D_R(a)``."""
    changed = False
    ctype = a.ctype
    while True:
        extra = left_descents(b) - right_descents(a)
        if not extra:
            return a, b, changed
        s = _generator(ctype, min(extra))
        a, b = compose(a, s), compose(s, b)
        changed = True


def _normalize(ctype: CoxeterType, inf: int, factors: list[SignedPermutation]) -> GarsideNormalForm:
    changed = True
    while changed:
        changed = False
        for i in range(len(factors) - 2, -1, -1):
            a, b, moved = _left_weight(factors[i], factors[i + 1])
            if moved:
                factors[i], factors[i + 1] = a, b
                changed = True
    w0 = longest_element(ctype)
    start = 0
    while start < len(factors) and factors[start] == w0:
        start += 1
    inf += start
    factors = [f for f in factors[start:] if not f.is_identity()]
    return GarsideNormalForm(ctype, inf, tuple(factors))


def _tau_power(f: SignedPermutation, p: int) -> SignedPermutation:
    return tau(f) if p % 2 else f


def multiply_simple_right(nf: GarsideNormalForm, x: SignedPermutation) -> GarsideNormalForm:
    return _normalize(nf.ctype, nf.inf, list(nf.factors) + [x])


def multiply_simple_left(x: SignedPermutation, nf: GarsideNormalForm) -> GarsideNormalForm:
    """Normal form of (lift of x) * nf, using x Delta^p = Delta^p tau^p(x)."""
    return _normalize(nf.ctype, nf.inf, [_tau_power(x, nf.inf)] + list(nf.factors))


def normal_form(word: ArtinWord) -> GarsideNormalForm:
    ctype = word.ctype
    w0 = longest_element(ctype)
    inf = 0
    factors: list[SignedPermutation] = []
    for k in word.letters:
        g = _generator(ctype, index_of(ctype, k))
        if k > 0:
            nf = _normalize(ctype, inf, factors + [g])
        else:
            # g^-1 = y Delta^-1 with y = g w0, and F Delta^-1 = Delta^-1 tau(F)
            y = compose(g, w0)
            nf = _normalize(ctype, inf - 1, [tau(f) for f in factors + [y]])
        inf, factors = nf.inf, list(nf.factors)
    return GarsideNormalForm(ctype, inf, tuple(factors))


def is_left_weighted(nf: GarsideNormalForm) -> bool:
    w0 = longest_element(nf.ctype)
    if any(f.is_identity() or f == w0 for f in nf.factors):
        return False
    return all(
        left_descents(b) <= right_descents(a) for a, b in zip(nf.factors, nf.factors[1:])
    )


def words_equal(a: ArtinWord, b: ArtinWord) -> bool:
    if a.ctype != b.ctype:
        raise UsageError(f"type mismatch: {a.ctype} vs {b.ctype}")
    return normal_form(a) == normal_form(b)


def inf_sup(word: ArtinWord) -> tuple[int, int]:
    nf = normal_form(word)
    return nf.inf, nf.sup


def simple_of(nf: GarsideNormalForm) -> SignedPermutation | None:
    """The Coxeter element whose positive lift equals nf, if there is one."""
    if nf.inf == 0 and len(nf.factors) <= 1:
        return nf.factors[0] if nf.factors else identity(nf.ctype)
    if nf.inf == 1 and not nf.factors:
        return longest_element(nf.ctype)
    return None


def is_simple(word: ArtinWord) -> SignedPermutation | None:
    return simple_of(normal_form(word))


def word_from_indices(ctype: CoxeterType, indices: Sequence[int], sign: int = 1) -> ArtinWord:
    return ArtinWord(ctype, tuple(letter_of(ctype, i, sign) for i in indices))


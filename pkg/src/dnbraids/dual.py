"""Dual braid monoid elements written as words in the classical Artin generators.

Each reflection t below c gets an atom word: simple reflections are single
letters, and any other reflection is reached by conjugating with a simple
reflection s that shortens it, using ``s_c t_c = (sts)_c s_c`` when st <=_T c
(and the same relation for ``sts`` when ts <=_T c).

>>> from dnbraids.coxeter import CoxeterType, parse_element
>>> A2 = CoxeterType("A", 3)
>>> ctx = DualContext.create(parse_element(A2, "(1,2,3)"))
>>> from dnbraids.garside import format_word
>>> format_word(atom_word(ctx, parse_element(A2, "(1,3)")))
'sig1 sig2 sig1^-1'
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .absolute import NoncrossingPartition, absolute_length, leq_T, one_t_reduced_word, require_standard
from .coxeter import SignedPermutation, compose, coxeter_length, is_reflection, reflections, _generator
from .errors import InvariantViolation, UsageError
from .garside import ArtinWord, concat, empty_word, letter_of, words_equal


@dataclass
class DualContext:
    coxeter: SignedPermutation
    atom_cache: dict[SignedPermutation, ArtinWord] = field(default_factory=dict)
    simple_route: dict[SignedPermutation, ArtinWord | None] = field(default_factory=dict)

    @property
    def ctype(self):
        return self.coxeter.ctype

    @classmethod
    def create(cls, c: SignedPermutation) -> DualContext:
        require_standard(c)
        return cls(c)


@dataclass(frozen=True)
class SimpleDualBraid:
    source: NoncrossingPartition
    word: ArtinWord


def _single(ctx: DualContext, i: int, sign: int = 1) -> ArtinWord:
    return ArtinWord(ctx.ctype, (letter_of(ctx.ctype, i, sign),))


def _simple_route(ctx: DualContext, t: SignedPermutation) -> ArtinWord | None:
    """Conjugate by a simple reflection s that shortens t; None when no such s is admissible."""
    ctype, c = ctx.ctype, ctx.coxeter
    for i in ctype.generator_indices:
        if t == _generator(ctype, i):
            return _single(ctx, i)
    for i in ctype.generator_indices:
        s = _generator(ctype, i)
        sts = compose(compose(s, t), s)
        if coxeter_length(sts) >= coxeter_length(t):
            continue
        if leq_T(compose(s, t), c):
            inner = _route_cached(ctx, sts)
            return None if inner is None else _single(ctx, i, -1) * inner * _single(ctx, i)
        if leq_T(compose(t, s), c):
            inner = _route_cached(ctx, sts)
            return None if inner is None else _single(ctx, i) * inner * _single(ctx, i, -1)
    return None


def _route_cached(ctx: DualContext, t: SignedPermutation) -> ArtinWord | None:
    if t in ctx.simple_route:
        return ctx.simple_route[t]
    word = _simple_route(ctx, t)
    ctx.simple_route[t] = word
    return word


def _closure(ctx: DualContext) -> None:
    """Derive every remaining atom from known ones through dual relations.

    With r already known and rtr known: if r t <=_T c then
    t_c = r_c^-1 (rtr)_c r_c, and if t r <=_T c then t_c = r_c (rtr)_c r_c^-1.
    """
    ts = reflections(ctx.ctype)
    c = ctx.coxeter
    known = {t: w for t in ts if (w := _route_cached(ctx, t)) is not None}
    progress = True
    while progress and len(known) < len(ts):
        progress = False
        for t in ts:
            if t in known:
                continue
            for r in ts:
                rtr = compose(compose(r, t), r)
                if r not in known or rtr not in known or r == t:
                    continue
                if leq_T(compose(r, t), c):
                    known[t] = known[r].inverse() * known[rtr] * known[r]
                elif leq_T(compose(t, r), c):
                    known[t] = known[r] * known[rtr] * known[r].inverse()
                else:
                    continue
                progress = True
                break
    if len(known) < len(ts):
        missing = [str(t) for t in ts if t not in known]
        raise InvariantViolation(f"dual relations do not reach the atoms {missing} for c={c}")
    ctx.atom_cache.update(known)


def atom_word(ctx: DualContext, t: SignedPermutation, strict: bool = False) -> ArtinWord:
    """Word for the dual atom of the reflection t.

    First tries conjugation by simple reflections that shorten t.  Some
    reflections admit no such simple reflection (e.g. ((3,-4)) for
    c = [1][-4,-2,3] in D_4); with ``strict`` this raises, otherwise the atom is
    derived from the dual relations with arbitrary already-known atoms.
    """
    if t in ctx.atom_cache:
        return ctx.atom_cache[t]
    if not is_reflection(t):
        raise UsageError(f"{t} is not a reflection")
    word = _route_cached(ctx, t)
    if word is None:
        if strict:
            raise InvariantViolation(f"no admissible simple reflection for t={t} and c={ctx.coxeter}")
        _closure(ctx)
        return ctx.atom_cache[t]
    ctx.atom_cache[t] = word
    return word


def simple_word_of(ctx: DualContext, x: SignedPermutation) -> ArtinWord:
    return concat(ctx.ctype, [atom_word(ctx, t) for t in one_t_reduced_word(x)])


def simple_word(ctx: DualContext, x: SignedPermutation | NoncrossingPartition) -> SimpleDualBraid:
    """Concatenated atom words along the least reflection factorization of x."""
    if isinstance(x, NoncrossingPartition):
        x = x.element
    if not leq_T(x, ctx.coxeter):
        raise UsageError(f"{x} is not below {ctx.coxeter} in the absolute order")
    part = NoncrossingPartition(x, ctx.coxeter, absolute_length(x))
    return SimpleDualBraid(part, simple_word_of(ctx, x))


def word_along(ctx: DualContext, factorization) -> ArtinWord:
    """Atom words concatenated along an arbitrary reflection factorization."""
    if not factorization:
        return empty_word(ctx.ctype)
    return concat(ctx.ctype, [atom_word(ctx, t) for t in factorization])


@dataclass
class DualRelationReport:
    coxeter: SignedPermutation
    checked: int
    failures: list[tuple[SignedPermutation, SignedPermutation]]

    @property
    def ok(self) -> bool:
        return not self.failures


def dual_relation_check(ctx: DualContext) -> DualRelationReport:
    """Check ``t_c t'_c = (t t' t)_c t_c`` for all distinct t, t' with t t' <=_T c."""
    ts = reflections(ctx.ctype)
    failures = []
    checked = 0
    for t in ts:
        for u in ts:
            if t == u or not leq_T(compose(t, u), ctx.coxeter):
                continue
            checked += 1
            lhs = atom_word(ctx, t) * atom_word(ctx, u)
            rhs = atom_word(ctx, compose(compose(t, u), t)) * atom_word(ctx, t)
            if not words_equal(lhs, rhs):
                failures.append((t, u))
    return DualRelationReport(ctx.coxeter, checked, failures)

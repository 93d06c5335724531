"""Reflection length, the absolute order and noncrossing partitions.

>>> from dnbraids.coxeter import CoxeterType, parse_element
>>> D4 = CoxeterType("D", 4)
>>> c = parse_element(D4, "[1][-4,2,3]")
>>> is_standard_coxeter(c), absolute_length(c), len(nc_enumerate(c))
(True, 4, 50)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .coxeter import (
    CoxeterType,
    SignedPermutation,
    compose,
    cycle_decomposition,
    generators,
    identity,
    inverse,
    product_of,
    reflections,
)
from .errors import CapacityError, InvariantViolation, UsageError

# Groups up to this order get their reflection length table by breadth-first
# search; larger groups use the fixed-space codimension.
BFS_ORDER_LIMIT = 6_000
STANDARD_RANK_LIMIT = 8


@lru_cache(maxsize=None)
def _length_table(ctype: CoxeterType) -> dict[tuple[int, ...], int]:
    start = identity(ctype)
    dist = {start.window: 0}
    frontier = [start]
    ts = reflections(ctype)
    while frontier:
        nxt = []
        for u in frontier:
            d = dist[u.window] + 1
            for t in ts:
                v = compose(u, t)
                if v.window not in dist:
                    dist[v.window] = d
                    nxt.append(v)
        frontier = nxt
    return dist


def absolute_length_by_search(u: SignedPermutation) -> int:
    """Reflection length read off a breadth-first search of the whole group."""
    if u.ctype.order > BFS_ORDER_LIMIT:
        raise CapacityError(f"breadth-first reflection length limited to |W| <= {BFS_ORDER_LIMIT}")
    return _length_table(u.ctype)[u.window]


def absolute_length_by_cycles(u: SignedPermutation) -> int:
    """Codimension of the fixed space: rank minus the number of paired orbits.

    Fixed letters count as paired 1-cycles and balanced cycles contribute none.
    For family A this is n minus the number of cycles.
    """
    dec = cycle_decomposition(u)
    moved = {abs(a) for c in dec.paired + dec.balanced for a in c}
    fixed = u.ctype.rank - len(moved)
    return u.ctype.rank - fixed - len(dec.paired)


def absolute_length(u: SignedPermutation) -> int:
    if u.ctype.order <= BFS_ORDER_LIMIT:
        return _length_table(u.ctype)[u.window]
    return absolute_length_by_cycles(u)


def leq_T(u: SignedPermutation, v: SignedPermutation) -> bool:
    return absolute_length(u) + absolute_length(compose(inverse(u), v)) == absolute_length(v)


# ---------------------------------------------------------------- standard Coxeter elements


@lru_cache(maxsize=None)
def enumerate_standard_coxeter(ctype: CoxeterType) -> frozenset[SignedPermutation]:
    """Products of all simple generators in every order (deduplicated)."""
    if ctype.rank > STANDARD_RANK_LIMIT:
        raise CapacityError(f"standard Coxeter enumeration limited to rank <= {STANDARD_RANK_LIMIT}")
    gens = generators(ctype)
    return frozenset(product_of(ctype, order) for order in permutations(gens))


def sorted_standard_coxeter(ctype: CoxeterType) -> list[SignedPermutation]:
    return sorted(enumerate_standard_coxeter(ctype), key=lambda c: c.window)


def is_standard_coxeter(c: SignedPermutation) -> bool:
    return c in enumerate_standard_coxeter(c.ctype)


def std_coxeter_shape_test(c: SignedPermutation) -> bool:
    """Shape criterion for standard Coxeter elements of D_n, n >= 3.

    ``c`` must be ``[i_1]`` with ``|i_1|`` in {1, 2} times a balanced
    (n-1)-cycle which, written starting from ``-n``, is increasing.  Read around
    the whole 2(n-1)-cycle this is "first increasing up to n, then decreasing".
    """
    ctype = c.ctype
    if ctype.family != "D" or ctype.rank < 3:
        raise UsageError("shape test applies to D_n with n >= 3")
    n = ctype.rank
    dec = cycle_decomposition(c)
    if dec.paired or len(dec.balanced) != 2:
        return False
    short, long_ = sorted(dec.balanced, key=len)
    if len(short) != 1 or abs(short[0]) not in (1, 2) or len(long_) != n - 1:
        return False
    full = list(long_) + [-a for a in long_]
    k = full.index(-n)
    half = (full[k:] + full[:k])[: n - 1]
    return all(a < b for a, b in zip(half, half[1:]))


def coxeter_shape(c: SignedPermutation) -> tuple[int, tuple[int, ...]]:
    """``(i_1, (i_2, ..., i_n))`` for a standard D_n Coxeter element, with i_2 = -n."""
    if not std_coxeter_shape_test(c):
        raise UsageError(f"{c} is not a standard Coxeter element of {c.ctype}")
    n = c.ctype.rank
    dec = cycle_decomposition(c)
    short, long_ = sorted(dec.balanced, key=len)
    full = list(long_) + [-a for a in long_]
    k = full.index(-n)
    return abs(short[0]), tuple((full[k:] + full[:k])[: n - 1])


def require_standard(c: SignedPermutation) -> None:
    if c.ctype.rank <= STANDARD_RANK_LIMIT:
        ok = is_standard_coxeter(c)
    elif c.ctype.family == "D":
        ok = std_coxeter_shape_test(c)
    else:
        raise CapacityError(f"cannot certify a standard Coxeter element beyond rank {STANDARD_RANK_LIMIT}")
    if not ok:
        raise UsageError(f"{c} is not a standard Coxeter element of {c.ctype}")


# ---------------------------------------------------------------- NC(W, c)


@dataclass(frozen=True)
class NoncrossingPartition:
    element: SignedPermutation
    coxeter: SignedPermutation
    abs_length: int

    def __str__(self) -> str:
        return str(self.element)


@lru_cache(maxsize=64)
def _nc_elements(c: SignedPermutation) -> tuple[SignedPermutation, ...]:
    ts = reflections(c.ctype)
    found = {c}
    layer = [c]
    length = absolute_length(c)
    while layer:
        length -= 1
        nxt = []
        for y in layer:
            for t in ts:
                z = compose(y, t)
                if z not in found and absolute_length(z) == length:
                    found.add(z)
                    nxt.append(z)
        layer = nxt
    return tuple(sorted(found, key=lambda x: (absolute_length(x), x.window)))


def nc_enumerate(c: SignedPermutation) -> list[NoncrossingPartition]:
    """All x with x <=_T c, sorted by reflection length then window."""
    require_standard(c)
    return [NoncrossingPartition(x, c, absolute_length(x)) for x in _nc_elements(c)]


def nc_elements(c: SignedPermutation) -> tuple[SignedPermutation, ...]:
    require_standard(c)
    return _nc_elements(c)


def nc_partition(x: SignedPermutation, c: SignedPermutation) -> NoncrossingPartition:
    if not leq_T(x, c):
        raise UsageError(f"{x} is not below {c} in the absolute order")
    return NoncrossingPartition(x, c, absolute_length(x))


# ---------------------------------------------------------------- reduced words


def t_reduced_words(x: SignedPermutation, limit: int = 10_000) -> tuple[list[tuple[SignedPermutation, ...]], bool]:
    """All minimal reflection factorizations of x, up to ``limit`` of them.

    Returns ``(words, truncated)``.  A reflection t may start a word for x
    exactly when ``absolute_length(t * x) == absolute_length(x) - 1``.
    """
    ts = reflections(x.ctype)
    words: list[tuple[SignedPermutation, ...]] = []
    truncated = False

    def walk(rest: SignedPermutation, prefix: tuple[SignedPermutation, ...], length: int) -> None:
        nonlocal truncated
        if truncated:
            return
        if length == 0:
            if len(words) >= limit:
                truncated = True
                return
            words.append(prefix)
            return
        for t in ts:
            z = compose(t, rest)
            if absolute_length(z) == length - 1:
                walk(z, prefix + (t,), length - 1)

    walk(x, (), absolute_length(x))
    return words, truncated


def one_t_reduced_word(x: SignedPermutation) -> tuple[SignedPermutation, ...]:
    """The lexicographically least reflection factorization."""
    ts = reflections(x.ctype)
    word = []
    length = absolute_length(x)
    while length:
        for t in ts:
            z = compose(t, x)
            if absolute_length(z) == length - 1:
                word.append(t)
                x, length = z, length - 1
                break
        else:  # pragma: no cover
            raise InvariantViolation(f"no reflection shortens {x}")
    return tuple(word)


# ---------------------------------------------------------------- covers


class CoverFamily(enum.Enum):
    BalancedSplit = "BalancedSplit"
    PairedSplit = "PairedSplit"
    BalancedMerge = "BalancedMerge"


@dataclass(frozen=True)
class CoverRelation:
    lower: NoncrossingPartition
    upper: NoncrossingPartition
    reflection: SignedPermutation


def nc_cover_relations(c: SignedPermutation) -> list[CoverRelation]:
    """Pairs x < xt in NC(W, c) whose reflection lengths differ by one."""
    ncs = nc_enumerate(c)
    by_elem = {p.element: p for p in ncs}
    covers = []
    for p in ncs:
        for t in reflections(c.ctype):
            y = compose(p.element, t)
            q = by_elem.get(y)
            if q is not None and q.abs_length == p.abs_length + 1:
                covers.append(CoverRelation(p, q, t))
    return covers


def _cycle_supports(u: SignedPermutation) -> tuple[set[frozenset[int]], set[frozenset[int]]]:
    dec = cycle_decomposition(u)
    paired = {frozenset(c) | frozenset(-a for a in c) for c in dec.paired}
    moved = {abs(a) for c in dec.paired + dec.balanced for a in c}
    paired |= {frozenset((i, -i)) for i in range(1, u.ctype.rank + 1) if i not in moved}
    balanced = {frozenset(c) | frozenset(-a for a in c) for c in dec.balanced}
    return paired, balanced


def classify_cover(cover: CoverRelation) -> CoverFamily:
    """Which of the three cycle replacements turns the upper element into the lower.

    BalancedSplit: one balanced cycle becomes a smaller balanced cycle and a paired cycle.
    PairedSplit: one paired cycle becomes two paired cycles.
    BalancedMerge: two balanced cycles, one of them ``[i_1]``, become one paired cycle.
    """
    lo_p, lo_b = _cycle_supports(cover.lower.element)
    up_p, up_b = _cycle_supports(cover.upper.element)
    if cover.lower.element.ctype.family != "D":
        raise UsageError("cover classification is defined for type D")
    gone_b, new_b = up_b - lo_b, lo_b - up_b
    gone_p, new_p = up_p - lo_p, lo_p - up_p
    if not gone_b and not new_b and len(gone_p) == 1 and len(new_p) == 2:
        if set().union(*new_p) == next(iter(gone_p)):
            return CoverFamily.PairedSplit
    if len(gone_b) == 1 and len(new_b) == 1 and len(new_p) == 1 and not gone_p:
        (big,), (small,), (pair,) = gone_b, new_b, new_p
        if small | pair == big and not small & pair:
            return CoverFamily.BalancedSplit
    if len(gone_b) == 2 and not new_b and len(new_p) == 1 and not gone_p:
        i1, _ = coxeter_shape(cover.upper.coxeter)
        if frozenset((i1, -i1)) in gone_b and set().union(*gone_b) == next(iter(new_p)):
            return CoverFamily.BalancedMerge
    raise InvariantViolation(
        f"cover {cover.lower.element} < {cover.upper.element} matches no cycle replacement family"
    )

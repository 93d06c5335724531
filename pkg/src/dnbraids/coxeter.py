"""Coxeter groups of types A, B and D realized by (signed) permutations.

Elements are stored by their window ``(w(1), ..., w(n))``; the values on
negative letters follow from ``w(-i) = -w(i)``.  Composition is right to
left, ``(u * v)(i) = u(v(i))``.

>>> B3 = CoxeterType("B", 3)
>>> generator(B3, 0).window
(-1, 2, 3)
>>> s0, s1 = generator(B3, 0), generator(B3, 1)
>>> (s0 * s1 * s0).window
(-2, -1, 3)
>>> generator(CoxeterType("D", 3), 0).window
(-2, -1, 3)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator

from .errors import CapacityError, UsageError

DEFAULT_GROUP_BOUND = 10**7


@dataclass(frozen=True, slots=True)
class CoxeterType:
    """A family letter and the number of letters the group acts on.

    For family ``A`` the rank is the number of points, so ``CoxeterType("A", 3)``
    is the symmetric group S_3 (Coxeter type A_2).
    """

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in ("A", "B", "D"):
            raise UsageError(f"unknown family {self.family!r}; expected A, B or D")
        if not isinstance(self.rank, int) or self.rank < (1 if self.family == "A" else 2):
            raise UsageError(f"rank {self.rank!r} too small for family {self.family}")

    @property
    def generator_indices(self) -> range:
        return range(1, self.rank) if self.family == "A" else range(self.rank)

    @property
    def order(self) -> int:
        n = self.rank
        if self.family == "A":
            return math.factorial(n)
        if self.family == "B":
            return 2**n * math.factorial(n)
        return 2 ** (n - 1) * math.factorial(n)

    @property
    def name(self) -> str:
        """Conventional Coxeter name, e.g. ``D_4`` or ``A_2`` for S_3."""
        shown = self.rank - 1 if self.family == "A" else self.rank
        return f"{self.family}_{shown}"

    def __str__(self) -> str:
        return self.name


class SignedPermutation:
    """An element of W(A), W(B) or W(D) given by its window."""

    __slots__ = ("ctype", "window", "_hash")

    def __init__(self, ctype: CoxeterType, window: Iterable[int]):
        self.ctype = ctype
        self.window = tuple(window)
        self._hash = hash((ctype.family, self.window))

    @classmethod
    def from_window(cls, ctype: CoxeterType, window: Iterable[int]) -> SignedPermutation:
        window = tuple(int(v) for v in window)
        n = ctype.rank
        if len(window) != n or sorted(abs(v) for v in window) != list(range(1, n + 1)):
            raise UsageError(f"{list(window)} is not a signed permutation window of rank {n}")
        negatives = sum(1 for v in window if v < 0)
        if ctype.family == "A" and negatives:
            raise UsageError(f"{list(window)} has negative entries; not a type A element")
        if ctype.family == "D" and negatives % 2:
            raise UsageError(f"{list(window)} has an odd number of negative entries; not in {ctype}")
        return cls(ctype, window)

    def __call__(self, i: int) -> int:
        return self.window[i - 1] if i > 0 else -self.window[-i - 1]

    def __mul__(self, other: SignedPermutation) -> SignedPermutation:
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SignedPermutation)
            and self.window == other.window
            and self.ctype == other.ctype
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: SignedPermutation) -> bool:
        return self.window < other.window

    def __repr__(self) -> str:
        return f"SignedPermutation({self.ctype.name}, {list(self.window)})"

    def __str__(self) -> str:
        return format_cycles(self)

    def inverse(self) -> SignedPermutation:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.window, 1))

    def in_type_d(self) -> bool:
        return sum(1 for v in self.window if v < 0) % 2 == 0

    def to_json(self) -> dict:
        return {"family": self.ctype.family, "rank": self.ctype.rank, "window": list(self.window)}

    def with_type(self, ctype: CoxeterType) -> SignedPermutation:
        """Reinterpret the same window in another family (e.g. a D element inside B)."""
        return SignedPermutation.from_window(ctype, self.window)


def _check_same(u: SignedPermutation, v: SignedPermutation) -> None:
    if u.ctype != v.ctype:
        raise UsageError(f"type mismatch: {u.ctype} vs {v.ctype}")


def identity(ctype: CoxeterType) -> SignedPermutation:
    return SignedPermutation(ctype, range(1, ctype.rank + 1))


def compose(u: SignedPermutation, v: SignedPermutation) -> SignedPermutation:
    """Right-to-left product: ``compose(u, v)(i) = u(v(i))``."""
    _check_same(u, v)
    uw = u.window
    return SignedPermutation(u.ctype, tuple(uw[x - 1] if x > 0 else -uw[-x - 1] for x in v.window))


def inverse(u: SignedPermutation) -> SignedPermutation:
    out = [0] * u.ctype.rank
    for i, x in enumerate(u.window, 1):
        if x > 0:
            out[x - 1] = i
        else:
            out[-x - 1] = -i
    return SignedPermutation(u.ctype, out)


def product_of(ctype: CoxeterType, elements: Iterable[SignedPermutation]) -> SignedPermutation:
    result = identity(ctype)
    for g in elements:
        result = compose(result, g)
    return result


# ---------------------------------------------------------------- generators


def generator(ctype: CoxeterType, index: int) -> SignedPermutation:
    """The simple reflection with the given index.

    B: s_0 = [-1, 2, ...], s_i swaps i and i+1.  D: t_0 = s_0 s_1 s_0,
    t_i = s_i.  A: the adjacent transposition (i, i+1), i >= 1.
    """
    if index not in ctype.generator_indices:
        raise UsageError(f"generator index {index} out of range for {ctype}")
    return _generator(ctype, index)


@lru_cache(maxsize=None)
def _generator(ctype: CoxeterType, index: int) -> SignedPermutation:
    w = list(range(1, ctype.rank + 1))
    if index == 0 and ctype.family == "B":
        w[0] = -1
    elif index == 0:
        w[0], w[1] = -2, -1
    else:
        w[index - 1], w[index] = w[index], w[index - 1]
    return SignedPermutation(ctype, w)


def generators(ctype: CoxeterType) -> list[SignedPermutation]:
    return [_generator(ctype, i) for i in ctype.generator_indices]


def generator_symbol(ctype: CoxeterType, index: int) -> str:
    return {"A": "sig", "B": "s", "D": "t"}[ctype.family] + str(index)


def left_multiply_generator(index: int, w: SignedPermutation) -> SignedPermutation:
    return compose(_generator(w.ctype, index), w)


def right_multiply_generator(w: SignedPermutation, index: int) -> SignedPermutation:
    return compose(w, _generator(w.ctype, index))


# ---------------------------------------------------------------- lengths and descents


def _statistics(window: tuple[int, ...]) -> tuple[int, int, int]:
    """(inversions, negative entries, negative-sum pairs) of a window."""
    inv = nsp = 0
    n = len(window)
    for i in range(n):
        a = window[i]
        for j in range(i + 1, n):
            b = window[j]
            if a > b:
                inv += 1
            if a + b < 0:
                nsp += 1
    neg = sum(1 for v in window if v < 0)
    return inv, neg, nsp


@lru_cache(maxsize=1 << 18)
def _length(family: str, window: tuple[int, ...]) -> int:
    inv, neg, nsp = _statistics(window)
    if family == "A":
        return inv
    if family == "B":
        return inv + neg + nsp
    return inv + nsp


def coxeter_length(u: SignedPermutation) -> int:
    return _length(u.ctype.family, u.window)


@lru_cache(maxsize=1 << 18)
def _right_descents(family: str, window: tuple[int, ...]) -> frozenset[int]:
    out = {i for i in range(1, len(window)) if window[i - 1] > window[i]}
    if family == "B" and window[0] < 0:
        out.add(0)
    elif family == "D" and window[0] + window[1] < 0:
        out.add(0)
    return frozenset(out)


def right_descents(u: SignedPermutation) -> frozenset[int]:
    return _right_descents(u.ctype.family, u.window)


def left_descents(u: SignedPermutation) -> frozenset[int]:
    return _right_descents(u.ctype.family, inverse(u).window)


# ---------------------------------------------------------------- group-level data


@lru_cache(maxsize=None)
def longest_element(ctype: CoxeterType) -> SignedPermutation:
    """Found by multiplying by ascents until none remain."""
    w = identity(ctype)
    indices = set(ctype.generator_indices)
    while True:
        ascents = sorted(indices - right_descents(w))
        if not ascents:
            return w
        w = right_multiply_generator(w, ascents[0])


def _reflection_windows(ctype: CoxeterType) -> list[tuple[int, ...]]:
    n = ctype.rank
    found = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for sign in ((1, -1) if ctype.family != "A" else (1,)):
                w = list(range(1, n + 1))
                w[i - 1], w[j - 1] = sign * j, sign * i
                found.append(tuple(w))
        if ctype.family == "B":
            w = list(range(1, n + 1))
            w[i - 1] = -i
            found.append(tuple(w))
    return found


def reflection_key(t: SignedPermutation) -> tuple:
    """Sort key (min moved letter, max moved letter, sign pattern)."""
    moved = [i for i, v in enumerate(t.window, 1) if v != i]
    negative = tuple(t.window[i - 1] < 0 for i in moved)
    return (min(moved), max(moved), negative)


@lru_cache(maxsize=None)
def reflections(ctype: CoxeterType) -> tuple[SignedPermutation, ...]:
    """All reflections, in the fixed deterministic order of ``reflection_key``."""
    ts = [SignedPermutation(ctype, w) for w in _reflection_windows(ctype)]
    return tuple(sorted(ts, key=reflection_key))


@lru_cache(maxsize=None)
def reflection_set(ctype: CoxeterType) -> frozenset[SignedPermutation]:
    return frozenset(reflections(ctype))


def is_reflection(u: SignedPermutation) -> bool:
    return u in reflection_set(u.ctype)


def enumerate_group(ctype: CoxeterType, bound: int = DEFAULT_GROUP_BOUND) -> Iterator[SignedPermutation]:
    """Every element exactly once, in lexicographic order of (|window|, signs)."""
    if ctype.order > bound:
        raise CapacityError(f"|W({ctype})| = {ctype.order} exceeds the enumeration bound {bound}")
    n = ctype.rank
    for perm in permutations(range(1, n + 1)):
        if ctype.family == "A":
            yield SignedPermutation(ctype, perm)
            continue
        for signs in product((1, -1), repeat=n):
            if ctype.family == "D" and signs.count(-1) % 2:
                continue
            yield SignedPermutation(ctype, tuple(s * p for s, p in zip(signs, perm)))


@lru_cache(maxsize=8)
def group_elements(ctype: CoxeterType, bound: int = DEFAULT_GROUP_BOUND) -> tuple[SignedPermutation, ...]:
    return tuple(enumerate_group(ctype, bound))


def word_to_element(ctype: CoxeterType, indices: Iterable[int]) -> SignedPermutation:
    """Product of generators listed left to right."""
    return product_of(ctype, (generator(ctype, i) for i in indices))


# ---------------------------------------------------------------- cycles


@dataclass(frozen=True)
class CycleDecomposition:
    """Paired cycles ((i_1..i_r)) (each standing for it and its negative) and
    balanced cycles [i_1..i_r] = (i_1..i_r, -i_1..-i_r).  Fixed letters are omitted.
    For family A the ordinary cycles are stored in ``paired``.
    """

    paired: tuple[tuple[int, ...], ...]
    balanced: tuple[tuple[int, ...], ...]


def _orbits(u: SignedPermutation) -> list[tuple[int, ...]]:
    n = u.ctype.rank
    letters = list(range(1, n + 1)) if u.ctype.family == "A" else [
        s * i for i in range(1, n + 1) for s in (1, -1)
    ]
    seen: set[int] = set()
    orbits = []
    for a in letters:
        if a in seen:
            continue
        orbit = [a]
        seen.add(a)
        b = u(a)
        while b != a:
            orbit.append(b)
            seen.add(b)
            b = u(b)
        orbits.append(tuple(orbit))
    return orbits


def _rotate_to(cycle: tuple[int, ...], start: int) -> tuple[int, ...]:
    k = cycle.index(start)
    return cycle[k:] + cycle[:k]


def cycle_decomposition(u: SignedPermutation) -> CycleDecomposition:
    paired, balanced = [], []
    done: set[int] = set()
    for orbit in _orbits(u):
        if orbit[0] in done:
            continue
        done.update(orbit)
        if u.ctype.family == "A":
            if len(orbit) > 1:
                paired.append(_rotate_to(orbit, min(orbit)))
            continue
        if -orbit[0] in orbit:
            full = _rotate_to(orbit, min(orbit) if len(orbit) > 2 else max(orbit))
            balanced.append(full[: len(full) // 2])
        else:
            done.update(-a for a in orbit)
            if len(orbit) > 1:
                anchor = min(orbit + tuple(-a for a in orbit), key=lambda a: (abs(a), a < 0))
                rep = orbit if anchor in orbit else tuple(-a for a in orbit)
                paired.append(_rotate_to(rep, anchor))
    paired.sort(key=lambda c: abs(c[0]))
    balanced.sort(key=lambda c: min(abs(a) for a in c))
    return CycleDecomposition(tuple(paired), tuple(balanced))


def format_cycles(u: SignedPermutation) -> str:
    """Cycle notation, e.g. ``((1,-8))((2,-7,-5))`` or ``[2][-8,-7,-5,-3,-1,4,6]``."""
    dec = cycle_decomposition(u)
    if not dec.paired and not dec.balanced:
        return "e"
    join = lambda c: ",".join(str(a) for a in c)  # noqa: E731
    if u.ctype.family == "A":
        return "".join(f"({join(c)})" for c in dec.paired)
    return "".join(f"(({join(c)}))" for c in dec.paired) + "".join(f"[{join(c)}]" for c in dec.balanced)


_TOKEN = re.compile(r"\s*(?:\(\(([^()]*)\)\)|\[([^\[\]]*)\]|\(([^()]*)\))\s*")


def _ints(body: str) -> list[int]:
    body = body.strip()
    if not body:
        return []
    try:
        return [int(x) for x in re.split(r"[,\s]+", body) if x]
    except ValueError as exc:
        raise UsageError(f"bad cycle entry in {body!r}") from exc


def parse_element(ctype: CoxeterType, text: str, notation: str = "auto") -> SignedPermutation:
    """Parse window notation ``[-2,1,3]`` or cycle notation ``((8,7,5))[6,3,1][2]``.

    With ``notation="auto"`` a single bracket group listing each of 1..n exactly
    once up to sign is read as a window; ``"cycles"`` and ``"window"`` force one
    reading.  Otherwise the input is a product of cycles, where
    ``((..))`` is a paired cycle, ``[..]`` a balanced cycle and ``(..)`` a plain
    cycle on signed letters.  ``e`` or ``()`` is the identity.
    """
    if notation not in ("auto", "cycles", "window"):
        raise UsageError(f"unknown notation {notation!r}")
    text = text.strip()
    n = ctype.rank
    if notation == "window":
        return SignedPermutation.from_window(ctype, _ints(text.strip("[]")))
    if text in ("e", "", "()", "1"):
        return identity(ctype)
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse element {text!r} near position {pos}")
        tokens.append(m.groups())
        pos = m.end()
    if notation == "auto" and len(tokens) == 1 and tokens[0][1] is not None:
        entries = _ints(tokens[0][1])
        if len(entries) == n and sorted(abs(v) for v in entries) == list(range(1, n + 1)):
            return SignedPermutation.from_window(ctype, entries)
    mapping = {a: a for i in range(1, n + 1) for a in (i, -i)}
    # apply cycles right to left
    for paired, balanced, plain in reversed(tokens):
        cycles: list[list[int]] = []
        if paired is not None:
            c = _ints(paired)
            cycles = [c, [-a for a in c]]
        elif balanced is not None:
            c = _ints(balanced)
            cycles = [c + [-a for a in c]]
        else:
            cycles = [_ints(plain)]
        step = {}
        for c in cycles:
            if len(set(c)) != len(c) or any(not 1 <= abs(a) <= n for a in c):
                raise UsageError(f"invalid cycle {c} for rank {n}")
            for k, a in enumerate(c):
                step[a] = c[(k + 1) % len(c)]
        mapping = {a: step.get(b, b) for a, b in mapping.items()}
    if ctype.family == "A":
        if any(mapping[i] < 0 for i in range(1, n + 1)):
            raise UsageError(f"{text!r} uses negative letters; not a permutation")
    elif any(mapping[-i] != -mapping[i] for i in range(1, n + 1)):
        raise UsageError(f"{text!r} does not commute with negation; not a signed permutation")
    return SignedPermutation.from_window(ctype, [mapping[i] for i in range(1, n + 1)])


def element_from_json(data: dict) -> SignedPermutation:
    ctype = CoxeterType(data["family"], int(data["rank"]))
    return SignedPermutation.from_window(ctype, data["window"])

"""Mikado braids: elements of the form x^-1 y with x, y positive lifts of W.

Two certificates are offered.  ``is_mikado_search`` scans u in W for which
``lift(u) * beta`` is simple.  ``is_mikado_garside`` reads the normal form:
since ``lift(x)^-1 = Delta^-1 * simple``, a braid is Mikado exactly when its
normal form has ``inf >= -1`` and ``sup <= 1``; this is only used for
(family, rank) pairs registered by :func:`calibrate`.

Symmetric braids on 2n strands are described by :class:`CrossingData`.
Strands are labelled by their top positions ``-n < ... < -1 < 1 < ... < n``;
``s_0`` crosses the middle gap and ``s_i`` the gaps (i, i+1) and (-i-1, -i).
In a positive crossing the strand coming from the right passes over.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .coxeter import (
    CoxeterType,
    SignedPermutation,
    compose,
    group_elements,
    inverse,
)
from .errors import CapacityError, InvariantViolation, UsageError
from .garside import (
    ArtinWord,
    letter_of,
    lift_word,
    multiply_simple_left,
    normal_form,
    simple_of,
)

SEARCH_BOUND = 50_000


@dataclass(frozen=True)
class MikadoWitness:
    """beta = lift(x)^-1 * lift(y)."""

    x: SignedPermutation
    y: SignedPermutation

    def word(self) -> ArtinWord:
        return lift_word(self.x).inverse() * lift_word(self.y)


def is_mikado_search(
    word: ArtinWord, bound: int = SEARCH_BOUND, precheck: bool = True
) -> MikadoWitness | None:
    """Least witness (by window of x) found by scanning the whole group.

    For calibrated types the normal-form bounds are consulted first, so a
    braid outside them is rejected without scanning.
    """
    if word.ctype.order > bound:
        raise CapacityError(f"witness search limited to |W| <= {bound}")
    nf = normal_form(word)
    if precheck and word.ctype in _CALIBRATED and not (nf.inf >= -1 and nf.sup <= 1):
        return None
    for u in group_elements(word.ctype):
        y = simple_of(multiply_simple_left(u, nf))
        if y is not None:
            return MikadoWitness(u, y)
    return None


_CALIBRATED: set[CoxeterType] = set()


def is_calibrated(ctype: CoxeterType) -> bool:
    return ctype in _CALIBRATED


def is_mikado_garside(word: ArtinWord, require_calibration: bool = True) -> bool:
    if require_calibration and word.ctype not in _CALIBRATED:
        raise UsageError(
            f"the normal-form test is not calibrated for {word.ctype}; run calibrate() or use is_mikado_search"
        )
    nf = normal_form(word)
    return nf.inf >= -1 and nf.sup <= 1


@dataclass
class CalibrationResult:
    ctype: CoxeterType
    pairs: int
    random_words: int
    disagreements: list[str]

    @property
    def ok(self) -> bool:
        return not self.disagreements


def _random_word(ctype: CoxeterType, rng: random.Random, max_len: int) -> ArtinWord:
    n = rng.randint(0, max_len)
    return ArtinWord(
        ctype,
        tuple(letter_of(ctype, rng.choice(ctype.generator_indices), rng.choice((1, -1))) for _ in range(n)),
    )


def calibrate(
    ctype: CoxeterType,
    random_words: int = 1000,
    seed: int = 0,
    pair_sample: int | None = None,
    max_len: int = 8,
) -> CalibrationResult:
    """Compare the normal-form test with the witness search.

    All pairs (x, y) are checked unless ``pair_sample`` is given, in which case
    that many random pairs are drawn.  Random words have length up to ``max_len``.
    The type is registered as calibrated only if nothing disagrees.
    """
    rng = random.Random(seed)
    elems = group_elements(ctype)
    if pair_sample is None:
        pairs: Iterable[tuple[SignedPermutation, SignedPermutation]] = (
            (x, y) for x in elems for y in elems
        )
        count = len(elems) ** 2
    else:
        pairs = [(rng.choice(elems), rng.choice(elems)) for _ in range(pair_sample)]
        count = pair_sample
    bad = []
    for x, y in pairs:
        beta = lift_word(x).inverse() * lift_word(y)
        if not is_mikado_garside(beta, require_calibration=False) or is_mikado_search(beta, precheck=False) is None:
            bad.append(f"pair x={list(x.window)} y={list(y.window)}")
    for _ in range(random_words):
        w = _random_word(ctype, rng, max_len)
        if is_mikado_garside(w, require_calibration=False) != (is_mikado_search(w, precheck=False) is not None):
            bad.append(f"word {list(w.letters)}")
    if not bad:
        _CALIBRATED.add(ctype)
    return CalibrationResult(ctype, count, random_words, bad)


# ---------------------------------------------------------------- symmetric crossing data


def _labels(n: int) -> list[int]:
    return list(range(-n, 0)) + list(range(1, n + 1))


@dataclass(frozen=True)
class CrossingData:
    """Reduced crossing pattern of a symmetric braid on 2n strands.

    ``endpoint[p]`` is the bottom position of the strand starting at p.
    ``signs[(p, q)]`` for p < q is +1 when p passes under q, -1 when p passes
    over q; pairs that do not cross are absent.
    """

    rank: int
    endpoint: dict[int, int]
    signs: dict[tuple[int, int], int]

    def sign(self, p: int, q: int) -> int:
        if p < q:
            return self.signs.get((p, q), 0)
        return -self.signs.get((q, p), 0)

    def over(self, p: int, q: int) -> bool:
        """True when strand p passes over strand q at their crossing."""
        return self.sign(p, q) == -1

    @property
    def labels(self) -> list[int]:
        return _labels(self.rank)

    def endpoint_permutation(self, ctype: CoxeterType | None = None) -> SignedPermutation:
        ctype = ctype or CoxeterType("B", self.rank)
        return SignedPermutation(ctype, [self.endpoint[i] for i in range(1, self.rank + 1)])

    def is_consistent(self) -> bool:
        """Pairs cross exactly when their bottom order is reversed."""
        labs = self.labels
        for a, p in enumerate(labs):
            for q in labs[a + 1 :]:
                crossed = self.endpoint[p] > self.endpoint[q]
                if crossed != ((p, q) in self.signs) or self.signs.get((p, q), 1) not in (1, -1):
                    return False
        return True

    def is_symmetric(self) -> bool:
        if any(self.endpoint[-p] != -self.endpoint[p] for p in self.labels):
            return False
        return all(self.signs.get((-q, -p)) == s for (p, q), s in self.signs.items())

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "endpoint": {str(p): self.endpoint[p] for p in self.labels},
            "signs": [[p, q, s] for (p, q), s in sorted(self.signs.items())],
        }


def crossing_data(x: SignedPermutation, y: SignedPermutation) -> CrossingData:
    """Crossings of lift(x)^-1 lift(y) after cancelling pairs that cross twice.

    In lift(x)^-1 the strand at p moves to x(p) with negative crossings; then
    lift(y) moves position a to y^-1(a) with positive crossings.
    """
    if x.ctype != y.ctype or x.ctype.family == "A":
        raise UsageError("crossing data needs two elements of the same type B or D group")
    n = x.ctype.rank
    yi = inverse(y)
    labs = _labels(n)
    signs = {}
    for k, p in enumerate(labs):
        for q in labs[k + 1 :]:
            a, b = x(p), x(q)
            in_x = a > b
            in_y = (a < b) != (yi(a) < yi(b))
            if in_x != in_y:
                signs[(p, q)] = -1 if in_x else 1
    endpoint = {p: yi(x(p)) for p in labs}
    return CrossingData(n, endpoint, signs)


def rebuild_word(data: CrossingData) -> ArtinWord:
    """A type B word realizing the crossing pattern, by symmetric bubble sorting."""
    n = data.rank
    B = CoxeterType("B", n)
    row = _labels(n)  # row[k] = strand currently at the k-th position
    mid = n  # row[mid - 1], row[mid] straddle the middle gap
    letters = []
    for _ in range(n * n * 4 + 4):
        for gen in range(n):
            k = mid - 1 if gen == 0 else mid + gen - 1
            a, b = row[k], row[k + 1]
            if data.endpoint[a] > data.endpoint[b]:
                break
        else:
            return ArtinWord(B, tuple(letters))
        s = data.sign(a, b)
        if s == 0:
            raise InvariantViolation(f"strands {a}, {b} must cross but have no recorded sign")
        right_over = s == 1  # a (left) passes under b (right)
        letters.append(letter_of(B, gen, 1 if right_over else -1))
        row[k], row[k + 1] = b, a
        if gen:
            m = 2 * n - 1 - (k + 1)
            ma, mb = row[m], row[m + 1]
            if data.endpoint[ma] < data.endpoint[mb] or data.sign(ma, mb) != s:
                raise InvariantViolation("crossing data is not mirror symmetric")
            row[m], row[m + 1] = mb, ma
    raise InvariantViolation("bubble sort did not terminate")  # pragma: no cover


@dataclass(frozen=True)
class RemovalResult:
    success: bool
    order: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.success


def strand_removal_test(data: CrossingData) -> RemovalResult:
    """Repeatedly delete a strand lying over everything it meets, with its mirror."""
    if not data.is_symmetric():
        raise UsageError("strand removal needs symmetric crossing data")
    alive = set(data.labels)
    order = []
    while True:
        crossing = {p for p in alive if any(data.sign(p, q) for q in alive if q != p)}
        if not crossing:
            return RemovalResult(True, tuple(order))
        top = next(
            (
                p
                for p in sorted(crossing, key=lambda p: (abs(p), p))
                if all(not data.sign(p, q) or data.over(p, q) for q in alive if q != p)
            ),
            None,
        )
        if top is None:
            return RemovalResult(False, tuple(order))
        order.append(top)
        alive -= {top, -top}


def depth_factorization(data: CrossingData, order: Iterable[int]) -> tuple[SignedPermutation, SignedPermutation]:
    """(u, v) from a strand removal order: the k-th removed strand is sent to n - k + 1."""
    n = data.rank
    B = CoxeterType("B", n)
    u_map = {}
    pos = n
    for p in order:
        u_map[p], u_map[-p] = pos, -pos
        pos -= 1
    # strands left over cross nothing among themselves and keep their order
    rest = sorted(p for p in data.labels if p not in u_map)
    free = sorted({q for q in range(-pos, pos + 1) if q})
    for p, q in zip(rest, free):
        u_map[p] = q
    u = SignedPermutation.from_window(B, [u_map[i] for i in range(1, n + 1)])
    end = data.endpoint_permutation(B)
    v = compose(u, inverse(end))
    return u, v


def inversion_factorization(data: CrossingData) -> tuple[SignedPermutation, SignedPermutation] | None:
    """(u, v) with the inversion set of u equal to the negative crossings, if one exists."""
    n = data.rank
    B = CoxeterType("B", n)
    labs = data.labels

    def before(p: int, q: int) -> bool:
        if p < q:
            return data.signs.get((p, q)) != -1
        return data.signs.get((q, p)) == -1

    ranked = sorted(labs, key=lambda p: sum(1 for q in labs if q != p and before(q, p)))
    positions = _labels(n)
    u_map = dict(zip(ranked, positions))
    if any(u_map[-p] != -u_map[p] for p in labs):
        return None
    u = SignedPermutation(B, [u_map[i] for i in range(1, n + 1)])
    negs = {pq for pq, s in data.signs.items() if s == -1}
    inv = {(p, q) for i, p in enumerate(labs) for q in labs[i + 1 :] if u(p) > u(q)}
    if inv != negs:
        return None
    v = compose(u, inverse(data.endpoint_permutation(B)))
    return u, v


def crossing_to_factorization(data: CrossingData) -> MikadoWitness:
    """Recover x, y with lift(x)^-1 lift(y) realizing the crossing pattern."""
    found = inversion_factorization(data)
    if found is None or crossing_data(*found) != data:
        trace = strand_removal_test(data)
        if not trace:
            raise InvariantViolation("crossing data admits no strand removal; not a Mikado pattern")
        found = depth_factorization(data, trace.order)
    u, v = found
    if crossing_data(u, v).endpoint != data.endpoint:
        raise InvariantViolation("factorization does not reproduce the strand endpoints")
    return MikadoWitness(u, v)


def mikado_pairs_words(ctype: CoxeterType) -> list[ArtinWord]:
    elems = group_elements(ctype)
    return [lift_word(x).inverse() * lift_word(y) for x in elems for y in elems]


def mik_d_correspondence(rank: int) -> dict:
    """Compare rewritten type B Mikado braids with type D Mikado braids, as normal forms."""
    from .bridge import rewrite_B_to_D

    if rank > 3:
        raise CapacityError("the type B/D Mikado correspondence is enumerated only up to rank 3")
    B, D = CoxeterType("B", rank), CoxeterType("D", rank)
    from_b = set()
    for x in group_elements(B):
        lx = lift_word(x).inverse()
        for y in group_elements(B):
            if compose(inverse(x), y).in_type_d():
                from_b.add(normal_form(rewrite_B_to_D(lx * lift_word(y))))
    from_d = set()
    for u in group_elements(D):
        lu = lift_word(u).inverse()
        for v in group_elements(D):
            from_d.add(normal_form(lu * lift_word(v)))
    return {
        "rank": rank,
        "from_b": len(from_b),
        "from_d": len(from_d),
        "only_b": len(from_b - from_d),
        "only_d": len(from_d - from_b),
        "equal": from_b == from_d,
    }


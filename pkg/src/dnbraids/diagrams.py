"""Noncrossing diagrams for type D and the symmetric braids they carry.

The 2n-2 labels other than +-i_1 sit on a centrally symmetric convex rim, with
heights decreasing as labels increase: label -n is the top, n is the bottom.
The rim is the lens x = +-(n^2 - y^2), whose cyclic order matches a circle.
The labels +-i_1 share the center. For braids they are split into two axis
points at heights -+eps^2.

All coordinates live in Q[eps] (see ``exact``), so every side-of-line test is an
exact sign computation.

Each element x <=_T c draws as non-intersecting polygons, one per cycle. The
vertical diagram orients every edge as strand k -> x^-1(k). Its braid crosses
a pair of strands exactly when their end positions are reversed, and the
strand lying further east at a common height passes over.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .absolute import coxeter_shape, leq_T, require_standard
from .coxeter import SignedPermutation, cycle_decomposition, inverse
from .dual import DualContext, simple_word
from .errors import InvariantViolation, UsageError
from .exact import (
    ZERO,
    Eps,
    convex_hull,
    convex_sets_intersect,
    cross,
    on_segment,
    orientation,
    point_in_convex,
    segments_intersect,
)
from .garside import ArtinWord, words_equal
from .mikado import CrossingData, MikadoWitness, crossing_to_factorization

EPS = Eps.eps()

# ---------------------------------------------------------------- labeling


@dataclass(frozen=True)
class CircleLabeling:
    """Positions of the 2n labels; ``position`` is the split picture."""

    coxeter: SignedPermutation
    i1: int
    rim: tuple[int, ...]
    position: dict[int, tuple[Eps, Eps]]

    @property
    def rank(self) -> int:
        return self.coxeter.ctype.rank

    def height(self, label: int) -> Eps:
        return self.position[label][1]

    def is_center(self, label: int) -> bool:
        return abs(label) == self.i1

    def unsplit(self, label: int) -> tuple[Eps, Eps]:
        """Position in the picture where +-i_1 are a single center point."""
        return (ZERO, ZERO) if self.is_center(label) else self.position[label]


def _rim_height(label: int, i1: int) -> Eps:
    if i1 == 2 and abs(label) == 1:
        return Eps.eps(3, -label)
    return Eps.lift(-label)


def c_labeling(c: SignedPermutation) -> CircleLabeling:
    if c.ctype.family != "D" or c.ctype.rank < 3:
        raise UsageError("c-labelings are defined for D_n with n >= 3")
    require_standard(c)
    n = c.ctype.rank
    i1, seq = coxeter_shape(c)
    right = seq[1:]
    rim = (seq[0],) + right + (n,) + tuple(-a for a in right)
    span = Eps.lift(n * n)
    position: dict[int, tuple[Eps, Eps]] = {}
    for label in rim:
        h = _rim_height(label, i1)
        side = 0 if abs(label) == n else (1 if label in right else -1)
        position[label] = ((span - h * h) * side, h)
    position[i1] = (ZERO, Eps.eps(2, -1))
    position[-i1] = (ZERO, Eps.eps(2, 1))
    return CircleLabeling(c, i1, rim, position)


def rim_cycle(lab: CircleLabeling) -> tuple[int, ...]:
    """Balanced (n-1)-cycle read clockwise off the rim, as a half starting at -n."""
    return lab.rim[: lab.rank - 1]


# ---------------------------------------------------------------- AR diagrams


class BlockKind(enum.Enum):
    PAIRED = "paired"
    SYMMETRIC = "symmetric"
    CENTER = "center"


@dataclass(frozen=True)
class Polygon:
    cycle: tuple[int, ...]
    kind: BlockKind
    vertices: tuple[tuple[Eps, Eps], ...]


@dataclass
class NCDiagram:
    labeling: CircleLabeling
    element: SignedPermutation
    polygons: list[Polygon]
    shared_center: bool = False
    doubled_center: bool = False
    noncrossing: bool = True
    reason: str = ""


def _blocks(x: SignedPermutation) -> list[tuple[tuple[int, ...], BlockKind]]:
    dec = cycle_decomposition(x)
    out: list[tuple[tuple[int, ...], BlockKind]] = []
    for cyc in dec.paired:
        out.append((cyc, BlockKind.PAIRED))
        out.append((tuple(-a for a in cyc), BlockKind.PAIRED))
    for cyc in dec.balanced:
        out.append((cyc + tuple(-a for a in cyc), BlockKind.SYMMETRIC))
    return out


def build_diagram(x: SignedPermutation, c: SignedPermutation) -> NCDiagram:
    """Polygons of x in the c-labeled disk, with the verdict of the intersection tests."""
    lab = c_labeling(c)
    if x.ctype != c.ctype:
        raise UsageError("x and c must live in the same group")
    blocks = _blocks(x)
    polys = []
    for cyc, kind in blocks:
        if kind is BlockKind.SYMMETRIC and len(cyc) == 2 and lab.is_center(cyc[0]):
            kind = BlockKind.CENTER
        polys.append(Polygon(cyc, kind, tuple(lab.unsplit(a) for a in cyc)))
    diagram = NCDiagram(lab, x, polys)
    symmetric = [p for p in polys if p.kind is not BlockKind.PAIRED]
    if symmetric:
        if len(symmetric) != 2 or not any(p.kind is BlockKind.CENTER for p in symmetric):
            diagram.noncrossing = False
            diagram.reason = "balanced cycles other than [i_1] must come with [i_1] and be unique"
            return diagram
        other = next(p for p in symmetric if p.kind is BlockKind.SYMMETRIC)
        diagram.doubled_center = len(other.cycle) == 2
    drawn = [p for p in polys if p.kind is not BlockKind.CENTER]
    for p in drawn:
        if not _clockwise(lab, x, p):
            diagram.noncrossing = False
            diagram.reason = f"cycle {p.cycle} does not run clockwise"
            return diagram
    for k, p in enumerate(drawn):
        for q in drawn[k + 1 :]:
            if not convex_sets_intersect(list(p.vertices), list(q.vertices)):
                continue
            if _mirror_pair_sharing_center(lab, p, q):
                diagram.shared_center = True
                continue
            diagram.noncrossing = False
            diagram.reason = f"blocks {p.cycle} and {q.cycle} intersect"
            return diagram
    return diagram


def _mirror_pair_sharing_center(lab: CircleLabeling, p: Polygon, q: Polygon) -> bool:
    """Q and -Q through the center may touch there and nowhere else."""
    if p.kind is not BlockKind.PAIRED or sorted(q.cycle) != sorted(-a for a in p.cycle):
        return False
    if not any(lab.is_center(a) for a in p.cycle):
        return False
    rim = [lab.unsplit(a) for a in p.cycle if not lab.is_center(a)]
    return not point_in_convex((ZERO, ZERO), convex_hull(rim))


def _clockwise(lab: CircleLabeling, x: SignedPermutation, p: Polygon) -> bool:
    """x sends each vertex of the polygon to the next one clockwise."""
    if len(p.cycle) < 3:
        return True
    hull = convex_hull(list(p.vertices))
    if len(hull) != len(p.cycle):
        return False
    label_at = {v: a for a, v in zip(p.cycle, p.vertices)}
    ring = [label_at[v] for v in hull]
    return all(x(ring[k]) == ring[k - 1] for k in range(len(ring)))


def is_noncrossing_geometric(x: SignedPermutation, c: SignedPermutation) -> bool:
    return build_diagram(x, c).noncrossing


# ---------------------------------------------------------------- strand curves


@dataclass(frozen=True)
class Curve:
    """The path of strand ``source`` to position ``target``; heights are monotone."""

    source: int
    target: int
    block: int
    vertices: tuple[tuple[Eps, Eps], ...]

    @property
    def low(self) -> Eps:
        return min(self.vertices[0][1], self.vertices[-1][1])

    @property
    def high(self) -> Eps:
        return max(self.vertices[0][1], self.vertices[-1][1])

    def x_at(self, y: Eps) -> tuple[Eps, Eps]:
        """x-coordinate at height y as a fraction (numerator, denominator)."""
        for p, q in zip(self.vertices, self.vertices[1:]):
            lo, hi = min(p[1], q[1]), max(p[1], q[1])
            if lo <= y <= hi and p[1] != q[1]:
                return p[0] * (q[1] - y) + q[0] * (y - p[1]), q[1] - p[1]
        raise InvariantViolation(f"height outside strand {self.source}")


def _east_of(a: tuple[Eps, Eps], b: tuple[Eps, Eps]) -> int:
    """Sign of a - b for two fractions given as (numerator, denominator)."""
    return (a[0] * b[1] - b[0] * a[1]).sign() * (a[1] * b[1]).sign()


def _point_fraction(p: tuple[Eps, Eps]) -> tuple[Eps, Eps]:
    return p[0], Eps.lift(1)


def _bigon_vertex(p, q, sign: int):
    """Midpoint of pq pushed by eps^4 to the east (sign=1) or west, perpendicular to pq."""
    if q[1] < p[1]:
        p, q = q, p
    dx, dy = q[0] - p[0], q[1] - p[1]
    off = Eps.eps(4, sign)
    return ((p[0] + q[0]) / 2 + dy * off, (p[1] + q[1]) / 2 - dx * off)


@dataclass
class StrandPicture:
    """Split diagram of x as curves (moving strands) and points (fixed strands)."""

    labeling: CircleLabeling
    element: SignedPermutation
    curves: dict[int, Curve]
    points: dict[int, tuple[Eps, Eps]]
    blocks: list[tuple[int, ...]]
    override: dict[tuple[int, int], int] = field(default_factory=dict)


def _reroute_needed(lab: CircleLabeling, split: int, far: int) -> bool:
    mirror_h = lab.height(-split)
    h = lab.height(far)
    return h > mirror_h if mirror_h > 0 else h < mirror_h


def strand_picture(x: SignedPermutation, c: SignedPermutation, route: str = "auto") -> StrandPicture:
    """Curves of the split diagram.

    Curves from a split point to labels beyond the other split point detour
    around it, east or west as ``route`` says.  ``auto`` takes east unless that
    makes two curves cross, which happens when the block also holds a label
    near the equator on the west.
    """
    if route == "auto":
        pic = _draw(x, c, "east")
        if pic.override or not crossing_curves(pic):
            return pic
        pic = _draw(x, c, "west")
        if crossing_curves(pic):
            raise InvariantViolation(f"no planar split diagram for x={x}")
        return pic
    if route not in ("east", "west"):
        raise UsageError("route must be 'auto', 'east' or 'west'")
    return _draw(x, c, route)


def planar_routes(x: SignedPermutation, c: SignedPermutation) -> list[str]:
    """Detour sides giving a diagram without crossing curves."""
    found = []
    for route in ("east", "west"):
        pic = _draw(x, c, route)
        if pic.override or not crossing_curves(pic):
            found.append(route)
    return found


def _draw(x: SignedPermutation, c: SignedPermutation, route: str) -> StrandPicture:
    if x.ctype != c.ctype or not leq_T(x, c):
        raise UsageError(f"{x} is not below {c} in the absolute order")
    lab = c_labeling(c)
    pos = lab.position
    xi = inverse(x)
    dec = cycle_decomposition(x)
    side = 1 if route == "east" else -1
    curves: dict[int, Curve] = {}
    blocks: list[tuple[int, ...]] = []

    def add(source: int, block: int, *via) -> None:
        target = xi(source)
        curves[source] = Curve(source, target, block, (pos[source], *via, pos[target]))

    paired, balanced = dec.paired, dec.balanced
    for cyc in paired:
        for sgn in (1, -1):
            cycle = tuple(sgn * a for a in cyc)
            blocks.append(cycle)
            b = len(blocks) - 1
            split = next((a for a in cycle if lab.is_center(a)), None)
            if split is None or split > 0:
                _draw_paired(lab, cycle, b, split, side, xi, add, pos)
    # a block holding the upper split point is the point reflection of its mirror
    for cyc in paired:
        for sgn in (1, -1):
            cycle = tuple(sgn * a for a in cyc)
            split = next((a for a in cycle if lab.is_center(a)), None)
            if split is not None and split < 0:
                b = blocks.index(cycle)
                for a in cycle:
                    mirror = curves[-a]
                    curves[a] = Curve(a, xi(a), b, tuple((-px, -py) for px, py in mirror.vertices))
    for cyc in balanced:
        full = cyc + tuple(-a for a in cyc)
        blocks.append(full)
        b = len(blocks) - 1
        if len(full) == 2:
            j = abs(cyc[0])
            lo, hi = (j, -j) if lab.height(j) < lab.height(-j) else (-j, j)
            if lab.is_center(j):
                add(lo, b, _bigon_vertex(pos[lo], pos[hi], 1))
                add(hi, b, _bigon_vertex(pos[lo], pos[hi], -1))
            else:
                add(lo, b, (EPS, ZERO))
                add(hi, b, (-EPS, ZERO))
        else:
            for a in full:
                add(a, b)
    points = {a: pos[a] for a in lab.position if x(a) == a}
    pic = StrandPicture(lab, x, curves, points, blocks)
    if lab.i1 == 2 and len(balanced) == 2 and {abs(balanced[0][0]), abs(balanced[1][0])} == {1, 2}:
        # [1][2] with i_1 = 2: four strands through the middle, stacked 2, 1, -1, -2 from the top
        depth = [2, 1, -1, -2]
        for k, p in enumerate(depth):
            for q in depth[k + 1 :]:
                pic.override[(min(p, q), max(p, q))] = -1 if p < q else 1
    return pic


def _draw_paired(lab, cycle, block, split, side, xi, add, pos) -> None:
    if len(cycle) == 2:
        a, b = cycle
        lo, hi = (a, b) if lab.height(a) < lab.height(b) else (b, a)
        far = b if a == split else a
        if split is not None and _reroute_needed(lab, split, far):
            h = lab.height(-split)
            # the up-curve stays east of its partner
            ranks = {lo: 2, hi: 1} if side == 1 else {lo: 1, hi: 2}
            for s in (lo, hi):
                add(s, block, (EPS * (side * ranks[s]), h))
            return
        add(lo, block, _bigon_vertex(pos[lo], pos[hi], 1))
        add(hi, block, _bigon_vertex(pos[lo], pos[hi], -1))
        return
    if split is None:
        for a in cycle:
            add(a, block)
        return
    h = lab.height(-split)
    origin = pos[split]
    far = [a for a in cycle if a != split and _reroute_needed(lab, split, a)]
    # order detours so that they do not cross: targets further clockwise get larger |x|
    far.sort(key=lambda a: _ClockwiseKey(origin, pos[a], side))
    rank = {a: k + 1 for k, a in enumerate(far)}
    for a in cycle:
        t = xi(a)
        if a == split and t in rank:
            add(a, block, (EPS * (side * rank[t]), h))
        elif t == split and a in rank:
            add(a, block, (EPS * (side * rank[a]), h))
        else:
            add(a, block)


class _ClockwiseKey:
    """Detour order: ranks grow away from the axis, toward targets further east for east detours."""

    def __init__(self, origin, p, side):
        self.origin, self.p, self.side = origin, p, side

    def __lt__(self, other: _ClockwiseKey) -> bool:
        turn = cross(self.origin, self.p, other.p).sign()
        return turn < 0 if self.side == 1 else turn > 0


def _segments(curve: Curve):
    return list(zip(curve.vertices, curve.vertices[1:]))


def _same(p, q) -> bool:
    return p[0] == q[0] and p[1] == q[1]


def _touch_only_at_shared_end(a, b, c, d) -> bool:
    shared = [p for p in (a, b) if _same(p, c) or _same(p, d)]
    if len(shared) != 1:
        return False
    p = shared[0]
    u = b if _same(p, a) else a
    v = d if _same(p, c) else c
    # distinct segments from a common end meet again only when they point the same way
    if orientation(p, u, v) != 0:
        return True
    return ((u[0] - p[0]) * (v[0] - p[0]) + (u[1] - p[1]) * (v[1] - p[1])).sign() < 0


def crossing_curves(pic: StrandPicture) -> list[tuple[int, int]]:
    """Pairs of strands whose drawn curves meet away from shared end points (points count too)."""
    bad = []
    strands = sorted(pic.curves)
    for k, s in enumerate(strands):
        for t in strands[k + 1 :]:
            if any(
                segments_intersect(a, b, c, d) and not _touch_only_at_shared_end(a, b, c, d)
                for a, b in _segments(pic.curves[s])
                for c, d in _segments(pic.curves[t])
            ):
                bad.append((s, t))
        for r, pt in pic.points.items():
            if any(orientation(a, b, pt) == 0 and on_segment(pt, a, b) for a, b in _segments(pic.curves[s])):
                bad.append((s, r))
    return bad


# ---------------------------------------------------------------- crossings


def _open_overlap(a: Curve, b: Curve) -> Eps | None:
    lo, hi = max(a.low, b.low), min(a.high, b.high)
    return (lo + hi) / 2 if lo < hi else None


def picture_crossings(pic: StrandPicture) -> CrossingData:
    """Crossing data of the braid: reversed pairs, eastern strand over."""
    lab = pic.labeling
    n = lab.rank
    labels = list(range(-n, 0)) + list(range(1, n + 1))
    xi = inverse(pic.element)
    endpoint = {p: xi(p) for p in labels}
    signs: dict[tuple[int, int], int] = {}
    for k, p in enumerate(labels):
        for q in labels[k + 1 :]:
            if endpoint[p] < endpoint[q]:
                continue
            if (p, q) in pic.override:
                signs[(p, q)] = pic.override[(p, q)]
                continue
            east = _compare(pic, p, q)
            if east == 0:
                raise InvariantViolation(f"strands {p} and {q} of {pic.element} have no common height")
            signs[(p, q)] = -1 if east > 0 else 1
    return CrossingData(n, endpoint, signs)


def _compare(pic: StrandPicture, p: int, q: int) -> int:
    """+1 when strand p lies east of strand q where both are present."""
    cp, cq = pic.curves.get(p), pic.curves.get(q)
    if cp is None and cq is None:
        return 0
    if cp is None:
        return -_compare(pic, q, p)
    if cq is None:
        pt = pic.points[q]
        if not (cp.low < pt[1] < cp.high):
            return 0
        return _east_of(cp.x_at(pt[1]), _point_fraction(pt))
    y = _open_overlap(cp, cq)
    if y is None:
        return 0
    return _east_of(cp.x_at(y), cq.x_at(y))


# ---------------------------------------------------------------- vertical diagram


class Side(enum.Enum):
    LEFT = "Left"
    RIGHT = "Right"


@dataclass(frozen=True)
class Chord:
    source: int
    target: int
    side: Side
    depth: int

    def to_json(self) -> dict:
        return {"from": self.source, "to": self.target, "side": self.side.value, "depth": self.depth}


@dataclass
class VerticalDiagram:
    labeling: CircleLabeling
    element: SignedPermutation
    chords: list[Chord]

    @property
    def strandline(self) -> list[int]:
        n = self.labeling.rank
        return list(range(-n, 0)) + list(range(1, n + 1))

    def interleaved_pairs(self) -> list[tuple[Chord, Chord]]:
        """Same-side chords whose label intervals cross without nesting."""
        bad = []
        for k, a in enumerate(self.chords):
            for b in self.chords[k + 1 :]:
                if a.side is not b.side:
                    continue
                a0, a1 = sorted((a.source, a.target))
                b0, b1 = sorted((b.source, b.target))
                if a0 < b0 < a1 < b1 or b0 < a0 < b1 < a1:
                    bad.append((a, b))
        return bad


def _side_of(pic: StrandPicture, curve: Curve) -> Side:
    # nudged off the midpoint so the slice never passes through a vertex
    y = curve.low + (curve.high - curve.low) * (Eps.lift(Fraction(1, 2)) + Eps.eps(1, Fraction(1, 3)))
    mine = curve.x_at(y)
    verdict = 0
    for other in pic.curves.values():
        if other is curve or other.block != curve.block or not (other.low < y < other.high):
            continue
        verdict = _east_of(mine, other.x_at(y))
        break
    if verdict == 0:
        raise InvariantViolation(f"chord {curve.source}->{curve.target} has no partner boundary")
    return Side.RIGHT if verdict > 0 else Side.LEFT


def vertical_diagram(x: SignedPermutation, c: SignedPermutation, route: str = "auto") -> VerticalDiagram:
    pic = strand_picture(x, c, route)
    sides = {s: _side_of(pic, cv) for s, cv in pic.curves.items()}

    def interval(cv: Curve) -> tuple[int, int]:
        return tuple(sorted((cv.source, cv.target)))  # type: ignore[return-value]

    chords = []
    for s in sorted(pic.curves):
        cv = pic.curves[s]
        lo, hi = interval(cv)
        depth = sum(
            1
            for t, other in pic.curves.items()
            if t != s
            and sides[t] is sides[s]
            and interval(other)[0] <= lo
            and hi <= interval(other)[1]
            and interval(other) != (lo, hi)
        )
        chords.append(Chord(cv.source, cv.target, sides[s], depth))
    return VerticalDiagram(pic.labeling, x, chords)


# ---------------------------------------------------------------- the braid of x


@dataclass(frozen=True)
class BetaBraid:
    crossings: CrossingData
    witness: MikadoWitness
    word: ArtinWord


def beta_x(
    x: SignedPermutation,
    c: SignedPermutation,
    route: str = "auto",
    ctx: DualContext | None = None,
    check: bool = True,
) -> BetaBraid:
    """Symmetric Mikado braid read off the vertical diagram of x, as a type B word.

    With ``check`` the rewrite of the word to type D must equal the dual simple
    element of x; a mismatch raises an invariant violation naming x.
    """
    from .bridge import rewrite_B_to_D

    pic = strand_picture(x, c, route)
    data = picture_crossings(pic)
    try:
        witness = crossing_to_factorization(data)
    except InvariantViolation as exc:
        raise InvariantViolation(f"no Mikado factorization for x={x}: {exc}") from exc
    word = witness.word()
    if check:
        ctx = ctx or DualContext.create(c)
        if not words_equal(rewrite_B_to_D(word), simple_word(ctx, x).word):
            raise InvariantViolation(f"braid of x={x} does not rewrite to its dual simple element")
    return BetaBraid(data, witness, word)

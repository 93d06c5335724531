from __future__ import annotations

import random
from collections import deque

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from dnbraids.coxeter import CoxeterType, SignedPermutation, generators

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def signed_permutations(family: str, rank: int):
    """Hypothesis strategy for uniformly shaped elements of one group."""
    ctype = CoxeterType(family, rank)

    @st.composite
    def build(draw):
        perm = draw(st.permutations(range(1, rank + 1)))
        if family == "A":
            signs = [1] * rank
        else:
            signs = draw(st.lists(st.sampled_from((1, -1)), min_size=rank, max_size=rank))
            if family == "D" and signs.count(-1) % 2:
                signs[0] = -signs[0]
        return SignedPermutation(ctype, [s * p for s, p in zip(signs, perm)])

    return build()


def cayley_bfs(ctype: CoxeterType) -> dict[tuple[int, ...], int]:
    """Word length of every element by breadth-first search on the Cayley graph."""
    gens = generators(ctype)
    start = tuple(range(1, ctype.rank + 1))
    dist = {start: 0}
    queue = deque([SignedPermutation(ctype, start)])
    while queue:
        u = queue.popleft()
        for g in gens:
            v = u * g
            if v.window not in dist:
                dist[v.window] = dist[u.window] + 1
                queue.append(v)
    return dist


def random_element(ctype: CoxeterType, rng: random.Random) -> SignedPermutation:
    perm = list(range(1, ctype.rank + 1))
    rng.shuffle(perm)
    if ctype.family == "A":
        return SignedPermutation(ctype, perm)
    signs = [rng.choice((1, -1)) for _ in perm]
    if ctype.family == "D" and signs.count(-1) % 2:
        signs[0] = -signs[0]
    return SignedPermutation(ctype, [s * p for s, p in zip(signs, perm)])


@pytest.fixture
def rng():
    return random.Random(1234)

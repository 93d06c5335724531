import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dnbraids.bridge import (
    braid_relations,
    comp_check,
    conjugation_by_s0,
    coset_bit,
    embed_D_to_B,
    lift_compare,
    lifts_check,
    q_B,
    q_D,
    random_word,
    relations_dn_check,
    rewrite_B_to_D,
)
from dnbraids.coxeter import CoxeterType, identity, parse_element
from dnbraids.errors import UsageError
from dnbraids.garside import ArtinWord, format_word, parse_word, words_equal

B3, B4 = CoxeterType("B", 3), CoxeterType("B", 4)
D3, D4 = CoxeterType("D", 3), CoxeterType("D", 4)


def b_words(rank, max_len=10):
    return st.lists(st.sampled_from([k for i in range(1, rank + 1) for k in (i, -i)]), max_size=max_len).map(
        lambda ls: ArtinWord(CoxeterType("B", rank), tuple(ls))
    )


def even(word):
    return coset_bit(word) == 0


@pytest.mark.parametrize(
    "src,expected",
    [("s0 s1 s0", "t0"), ("s2", "t2"), ("s0 s2 s0", "t2"), ("s0 s1^-1 s0^-1 s3", "t0^-1 t3"), ("", "")],
)
def test_rewrite_examples(src, expected):
    assert format_word(rewrite_B_to_D(parse_word(B4, src))) == expected


def test_rewrite_rejects_odd_coset():
    with pytest.raises(UsageError, match="coset"):
        rewrite_B_to_D(parse_word(B4, "s0 s1"))


def test_embed_examples():
    assert format_word(embed_D_to_B(parse_word(D4, "t0"))) == "s0 s1 s0"
    assert embed_D_to_B(ArtinWord(D4, ())).letters == ()


def test_embed_then_rewrite_round_trip():
    rng = random.Random(11)
    for _ in range(500):
        w = random_word(D4, rng.randint(0, 20), rng)
        assert words_equal(rewrite_B_to_D(embed_D_to_B(w)), w)


@pytest.mark.parametrize("rank", [3, 4, 5, 6])
def test_relations_dn(rank):
    report = relations_dn_check(rank)
    assert report.ok and report.instances == len(braid_relations(CoxeterType("D", rank)))


def test_quotient_is_needed_for_the_relations():
    # the braid relation t0 t2 t0 = t2 t0 t2 fails in A(B) before dividing by s0^2
    lhs = embed_D_to_B(parse_word(D3, "t0 t2 t0"))
    rhs = embed_D_to_B(parse_word(D3, "t2 t0 t2"))
    assert not words_equal(lhs, rhs)
    assert words_equal(rewrite_B_to_D(lhs), rewrite_B_to_D(rhs))


def test_lift_compare_examples():
    assert lift_compare(identity(D4))
    assert lift_compare(parse_element(D4, "((1,-2))"))


def test_lifts_d4_exhaustive():
    report = lifts_check(4)
    assert report.ok and report.instances == 192


def test_projections():
    assert q_B(parse_word(B4, "s0")).letters == ()
    assert format_word(q_D(parse_word(D4, "t0"))) == "sig1"
    assert comp_check(4, samples=200).ok


@given(b_words(4), b_words(4))
def test_rewrite_is_multiplicative(u, v):
    if even(u) and even(v):
        assert words_equal(rewrite_B_to_D(u * v), rewrite_B_to_D(u) * rewrite_B_to_D(v))


@given(b_words(4), b_words(4))
def test_rewrite_respects_split(u, v):
    # cutting a word anywhere and rewriting both halves through s0 agrees with rewriting the whole
    s0 = ArtinWord(B4, (1,))
    if not even(u):
        u = u * s0
    if not even(v):
        v = s0 * v
    assert words_equal(rewrite_B_to_D(u * v), rewrite_B_to_D(u) * rewrite_B_to_D(v))


@given(b_words(4, 14))
def test_coset_bit_matches_image(word):
    assert coset_bit(word) == (0 if word.image().in_type_d() else 1)


def test_conjugation_by_s0_swaps_t0_t1():
    swap = {1: 2, 2: 1}
    for i in range(1, 5):
        w = ArtinWord(D4, (i,))
        assert conjugation_by_s0(w).letters == (swap.get(i, i),)

import pytest
from hypothesis import given

from conftest import cayley_bfs, random_element, signed_permutations
from dnbraids.coxeter import (
    CapacityError,
    CoxeterType,
    SignedPermutation,
    compose,
    coxeter_length,
    cycle_decomposition,
    enumerate_group,
    format_cycles,
    generator,
    generators,
    group_elements,
    identity,
    inverse,
    is_reflection,
    left_descents,
    longest_element,
    parse_element,
    reflections,
    right_descents,
    word_to_element,
)
from dnbraids.errors import UsageError

B2, B3, B4, B5 = (CoxeterType("B", n) for n in (2, 3, 4, 5))
D3, D4, D8 = CoxeterType("D", 3), CoxeterType("D", 4), CoxeterType("D", 8)


def w(ctype, *window):
    return SignedPermutation.from_window(ctype, window)


def test_generator_windows():
    assert generator(B3, 0).window == (-1, 2, 3)
    assert generator(B3, 1).window == (2, 1, 3)
    assert generator(D3, 0).window == (-2, -1, 3)
    assert generator(CoxeterType("A", 3), 1).window == (2, 1, 3)


def test_generator_index_out_of_range():
    with pytest.raises(UsageError):
        generator(B3, 3)
    with pytest.raises(UsageError):
        generator(CoxeterType("A", 3), 0)


def test_rank_bounds():
    for family, rank in (("A", 0), ("B", 1), ("D", 1), ("E", 6)):
        with pytest.raises(UsageError):
            CoxeterType(family, rank)


def test_t0_is_s0_s1_s0():
    s0, s1 = generator(B3, 0), generator(B3, 1)
    t0 = compose(s0, compose(s1, s0))
    assert format_cycles(t0) == "((1,-2))"
    assert t0.window == generator(D3, 0).window


def test_s0_squared_is_identity():
    s0 = generator(B3, 0)
    assert compose(s0, s0) == identity(B3)


def test_compose_is_right_to_left():
    u, v = w(B3, 2, 1, 3), w(B3, 1, 3, 2)
    uv = compose(u, v)
    assert all(uv(i) == u(v(i)) for i in (1, 2, 3, -1, -2, -3))


def test_compose_type_mismatch():
    with pytest.raises(UsageError):
        compose(identity(B3), identity(D3))


def test_d8_coxeter_element_from_generators():
    c = word_to_element(D8, [1, 3, 5, 7, 6, 4, 2, 0])
    assert c == parse_element(D8, "(2,-2)[-8,-7,-5,-3,-1,4,6]")
    assert format_cycles(c) == "[-8,-7,-5,-3,-1,4,6][2]"
    dec = cycle_decomposition(c)
    assert dec.paired == ()
    assert sorted(map(len, dec.balanced)) == [1, 7]


def test_cycle_decomposition_of_x2():
    x2 = parse_element(D8, "((8,7,5))[6,3,1][2]")
    dec = cycle_decomposition(x2)
    assert dec.paired == ((5, 8, 7),)
    assert {frozenset(map(abs, b)) for b in dec.balanced} == {frozenset({1, 6, 3}), frozenset({2})}
    assert cycle_decomposition(identity(D8)) == type(dec)((), ())


def test_cycle_decomposition_round_trip_b4():
    for u in enumerate_group(B4):
        assert parse_element(B4, format_cycles(u), notation="cycles") == u
        dec = cycle_decomposition(u)
        assert len(dec.balanced) % 2 == 0 or not u.in_type_d()


def test_window_notation_parses():
    assert parse_element(D4, "[-2,-1,3,4]") == generator(D4, 0)
    assert parse_element(D4, "e") == identity(D4)


def test_full_support_bracket_is_ambiguous():
    # read as a window by default, as one balanced cycle on request
    text = "[-4,1,2,3]"
    assert parse_element(B4, text).window == (-4, 1, 2, 3)
    assert parse_element(B4, text, notation="cycles").window == (2, 3, 4, -1)


def test_inverse_basics(rng):
    assert inverse(identity(B3)) == identity(B3)
    t0 = generator(D4, 0)
    assert inverse(t0) == t0
    for _ in range(100):
        u = random_element(B5, rng)
        assert compose(inverse(u), u) == identity(B5)


@given(signed_permutations("B", 4), signed_permutations("B", 4), signed_permutations("B", 4))
def test_group_axioms(u, v, x):
    assert compose(compose(u, v), x) == compose(u, compose(v, x))
    assert compose(u, identity(B4)) == u
    assert compose(inverse(u), u) == identity(B4)
    assert inverse(compose(u, v)) == compose(inverse(v), inverse(u))


@given(signed_permutations("D", 5), signed_permutations("D", 5))
def test_type_d_closed(u, v):
    assert compose(u, v).in_type_d()
    assert inverse(u).in_type_d()


def test_d_membership_rejects_odd_sign_count():
    with pytest.raises(UsageError):
        w(D3, -1, 2, 3)


@pytest.mark.parametrize("ctype", [CoxeterType("A", 4), B3, CoxeterType("D", 3), CoxeterType("D", 4)])
def test_generators_are_involutions(ctype):
    for g in generators(ctype):
        assert compose(g, g) == identity(ctype)


@pytest.mark.parametrize("n", range(3, 9))
def test_d_braid_relations(n):
    D = CoxeterType("D", n)
    t = generators(D)

    def prod(*idx):
        out = identity(D)
        for i in idx:
            out = compose(out, t[i])
        return out

    assert prod(0, 2, 0) == prod(2, 0, 2)
    assert prod(0, 1) == prod(1, 0)
    for i in range(1, n - 1):
        assert prod(i, i + 1, i) == prod(i + 1, i, i + 1)
    for i in range(n):
        for j in range(i + 2, n):
            if {i, j} != {0, 2}:
                assert prod(i, j) == prod(j, i)


@pytest.mark.parametrize(
    "ctype",
    [CoxeterType("A", n) for n in (2, 3, 4)] + [CoxeterType("B", n) for n in (2, 3)] + [CoxeterType("D", n) for n in (2, 3)],
)
def test_length_formula_matches_cayley_bfs(ctype):
    dist = cayley_bfs(ctype)
    assert len(dist) == ctype.order
    for u in group_elements(ctype):
        assert coxeter_length(u) == dist[u.window]


def test_length_formula_matches_cayley_bfs_d4():
    dist = cayley_bfs(D4)
    assert all(coxeter_length(u) == dist[u.window] for u in group_elements(D4))
    assert coxeter_length(longest_element(D4)) == 12 == max(dist.values())


def test_descents_by_length_drop():
    for u in group_elements(D4):
        for i in D4.generator_indices:
            g = generator(D4, i)
            assert (i in left_descents(u)) == (coxeter_length(compose(g, u)) < coxeter_length(u))
        assert right_descents(u) == left_descents(inverse(u))


def test_t0_left_descent_criterion():
    for u in group_elements(D4):
        ui = inverse(u)
        assert (0 in left_descents(u)) == (-ui(1) > ui(2))


def test_reflection_counts():
    assert len(reflections(D3)) == 6
    assert len(reflections(D4)) == 12
    assert len(reflections(B3)) == 9
    # every conjugate of a generator, found by brute force
    for ctype in (D3, D4, B3):
        conj = {compose(compose(u, g), inverse(u)) for u in group_elements(ctype) for g in generators(ctype)}
        assert conj == set(reflections(ctype))
        assert all(is_reflection(t) for t in conj)


def test_group_orders():
    assert len(group_elements(D4)) == 192
    assert len(set(enumerate_group(B3))) == 48


def test_enumeration_bound():
    with pytest.raises(CapacityError):
        list(enumerate_group(B5, bound=100))


def test_longest_element():
    assert longest_element(B2).window == (-1, -2)
    for ctype in (B3, D3, D4):
        w0 = longest_element(ctype)
        assert left_descents(w0) == set(ctype.generator_indices)

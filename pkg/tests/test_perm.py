import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subext.errors import InputError
from subext.perm import (CosetTransversal, PermGroup, alternating_group, closure, cycles, format_cycles,
                         from_cycles, group_order, identity, inv, is_even, mul, named_group, parse_cycles,
                         perm_order, transposition_word, word_product)

perms = st.integers(1, 9).flatmap(lambda n: st.permutations(range(n)).map(tuple))


def test_group_order_examples():
    assert group_order([], 5)[0] == 1
    assert group_order([from_cycles(5, [(1, 2, 3, 4, 5)]), from_cycles(5, [(3, 4, 5)])])[0] == 60
    assert group_order([from_cycles(3, [(1, 2)]), from_cycles(3, [(1, 2, 3)])])[0] == 6


def test_inconsistent_degrees():
    with pytest.raises(InputError):
        PermGroup([(1, 0), (0, 2, 1)])


@pytest.mark.parametrize("gens,n", [
    ([[(1, 2, 3, 4, 5)], [(3, 4, 5)]], 5),
    ([[(1, 2)], [(1, 2, 3, 4, 5, 6)]], 6),
    ([[(1, 2, 3)], [(4, 5, 6)], [(1, 4), (2, 5), (3, 6)]], 6),
    ([[(1, 2, 3, 4, 5, 6, 7)], [(2, 3, 5), (4, 7, 6)]], 7),
    ([[(1, 2), (3, 4)], [(1, 3), (2, 4)], [(5, 6, 7)]], 7),
])
def test_chain_order_matches_closure(gens, n):
    ps = [from_cycles(n, g) for g in gens]
    G = PermGroup(ps, degree=n)
    elems = closure(ps, n)
    assert G.order == len(elems)
    assert all(G.contains(x) for x in elems)
    assert set(G.elements()) == elems


def test_membership_negative():
    A5 = alternating_group(5)
    assert not A5.contains(from_cycles(5, [(1, 2)]))
    assert A5.contains(identity(5))


def test_transversal_examples():
    S3 = named_group("S3")
    C3 = PermGroup([from_cycles(3, [(1, 2, 3)])])
    T = CosetTransversal(S3, C3)
    assert T.index == 2
    assert T.factor(identity(3)) == (0, identity(3))


def test_transversal_a9_point_stabilizer():
    A9 = alternating_group(9)
    H = A9.point_stabilizer(8)
    assert H.order == 20160
    T = CosetTransversal(A9, H)
    assert len(T.reps) == 9 and T.reps[0] == identity(9)
    rng = random.Random(0)
    for _ in range(1000):
        x = A9.random_element(rng)
        i, h = T.factor(x)
        assert mul(T.reps[i], h) == x
        assert H.contains(mul(inv(T.reps[i]), x))
        assert T.factor_scan(x) == (i, h)


def test_transversal_reps_distinct_cosets():
    S4 = named_group("S4")
    H = PermGroup([from_cycles(4, [(1, 2)]), from_cycles(4, [(3, 4)])])
    T = CosetTransversal(S4, H)
    assert T.index == 6
    for i, a in enumerate(T.reps):
        for b in T.reps[i + 1:]:
            assert not H.contains(mul(inv(a), b))
    for r in range(T.index):
        assert T.factor(T.reps[r]) == (r, identity(4))


def test_transversal_errors():
    with pytest.raises(InputError):
        CosetTransversal(alternating_group(4), PermGroup([from_cycles(4, [(1, 2)])]))
    T = CosetTransversal(alternating_group(4), PermGroup([from_cycles(4, [(1, 2, 3)])]))
    with pytest.raises(InputError):
        T.factor(from_cycles(4, [(1, 2)]))


def test_transposition_word_examples():
    assert transposition_word(identity(5)) == []
    g = from_cycles(3, [(1, 2, 3)])
    w = transposition_word(g)
    assert len(w) == 2 and word_product(w, 3) == g


def test_transposition_word_random():
    rng = random.Random(0)
    for _ in range(1000):
        n = rng.randint(1, 9)
        p = list(range(n))
        rng.shuffle(p)
        p = tuple(p)
        w = transposition_word(p)
        assert word_product(w, n) == p
        assert len(w) % 2 == (0 if is_even(p) else 1)


@given(perms, st.data())
@settings(max_examples=200, deadline=None)
def test_group_laws(p, data):
    n = len(p)
    q = data.draw(st.permutations(range(n)).map(tuple))
    r = data.draw(st.permutations(range(n)).map(tuple))
    assert mul(mul(p, q), r) == mul(p, mul(q, r))
    assert mul(p, inv(p)) == identity(n)
    assert parse_cycles(format_cycles(p), n) == p
    assert sum(len(c) - 1 for c in cycles(p)) % 2 == (0 if is_even(p) else 1)


def test_right_action_convention():
    a = from_cycles(3, [(1, 2)])
    b = from_cycles(3, [(2, 3)])
    # apply a first: 1 -> 2, then b: 2 -> 3
    assert mul(a, b)[0] == 2


def test_cycle_notation():
    assert format_cycles(identity(4)) == "()"
    assert parse_cycles(" (1, 2,3)( 4 5 )", 5) == from_cycles(5, [(1, 2, 3), (4, 5)])
    assert perm_order(parse_cycles("(1,2,3)(4,5)", 5)) == 6
    for bad in ["(1,1)", "(0,2)", "(1,2)(2,3)", "(1,2", "abc"]:
        with pytest.raises(InputError):
            parse_cycles(bad, 4)

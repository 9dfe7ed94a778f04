import itertools
import random

import pytest

from corpus import sign_module
from subext.errors import InputError
from subext.gmodule import CoinducedModule, GModule, coinduce, conjugate_iso, refine_map
from subext.perm import PermGroup, alternating_group, from_cycles, identity, mul, named_group

S3 = named_group("S3")
C3 = PermGroup([from_cycles(3, [(1, 2, 3)])])


def test_coinduce_sizes():
    M = coinduce(GModule.trivial(S3, 3), C3)
    assert M.rank == 2 and M.order == 9
    full = coinduce(GModule.trivial(S3, 3), S3)
    assert full.rank == 1
    assert {full.epsilon(l) for l in full.base.elements()} == set(full.elements())


def test_epsilon_evaluate_and_equivariance():
    rng = random.Random(0)
    for L in (GModule.trivial(S3, 3), sign_module(S3, 3), GModule.permutation(S3, 2)):
        M = coinduce(L, C3)
        for _ in range(100):
            l = L.random_element(rng)
            g = S3.random_element(rng)
            assert M.evaluate(M.epsilon(l)) == l
            assert M.epsilon(L.act(l, g)) == M.act(M.epsilon(l), g)


@pytest.mark.parametrize("G,H", [
    (named_group("S3"), PermGroup([from_cycles(3, [(1, 2, 3)])])),
    (named_group("A4"), PermGroup([from_cycles(4, [(1, 2, 3)])])),
    (alternating_group(5), PermGroup([from_cycles(5, [(1, 2, 3, 4, 5)])])),
])
def test_action_law_exhaustive(G, H):
    L = GModule.trivial(G, 2) if G.degree != 3 else sign_module(G, 3)
    M = coinduce(L, H)
    rng = random.Random(1)
    mus = [M.random_element(rng) for _ in range(5)]
    elems = G.element_list()
    for mu in mus:
        for g in G.generators:
            mg = M.act(mu, g)
            for x in elems:
                assert M.value_at(mg, x) == M.value_at(mu, mul(g, x))
    # values obey mu(x h) = mu(x) h
    for mu in mus:
        for x in elems[:10]:
            for h in H.elements():
                assert M.value_at(mu, mul(x, h)) == L.act(M.value_at(mu, x), h)


def test_epsilon_injective_exhaustive():
    L = GModule.permutation(S3, 3)
    M = coinduce(L, C3)
    images = {M.epsilon(l) for l in L.elements()}
    assert len(images) == L.order


def test_matrix_agrees_with_action():
    M = coinduce(sign_module(S3, 3), C3)
    rng = random.Random(2)
    for _ in range(30):
        mu = M.random_element(rng)
        g = S3.random_element(rng)
        assert tuple(int(v) for v in (list(mu) @ M.matrix(g)) % 3) == M.act(mu, g)


def test_conjugate_iso():
    G = named_group("S4")
    H = PermGroup([from_cycles(4, [(1, 2, 3)])])
    L = sign_module(G, 3)
    M = coinduce(L, H)
    rng = random.Random(3)
    ident = conjugate_iso(M, identity(4))
    for _ in range(20):
        mu = M.random_element(rng)
        assert ident(mu) == mu
    for _ in range(100):
        g = G.random_element(rng)
        psi = conjugate_iso(M, g)
        mu = M.random_element(rng)
        a = G.random_element(rng)
        assert psi(M.act(mu, a)) == psi.target.act(psi(mu), a)
        l = L.random_element(rng)
        assert psi(M.epsilon(l)) == psi.target.epsilon(l)
    A4 = alternating_group(4)
    N = coinduce(GModule.trivial(A4, 2), PermGroup([from_cycles(4, [(1, 2, 3)])]))
    with pytest.raises(InputError):
        conjugate_iso(N, from_cycles(4, [(1, 2)]))


def test_refine_map():
    G = named_group("S3")
    L = GModule.trivial(G, 3)
    M = coinduce(L, G)
    one = PermGroup([], degree=3)
    phi = refine_map(M, one)
    images = {phi(mu) for mu in M.elements()}
    assert len(images) == M.order
    for l in L.elements():
        assert phi(M.epsilon(l)) == phi.target.epsilon(l)
    same = refine_map(M, G)
    assert all(same(mu) == mu for mu in M.elements())
    rng = random.Random(4)
    for _ in range(100):
        mu = M.random_element(rng)
        a = G.random_element(rng)
        assert phi(M.act(mu, a)) == phi.target.act(phi(mu), a)
    with pytest.raises(InputError):
        refine_map(coinduce(L, C3), PermGroup([from_cycles(3, [(1, 2)])]))


def test_refine_map_exhaustive_injective():
    A4 = named_group("A4")
    V4 = PermGroup([from_cycles(4, [(1, 2), (3, 4)]), from_cycles(4, [(1, 3), (2, 4)])])
    K = PermGroup([from_cycles(4, [(1, 2), (3, 4)])])
    M = coinduce(GModule.trivial(A4, 3), V4)
    phi = refine_map(M, K)
    assert len({phi(mu) for mu in M.elements()}) == M.order == 27


def test_module_validation():
    C2 = named_group("C2")
    with pytest.raises(InputError):
        GModule.from_matrices(C2, 4, [[[2]]])
    with pytest.raises(InputError):
        GModule(C2, 1, 1)
    bad = GModule.from_matrices(named_group("C3"), 3, [[[2]]])
    with pytest.raises(InputError):
        bad.check_action()
    assert GModule.from_json({"modulus": 3, "rank": 1, "action": {"matrices": [[[2]]]}}, C2).act((1,), C2.generators[0]) == (2,)


def test_coinduce_rejects_non_subgroup():
    with pytest.raises(InputError):
        CoinducedModule(GModule.trivial(alternating_group(4), 2), PermGroup([from_cycles(4, [(1, 2)])]))


def test_permutation_module_is_right_action():
    L = GModule.permutation(S3, 2)
    for g, h in itertools.product(S3.elements(), repeat=2):
        for v in L.elements():
            assert L.act(L.act(v, g), h) == L.act(v, mul(g, h))

import itertools

import pytest

from corpus import corpus, kk_suite, perm
from subext.cochain import (Cochain1, Cochain2, CohomologyGroup, differential, extension_from_cocycle,
                            induced_map, solve_coboundary)
from subext.embed import (EmbeddingMap, aux_merge_test, build_embedding, coinduced_coboundary,
                          complement_classes, image_order, verify_subextension, wreath_embedding)
from subext.errors import InvariantError
from subext.gmodule import GModule, coinduce
from subext.liftsplit import SplittingData, lift_report, lift_test
from subext.perm import PermGroup, is_identity, mul, named_group
from subext.spincover import spin_cover


def triples_with_classes():
    for t in corpus():
        for k, delta in enumerate(CohomologyGroup(t.G, t.L, 2).representatives()):
            yield t, k, delta


def test_liftable_iff_coinduced_coboundary():
    seen = 0
    for t, _, delta in triples_with_classes():
        ext = extension_from_cocycle(t.G, t.L, delta)
        lift = lift_report(ext, t.H, "linear").liftable
        assert lift == bool(coinduced_coboundary(ext, t.H)), t.name
        seen += 1
    assert seen >= 11


def test_embedding_exhaustive_on_corpus():
    built = 0
    for t, _, delta in triples_with_classes():
        ext = extension_from_cocycle(t.G, t.L, delta)
        split = lift_test(ext, t.H)
        if split is None:
            continue
        beta, report = build_embedding(ext, t.H, split, exhaustive=True)
        assert report["passed"] and report["failures"] == 0
        assert image_order(beta) == ext.order
        assert beta.index == t.G.order // t.H.order
        built += 1
    assert built >= 5


def test_target_of_embedding_class_matches():
    """S maps into the extension of G by M with cocycle gamma exactly when gamma ~ delta.eps."""
    for t, _, delta in triples_with_classes():
        if t.G.order > 8:
            continue
        M = coinduce(t.L, t.H)
        HM = CohomologyGroup(t.G, M, 2)
        de = induced_map("epsilon", delta, coind=M)
        matches = 0
        for gamma in HM.representatives():
            diff = Cochain2(M, t.G, func=lambda a, b, gamma=gamma: M.sub(de(a, b), gamma(a, b)))
            res = solve_coboundary(diff, method="dense")
            if not res:
                continue
            matches += 1
            src = extension_from_cocycle(t.G, t.L, delta)
            tgt = extension_from_cocycle(t.G, M, gamma)
            nu = res.phi

            def beta(s):
                l, g = s
                return (M.add(M.epsilon(l), nu(g)), g)

            elems = list(src.elements())
            for a, b in itertools.product(elems, elems):
                assert beta(src.mul(a, b)) == tgt.mul(beta(a), beta(b))
        assert matches == 1, t.name


def test_wreath_embedding_kk():
    for name, ax in kk_suite():
        beta, report = wreath_embedding(ax.extension, exhaustive=True)
        assert report["passed"], name
        assert image_order(beta) == ax.S.order
        assert beta.index == ax.extension.group.order


def test_cyclic_four_in_small_wreath():
    _, ax = kk_suite()[0]
    beta, _ = wreath_embedding(ax.extension, exhaustive=True)
    image = {beta(s) for s in ax.extension.elements()}
    e = beta.target_identity()

    def order(x):
        k, y = 1, x
        while y != e:
            y, k = beta.target_mul(y, x), k + 1
        return k

    assert beta.index == 2 and max(order(x) for x in image) == 4


def test_cyclic_five_in_a5():
    cover = spin_cover(5)
    ext = cover.extension()
    H = PermGroup([perm(5, (1, 2, 3, 4, 5))])
    split = lift_test(ext, H)
    beta, report = build_embedding(ext, H, split, samples=1000, seed=3)
    assert beta.index == 12 and report["hom_pairs"] == len(ext.generators()) ** 2 + 1000
    cert = beta.certificate(report, "A5", "C5")
    assert cert["checks"]["failures"] == 0 and cert["checks"]["injective"]


def test_tampered_embedding_is_detected():
    cover = spin_cover(5)
    ext = cover.extension()
    H = PermGroup([perm(5, (1, 2, 3))])
    split = lift_test(ext, H)
    g = H.generators[0]
    phi = split.phi
    bad = Cochain1(phi.module, H, table={g: (1 - phi(g)[0],), mul(g, g): phi(mul(g, g))})
    with pytest.raises(InvariantError):
        build_embedding(ext, H, SplittingData(ext, H, bad))

    class Broken(EmbeddingMap):
        def _c(self, j, h):
            v = super()._c(j, h)
            return (1 - v[0],) if j == 1 and not is_identity(h) else v

    report = verify_subextension(Broken(ext, H, split), samples=200)
    assert not report["passed"] and report["failures"] > 0 and "first_failure" in report


def brute_cocycles(G, L):
    elems = G.element_list()
    out = []
    for values in itertools.product(list(L.elements()), repeat=len(elems)):
        d = dict(zip(elems, values))
        if all(d[mul(a, b)] == L.add(L.act(d[a], b), d[b]) for a in elems for b in elems):
            out.append(d)
    return out


@pytest.mark.parametrize("G, L, classes", [
    (named_group("C3"), GModule.trivial(named_group("C3"), 3), 3),
    (named_group("S3"), GModule.trivial(named_group("S3"), 3), 1),
    (named_group("C2"), GModule.from_matrices(named_group("C2"), 3, [[[2]]]), 1),
    (PermGroup([], degree=3), GModule.trivial(PermGroup([], degree=3), 2), 1),
])
def test_complement_classes(G, L, classes):
    found = complement_classes(G, L)
    assert len(found) == classes
    assert sum(c.is_group_class for c in found) == 1
    members = [m for c in found for m in c.members()]
    for c in found:
        c.verify()
    assert len(members) == len(brute_cocycles(G, L))


def test_complement_members_of_inversion_module():
    C2 = named_group("C2")
    L = GModule.from_matrices(C2, 3, [[[2]]])
    (cls,) = complement_classes(C2, L)
    t = C2.generators[0]
    assert sorted(m(t) for m in cls.members()) == [(0,), (1,), (2,)]
    E = extension_from_cocycle(C2, L, Cochain2(L, C2, table={}))
    for m in cls.members():
        assert E.mul((m(t), t), (m(t), t)) == E.identity


def test_aux_merge_agrees_on_corpus():
    for t in corpus():
        for cls in complement_classes(t.G, t.L):
            res = aux_merge_test(t.G, t.H, t.L, cls)
            assert res.m_conjugate_to_G == res.intersection_l_conjugate_to_H
            if cls.is_group_class:
                assert res.m_conjugate_to_G
            if res.m_witness is not None:
                M = coinduce(t.L, t.H)
                d = differential(res.m_witness, M, t.G)
                eps = induced_map("epsilon", cls.cocycle, coind=M)
                assert all(d(g) == eps(g) for g in t.G.elements())


def test_nonsplit_subgroup_has_no_coinduced_coboundary():
    cover = spin_cover(4)
    ext = cover.extension()
    V4 = PermGroup([perm(4, (1, 2), (3, 4)), perm(4, (1, 3), (2, 4))])
    assert lift_test(ext, V4) is None
    assert not coinduced_coboundary(ext, V4)
    C3 = PermGroup([perm(4, (1, 2, 3))])
    assert coinduced_coboundary(ext, C3)

import itertools

import pytest

from subext.casework import (GF, PSL2Data, ProjectiveLine, _verified, an_maximal_catalog, build_candidates,
                             build_catalogs, candidate_catalog, catalog_json, find_entry,
                             min_liftable_index_bound, psl2_criterion, verify_double_cover_liftability)
from subext.errors import InputError, InvariantError
from subext.liftsplit import lift_test
from subext.perm import PermGroup, alternating_group, parse_cycles
from subext.spincover import spin_cover

MAXIMAL_ORDERS = {
    4: [4, 3],
    5: [12, 10, 6],
    6: [60, 60, 24, 24, 36],
    7: [360, 120, 72, 168, 168],
    8: [2520, 720, 360, 576, 1344, 1344],
    9: [20160, 5040, 2160, 1440, 648, 1512, 1512, 216],
}


@pytest.mark.parametrize("q", [3, 5, 7, 8, 9, 11, 13])
def test_field_axioms(q):
    F = GF(q)
    els = range(q)
    for a, b, c in itertools.product(els, repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert all(F.mul(a, F.inv(a)) == 1 for a in range(1, q))
    powers = {F.power(F.primitive, e) for e in range(q - 1)}
    assert powers == set(range(1, q))


def test_unsupported_field():
    with pytest.raises(InputError):
        GF(4)
    with pytest.raises(InputError):
        PSL2Data(8)


def test_mobius_group_is_psl2():
    for q in (5, 7, 9, 11):
        data = PSL2Data(q)
        assert data.group.order == q * (q * q - 1) // 2
        assert data.borel.is_subgroup_of(data.group)
    P = ProjectiveLine(GF(7))
    assert P.mobius(((1, 0), (0, 1))) == tuple(range(8))


@pytest.mark.parametrize("n", sorted(MAXIMAL_ORDERS))
def test_catalog_orders_and_indices(n):
    entries = an_maximal_catalog(n)
    assert [e.order for e in entries] == MAXIMAL_ORDERS[n]
    full = alternating_group(n).order
    for e in entries:
        G = e.group()
        assert G.order == e.order and e.index * e.order == full
        assert G.is_subgroup_of(alternating_group(n))


def test_shipped_catalog_matches_constructions():
    built = build_catalogs()
    cand = build_candidates()
    for n in range(4, 10):
        assert catalog_json(an_maximal_catalog(n)) == catalog_json(built[n])
        assert catalog_json(candidate_catalog(n)) == catalog_json(cand.get(n, []))


def test_catalog_second_classes_differ():
    for n, name in ((7, "PSL2(7)"), (8, "AGL3(2)"), (9, "PGammaL2(8)")):
        a = find_entry(f"{name}#1", n).group()
        b = find_entry(f"{name}#2", n).group()
        assert set(a.elements()) != set(b.elements())


def test_tampered_catalog_is_rejected():
    rec = an_maximal_catalog(5)[0].to_json()
    rec["order"] = 24
    with pytest.raises(InvariantError, match="catalog integrity"):
        _verified([rec], 5)
    rec = an_maximal_catalog(5)[1].to_json()
    rec["generators"] = ["(1 2)"]
    rec["order"], rec["index"] = 2, 30
    with pytest.raises(InvariantError, match="catalog integrity"):
        _verified([rec], 5)


def test_find_entry():
    assert find_entry("A8@A9").degree == 9
    assert find_entry("C3").degree == 4
    assert find_entry("7:3", 8).degree == 8
    with pytest.raises(InputError):
        find_entry("nope")


@pytest.mark.parametrize("q, expected", [(5, False), (7, True), (9, False), (11, True), (13, False)])
def test_psl2_criterion(q, expected):
    r = psl2_criterion(q)
    assert r["formula"] == r["lift"] == expected
    assert r["borel_order"] == q * (q - 1) // 2


@pytest.mark.parametrize("n, liftable", [(4, ["C3"]), (5, []), (6, []), (7, []), (8, [])])
def test_verify_an_small(n, liftable):
    r = verify_double_cover_liftability(n)
    assert r["liftable"] == liftable
    assert r["summary"]["total"] == len(MAXIMAL_ORDERS[n])
    assert len(r["entries"]) == r["summary"]["total"]


@pytest.mark.slow
def test_verify_an_nine():
    r = verify_double_cover_liftability(9)
    assert sorted(r["liftable"]) == ["ASL2(3)", "PGammaL2(8)#1", "PGammaL2(8)#2"]


@pytest.mark.parametrize("n, bound", [(4, 4), (5, 12), (6, 40), (7, 120), (8, 120)])
def test_min_index(n, bound):
    r = min_liftable_index_bound(n)
    assert r["bound"] == bound and r["label"] == "upper bound for f(n)"
    assert r["witness"]["generators"]


def test_min_index_witness_is_liftable():
    for n in (5, 6, 7):
        r = min_liftable_index_bound(n)
        H = PermGroup([parse_cycles(g, n) for g in r["witness"]["generators"]], degree=n)
        assert alternating_group(n).order // H.order == r["bound"]
        assert lift_test(spin_cover(n).extension(), H) is not None


def test_a9_indices_and_affine_entry():
    assert [e.index for e in an_maximal_catalog(9)] == [9, 36, 84, 126, 280, 120, 120, 840]
    G = find_entry("ASL2(3)", 9).group()
    assert G.order == 216
    orbit = {0}
    for _ in range(9):
        orbit |= {g[x] for x in orbit for g in G.generators}
    assert orbit == set(range(9))


def test_min_index_witness_for_a5_is_cyclic_of_order_five():
    r = min_liftable_index_bound(5)
    assert r["method"] == "exhaustive" and r["witness"]["order"] == 5

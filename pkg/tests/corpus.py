"""Small groups, modules and extensions shared by the test modules."""

from __future__ import annotations

from dataclasses import dataclass

from subext.cochain import AbstractExtension
from subext.gmodule import GModule
from subext.perm import PermGroup, from_cycles, named_group, sign


def perm(n, *cyc):
    return from_cycles(n, cyc)


def sub(n, *gens):
    return PermGroup([perm(n, *g) if isinstance(g[0], tuple) else perm(n, g) for g in gens], degree=n)


def sl23_on_vectors() -> PermGroup:
    """SL(2,3) acting on the eight nonzero vectors of GF(3)^2 (row vectors)."""
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}

    def act(M):
        return tuple(index[((v[0] * M[0][0] + v[1] * M[1][0]) % 3, (v[0] * M[0][1] + v[1] * M[1][1]) % 3)]
                     for v in vecs)

    return PermGroup([act(((1, 1), (0, 1))), act(((1, 0), (1, 1)))], degree=8)


def quaternion() -> PermGroup:
    """Q8 inside SL(2,3) on eight points."""
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}

    def act(M):
        return tuple(index[((v[0] * M[0][0] + v[1] * M[1][0]) % 3, (v[0] * M[0][1] + v[1] * M[1][1]) % 3)]
                     for v in vecs)

    return PermGroup([act(((0, 1), (2, 0))), act(((1, 1), (1, 2)))], degree=8)


def minus_identity_on_vectors():
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}
    return tuple(index[((-v[0]) % 3, (-v[1]) % 3)] for v in vecs)


def sign_module(G: PermGroup, m: int) -> GModule:
    return GModule.from_matrices(G, m, [[[m - 1]] if sign(g) < 0 else [[1]] for g in G.generators], 1)


@dataclass
class Triple:
    name: str
    G: PermGroup
    H: PermGroup
    L: GModule


def corpus() -> list[Triple]:
    S3 = named_group("S3")
    C3in = sub(3, (1, 2, 3))
    C2in = sub(3, (1, 2))
    C4 = named_group("C4")
    C2inC4 = PermGroup([perm(4, (1, 3), (2, 4))], degree=4)
    V4 = PermGroup([perm(4, (1, 2), (3, 4)), perm(4, (1, 3), (2, 4))], degree=4)
    V4c2 = PermGroup([perm(4, (1, 2), (3, 4))], degree=4)
    A4 = named_group("A4")
    A4c3 = PermGroup([perm(4, (1, 2, 3))], degree=4)
    D4 = named_group("D4")
    D4rot = PermGroup([perm(4, (1, 2, 3, 4))], degree=4)
    C2 = named_group("C2")
    one2 = PermGroup([], degree=2)
    Q8 = quaternion()
    q = Q8.generators[0]
    Q8c4 = PermGroup([q], degree=8)
    return [
        Triple("S3>C3, Z/3", S3, C3in, GModule.trivial(S3, 3)),
        Triple("S3>C2, Z/2", S3, C2in, GModule.trivial(S3, 2)),
        Triple("S3>C3, Z/3 sign", S3, C3in, sign_module(S3, 3)),
        Triple("C4>C2, Z/2", C4, C2inC4, GModule.trivial(C4, 2)),
        Triple("V4>C2, Z/2", V4, V4c2, GModule.trivial(V4, 2)),
        Triple("A4>V4, Z/2", A4, V4, GModule.trivial(A4, 2)),
        Triple("A4>C3, Z/2", A4, A4c3, GModule.trivial(A4, 2)),
        Triple("D4>C4, Z/4", D4, D4rot, GModule.trivial(D4, 4)),
        Triple("C2>1, Z/3 inversion", C2, one2, GModule.from_matrices(C2, 3, [[[2]]])),
        Triple("Q8>C4, Z/2", Q8, Q8c4, GModule.trivial(Q8, 2)),
        Triple("S3>C2, (Z/2)^3 permutation", S3, C2in, GModule.permutation(S3, 2)),
    ]


def kk_suite() -> list[tuple[str, AbstractExtension]]:
    """Extensions for the wreath-product embedding: (name, presentation)."""
    C4 = named_group("C4")
    r = C4.generators[0]
    D4 = named_group("D4")
    rot = next(g for g in D4.generators if g == perm(4, (1, 2, 3, 4)))
    Q8 = quaternion()
    SL = sl23_on_vectors()
    z = minus_identity_on_vectors()
    from subext.perm import mul
    return [
        ("Z/4 over Z/2", AbstractExtension(C4, [mul(r, r)], 2)),
        ("Q8 over its centre", AbstractExtension(Q8, [z], 2)),
        ("D4 over rotations", AbstractExtension(D4, [rot], 4)),
        ("SL(2,3) over its centre", AbstractExtension(SL, [z], 2)),
    ]

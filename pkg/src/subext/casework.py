"""Subgroup catalogs for A_n, double-cover liftability runs, the PSL2(q) criterion, index bounds."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import gcd

from .cochain import Cochain2, ExtensionData
from .errors import InputError, InvariantError
from .gmodule import GModule
from .liftsplit import complement_lift_test, enumerate_subgroups, lift_report
from .perm import (Perm, PermGroup, alternating_group, conjugate, format_cycles, from_cycles, identity,
                   inv, is_even, mul, parse_cycles)
from .spincover import spin_cover

CATALOG_VERSION = "v1"

# ------------------------------------------------------------------ finite fields

# fixed irreducible polynomials, low degree coefficient first (monic)
IRREDUCIBLES = {8: (2, (1, 1, 0)), 9: (3, (2, 2))}
FIELD_ORDERS = (3, 5, 7, 8, 9, 11, 13)


class GF:
    """GF(q) with elements ``0..q-1`` read as base-``p`` coefficient vectors."""

    def __init__(self, q: int):
        if q not in FIELD_ORDERS:
            raise InputError(f"GF({q}) is not supported; choose from {FIELD_ORDERS}")
        self.q = q
        if q in IRREDUCIBLES:
            self.p, self.poly = IRREDUCIBLES[q]
            self.k = len(self.poly)
        else:
            self.p, self.poly, self.k = q, (), 1
        self.add_table = [[self._add(a, b) for b in range(q)] for a in range(q)]
        self.mul_table = [[self._mul(a, b) for b in range(q)] for a in range(q)]
        self.inv_table = [0] + [next(b for b in range(1, q) if self.mul_table[a][b] == 1) for a in range(1, q)]
        self.neg_table = [next(b for b in range(q) if self.add_table[a][b] == 0) for a in range(q)]
        self.primitive = next(a for a in range(2, q) if self._order(a) == q - 1) if q > 2 else 1

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _number(self, d) -> int:
        return sum(c * self.p**i for i, c in enumerate(d))

    def _add(self, a: int, b: int) -> int:
        p = self.p
        return self._number([(x + y) % p for x, y in zip(self._digits(a), self._digits(b))])

    def _mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(self._digits(a)):
            for j, y in enumerate(self._digits(b)):
                prod[i + j] = (prod[i + j] + x * y) % p
        # x^k = -(poly[0] + poly[1] x + ...)
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                prod[top] = 0
                for i, pc in enumerate(self.poly):
                    prod[top - k + i] = (prod[top - k + i] - c * pc) % p
        return self._number(prod[:k])

    def _order(self, a: int) -> int:
        x, n = a, 1
        while x != 1:
            x = self._mul(x, a)
            n += 1
        return n

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.inv_table[a]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def power(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)


class ProjectiveLine:
    """Points ``0..q-1`` (field elements) and ``q`` (infinity); matrices act on row vectors."""

    def __init__(self, F: GF):
        self.F = F
        self.inf = F.q

    @property
    def size(self) -> int:
        return self.F.q + 1

    def mobius(self, A) -> Perm:
        """``x -> (a x + c) / (b x + d)`` for ``A = ((a, b), (c, d))``."""
        F = self.F
        (a, b), (c, d) = A
        out = []
        for x in range(self.size):
            if x == self.inf:
                num, den = a, b
            else:
                num, den = F.add(F.mul(a, x), c), F.add(F.mul(b, x), d)
            out.append(self.inf if den == 0 else F.mul(num, F.inv(den)))
        return tuple(out)

    def field_map(self, f) -> Perm:
        return tuple(self.inf if x == self.inf else f(x) for x in range(self.size))


def _matmul(F: GF, A, B):
    return tuple(tuple(F.add(F.mul(A[i][0], B[0][j]), F.mul(A[i][1], B[1][j])) for j in range(2)) for i in range(2))


def _matneg(F: GF, A):
    return tuple(tuple(F.neg(x) for x in row) for row in A)


# ------------------------------------------------------------------ PSL2 criterion

class PSL2Data:
    """PSL2(q) on the projective line with the SL2(q) cocycle from canonical matrix lifts."""

    def __init__(self, q: int):
        if q % 2 == 0 or q > 13 or q not in FIELD_ORDERS:
            raise InputError(f"q must be an odd prime power <= 13 with tabulated field, got {q}")
        F = GF(q)
        self.F = F
        self.q = q
        P = ProjectiveLine(F)
        self.line = P
        w = F.primitive
        one, zero = 1, 0
        gens = [((one, one), (zero, one)), ((zero, F.neg(one)), (one, zero)),
                ((w, zero), (zero, F.inv(w)))]
        self._lift: dict = {}
        e = identity(P.size)
        eye = ((one, zero), (zero, one))
        self._lift[e] = self._canonical(eye)
        perms = [P.mobius(A) for A in gens]
        queue = [e]
        for x in queue:
            for A, s in zip(gens, perms):
                y = mul(x, s)
                if y not in self._lift:
                    self._lift[y] = self._canonical(_matmul(F, self._lift[x], A))
                    queue.append(y)
        self.group = PermGroup(perms, degree=P.size)
        expected = q * (q * q - 1) // 2
        if self.group.order != expected or len(self._lift) != expected:
            raise InvariantError(f"PSL2({q}) has order {self.group.order}, expected {expected}")
        module = GModule.trivial(self.group, 2)
        self.extension = ExtensionData(self.group, module, Cochain2(module, self.group, func=self._delta))
        translations = [P.field_map(lambda x, a=a: F.add(x, a)) for a in self._additive_basis()]
        scale = P.field_map(lambda x: F.mul(F.mul(w, w), x))
        self.borel = PermGroup(translations + [scale], degree=P.size)
        if self.borel.order != q * (q - 1) // 2:
            raise InvariantError("Borel subgroup has the wrong order")

    def _additive_basis(self) -> list[int]:
        F = self.F
        return [F.p**i for i in range(F.k)]

    def _canonical(self, A):
        B = _matneg(self.F, A)
        return min(A, B)

    def _delta(self, x: Perm, y: Perm):
        F = self.F
        p = _matmul(F, self._lift[x], self._lift[y])
        c = self._lift[mul(x, y)]
        if p == c:
            return (0,)
        if p == _matneg(F, c):
            return (1,)
        raise InvariantError("matrix lifts disagree beyond a sign")


def psl2_criterion(q: int) -> dict:
    """Formula verdict ``2 does not divide (q-1)/gcd(2, q-1)`` against the Borel lift test."""
    data = PSL2Data(q)
    formula = ((q - 1) // gcd(2, q - 1)) % 2 != 0
    res = lift_report(data.extension, data.borel)
    oracle = complement_lift_test(data.extension, data.borel)
    if res.liftable != oracle:
        raise InvariantError(f"q={q}: lift test and complement search disagree")
    if formula != res.liftable:
        raise InvariantError(f"q={q}: formula verdict {formula} but lift verdict {res.liftable}")
    return {"q": q, "formula": formula, "lift": res.liftable, "borel_order": data.borel.order,
            "strategy": res.strategy}


# ------------------------------------------------------------------ catalog construction

def _prune(gens: list[Perm], n: int) -> list[Perm]:
    kept: list[Perm] = []
    grp = PermGroup([], degree=n)
    for g in gens:
        if not grp.contains(g):
            kept.append(g)
            grp = PermGroup(kept, degree=n)
    return kept


def even_part(gens: list[Perm], n: int) -> list[Perm]:
    """Generators of ``<gens> & A_n`` (Schreier generators for the transversal ``{1, t}``)."""
    odd = [g for g in gens if not is_even(g)]
    if not odd:
        return _prune(list(gens), n)
    t = odd[0]
    reps = [identity(n), t]
    out = []
    for r in reps:
        for s in gens:
            x = mul(r, s)
            out.append(x if is_even(x) else mul(x, inv(t)))
    return _prune(out, n)


def _symmetric_on(points: list[int], n: int) -> list[Perm]:
    if len(points) < 2:
        return []
    gens = [from_cycles(n, [(points[0], points[1])])]
    if len(points) > 2:
        gens.append(from_cycles(n, [tuple(points)]))
    return gens


def intransitive(n: int, k: int) -> list[Perm]:
    pts = list(range(1, n + 1))
    return even_part(_symmetric_on(pts[:k], n) + _symmetric_on(pts[k:], n), n)


def imprimitive(n: int, a: int) -> list[Perm]:
    """``(S_a wr S_b) & A_n`` with blocks of size ``a``."""
    b = n // a
    blocks = [list(range(i * a + 1, (i + 1) * a + 1)) for i in range(b)]
    gens = _symmetric_on(blocks[0], n)
    swap = from_cycles(n, [(x, y) for x, y in zip(blocks[0], blocks[1])])
    gens.append(swap)
    if b > 2:
        gens.append(from_cycles(n, [tuple(blk[i] for blk in blocks) for i in range(a)]))
    return even_part(gens, n)


def projective_group(q: int, semilinear: bool = False) -> list[Perm]:
    """PGL2(q) (with the Frobenius if ``semilinear``) on ``q+1`` points."""
    F = GF(q)
    P = ProjectiveLine(F)
    w = F.primitive
    gens = [P.mobius(((1, 1), (0, 1))), P.mobius(((w, 0), (0, 1))), P.mobius(((0, 1), (1, 0)))]
    if semilinear:
        gens.append(P.field_map(F.frobenius))
    return gens


def psl2_on_line(q: int) -> list[Perm]:
    return even_part(projective_group(q), q + 1) if q % 2 else projective_group(q)


def _gf2_matrix_perm(M, affine: bool) -> Perm:
    """Action of a 3x3 GF(2) matrix on nonzero vectors (7 points) or all vectors (8 points)."""
    def apply(v):
        bits = [(v >> i) & 1 for i in range(3)]
        out = [sum(bits[i] * M[i][j] for i in range(3)) % 2 for j in range(3)]
        return sum(b << j for j, b in enumerate(out))

    if affine:
        return tuple(apply(v) for v in range(8))
    return tuple(apply(v) - 1 for v in range(1, 8))


_GL32 = [((0, 1, 0), (0, 0, 1), (1, 1, 0)), ((1, 1, 0), (0, 1, 0), (0, 0, 1))]


def fano_group() -> list[Perm]:
    return [_gf2_matrix_perm(M, False) for M in _GL32]


def agl32() -> list[Perm]:
    translation = tuple(v ^ 1 for v in range(8))
    return [_gf2_matrix_perm(M, True) for M in _GL32] + [translation]


def asl23() -> list[Perm]:
    """SL2(3) and translations acting on the affine plane AG(2,3), points ``3x + y``."""
    def affine(M, t):
        out = []
        for p in range(9):
            v = (p // 3, p % 3)
            w = [(v[0] * M[0][j] + v[1] * M[1][j] + t[j]) % 3 for j in range(2)]
            out.append(3 * w[0] + w[1])
        return tuple(out)

    return [affine(((1, 1), (0, 1)), (0, 0)), affine(((1, 0), (1, 1)), (0, 0)), affine(((1, 0), (0, 1)), (1, 0))]


@dataclass
class SubgroupSpec:
    name: str
    degree: int
    generators: list[str]
    order: int
    index: int
    classes: int = 1
    provenance: str = ""
    maximal: bool = True

    def group(self) -> PermGroup:
        return PermGroup([parse_cycles(g, self.degree) for g in self.generators], degree=self.degree)

    def to_json(self) -> dict:
        return {"name": self.name, "degree": self.degree, "generators": self.generators, "order": self.order,
                "index": self.index, "classes": self.classes, "provenance": self.provenance,
                "maximal": self.maximal}


def _spec(name: str, n: int, gens: list[Perm], provenance: str, maximal: bool = True, classes: int = 1) -> SubgroupSpec:
    gens = [tuple(g) for g in gens]
    for g in gens:
        if not is_even(g):
            raise InvariantError(f"{name}: generator {format_cycles(g)} is odd")
    G = PermGroup(gens, degree=n)
    full = alternating_group(n).order
    return SubgroupSpec(name, n, [format_cycles(g) for g in gens], G.order, full // G.order, classes,
                        provenance, maximal)


def build_catalogs() -> dict:
    """Catalog entries from the standard constructions (used to write the shipped JSON)."""
    swap = from_cycles(9, [(1, 2)])
    out: dict = {}
    out[4] = [
        _spec("V4", 4, [from_cycles(4, [(1, 2), (3, 4)]), from_cycles(4, [(1, 3), (2, 4)])], "normal Klein four-group"),
        _spec("C3", 4, [from_cycles(4, [(1, 2, 3)])], "point stabilizer"),
    ]
    out[5] = [
        _spec("A4", 5, intransitive(5, 4), "point stabilizer, (S4 x S1) & A5"),
        _spec("D10", 5, [from_cycles(5, [(1, 2, 3, 4, 5)]), from_cycles(5, [(2, 5), (3, 4)])], "normalizer of a 5-cycle"),
        _spec("(S2xS3)&A5", 5, intransitive(5, 2), "intransitive, orbits of sizes 2 and 3"),
    ]
    out[6] = [
        _spec("A5", 6, intransitive(6, 5), "point stabilizer"),
        _spec("PSL2(5)", 6, psl2_on_line(5), "PSL2(5) on the projective line over GF(5); transitive A5"),
        _spec("(S2xS4)&A6", 6, intransitive(6, 2), "intransitive, orbits of sizes 2 and 4"),
        _spec("(S2wrS3)&A6", 6, imprimitive(6, 2), "imprimitive, three blocks of size 2"),
        _spec("(S3wrS2)&A6", 6, imprimitive(6, 3), "imprimitive, two blocks of size 3"),
    ]
    fano = fano_group()
    out[7] = [
        _spec("A6", 7, intransitive(7, 6), "point stabilizer"),
        _spec("(S2xS5)&A7", 7, intransitive(7, 2), "intransitive, orbits of sizes 2 and 5"),
        _spec("(S3xS4)&A7", 7, intransitive(7, 3), "intransitive, orbits of sizes 3 and 4"),
        _spec("PSL2(7)#1", 7, fano, "GL3(2) on the seven points of the Fano plane"),
        _spec("PSL2(7)#2", 7, [conjugate(g, from_cycles(7, [(1, 2)])) for g in fano],
              "first class conjugated by the odd permutation (1 2)"),
    ]
    agl = agl32()
    out[8] = [
        _spec("A7", 8, intransitive(8, 7), "point stabilizer"),
        _spec("(S2xS6)&A8", 8, intransitive(8, 2), "intransitive, orbits of sizes 2 and 6"),
        _spec("(S3xS5)&A8", 8, intransitive(8, 3), "intransitive, orbits of sizes 3 and 5"),
        _spec("(S4wrS2)&A8", 8, imprimitive(8, 4), "imprimitive, two blocks of size 4"),
        _spec("AGL3(2)#1", 8, agl, "affine group of GF(2)^3 on its eight vectors"),
        _spec("AGL3(2)#2", 8, [conjugate(g, from_cycles(8, [(1, 2)])) for g in agl],
              "first class conjugated by the odd permutation (1 2)"),
    ]
    pgl8 = projective_group(8, semilinear=True)
    out[9] = [
        _spec("A8", 9, intransitive(9, 8), "point stabilizer"),
        _spec("(S2xS7)&A9", 9, intransitive(9, 2), "intransitive, orbits of sizes 2 and 7"),
        _spec("(S3xS6)&A9", 9, intransitive(9, 3), "intransitive, orbits of sizes 3 and 6"),
        _spec("(S4xS5)&A9", 9, intransitive(9, 4), "intransitive, orbits of sizes 4 and 5"),
        _spec("(S3wrS3)&A9", 9, imprimitive(9, 3), "imprimitive, three blocks of size 3"),
        _spec("PGammaL2(8)#1", 9, pgl8,
              "PGL2(8) with the Frobenius on the projective line over GF(8) = GF(2)[x]/(x^3+x+1)"),
        _spec("PGammaL2(8)#2", 9, [conjugate(g, swap) for g in pgl8],
              "first class conjugated by the odd permutation (1 2)"),
        _spec("ASL2(3)", 9, asl23(), "SL2(3) and translations on the affine plane AG(2,3)"),
    ]
    return out


def build_candidates() -> dict:
    """Non-maximal subgroups added to the catalog search for index bounds (n >= 6)."""
    out: dict = {}
    out[6] = [_spec("3^2", 6, [from_cycles(6, [(1, 2, 3)]), from_cycles(6, [(4, 5, 6)])],
                    "Sylow 3-subgroup", maximal=False)]
    out[7] = [_spec("7:3", 7, [from_cycles(7, [(1, 2, 3, 4, 5, 6, 7)]), from_cycles(7, [(2, 3, 5), (4, 7, 6)])],
                    "normalizer of a 7-cycle in A7", maximal=False)]
    F = GF(8)
    w = F.primitive
    aff = [tuple(F.add(x, 1) for x in range(8)), tuple(F.mul(w, x) for x in range(8))]
    frob = tuple(F.frobenius(x) for x in range(8))
    out[8] = [
        _spec("PSL2(7)", 8, psl2_on_line(7), "PSL2(7) on the projective line over GF(7)", maximal=False),
        _spec("AGammaL1(8)", 8, aff + [frob], "affine semilinear group of GF(8)", maximal=False),
        _spec("AGL1(8)", 8, aff, "affine group of GF(8)", maximal=False),
        _spec("2^3", 8, even_part([tuple(F.add(x, a) for x in range(8)) for a in (1, 2, 4)], 8),
              "translations of GF(8)", maximal=False),
        _spec("7:3", 8, [from_cycles(8, [(1, 2, 3, 4, 5, 6, 7)]), from_cycles(8, [(2, 3, 5), (4, 7, 6)])],
              "normalizer of a 7-cycle fixing a point", maximal=False),
    ]
    out[9] = [
        _spec("PSL2(8)", 9, projective_group(8), "PSL2(8) = PGL2(8) on the projective line over GF(8)",
              maximal=False),
    ]
    return out


def catalog_json(entries: list[SubgroupSpec]) -> list[dict]:
    return [e.to_json() for e in entries]


# ------------------------------------------------------------------ catalog loading

def _load(filename: str) -> dict:
    path = resources.files("subext").joinpath("data", CATALOG_VERSION, filename)
    return json.loads(path.read_text())


def _verified(records: list[dict], n: int) -> list[SubgroupSpec]:
    full = alternating_group(n)
    out = []
    for rec in records:
        spec = SubgroupSpec(**rec)
        G = spec.group()
        if G.order != spec.order or full.order // G.order != spec.index:
            raise InvariantError(f"catalog integrity: {spec.name} has order {G.order}, expected {spec.order}")
        if not G.is_subgroup_of(full):
            raise InvariantError(f"catalog integrity: {spec.name} is not inside A{n}")
        out.append(spec)
    return out


@lru_cache(maxsize=None)
def _catalog(n: int, kind: str) -> tuple:
    data = _load(f"{kind}.json")
    return tuple(_verified(data.get(str(n), []), n))


def an_maximal_catalog(n: int) -> list[SubgroupSpec]:
    if not 4 <= n <= 9:
        raise InputError("catalogs cover 4 <= n <= 9")
    return list(_catalog(n, "maximal"))


def candidate_catalog(n: int) -> list[SubgroupSpec]:
    if not 4 <= n <= 9:
        raise InputError("catalogs cover 4 <= n <= 9")
    return list(_catalog(n, "candidates"))


def find_entry(name: str, degree: int | None = None) -> SubgroupSpec:
    """Catalog entry by name (``name@A<n>`` pins the ambient group)."""
    for n in range(4, 10):
        if degree is not None and n != degree:
            continue
        for spec in an_maximal_catalog(n) + candidate_catalog(n):
            if spec.name == name or f"{spec.name}@A{n}" == name:
                return spec
    raise InputError(f"no catalog entry named {name!r}")


# ------------------------------------------------------------------ reports

@dataclass
class Verdict:
    name: str
    order: int
    index: int
    liftable: bool
    strategy: str
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "index": self.index, "liftable": self.liftable,
                "strategy": self.strategy, "certificate": self.certificate}


def _decide(ext: ExtensionData, spec: SubgroupSpec, cross_check: bool = True) -> Verdict:
    H = spec.group()
    first = lift_report(ext, H)
    certificate = first.split.digest() if first.split is not None else dict(first.certificate)
    if cross_check and first.strategy != "linear":
        second = lift_report(ext, H, "linear")
        if second.liftable != first.liftable:
            raise InvariantError(f"{spec.name}: strategies disagree")
        if second.split is None:
            certificate = {"sign_search": first.certificate, "linear": second.certificate}
    return Verdict(spec.name, spec.order, spec.index, first.liftable, first.strategy, certificate)


def verify_double_cover_liftability(n: int, cross_check: bool = True, timing: bool = False) -> dict:
    """Lift test of every maximal catalog entry of A_n against the spin cover."""
    entries = an_maximal_catalog(n)
    ext = spin_cover(n).extension()
    start = time.perf_counter()
    verdicts = [_decide(ext, spec, cross_check) for spec in entries]
    report = {
        "n": n,
        "entries": [v.to_json() for v in verdicts],
        "liftable": [v.name for v in verdicts if v.liftable],
        "not_liftable": [v.name for v in verdicts if not v.liftable],
        "summary": {"total": len(verdicts), "liftable": sum(v.liftable for v in verdicts)},
    }
    if len(report["entries"]) != len(entries):
        raise InvariantError("verdict count differs from catalog size")
    if timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    return report


def min_liftable_index_bound(n: int) -> dict:
    """Smallest index of a liftable subgroup found: an upper bound for f(n)."""
    if not 4 <= n <= 9:
        raise InputError("bounds are computed for 4 <= n <= 9")
    ext = spin_cover(n).extension()
    full = alternating_group(n).order
    if n <= 5:
        best = None
        for H in enumerate_subgroups(ext.group):
            if best is not None and full // H.order >= best[0]:
                continue
            if lift_report(ext, H).liftable:
                best = (full // H.order, H)
        index, H = best
        gens = [format_cycles(g) for g in H.generators]
        return {"n": n, "bound": index, "label": "upper bound for f(n)", "method": "exhaustive",
                "witness": {"generators": gens, "order": H.order}}
    pool = an_maximal_catalog(n) + candidate_catalog(n)
    pool.sort(key=lambda s: (s.index, s.name))
    for spec in pool:
        if lift_report(ext, spec.group()).liftable:
            return {"n": n, "bound": spec.index, "label": "upper bound for f(n)", "method": "catalog",
                    "witness": {"name": spec.name, "generators": spec.generators, "order": spec.order}}
    return {"n": n, "bound": None, "label": "upper bound for f(n)", "method": "catalog", "witness": None}

"""Permutations and permutation groups.

Permutations are tuples of images on ``0..n-1``: ``p[i]`` is the image of
``i``.  Products are read left to right, ``mul(p, q)`` applies ``p`` first
and then ``q``, so groups act on points from the right.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import InputError

Perm = tuple  # tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def mul(p: Perm, q: Perm) -> Perm:
    """Apply ``p``, then ``q``."""
    return tuple([q[x] for x in p])


def mul_all(perms: Iterable[Perm], n: int) -> Perm:
    out = identity(n)
    for p in perms:
        out = mul(out, p)
    return out


def inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def power(p: Perm, k: int) -> Perm:
    if k < 0:
        return power(inv(p), -k)
    out = identity(len(p))
    base = p
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def conjugate(p: Perm, g: Perm) -> Perm:
    """``p^g = g^-1 p g``."""
    return mul(mul(inv(g), p), g)


def perm_order(p: Perm) -> int:
    from math import lcm

    out = 1
    for c in cycles(p):
        out = lcm(out, len(c))
    return out


def sign(p: Perm) -> int:
    s = 1
    for c in cycles(p):
        if len(c) % 2 == 0:
            s = -s
    return s


def is_even(p: Perm) -> bool:
    return sign(p) == 1


def check_perm(p: Sequence[int]) -> Perm:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(len(p))):
        raise InputError(f"not a permutation: {p!r}")
    return p


def cycles(p: Perm) -> list[list[int]]:
    """Nontrivial cycles of ``p`` (0-based), each starting at its smallest point."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        c = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            c.append(j)
            j = p[j]
        out.append(c)
    return out


def from_cycles(n: int, cycle_list: Iterable[Sequence[int]], one_based: bool = True) -> Perm:
    off = 1 if one_based else 0
    out = list(range(n))
    touched: set[int] = set()
    for c in cycle_list:
        pts = [x - off for x in c]
        for x in pts:
            if not 0 <= x < n:
                raise InputError(f"point {x + off} outside degree {n}")
            if x in touched:
                raise InputError("cycles are not disjoint")
            touched.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            out[a] = b
    return tuple(out)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Perm:
    """Parse disjoint cycle notation such as ``"(1,2,3)(4,5)"`` (1-based)."""
    stripped = re.sub(r"\s+", " ", text).strip()
    if not stripped:
        raise InputError("empty permutation string")
    rest = _CYCLE_RE.sub("", stripped).strip()
    if rest:
        raise InputError(f"could not parse permutation {text!r}")
    cyc = []
    for body in _CYCLE_RE.findall(stripped):
        body = body.strip()
        if not body:
            continue
        try:
            pts = [int(tok) for tok in re.split(r"[,\s]+", body) if tok]
        except ValueError as exc:
            raise InputError(f"could not parse permutation {text!r}") from exc
        cyc.append(pts)
    return from_cycles(n, cyc)


def format_cycles(p: Perm) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cs)


def transposition_word(p: Perm) -> list[int]:
    """Canonical bubble-sort word of ``p``.

    Entry ``j`` stands for the adjacent transposition ``(j, j+1)`` (0-based),
    and the left-to-right product of the word equals ``p``.
    """
    a = list(p)
    word = []
    n = len(a)
    changed = True
    while changed:
        changed = False
        for j in range(n - 1):
            if a[j] > a[j + 1]:
                a[j], a[j + 1] = a[j + 1], a[j]
                word.append(j)
                changed = True
    return word


def adjacent_transposition(n: int, j: int) -> Perm:
    out = list(range(n))
    out[j], out[j + 1] = j + 1, j
    return tuple(out)


def word_product(word: Sequence[int], n: int) -> Perm:
    return mul_all((adjacent_transposition(n, j) for j in word), n)


@dataclass
class _Level:
    base: int
    gens: list = field(default_factory=list)
    trans: dict = field(default_factory=dict)
    trans_inv: dict = field(default_factory=dict)


class PermGroup:
    """A permutation group with a deterministic stabilizer chain."""

    def __init__(self, generators: Iterable[Sequence[int]] = (), degree: int | None = None):
        gens = [check_perm(g) for g in generators]
        degrees = {len(g) for g in gens}
        if degree is not None:
            degrees.add(degree)
        if len(degrees) > 1:
            raise InputError(f"generators have inconsistent degrees {sorted(degrees)}")
        if not degrees:
            raise InputError("degree required for a group without generators")
        self.degree = degrees.pop()
        self.generators = tuple(gens)
        self._id = identity(self.degree)
        self._levels: list[_Level] = []
        for g in self.generators:
            if not is_identity(g) and not is_identity(self._sift(g, 0)):
                self._add(0, g)
        self.order = 1
        for lev in self._levels:
            self.order *= len(lev.trans)

    def __repr__(self) -> str:
        gens = ", ".join(format_cycles(g) for g in self.generators)
        return f"PermGroup(degree={self.degree}, order={self.order}, gens=[{gens}])"

    @property
    def identity(self) -> Perm:
        return self._id

    @property
    def base(self) -> list[int]:
        return [lev.base for lev in self._levels]

    def orbit_sizes(self) -> list[int]:
        return [len(lev.trans) for lev in self._levels]

    def _add(self, i: int, g: Perm) -> None:
        if i == len(self._levels):
            moved = next(k for k, x in enumerate(g) if k != x)
            self._levels.append(_Level(moved, trans={moved: self._id}, trans_inv={moved: self._id}))
        lev = self._levels[i]
        lev.gens.append(g)
        queue = [(p, g) for p in list(lev.trans)]
        while queue:
            p, s = queue.pop()
            q = s[p]
            cand = mul(lev.trans[p], s)
            if q not in lev.trans:
                lev.trans[q] = cand
                lev.trans_inv[q] = inv(cand)
                queue.extend((q, t) for t in lev.gens)
            else:
                residue = self._sift(mul(cand, lev.trans_inv[q]), i + 1)
                if not is_identity(residue):
                    self._add(i + 1, residue)

    def _sift(self, g: Perm, start: int) -> Perm:
        for lev in self._levels[start:]:
            p = g[lev.base]
            u = lev.trans_inv.get(p)
            if u is None:
                return g
            g = mul(g, u)
        return g

    def contains(self, g: Sequence[int]) -> bool:
        g = tuple(g)
        if len(g) != self.degree:
            return False
        return is_identity(self._sift(g, 0))

    __contains__ = contains

    def factor_chain(self, g: Perm) -> list[Perm]:
        """Transversal factors ``u_k, ..., u_0`` with ``g = u_k ... u_0``."""
        out = []
        for lev in self._levels:
            p = g[lev.base]
            if p not in lev.trans:
                raise InputError(f"{format_cycles(g)} is not in the group")
            out.append(lev.trans[p])
            g = mul(g, lev.trans_inv[p])
        if not is_identity(g):
            raise InputError(f"{format_cycles(g)} is not in the group")
        return out[::-1]

    def random_element(self, rng: random.Random) -> Perm:
        g = self._id
        for lev in reversed(self._levels):
            pts = sorted(lev.trans)
            g = mul(g, lev.trans[pts[rng.randrange(len(pts))]])
        return g

    def elements(self) -> Iterator[Perm]:
        """All elements, in a deterministic order."""

        def rec(k: int, acc: Perm) -> Iterator[Perm]:
            if k < 0:
                yield acc
                return
            lev = self._levels[k]
            for p in sorted(lev.trans):
                yield from rec(k - 1, mul(acc, lev.trans[p]))

        yield from rec(len(self._levels) - 1, self._id)

    def element_list(self) -> list[Perm]:
        """Identity first, then the rest in sorted order."""
        rest = sorted(g for g in self.elements() if g != self._id)
        return [self._id] + rest

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def conjugate(self, g: Perm) -> "PermGroup":
        return PermGroup([conjugate(x, g) for x in self.generators], degree=self.degree)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.order == other.order and self.is_subgroup_of(other)

    def __hash__(self) -> int:
        return hash((self.degree, self.order))

    def point_stabilizer(self, point: int) -> "PermGroup":
        """Stabilizer of ``point`` via Schreier generators of its orbit."""
        trans = {point: self._id}
        queue = [point]
        for p in queue:
            for s in self.generators:
                q = s[p]
                if q not in trans:
                    trans[q] = mul(trans[p], s)
                    queue.append(q)
        gens = []
        sub = PermGroup([], degree=self.degree)
        target = self.order // len(trans)
        for p in sorted(trans):
            for s in self.generators:
                sg = mul(mul(trans[p], s), inv(trans[s[p]]))
                if not is_identity(sg) and not sub.contains(sg):
                    gens.append(sg)
                    sub = PermGroup(gens, degree=self.degree)
                    if sub.order == target:
                        return sub
        return sub


def group_order(generators: Sequence[Sequence[int]], degree: int | None = None) -> tuple[int, PermGroup]:
    grp = PermGroup(generators, degree=degree)
    return grp.order, grp


def closure(generators: Sequence[Perm], degree: int) -> set[Perm]:
    """Brute-force closure of a generating set (test oracle)."""
    e = identity(degree)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for s in generators:
                y = mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


class CosetTransversal:
    """Left transversal ``G = r_0 H u ... u r_{k-1} H`` with ``r_0 = 1``.

    Cosets are identified by a canonical key: the lexicographically smallest
    element (in base-image order of ``H``'s chain) of the right coset
    ``H x^-1``, computed in ``O(sum of H's orbit sizes)``.
    """

    def __init__(self, group: PermGroup, subgroup: PermGroup):
        if not subgroup.is_subgroup_of(group):
            raise InputError("subgroup is not contained in the group")
        self.group = group
        self.subgroup = subgroup
        self._levels = [
            (sorted(lev.trans), lev.trans) for lev in subgroup._levels
        ]
        e = group.identity
        self.reps: list[Perm] = [e]
        self.lookup: dict[Perm, int] = {self._key(e): 0}
        index = group.order // subgroup.order
        for r in self.reps:
            if len(self.reps) == index:
                break
            for s in group.generators:
                x = mul(s, r)
                k = self._key(x)
                if k not in self.lookup:
                    self.lookup[k] = len(self.reps)
                    self.reps.append(x)
        if len(self.reps) != index:
            raise InputError("coset enumeration did not reach the full index")
        self._rep_inv = [inv(r) for r in self.reps]

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def index(self) -> int:
        return len(self.reps)

    def _key(self, x: Perm) -> Perm:
        y = inv(x)
        for pts, trans in self._levels:
            best = min(pts, key=y.__getitem__)
            y = mul(trans[best], y)
        return y

    def rep_index(self, x: Perm) -> int:
        return self.lookup[self._key(x)]

    def factor(self, x: Perm) -> tuple[int, Perm]:
        """Return ``(i, h)`` with ``x = reps[i] h`` and ``h`` in the subgroup."""
        try:
            i = self.lookup[self._key(x)]
        except KeyError:
            raise InputError(f"{format_cycles(x)} is not in the group") from None
        h = mul(self._rep_inv[i], x)
        return i, h

    def factor_scan(self, x: Perm) -> tuple[int, Perm]:
        """Linear-scan factorization; slow reference path."""
        for i, ri in enumerate(self._rep_inv):
            h = mul(ri, x)
            if self.subgroup.contains(h):
                return i, h
        raise InputError(f"{format_cycles(x)} is not in the group")


def left_transversal(group: PermGroup, subgroup: PermGroup) -> CosetTransversal:
    return CosetTransversal(group, subgroup)


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup([], degree=max(n, 1))
    gens = [from_cycles(n, [range(1, n + 1)])]
    gens.append(from_cycles(n, [(1, 2)]))
    return PermGroup(gens)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], degree=max(n, 1))
    if n == 3:
        return PermGroup([from_cycles(3, [(1, 2, 3)])])
    a = from_cycles(n, [(1, 2, 3)])
    if n % 2:
        b = from_cycles(n, [range(1, n + 1)])
    else:
        b = from_cycles(n, [range(2, n + 1)])
    return PermGroup([a, b])


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], degree=1)
    return PermGroup([from_cycles(n, [range(1, n + 1)])])


def dihedral_group(n: int) -> PermGroup:
    """Dihedral group of order ``2n`` acting on ``n`` points."""
    r = from_cycles(n, [range(1, n + 1)])
    s = tuple((-i) % n for i in range(n))
    return PermGroup([r, s])


def named_group(name: str) -> PermGroup:
    """``A<n>``, ``S<n>``, ``C<n>``, ``D<n>`` (dihedral of order 2n)."""
    m = re.fullmatch(r"\s*([ASCD])_?(\d+)\s*", name)
    if not m:
        raise InputError(f"unknown group name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1 or n > 64:
        raise InputError(f"degree {n} out of range")
    return {"A": alternating_group, "S": symmetric_group, "C": cyclic_group, "D": dihedral_group}[kind](n)

"""Normalized cochains in degrees 0-3, cohomology, and extensions from 2-cocycles.

Conventions (right actions, products read left to right)::

    (d mu)(g)              = mu.g - mu
    (d nu)(g1, g2)         = nu(g2) - nu(g1 g2) + nu(g1).g2
    (d c)(g1, g2, g3)      = c(g2, g3) - c(g1 g2, g3) + c(g1, g2 g3) - c(g1, g2).g3

An extension built from ``c`` multiplies ``(l1, g1)(l2, g2) =
(l1.g2 + l2 + c(g1, g2), g1 g2)``; with these signs a complement
``{(psi(h), h)}`` over ``H`` exists exactly when ``c|H = d(-psi)``.
"""

from __future__ import annotations

import os
import random
import threading
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import InputError, ResourceError
from .gmodule import CoinducedModule, GModule, Vec
from .perm import Perm, PermGroup, format_cycles, inv, is_identity, mul
from .zmod import QuotientModule, rank_data, solve_left

DENSE_LIMIT = 5000


def default_budget() -> int:
    """Cap on dense differential-matrix entries (``SUBEXT_BUDGET`` overrides)."""
    env = os.environ.get("SUBEXT_BUDGET")
    if env:
        try:
            return int(float(env))
        except ValueError:
            raise InputError(f"SUBEXT_BUDGET must be a number, got {env!r}") from None
    return 20_000_000


class Cochain:
    """A normalized n-cochain on ``group`` with values in ``module``.

    Backed either by a dict keyed by argument tuples (missing keys mean 0) or
    by a function; function-backed cochains memoize their values.
    """

    degree = -1

    def __init__(self, module: GModule, group: PermGroup | None = None, *,
                 table: dict | None = None, func: Callable | None = None, memo: bool = True):
        if (table is None) == (func is None):
            raise ValueError("give exactly one of table or func")
        self.module = module
        self.group = group if group is not None else module.group
        self._table = table
        self._func = func
        self._memo: dict | None = {} if (func is not None and memo) else None
        self._lock = threading.Lock()

    @property
    def is_dense(self) -> bool:
        return self._table is not None

    def __call__(self, *args: Perm) -> Vec:
        for a in args:
            if is_identity(a):
                return self.module.zero()
        if self._table is not None:
            key = args[0] if len(args) == 1 else args
            return self._table.get(key, self.module.zero())
        if self._memo is not None:
            key = args
            val = self._memo.get(key)
            if val is None:
                val = self.module.reduce(self._func(*args))
                with self._lock:
                    self._memo[key] = val
            return val
        return self.module.reduce(self._func(*args))

    def dense(self, elements: Sequence[Perm] | None = None) -> "Cochain":
        """Materialize over all argument tuples from ``elements``."""
        elems = [g for g in (elements if elements is not None else self.group.element_list())
                 if not is_identity(g)]
        zero = self.module.zero()
        table = {}
        for args in product(elems, repeat=self.degree):
            v = self(*args)
            if v != zero:
                table[args[0] if self.degree == 1 else args] = v
        return type(self)(self.module, self.group, table=table)

    def to_vector(self, elements: Sequence[Perm]) -> np.ndarray:
        elems = [g for g in elements if not is_identity(g)]
        out = []
        for args in product(elems, repeat=self.degree):
            out.extend(self(*args))
        return np.array(out, dtype=np.int64)

    @classmethod
    def from_vector(cls, module: GModule, vec: Sequence[int], elements: Sequence[Perm],
                    group: PermGroup | None = None) -> "Cochain":
        elems = [g for g in elements if not is_identity(g)]
        k = module.rank
        table = {}
        pos = 0
        for args in product(elems, repeat=cls.degree):
            v = module.reduce(vec[pos:pos + k])
            pos += k
            if any(v):
                table[args[0] if cls.degree == 1 else args] = v
        return cls(module, group, table=table)

    def equals(self, other: "Cochain", elements: Iterable[Perm] | None = None) -> bool:
        elems = [g for g in (elements if elements is not None else self.group.element_list())
                 if not is_identity(g)]
        return all(self(*a) == other(*a) for a in product(elems, repeat=self.degree))


class Cochain1(Cochain):
    degree = 1


class Cochain2(Cochain):
    degree = 2


class Cochain3(Cochain):
    degree = 3


_BY_DEGREE = {1: Cochain1, 2: Cochain2, 3: Cochain3}


def zero_cochain(module: GModule, degree: int, group: PermGroup | None = None) -> Cochain:
    return _BY_DEGREE[degree](module, group, table={})


# ---------------------------------------------------------------- differential

def differential(c, module: GModule | None = None, group: PermGroup | None = None) -> Cochain:
    """Coboundary of a 0-cochain (module element, pass ``module``), 1- or 2-cochain."""
    if not isinstance(c, Cochain):
        if module is None:
            raise InputError("a 0-cochain needs its module")
        mod = module
        mu = mod.reduce(c)
        return Cochain1(mod, group, func=lambda g: mod.sub(mod.act(mu, g), mu))
    mod = c.module
    if c.degree == 1:
        def d1(g1, g2):
            return mod.add(mod.sub(c(g2), c(mul(g1, g2))), mod.act(c(g1), g2))
        return Cochain2(mod, c.group, func=d1)
    if c.degree == 2:
        def d2(g1, g2, g3):
            a = mod.sub(c(g2, g3), c(mul(g1, g2), g3))
            b = mod.sub(c(g1, mul(g2, g3)), mod.act(c(g1, g2), g3))
            return mod.add(a, b)
        return Cochain3(mod, c.group, func=d2)
    raise InputError(f"differential not defined in degree {c.degree}")


def is_cocycle(c: Cochain, triples: Iterable | None = None) -> bool:
    return cocycle_violation(c, triples) is None


def cocycle_violation(c: Cochain, args: Iterable | None = None):
    """First argument tuple where ``d c`` is nonzero, or ``None``."""
    dc = differential(c)
    zero = c.module.zero()
    if args is None:
        elems = [g for g in c.group.element_list() if not is_identity(g)]
        args = product(elems, repeat=c.degree + 1)
    for a in args:
        if dc(*a) != zero:
            return a
    return None


def sample_tuples(group: PermGroup, arity: int, count: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    return [tuple(group.random_element(rng) for _ in range(arity)) for _ in range(count)]


def check_cocycle(c: Cochain, exhaustive_limit: int = 200_000, samples: int = 200, seed: int = 0) -> None:
    """Raise :class:`InputError` naming a violating tuple if ``c`` is not a cocycle."""
    n = c.group.order
    if n ** (c.degree + 1) <= exhaustive_limit:
        bad = cocycle_violation(c)
    else:
        bad = cocycle_violation(c, sample_tuples(c.group, c.degree + 1, samples, seed))
    if bad is not None:
        names = ", ".join(format_cycles(g) for g in bad)
        raise InputError(f"cocycle identity fails at ({names})")


# ------------------------------------------------------------ dense matrices

@dataclass
class _Indexing:
    elements: list  # identity first
    index: dict  # nonidentity element -> 0..N-1
    mult: list  # mult[i][j] for nonidentity i, j: index of product or -1

    @property
    def N(self) -> int:
        return len(self.elements) - 1


def _indexing(group: PermGroup, elements: Sequence[Perm] | None = None) -> _Indexing:
    elems = list(elements) if elements is not None else group.element_list()
    nonid = [g for g in elems if not is_identity(g)]
    index = {g: i for i, g in enumerate(nonid)}
    mult = [[index.get(mul(a, b), -1) for b in nonid] for a in nonid]
    return _Indexing([group.identity] + nonid, index, mult)


def differential_matrix(group: PermGroup, module: GModule, n: int,
                        budget: int | None = None, indexing: _Indexing | None = None) -> np.ndarray:
    """Matrix of ``d: C^n -> C^{n+1}`` acting on row vectors (``n`` in 0..2)."""
    ix = indexing or _indexing(group)
    N, k, m = ix.N, module.rank, module.modulus
    rows, cols = N**n * k, N ** (n + 1) * k
    budget = default_budget() if budget is None else budget
    if rows * cols > budget:
        raise ResourceError(f"dense differential {rows}x{cols} exceeds budget {budget}")
    D = np.zeros((rows, cols), dtype=np.int64)
    nonid = ix.elements[1:]
    eye = np.eye(k, dtype=np.int64)
    mats = [module.matrix(g) % m for g in nonid]

    def blk(M, r, c, val):
        M[r * k:(r + 1) * k, c * k:(c + 1) * k] += val

    if n == 0:
        for j in range(N):
            blk(D, 0, j, mats[j] - eye)
    elif n == 1:
        for a in range(N):
            for b in range(N):
                col = a * N + b
                blk(D, b, col, eye)
                ab = ix.mult[a][b]
                if ab >= 0:
                    blk(D, ab, col, -eye)
                blk(D, a, col, mats[b])
    elif n == 2:
        for a in range(N):
            for b in range(N):
                ab = ix.mult[a][b]
                for c in range(N):
                    col = (a * N + b) * N + c
                    blk(D, b * N + c, col, eye)
                    if ab >= 0:
                        blk(D, ab * N + c, col, -eye)
                    bc = ix.mult[b][c]
                    if bc >= 0:
                        blk(D, a * N + bc, col, eye)
                    blk(D, a * N + b, col, -mats[c])
    else:
        raise InputError("dense differentials only in degrees 0..2")
    return D % m


# ------------------------------------------------------------ cohomology

class CohomologyGroup:
    """``H^n(G, L)`` for ``n`` in {1, 2} computed from dense differentials."""

    def __init__(self, group: PermGroup, module: GModule, n: int, budget: int | None = None):
        if n not in (1, 2):
            raise InputError("cohomology only in dimensions 1 and 2")
        self.group = group
        self.module = module
        self.dimension = n
        self._ix = _indexing(group)
        N, k = self._ix.N, module.rank
        budget = default_budget() if budget is None else budget
        need = (N ** (n - 1) * N**n + N**n * N ** (n + 1)) * k * k
        if need > budget:
            raise ResourceError(f"dense cochain matrices need {need} entries, budget {budget}")
        self._D_prev = differential_matrix(group, module, n - 1, budget, self._ix)
        self._D_next = differential_matrix(group, module, n, budget, self._ix)
        self._q = QuotientModule(self._D_prev, self._D_next, module.modulus, N**n * k)
        self._cls = _BY_DEGREE[n]

    @property
    def elements(self) -> list:
        return self._ix.elements

    @property
    def invariant_factors(self) -> list[int]:
        return self._q.invariant_factors()

    @property
    def orders(self) -> list[int]:
        """Orders of the cyclic generators (prime powers)."""
        return list(self._q.orders)

    @property
    def class_count(self) -> int:
        return self._q.size

    @property
    def generators(self) -> list[Cochain]:
        return [self._cls.from_vector(self.module, g, self.elements, self.group) for g in self._q.generators]

    def representatives(self) -> list[Cochain]:
        """One cocycle per class, the zero class first."""
        out = []
        for coeffs in product(*(range(o) for o in self._q.orders)):
            out.append(self._cls.from_vector(self.module, self._q.element(coeffs), self.elements, self.group))
        return out

    def vector(self, c: Cochain) -> np.ndarray:
        return c.to_vector(self.elements) % self.module.modulus

    def is_cocycle(self, c: Cochain) -> bool:
        return not (self.vector(c) @ self._D_next % self.module.modulus).any()

    def class_of(self, c: Cochain) -> tuple[int, ...]:
        """Coordinates of the class of the cocycle ``c`` on :attr:`generators`."""
        if not self.is_cocycle(c):
            raise InputError("not a cocycle")
        return self._q.coordinates(self.vector(c))

    def is_coboundary(self, c: Cochain) -> bool:
        return not any(self.class_of(c))

    def report(self) -> dict:
        return {"dimension": self.dimension, "invariant_factors": self.invariant_factors,
                "class_count": self.class_count}


def cohomology_group(group: PermGroup, module: GModule, n: int, budget: int | None = None) -> CohomologyGroup:
    return CohomologyGroup(group, module, n, budget)


# ------------------------------------------------------------ coboundary solving

@dataclass
class CoboundaryResult:
    """Outcome of solving ``d phi = c``: ``phi`` or ``None`` plus certificate data."""

    phi: Cochain | None
    certificate: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.phi is not None


def _domain_generators(group: PermGroup) -> list[Perm]:
    return [g for g in group.generators if not is_identity(g)]


def solve_coboundary(c: Cochain2, group: PermGroup | None = None, *, method: str = "auto",
                     check: bool = True) -> CoboundaryResult:
    """Find a normalized 1-cochain ``phi`` on ``group`` with ``d phi = c`` there.

    ``method`` is ``"dense"`` (all pairs as equations), ``"propagate"``
    (unknowns ``phi`` on the generators, propagated along the Cayley graph)
    or ``"auto"``.
    """
    H = group if group is not None else c.group
    mod = c.module
    if not isinstance(mod, GModule):
        raise InputError("cochain values must lie in a GModule")
    local = Cochain2(mod if mod.group is H else _restricted(mod, H), H, func=lambda a, b: c(a, b))
    if check:
        check_cocycle(local)
    if method == "auto":
        method = "dense" if H.order <= 60 and mod.rank * H.order <= 400 else "propagate"
    if method == "dense":
        return _solve_dense(local, H)
    if method == "propagate":
        return _solve_propagate(local, H)
    raise InputError(f"unknown method {method!r}")


def _restricted(mod: GModule, H: PermGroup) -> GModule:
    if mod.group is H or mod.group.order == H.order:
        return mod
    return mod.restrict(H)


def _solve_dense(c: Cochain2, H: PermGroup) -> CoboundaryResult:
    mod = c.module
    ix = _indexing(H)
    D1 = differential_matrix(H, mod, 1, indexing=ix)
    rhs = c.to_vector(ix.elements)
    x = solve_left(D1, rhs, mod.modulus)
    if x is None:
        aug = np.vstack([D1, rhs])
        return CoboundaryResult(None, {"method": "dense", "system": rank_data(D1, mod.modulus),
                                       "augmented": rank_data(aug, mod.modulus)})
    phi = Cochain1.from_vector(mod, x, ix.elements, H)
    if not differential(phi).equals(c, ix.elements):
        raise AssertionError("dense coboundary solution failed verification")
    return CoboundaryResult(phi, {"method": "dense"})


def _solve_propagate(c: Cochain2, H: PermGroup) -> CoboundaryResult:
    mod = c.module
    m, k = mod.modulus, mod.rank
    gens = _domain_generators(H)
    t = len(gens)
    e = H.identity
    if t == 0:
        return CoboundaryResult(Cochain1(mod, H, table={}), {"method": "propagate"})
    N = t * k
    trivial = mod.is_trivial
    eye = np.eye(k, dtype=np.int64)
    gmats = [None if trivial else mod.matrix(s) % m for s in gens]
    forms: dict = {e: (np.zeros((N, k), dtype=np.int64), np.zeros(k, dtype=np.int64))}
    constraints: dict = {}
    queue = [e]
    for x in queue:
        Ax, bx = forms[x]
        for j, s in enumerate(gens):
            y = mul(x, s)
            cv = np.array(c(x, s), dtype=np.int64)
            if trivial:
                Ay = Ax.copy()
                by = (bx - cv) % m
            else:
                Ay = Ax @ gmats[j] % m
                by = (bx @ gmats[j] - cv) % m
            Ay[j * k:(j + 1) * k] = (Ay[j * k:(j + 1) * k] + eye) % m
            old = forms.get(y)
            if old is None:
                forms[y] = (Ay, by)
                queue.append(y)
            else:
                dA = (Ay - old[0]) % m
                db = (old[1] - by) % m
                if dA.any() or db.any():
                    key = dA.tobytes() + db.tobytes()
                    constraints.setdefault(key, (dA, db))
    if constraints:
        A = np.hstack([v[0] for v in constraints.values()])
        b = np.concatenate([v[1] for v in constraints.values()])
        u = solve_left(A, b, m)
        if u is None:
            aug = np.vstack([A, b])
            return CoboundaryResult(None, {"method": "propagate", "unknowns": N,
                                           "equations": int(A.shape[1]),
                                           "system": rank_data(A, m), "augmented": rank_data(aug, m)})
    else:
        u = np.zeros(N, dtype=np.int64)
    table = {}
    for x, (Ax, bx) in forms.items():
        v = tuple(int(a) for a in (u @ Ax + bx) % m)
        if any(v) and not is_identity(x):
            table[x] = v
    phi = Cochain1(mod, H, table=table)
    # edges (x, s) determine d phi = c on all of H once c is a cocycle
    dphi = differential(phi)
    for x in forms:
        for s in gens:
            if dphi(x, s) != c(x, s):
                raise AssertionError("propagated coboundary solution failed verification")
    return CoboundaryResult(phi, {"method": "propagate", "unknowns": N, "equations": len(constraints) * k})


def solve_coboundary1(z: Cochain1, group: PermGroup | None = None) -> Vec | None:
    """Some ``mu`` with ``d mu = z`` on ``group`` (checked on generators), or ``None``."""
    H = group if group is not None else z.group
    mod = z.module
    gens = _domain_generators(H)
    if not gens:
        return mod.zero()
    m, k = mod.modulus, mod.rank
    eye = np.eye(k, dtype=np.int64)
    A = np.hstack([(mod.matrix(s) - eye) % m for s in gens])
    b = np.concatenate([np.array(z(s), dtype=np.int64) for s in gens])
    x = solve_left(A, b, m)
    return None if x is None else tuple(int(a) for a in x)


# ------------------------------------------------------------ induced maps

def induced_map(kind: str, lam: Cochain, *, coind: CoinducedModule | None = None,
                subgroup: PermGroup | None = None) -> Cochain:
    """Chain maps on cochains.

    ``epsilon``: post-compose values with the canonical embedding into ``coind``;
    ``alpha``: restrict arguments to ``subgroup``;
    ``shapiro``: restrict to ``coind.subgroup`` and evaluate at the identity.
    """
    cls = type(lam)
    if kind == "epsilon":
        if coind is None:
            raise InputError("epsilon needs the co-induced module")
        return cls(coind, lam.group, func=lambda *a: coind.epsilon(lam(*a)))
    if kind == "alpha":
        H = subgroup if subgroup is not None else (coind.subgroup if coind is not None else None)
        if H is None:
            raise InputError("alpha needs a subgroup")
        if not H.is_subgroup_of(lam.group):
            raise InputError("subgroup is not contained in the group")
        return cls(lam.module.restrict(H), H, func=lambda *a: lam(*a))
    if kind == "shapiro":
        M = coind if coind is not None else lam.module
        if not isinstance(M, CoinducedModule):
            raise InputError("shapiro needs values in a co-induced module")
        H = M.subgroup
        base_H = M.base.restrict(H)
        return cls(base_H, H, func=lambda *a: M.evaluate(lam(*a)))
    raise InputError(f"unknown induced map {kind!r}")


# ------------------------------------------------------------ extensions

class ExtensionData:
    """The extension of ``group`` by ``module`` on the set ``L x G``."""

    def __init__(self, group: PermGroup, module: GModule, cocycle: Cochain2):
        self.group = group
        self.module = module
        self.cocycle = cocycle

    @property
    def order(self) -> int:
        return self.module.order * self.group.order

    @property
    def identity(self):
        return (self.module.zero(), self.group.identity)

    def mul(self, a, b):
        (l1, g1), (l2, g2) = a, b
        mod = self.module
        l = mod.add(mod.add(mod.act(l1, g2), l2), self.cocycle(g1, g2))
        return (l, mul(g1, g2))

    def inv(self, a):
        l, g = a
        gi = inv(g)
        mod = self.module
        return (mod.neg(mod.add(mod.act(l, gi), self.cocycle(g, gi))), gi)

    def pi(self, a) -> Perm:
        return a[1]

    def iota(self, l: Vec):
        return (self.module.reduce(l), self.group.identity)

    def section(self, g: Perm):
        return (self.module.zero(), g)

    def generators(self) -> list:
        return [self.section(g) for g in self.group.generators] + [self.iota(b) for b in self.module.basis()]

    def random_element(self, rng: random.Random):
        return (self.module.random_element(rng), self.group.random_element(rng))

    def elements(self):
        if self.order > 100_000:
            raise ResourceError("extension too large to enumerate")
        for g in self.group.element_list():
            for l in self.module.elements():
                yield (l, g)

    def element_order(self, a) -> int:
        x, n = a, 1
        e = self.identity
        while x != e:
            x = self.mul(x, a)
            n += 1
        return n


def extension_from_cocycle(group: PermGroup, module: GModule, cocycle: Cochain2,
                           check: bool = True, samples: int = 200, seed: int = 0) -> ExtensionData:
    if check:
        check_cocycle(cocycle, samples=samples, seed=seed)
    return ExtensionData(group, module, cocycle)


def extract_cocycle(ext: ExtensionData) -> Cochain2:
    """Cocycle of ``ext`` relative to the section ``g -> (0, g)``."""
    return Cochain2(ext.module, ext.group,
                    func=lambda a, b: ext.mul(ext.section(a), ext.section(b))[0])


class AbstractExtension:
    """An extension presented as a permutation group ``S`` with an abelian normal subgroup.

    ``kernel_basis`` lists elements of ``S`` generating the normal subgroup as
    ``(Z/m)^k``.  The quotient is realized on the right cosets of the kernel;
    ``to_pair`` identifies ``S`` with ``L x G`` through a fixed section.
    """

    def __init__(self, S: PermGroup, kernel_basis: Sequence[Perm], modulus: int):
        self.S = S
        self.modulus = modulus
        k = len(kernel_basis)
        e = S.identity
        self._log: dict = {}
        for coeffs in product(range(modulus), repeat=k):
            x = e
            for c, b in zip(coeffs, kernel_basis):
                for _ in range(c):
                    x = mul(x, b)
            if x in self._log:
                raise InputError("kernel basis is not independent of the stated modulus")
            self._log[x] = coeffs
        kernel = set(self._log)
        elems = sorted(S.elements())
        cosets: list = []
        coset_of: dict = {}
        for s in elems:
            if s in coset_of:
                continue
            idx = len(cosets)
            members = sorted(mul(l, s) for l in kernel)
            cosets.append(members[0])
            for x in members:
                coset_of[x] = idx
        self._coset_of = coset_of
        self._coset_rep = cosets

        def quot(s):
            return tuple(coset_of[mul(r, s)] for r in cosets)

        self._quot = quot
        self.G = PermGroup([quot(s) for s in S.generators], degree=len(cosets))
        if self.G.order * len(kernel) != S.order:
            raise InputError("kernel is not normal or quotient is wrong")
        self._sec = {}
        for r in cosets:
            self._sec[quot(r)] = r
        mats = []
        for g in self.G.generators:
            sg = self._sec[g]
            si = inv(sg)
            rows = [self._log[mul(mul(si, b), sg)] for b in kernel_basis]
            mats.append(np.array(rows, dtype=np.int64).reshape(k, k))
        self.module = GModule.from_matrices(self.G, modulus, mats, k)
        self.module.check_action()

        def delta(a, b):
            x = mul(mul(inv(self._sec[mul(a, b)]), self._sec[a]), self._sec[b])
            return self._log[x]

        self.cocycle = Cochain2(self.module, self.G, func=delta)
        self.extension = ExtensionData(self.G, self.module, self.cocycle)

    def pi(self, s: Perm) -> Perm:
        return self._quot(s)

    def to_pair(self, s: Perm):
        g = self._quot(s)
        l = self._log[mul(inv(self._sec[g]), s)]
        return (tuple(l), g)

    def from_pair(self, pair) -> Perm:
        l, g = pair
        x = self._sec[g]
        for (c, b) in zip(l, self._basis_elems()):
            for _ in range(c):
                x = mul(x, b)
        return x

    def _basis_elems(self):
        k = len(next(iter(self._log.values())))
        out = []
        for i in range(k):
            target = tuple(int(i == j) for j in range(k))
            out.append(next(x for x, v in self._log.items() if v == target))
        return out

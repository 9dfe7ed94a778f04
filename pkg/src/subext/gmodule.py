"""Finite right G-modules (Z/m)^k and co-induced modules.

Module elements are tuples of residues; matrices act on row vectors, so
``v . g = v @ A_g``.
"""

from __future__ import annotations

import random
from functools import cached_property
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .errors import InputError, ResourceError
from .perm import CosetTransversal, Perm, PermGroup, format_cycles, inv, mul
from .zmod import factor_modulus, local_smith

Vec = tuple

MAX_MATRIX_TABLE = 200_000


class GModule:
    """A right ``G``-module ``(Z/m)^k``.

    ``kind`` is ``"trivial"``, ``"permutation"`` (coordinates permuted by the
    points, so ``rank == degree``) or ``"matrices"`` (one matrix per group
    generator).
    """

    def __init__(self, group: PermGroup, modulus: int, rank: int, kind: str = "trivial",
                 matrices: Sequence | None = None):
        if modulus < 2:
            raise InputError("modulus must be at least 2")
        if rank < 1:
            raise InputError("rank must be at least 1")
        self.group = group
        self.modulus = modulus
        self.rank = rank
        self.kind = kind
        if kind == "permutation" and rank != group.degree:
            raise InputError("permutation module needs rank equal to the degree")
        if kind == "matrices":
            if matrices is None or len(matrices) != len(group.generators):
                raise InputError("need exactly one matrix per group generator")
            mats = []
            for a in matrices:
                a = np.asarray(a, dtype=np.int64)
                if a.shape != (rank, rank):
                    raise InputError(f"action matrix has shape {a.shape}, expected {(rank, rank)}")
                if (a < 0).any() or (a >= modulus).any():
                    raise InputError("matrix entries must lie in [0, m)")
                if not _invertible(a, modulus):
                    raise InputError("action matrix is not invertible")
                mats.append(a)
            self.generator_matrices = mats
            if all(np.array_equal(a, np.eye(rank, dtype=np.int64)) for a in mats):
                self.kind = "trivial"
        elif kind not in ("trivial", "permutation"):
            raise InputError(f"unknown module kind {kind!r}")

    def __repr__(self) -> str:
        return f"GModule(m={self.modulus}, rank={self.rank}, kind={self.kind!r}, |G|={self.group.order})"

    @classmethod
    def trivial(cls, group: PermGroup, modulus: int, rank: int = 1) -> "GModule":
        return cls(group, modulus, rank, "trivial")

    @classmethod
    def permutation(cls, group: PermGroup, modulus: int) -> "GModule":
        return cls(group, modulus, group.degree, "permutation")

    @classmethod
    def from_matrices(cls, group: PermGroup, modulus: int, matrices: Sequence,
                      rank: int | None = None) -> "GModule":
        mats = [np.asarray(a, dtype=np.int64) % modulus for a in matrices]
        if rank is None:
            rank = mats[0].shape[0] if mats else 1
        if not mats:
            return cls(group, modulus, rank, "trivial")
        return cls(group, modulus, rank, "matrices", mats)

    @property
    def is_trivial(self) -> bool:
        return self.kind == "trivial"

    @property
    def order(self) -> int:
        return self.modulus**self.rank

    def zero(self) -> Vec:
        return (0,) * self.rank

    def add(self, u: Vec, v: Vec) -> Vec:
        m = self.modulus
        return tuple((a + b) % m for a, b in zip(u, v))

    def sub(self, u: Vec, v: Vec) -> Vec:
        m = self.modulus
        return tuple((a - b) % m for a, b in zip(u, v))

    def neg(self, u: Vec) -> Vec:
        m = self.modulus
        return tuple(-a % m for a in u)

    def scale(self, c: int, u: Vec) -> Vec:
        m = self.modulus
        return tuple(c * a % m for a in u)

    def reduce(self, v: Sequence[int]) -> Vec:
        if len(v) != self.rank:
            raise InputError(f"module element has length {len(v)}, expected {self.rank}")
        return tuple(int(a) % self.modulus for a in v)

    def elements(self):
        return (tuple(t) for t in product(range(self.modulus), repeat=self.rank))

    def random_element(self, rng: random.Random) -> Vec:
        return tuple(rng.randrange(self.modulus) for _ in range(self.rank))

    def basis(self) -> list[Vec]:
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    @cached_property
    def _matrix_table(self) -> dict:
        grp = self.group
        if grp.order > MAX_MATRIX_TABLE:
            raise ResourceError(f"group of order {grp.order} too large for a matrix table")
        m = self.modulus
        e = grp.identity
        table = {e: np.eye(self.rank, dtype=np.int64)}
        queue = [e]
        for x in queue:
            ax = table[x]
            for s, a in zip(grp.generators, self.generator_matrices):
                y = mul(x, s)
                ay = ax @ a % m
                prev = table.get(y)
                if prev is None:
                    table[y] = ay
                    queue.append(y)
                elif not np.array_equal(prev, ay):
                    raise InputError(
                        f"generator matrices do not define an action: two values for {format_cycles(y)}"
                    )
        return table

    def matrix(self, g: Perm) -> np.ndarray:
        if self.kind == "trivial":
            return np.eye(self.rank, dtype=np.int64)
        if self.kind == "permutation":
            a = np.zeros((self.rank, self.rank), dtype=np.int64)
            a[np.arange(self.rank), list(g)] = 1
            return a
        try:
            return self._matrix_table[g]
        except KeyError:
            raise InputError(f"{format_cycles(g)} is not in the acting group") from None

    def act(self, v: Vec, g: Perm) -> Vec:
        if self.kind == "trivial":
            return v
        if self.kind == "permutation":
            out = [0] * self.rank
            for i, a in enumerate(v):
                out[g[i]] = a
            return tuple(out)
        a = self.matrix(g)
        return tuple(int(x) for x in np.asarray(v, dtype=np.int64) @ a % self.modulus)

    def check_action(self) -> None:
        """Raise :class:`InputError` unless the generator matrices extend to the group."""
        if self.kind == "matrices":
            self._matrix_table  # noqa: B018

    def restrict(self, subgroup: PermGroup) -> "GModule":
        if not subgroup.is_subgroup_of(self.group):
            raise InputError("restriction to a non-subgroup")
        if self.kind in ("trivial", "permutation"):
            return GModule(subgroup, self.modulus, self.rank, self.kind)
        return GModule.from_matrices(subgroup, self.modulus, [self.matrix(h) for h in subgroup.generators],
                                     self.rank)

    def to_json(self) -> dict:
        if self.kind in ("trivial", "permutation"):
            action: object = self.kind
        else:
            action = {"matrices": [a.tolist() for a in self.generator_matrices]}
        return {"modulus": self.modulus, "rank": self.rank, "action": action}

    @classmethod
    def from_json(cls, data: dict, group: PermGroup) -> "GModule":
        try:
            m = int(data["modulus"])
            k = int(data["rank"])
            action = data.get("action", "trivial")
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad module description: {exc}") from exc
        if action == "trivial":
            return cls(group, m, k, "trivial")
        if action == "permutation":
            return cls(group, m, k, "permutation")
        if isinstance(action, dict) and "matrices" in action:
            mod = cls(group, m, k, "matrices", action["matrices"])
            mod.check_action()
            return mod
        raise InputError(f"unknown module action {action!r}")


def _invertible(a: np.ndarray, m: int) -> bool:
    for p, k in factor_modulus(m):
        sm = local_smith(a % p**k, p, k)
        if sm.rank != a.shape[0] or any(sm.exponents):
            return False
    return True


class CoinducedModule(GModule):
    """``Coind_H^G(L_H)``: functions ``mu: G -> L`` with ``mu(x h) = mu(x) h``.

    An element is stored as the concatenation of its values at the left
    transversal representatives; ``G`` acts by ``(mu g)(x) = mu(g x)``.
    """

    def __init__(self, base: GModule, subgroup: PermGroup, transversal: CosetTransversal | None = None):
        group = base.group
        if not subgroup.is_subgroup_of(group):
            raise InputError("subgroup is not contained in the group")
        self.base = base
        self.subgroup = subgroup
        self.transversal = transversal or CosetTransversal(group, subgroup)
        self.index = self.transversal.index
        self.block = base.rank
        self.group = group
        self.modulus = base.modulus
        self.rank = self.index * base.rank
        self.kind = "coinduced"
        self._tables: dict = {}

    def __repr__(self) -> str:
        return f"CoinducedModule(index={self.index}, base={self.base!r})"

    @property
    def is_trivial(self) -> bool:
        return self.group.order == 1 or (self.index == 1 and self.base.is_trivial)

    def blocks(self, mu: Vec) -> list[Vec]:
        k = self.block
        return [tuple(mu[i * k:(i + 1) * k]) for i in range(self.index)]

    def action_table(self, g: Perm) -> list[tuple[int, Perm]]:
        """``[(j, h)]`` with ``g r_i = r_j h`` for each representative index ``i``."""
        tab = self._tables.get(g)
        if tab is None:
            tab = [self.transversal.factor(mul(g, r)) for r in self.transversal.reps]
            if len(self._tables) < 4096:
                self._tables[g] = tab
        return tab

    def value_at(self, mu: Vec, x: Perm) -> Vec:
        i, h = self.transversal.factor(x)
        k = self.block
        return self.base.act(tuple(mu[i * k:(i + 1) * k]), h)

    def act(self, mu: Vec, g: Perm) -> Vec:
        k = self.block
        base = self.base
        out: list[int] = []
        for j, h in self.action_table(g):
            out.extend(base.act(tuple(mu[j * k:(j + 1) * k]), h))
        return tuple(out)

    def matrix(self, g: Perm) -> np.ndarray:
        k = self.block
        a = np.zeros((self.rank, self.rank), dtype=np.int64)
        for i, (j, h) in enumerate(self.action_table(g)):
            a[j * k:(j + 1) * k, i * k:(i + 1) * k] = self.base.matrix(h)
        return a

    def epsilon(self, l: Vec) -> Vec:
        """The canonical embedding ``(l eps)(x) = l x``."""
        out: list[int] = []
        for r in self.transversal.reps:
            out.extend(self.base.act(l, r))
        return tuple(out)

    def evaluate(self, mu: Vec) -> Vec:
        """``mu -> mu(1)``."""
        return tuple(mu[: self.block])

    def from_function(self, f: Callable[[Perm], Vec]) -> Vec:
        out: list[int] = []
        for r in self.transversal.reps:
            out.extend(self.base.reduce(f(r)))
        return tuple(out)

    def restrict(self, subgroup: PermGroup) -> GModule:
        return GModule.from_matrices(subgroup, self.modulus, [self.matrix(h) for h in subgroup.generators],
                                     self.rank)

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "rank": self.rank,
                "action": {"matrices": [self.matrix(g).tolist() for g in self.group.generators]}}


def coinduce(base: GModule, subgroup: PermGroup) -> CoinducedModule:
    return CoinducedModule(base, subgroup)


class ModuleMap:
    """A G-module homomorphism given by a Python function on elements."""

    def __init__(self, source: GModule, target: GModule, func: Callable[[Vec], Vec]):
        self.source = source
        self.target = target
        self._func = func

    def __call__(self, v: Vec) -> Vec:
        return self._func(v)


def conjugate_iso(M: CoinducedModule, g: Perm) -> ModuleMap:
    """``psi: Coind_H -> Coind_{H^g}``, ``(mu psi)(x) = mu(x g^-1) g``."""
    if not M.group.contains(g):
        raise InputError(f"{format_cycles(g)} is not in the group")
    U = CoinducedModule(M.base, M.subgroup.conjugate(g))
    gi = inv(g)
    base = M.base

    def psi(mu: Vec) -> Vec:
        return U.from_function(lambda x: base.act(M.value_at(mu, mul(x, gi)), g))

    return ModuleMap(M, U, psi)


def refine_map(M: CoinducedModule, K: PermGroup) -> ModuleMap:
    """``Coind_H -> Coind_K`` for ``K <= H``: the same function, re-indexed."""
    if not K.is_subgroup_of(M.subgroup):
        raise InputError("K is not a subgroup of H")
    N = CoinducedModule(M.base, K)

    def phi(mu: Vec) -> Vec:
        return N.from_function(lambda x: M.value_at(mu, x))

    return ModuleMap(M, N, phi)

"""Liftability of subgroups through an extension, plus brute-force oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Sequence

from .cochain import Cochain1, Cochain2, ExtensionData, solve_coboundary
from .errors import InputError, InvariantError, ResourceError
from .perm import Perm, PermGroup, format_cycles, is_identity, mul

MAX_PREIMAGE = 5000
MAX_ENUMERATE = 360
SIGN_SEARCH_GENERATORS = 6
EXHAUSTIVE_CLOSURE = 500


@dataclass
class SplittingData:
    """``phi`` on ``H`` with ``d phi = delta|H``; ``h -> (-phi(h), h)`` is a complement."""

    extension: ExtensionData
    subgroup: PermGroup
    phi: Cochain1

    def complement(self, h: Perm):
        return (self.extension.module.neg(self.phi(h)), h)

    def verify(self, samples: int = 200, seed: int = 0) -> None:
        """Check closure of the complement; exhaustive for small ``H``.

        Larger subgroups are checked on every edge ``(h, generator)`` and on
        seeded random pairs.
        """
        import random

        H = self.subgroup
        E = self.extension
        if H.order <= EXHAUSTIVE_CLOSURE:
            elems = H.element_list()
            pairs = product(elems, elems)
        else:
            rng = random.Random(seed)
            gens = [g for g in H.generators if not is_identity(g)]
            pairs = [(x, s) for x in H.elements() for s in gens]
            pairs += [(H.random_element(rng), H.random_element(rng)) for _ in range(samples)]
        for a, b in pairs:
            if E.mul(self.complement(a), self.complement(b)) != self.complement(mul(a, b)):
                raise InvariantError(
                    f"complement not closed at ({format_cycles(a)}, {format_cycles(b)})")

    def digest(self) -> dict:
        gens = [g for g in self.subgroup.generators if not is_identity(g)]
        return {"order": self.subgroup.order,
                "phi_on_generators": [list(self.phi(g)) for g in gens]}


@dataclass
class LiftResult:
    split: SplittingData | None
    strategy: str
    certificate: dict = field(default_factory=dict)

    @property
    def liftable(self) -> bool:
        return self.split is not None


def _sign_search_applicable(ext: ExtensionData, H: PermGroup) -> bool:
    mod = ext.module
    gens = [g for g in H.generators if not is_identity(g)]
    return mod.modulus == 2 and mod.rank == 1 and mod.is_trivial and len(gens) <= SIGN_SEARCH_GENERATORS


def _sign_search(ext: ExtensionData, H: PermGroup) -> LiftResult:
    """Try every central sign on the generator lifts and propagate through ``H``."""
    delta = ext.cocycle
    gens = [g for g in H.generators if not is_identity(g)]
    e = H.identity
    # BFS tree in a fixed order; each tree edge records its parent and generator
    order = [e]
    parent: dict = {e: None}
    for x in order:
        for j, s in enumerate(gens):
            y = mul(x, s)
            if y not in parent:
                parent[y] = (x, j)
                order.append(y)
    edges = [(x, j, mul(x, s), delta(x, s)[0]) for x in order for j, s in enumerate(gens)]
    tried = 0
    for signs in product((0, 1), repeat=len(gens)):
        tried += 1
        a = {e: 0}
        for y in order[1:]:
            x, j = parent[y]
            a[y] = (a[x] + signs[j] + delta(x, gens[j])[0]) & 1
        if all((a[x] + signs[j] + d) & 1 == a[y] for x, j, y, d in edges):
            table = {h: (v,) for h, v in a.items() if v and not is_identity(h)}
            phi = Cochain1(ext.module.restrict(H) if H.order != ext.group.order else ext.module, H, table=table)
            split = SplittingData(ext, H, phi)
            return LiftResult(split, "sign-search", {"assignments_tried": tried, "generators": len(gens)})
    return LiftResult(None, "sign-search", {"assignments_tried": tried, "generators": len(gens)})


def _linear(ext: ExtensionData, H: PermGroup, check: bool = True) -> LiftResult:
    c = Cochain2(ext.module, ext.group, func=lambda a, b: ext.cocycle(a, b))
    res = solve_coboundary(c, H, check=check)
    if res.phi is None:
        return LiftResult(None, "linear", res.certificate)
    return LiftResult(SplittingData(ext, H, res.phi), "linear", res.certificate)


def lift_report(ext: ExtensionData, H: PermGroup, strategy: str = "auto", verify: bool = True,
                check_cocycle: bool = True) -> LiftResult:
    """Decide whether the preimage of ``H`` splits over the kernel."""
    if not H.is_subgroup_of(ext.group):
        raise InputError("subgroup is not contained in the extension's quotient group")
    if strategy == "auto":
        strategy = "sign-search" if _sign_search_applicable(ext, H) else "linear"
    if strategy == "sign-search":
        if not _sign_search_applicable(ext, H):
            raise InputError("sign-search needs a central Z/2 kernel and at most 6 generators")
        res = _sign_search(ext, H)
    elif strategy == "linear":
        res = _linear(ext, H, check=check_cocycle)
    else:
        raise InputError(f"unknown strategy {strategy!r}")
    if res.split is not None and verify:
        res.split.verify()
    return res


def lift_test(ext: ExtensionData, H: PermGroup, strategy: str = "auto") -> SplittingData | None:
    return lift_report(ext, H, strategy).split


# ------------------------------------------------------------------ oracles

def _closure(gens: Sequence, mult: Callable, identity, limit: int) -> set | None:
    seen = {identity}
    queue = [identity]
    for x in queue:
        for g in gens:
            y = mult(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    return None
                queue.append(y)
    return seen


def complement_search(elements: Sequence[Hashable], mult: Callable, normal: Sequence[Hashable],
                      identity: Hashable) -> list | None:
    """A complement to ``normal`` in the finite group on ``elements``, or ``None``.

    Picks elements whose cosets generate the quotient and tries every choice
    of coset representatives as generators of a candidate complement.
    """
    if len(elements) > MAX_PREIMAGE:
        raise ResourceError(f"group of order {len(elements)} exceeds the search cap {MAX_PREIMAGE}")
    N = set(normal)
    nlist = sorted(N, key=repr)
    qorder, rem = divmod(len(elements), len(N))
    if rem:
        raise InputError("normal subgroup order does not divide the group order")
    coset_key: dict = {}
    for x in elements:
        if x in coset_key:
            continue
        members = [mult(n, x) for n in nlist]
        key = min(members, key=repr)
        for y in members:
            coset_key[y] = key
    # greedy choice of quotient generators
    reps: list = []
    reached = {coset_key[identity]}
    for x in elements:
        if coset_key[x] in reached:
            continue
        reps.append(x)
        sub = _closure(reps, mult, identity, len(elements))
        reached = {coset_key[y] for y in sub}
        if len(reached) == qorder:
            break
    if not reps:
        return [identity]
    for choice in product(nlist, repeat=len(reps)):
        gens = [mult(n, r) for n, r in zip(choice, reps)]
        K = _closure(gens, mult, identity, qorder)
        if K is not None and len(K) == qorder and not (K & N) - {identity}:
            return sorted(K, key=repr)
    return None


def preimage(ext: ExtensionData, H: PermGroup) -> tuple[list, list]:
    """Elements of the preimage of ``H`` in ``ext`` and of the kernel."""
    size = ext.module.order * H.order
    if size > MAX_PREIMAGE:
        raise ResourceError(f"preimage of order {size} exceeds {MAX_PREIMAGE}")
    kernel = [(l, H.identity) for l in ext.module.elements()]
    elems = [(l, h) for h in H.element_list() for l in ext.module.elements()]
    return elems, kernel


def complement_lift_test(ext: ExtensionData, H: PermGroup) -> bool:
    elems, kernel = preimage(ext, H)
    return complement_search(elems, ext.mul, kernel, ext.identity) is not None


def enumerate_subgroups(G: PermGroup) -> list[PermGroup]:
    """All subgroups of ``G`` (not up to conjugacy), smallest first."""
    if G.order > MAX_ENUMERATE:
        raise ResourceError(f"group of order {G.order} exceeds the enumeration cap {MAX_ENUMERATE}")
    e = G.identity
    elems = G.element_list()
    cyclic: dict = {}
    for g in elems:
        c = frozenset(_closure([g], mul, e, G.order))
        cyclic.setdefault(c, g)
    found: dict = {}
    for c, g in cyclic.items():
        found[c] = [] if is_identity(g) else [g]
    frontier = list(found)
    while frontier:
        new = []
        for K in frontier:
            gens = found[K]
            for c, g in cyclic.items():
                if c <= K:
                    continue
                J = frozenset(_closure(gens + [g], mul, e, G.order))
                if J not in found:
                    found[J] = gens + [g]
                    new.append(J)
        frontier = new
    out = [PermGroup(gens, degree=G.degree) for gens in found.values()]
    for K, grp in zip(found, out):
        if grp.order != len(K):
            raise InvariantError("subgroup closure disagrees with the stabilizer chain")
    out.sort(key=lambda K: (K.order, sorted(K.elements())))
    return out

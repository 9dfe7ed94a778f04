"""Embedding an extension into the split extension of a co-induced module.

Given ``S = L x G`` with cocycle ``delta`` and a liftable ``H`` with
splitting ``phi``, the section ``sigma(r h) = (0, r)(-phi(h), h)`` over the
left transversal yields ``beta(s) = (f_s, pi(s))`` in ``M x| G`` with
``M = Coind_H^G(L)`` and

    f_s(x) = iota^-1( sigma(pi(s) x)^-1 * s * sigma(x) ).

Only the values at transversal representatives are stored.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .cochain import (CohomologyGroup, Cochain1, ExtensionData, induced_map, solve_coboundary,
                      solve_coboundary1)
from .errors import InputError, InvariantError, ResourceError
from .gmodule import CoinducedModule, GModule, Vec, coinduce
from .liftsplit import SplittingData
from .perm import Perm, PermGroup, format_cycles, is_identity, mul


class EmbeddingMap:
    def __init__(self, ext: ExtensionData, subgroup: PermGroup, split: SplittingData):
        self.source = ext
        self.subgroup = subgroup
        self.split = split
        self.coind: CoinducedModule = coinduce(ext.module, subgroup)
        self.group = ext.group

    @property
    def index(self) -> int:
        return self.coind.index

    def _c(self, j: int, h: Perm) -> Vec:
        """L-part of ``sigma(r_j h)``."""
        mod = self.source.module
        r = self.coind.transversal.reps[j]
        return mod.sub(self.source.cocycle(r, h), self.split.phi(h))

    def section(self, x: Perm):
        j, h = self.coind.transversal.factor(x)
        return (self._c(j, h), x)

    def __call__(self, s) -> tuple[Vec, Perm]:
        l, g = s
        mod = self.source.module
        delta = self.source.cocycle
        reps = self.coind.transversal.reps
        out: list[int] = []
        for i, (j, h) in enumerate(self.coind.action_table(g)):
            v = mod.add(mod.act(l, reps[i]), delta(g, reps[i]))
            out.extend(mod.sub(v, self._c(j, h)))
        return (tuple(out), g)

    # the target group M x| G
    def target_identity(self):
        return (self.coind.zero(), self.group.identity)

    def target_mul(self, a, b):
        (m1, g1), (m2, g2) = a, b
        M = self.coind
        return (M.add(M.act(m1, g2), m2), mul(g1, g2))

    def verify(self, samples: int = 1000, seed: int = 0, exhaustive: bool = False) -> dict:
        return verify_subextension(self, samples, seed, exhaustive)

    def certificate(self, report: dict, group_name: str = "", subgroup_name: str = "") -> dict:
        return {"group": group_name, "subgroup": subgroup_name, "index": self.index,
                "checks": {k: report[k] for k in ("hom_pairs", "failures", "epsilon_ok", "projection_ok", "injective")},
                "seed": report["seed"]}


def verify_subextension(beta: EmbeddingMap, samples: int = 1000, seed: int = 0,
                        exhaustive: bool = False) -> dict:
    """Homomorphism, epsilon, projection and injectivity checks for ``beta``.

    Pairs are all ordered pairs of the source generators followed by
    ``samples`` seeded random pairs (or every pair when ``exhaustive``).
    """
    S = beta.source
    M = beta.coind
    rng = random.Random(seed)
    gens = S.generators()
    pairs = list(product(gens, gens))
    if exhaustive:
        elems = list(S.elements())
        pairs += list(product(elems, elems))
    else:
        pairs += [(S.random_element(rng), S.random_element(rng)) for _ in range(samples)]
    failures = 0
    projection_ok = True
    first_failure = None
    for a, b in pairs:
        ba, bb, bab = beta(a), beta(b), beta(S.mul(a, b))
        if beta.target_mul(ba, bb) != bab:
            failures += 1
            if first_failure is None:
                first_failure = [format_cycles(a[1]), format_cycles(b[1])]
        if ba[1] != S.pi(a) or bab[1] != S.pi(S.mul(a, b)):
            projection_ok = False
    epsilon_ok = all(beta(S.iota(l)) == (M.epsilon(l), beta.group.identity) for l in S.module.basis())
    # beta(s) = 1 forces pi(s) = 1, so s = iota(l) and beta(s) = epsilon(l); evaluate splits epsilon
    eps_split = all(M.evaluate(M.epsilon(l)) == l for l in S.module.basis())
    report = {"hom_pairs": len(pairs), "failures": failures, "epsilon_ok": epsilon_ok,
              "projection_ok": projection_ok, "injective": epsilon_ok and eps_split and projection_ok,
              "samples": samples, "seed": seed}
    if first_failure is not None:
        report["first_failure"] = first_failure
    report["passed"] = failures == 0 and epsilon_ok and projection_ok and report["injective"]
    return report


def build_embedding(ext: ExtensionData, H: PermGroup, split: SplittingData,
                    samples: int = 1000, seed: int = 0, exhaustive: bool = False) -> tuple[EmbeddingMap, dict]:
    """Construct and verify ``beta``; raises :class:`InvariantError` if a check fails."""
    if split is None or split.extension is not ext or split.subgroup.order != H.order \
            or not H.is_subgroup_of(split.subgroup):
        raise InputError("splitting data does not belong to this extension and subgroup")
    split.verify()
    beta = EmbeddingMap(ext, H, split)
    report = verify_subextension(beta, samples, seed, exhaustive)
    if not report["passed"]:
        raise InvariantError(f"embedding failed verification: {report}")
    return beta, report


def trivial_split(ext: ExtensionData) -> tuple[PermGroup, SplittingData]:
    """The trivial subgroup with its (unique) splitting."""
    one = PermGroup([], degree=ext.group.degree)
    phi = Cochain1(GModule.trivial(one, ext.module.modulus, ext.module.rank), one, table={})
    return one, SplittingData(ext, one, phi)


def wreath_embedding(ext: ExtensionData, samples: int = 1000, seed: int = 0,
                     exhaustive: bool = False) -> tuple[EmbeddingMap, dict]:
    """The ``H = 1`` case: ``S`` inside the regular wreath product ``L wr G``."""
    one, split = trivial_split(ext)
    return build_embedding(ext, one, split, samples, seed, exhaustive)


def image_order(beta: EmbeddingMap) -> int:
    S = beta.source
    if S.order > 100_000:
        raise ResourceError("extension too large to enumerate")
    return len({beta(s) for s in S.elements()})


def coinduced_coboundary(ext: ExtensionData, H: PermGroup):
    """Solve ``d nu = delta eps`` over ``G`` in ``Coind_H^G(L)`` (dense; small ``G``)."""
    M = coinduce(ext.module, H)
    gamma = induced_map("epsilon", ext.cocycle, coind=M)
    return solve_coboundary(gamma, ext.group, method="dense", check=False)


# ------------------------------------------------------------------ complements

@dataclass
class ComplementClass:
    """A class in ``H^1(G, L)`` and the complements ``{(d(g), g)}`` it labels."""

    group: PermGroup
    module: GModule
    cocycle: Cochain1
    class_id: tuple
    is_group_class: bool

    def complement(self) -> list:
        return [(self.cocycle(g), g) for g in self.group.element_list()]

    def members(self):
        """Every 1-cocycle in the class, one per complement."""
        mod = self.module
        seen = set()
        for mu in mod.elements():
            table = {}
            for g in self.group.element_list():
                if is_identity(g):
                    continue
                v = mod.add(self.cocycle(g), mod.sub(mod.act(mu, g), mu))
                if any(v):
                    table[g] = v
            key = tuple(sorted(table.items()))
            if key not in seen:
                seen.add(key)
                yield Cochain1(mod, self.group, table=table)

    def verify(self) -> None:
        mod, d = self.module, self.cocycle
        elems = self.group.element_list()
        for a in elems:
            for b in elems:
                if d(mul(a, b)) != mod.add(mod.act(d(a), b), d(b)):
                    raise InvariantError("complement cocycle fails d(ab) = d(a).b + d(b)")


def complement_classes(G: PermGroup, L: GModule, budget: int | None = None) -> list[ComplementClass]:
    H1 = CohomologyGroup(G, L, 1, budget)
    out = []
    for rep in H1.representatives():
        cid = H1.class_of(rep)
        out.append(ComplementClass(G, L, rep, cid, not any(cid)))
    return out


@dataclass
class MergeResult:
    m_conjugate_to_G: bool
    intersection_l_conjugate_to_H: bool
    m_witness: Vec | None
    l_witness: Vec | None


def aux_merge_test(G: PermGroup, H: PermGroup, L: GModule, cls: ComplementClass) -> MergeResult:
    """Compare M-conjugacy of a complement to ``G`` with L-conjugacy of its ``H``-part to ``H``."""
    if not H.is_subgroup_of(G):
        raise InputError("subgroup is not contained in the group")
    M = coinduce(L, H)
    d_eps = induced_map("epsilon", cls.cocycle, coind=M)
    mu = solve_coboundary1(d_eps, G)
    d_H = induced_map("alpha", cls.cocycle, subgroup=H)
    l = solve_coboundary1(d_H, H)
    left, right = mu is not None, l is not None
    if left != right:
        raise InvariantError(f"M-conjugacy ({left}) and L-conjugacy on H ({right}) disagree")
    return MergeResult(left, right, mu, l)

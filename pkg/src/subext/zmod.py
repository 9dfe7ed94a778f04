"""Exact linear algebra over Z/m with row-vector conventions (``x -> x A``).

Everything is reduced to prime powers ``q = p^k``.  Over the local ring
``Z/p^k`` a pivot of minimal p-valuation divides every other entry, so
elimination with full pivoting reaches Smith form; only the row transform is
accumulated.  Composite moduli are handled componentwise and recombined by
the Chinese remainder theorem.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, ResourceError

MAX_PRIME_POWER = 1 << 20


def factor_modulus(m: int) -> list[tuple[int, int]]:
    if m < 2:
        raise InputError(f"modulus must be >= 2, got {m}")
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            k = 0
            while m % d == 0:
                m //= d
                k += 1
            out.append((d, k))
        d += 1
    if m > 1:
        out.append((m, 1))
    return out


def crt_idempotents(m: int) -> list[tuple[int, int, int]]:
    """``(p, k, e)`` with ``e = 1 mod p^k`` and ``e = 0`` modulo the other factors."""
    out = []
    for p, k in factor_modulus(m):
        q = p**k
        rest = m // q
        e = rest * pow(rest, -1, q) % m if rest > 1 else 1
        out.append((p, k, e))
    return out


def valuation(x: int, p: int, k: int) -> int:
    """p-adic valuation of ``x`` in ``Z/p^k`` (``k`` for zero)."""
    x %= p**k
    if x == 0:
        return k
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _valuations(vals: np.ndarray, p: int, k: int) -> np.ndarray:
    v = np.zeros(vals.shape, dtype=np.int64)
    x = vals.copy()
    for _ in range(k - 1):
        mask = x % p == 0
        if not mask.any():
            break
        v += mask
        x = np.where(mask, x // p, x)
    return v


@dataclass
class LocalSmith:
    """Smith data ``P A Q = D`` of a matrix over ``Z/p^k`` (``Q`` not kept).

    ``exponents[t]`` is the valuation of the t-th pivot, which sits in row
    ``t`` of ``P A Q``; rows ``>= rank`` of ``P A`` vanish.
    """

    p: int
    k: int
    P: np.ndarray
    Pinv: np.ndarray | None
    exponents: list[int] = field(default_factory=list)
    pivot_cols: list[int] = field(default_factory=list)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def kernel_generators(self) -> np.ndarray:
        """Generators of ``{x : x A = 0}`` as rows."""
        q, rows = self.q, []
        n = self.P.shape[0]
        for t, e in enumerate(self.exponents):
            if e > 0:
                rows.append(self.P[t] * (self.p ** (self.k - e)) % q)
        for t in range(self.rank, n):
            rows.append(self.P[t])
        if not rows:
            return np.zeros((0, n), dtype=np.int64)
        return np.array(rows, dtype=np.int64)

    def image_size(self) -> int:
        out = 1
        for e in self.exponents:
            out *= self.p ** (self.k - e)
        return out


def local_smith(A: np.ndarray, p: int, k: int, track_inverse: bool = False) -> LocalSmith:
    q = p**k
    if q > MAX_PRIME_POWER:
        raise ResourceError(f"prime power {q} exceeds the supported range")
    A = np.array(A, dtype=np.int64) % q
    r = A.shape[0]
    P = np.eye(r, dtype=np.int64)
    Pinv = np.eye(r, dtype=np.int64) if track_inverse else None
    out = LocalSmith(p, k, P, Pinv)
    if A.size == 0:
        return out
    t = 0
    while t < r:
        sub = A[t:]
        nz_r, nz_c = np.nonzero(sub)
        if nz_r.size == 0:
            break
        if k == 1:
            idx = 0
            e = 0
        else:
            v = _valuations(sub[nz_r, nz_c], p, k)
            idx = int(np.argmin(v))
            e = int(v[idx])
        i0, c0 = int(nz_r[idx]) + t, int(nz_c[idx])
        if i0 != t:
            A[[t, i0]] = A[[i0, t]]
            P[[t, i0]] = P[[i0, t]]
            if Pinv is not None:
                Pinv[:, [t, i0]] = Pinv[:, [i0, t]]
        pe = p**e
        unit = int(A[t, c0]) // pe
        if unit != 1:
            uinv = pow(unit, -1, q)
            A[t] = A[t] * uinv % q
            P[t] = P[t] * uinv % q
            if Pinv is not None:
                Pinv[:, t] = Pinv[:, t] * unit % q
        below = A[t + 1 :, c0]
        nzb = np.nonzero(below)[0]
        if nzb.size:
            rows = nzb + t + 1
            f = below[nzb] // pe
            A[rows] = (A[rows] - np.outer(f, A[t])) % q
            P[rows] = (P[rows] - np.outer(f, P[t])) % q
            if Pinv is not None:
                Pinv[:, t] = (Pinv[:, t] + Pinv[:, rows] @ f) % q
        A[t] = 0
        A[t, c0] = pe % q
        out.exponents.append(e)
        out.pivot_cols.append(c0)
        t += 1
    return out


def solve_left(A: np.ndarray, b: np.ndarray, m: int) -> np.ndarray | None:
    """Some ``x`` with ``x A = b (mod m)``, or ``None``."""
    A = np.asarray(A, dtype=np.int64) % m
    b = np.asarray(b, dtype=np.int64).reshape(-1) % m
    r = A.shape[0]
    if A.shape[1] != b.shape[0]:
        raise InputError("dimension mismatch in linear solve")
    if not b.any():
        return np.zeros(r, dtype=np.int64)
    if r == 0:
        return None
    x = np.zeros(r, dtype=np.int64)
    for p, k, e in crt_idempotents(m):
        q = p**k
        aug = np.vstack([A % q, b % q])
        sm = local_smith(aug, p, k)
        gens = sm.kernel_generators()
        found = None
        for g in gens:
            last = int(g[-1]) % q
            if last % p:
                scale = (-pow(last, -1, q)) % q
                found = g[:-1] * scale % q
                break
        if found is None:
            return None
        x = (x + found * e) % m
    return x


def rank_data(A: np.ndarray, m: int) -> dict:
    """Pivot valuations per prime power, for unsolvability certificates."""
    A = np.asarray(A, dtype=np.int64) % m
    out = {}
    for p, k in factor_modulus(m):
        sm = local_smith(A, p, k)
        out[f"{p}^{k}"] = {"rank": sm.rank, "pivot_valuations": list(sm.exponents)}
    return out


def left_kernel(A: np.ndarray, m: int) -> np.ndarray:
    """Generators (rows) of ``{x : x A = 0 (mod m)}``."""
    A = np.asarray(A, dtype=np.int64) % m
    rows = []
    for p, k, e in crt_idempotents(m):
        sm = local_smith(A % p**k, p, k)
        for g in sm.kernel_generators():
            rows.append(g * e % m)
    if not rows:
        return np.zeros((0, A.shape[0]), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def image_size(A: np.ndarray, m: int) -> int:
    A = np.asarray(A, dtype=np.int64) % m
    out = 1
    for p, k in factor_modulus(m):
        out *= local_smith(A % p**k, p, k).image_size()
    return out


@dataclass
class _PrimePart:
    p: int
    k: int
    idem: int
    smith: LocalSmith
    coords: list  # (t, f): kernel coordinate t has cyclic order p^f
    B: LocalSmith  # Smith data of the transposed relation matrix
    orders: list
    gens: np.ndarray  # rows: cocycle representatives mod q


class QuotientModule:
    """``ker(D_next) / rowspace(D_prev)`` over ``Z/m``.

    ``D_prev`` maps ``C^{n-1} -> C^n`` and ``D_next`` maps ``C^n -> C^{n+1}``,
    both acting on row vectors.  Provides invariant factors, one cocycle per
    cyclic generator, and coordinates of any cocycle.
    """

    def __init__(self, D_prev: np.ndarray, D_next: np.ndarray, m: int, dim: int):
        self.m = m
        self.dim = dim
        D_prev = np.asarray(D_prev, dtype=np.int64) % m
        D_next = np.asarray(D_next, dtype=np.int64) % m
        if D_prev.shape[1] != dim or D_next.shape[0] != dim:
            raise InputError("differential shapes do not match the cochain dimension")
        self._parts: list[_PrimePart] = []
        for p, k, e in crt_idempotents(m):
            self._parts.append(self._prime_part(D_prev % p**k, D_next % p**k, p, k, e))
        self.generators: list[np.ndarray] = []
        self.orders: list[int] = []
        for part in self._parts:
            for g, o in zip(part.gens, part.orders):
                self.generators.append(g * part.idem % m)
                self.orders.append(o)

    def _prime_part(self, D_prev, D_next, p, k, idem) -> _PrimePart:
        q = p**k
        n = self.dim
        if D_next.shape[1] == 0:
            sm = LocalSmith(p, k, np.eye(n, dtype=np.int64), np.eye(n, dtype=np.int64))
        else:
            sm = local_smith(D_next, p, k, track_inverse=True)
        coords = [(t, e) for t, e in enumerate(sm.exponents) if e > 0]
        coords += [(t, k) for t in range(sm.rank, n)]
        # relations: images of D_prev rows in kernel coordinates, plus orders
        rel = []
        if D_prev.shape[0] and coords:
            Y = D_prev @ sm.Pinv % q
            Z = np.stack([(Y[:, t] // p ** (k - f)) % q for t, f in coords], axis=1)
            rel.extend(list(Z))
        for j, (_, f) in enumerate(coords):
            row = np.zeros(len(coords), dtype=np.int64)
            row[j] = p**f % q
            rel.append(row)
        orders: list[int] = []
        gens = []
        if coords:
            R = np.array(rel, dtype=np.int64).reshape(-1, len(coords))
            B = local_smith(R.T, p, k, track_inverse=True)
            # w = z B.P^T;  class generator t: z = row t of (B.P^T)^-1 = column t of B.Pinv
            for t, e in enumerate(B.exponents):
                if e > 0:
                    orders.append(p**e)
                    gens.append(self._z_to_cochain(B.Pinv[:, t], coords, sm, p, k))
            for t in range(B.rank, len(coords)):
                orders.append(q)
                gens.append(self._z_to_cochain(B.Pinv[:, t], coords, sm, p, k))
        else:
            B = LocalSmith(p, k, np.zeros((0, 0), dtype=np.int64), None)
        gens_arr = np.array(gens, dtype=np.int64).reshape(len(gens), n)
        return _PrimePart(p, k, idem, sm, coords, B, orders, gens_arr)

    @staticmethod
    def _z_to_cochain(z, coords, sm, p, k):
        q = p**k
        y = np.zeros(sm.P.shape[0], dtype=np.int64)
        for (t, f), zt in zip(coords, z):
            y[t] = int(zt) * p ** (k - f) % q
        return y @ sm.P % q

    @property
    def size(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out

    def invariant_factors(self) -> list[int]:
        return invariant_factors_from_orders(self.orders)

    def is_cycle(self, x: np.ndarray, D_next: np.ndarray) -> bool:
        return not (np.asarray(x) @ D_next % self.m).any()

    def coordinates(self, x: np.ndarray) -> tuple[int, ...]:
        """Coefficients of ``x``'s class on ``self.generators``."""
        x = np.asarray(x, dtype=np.int64) % self.m
        out = []
        for part in self._parts:
            q = part.p**part.k
            if not part.orders:
                continue
            y = (x % q) @ part.smith.Pinv % q
            z = []
            for t, f in part.coords:
                step = part.p ** (part.k - f)
                if y[t] % step:
                    raise InputError("vector is not a cocycle")
                z.append(y[t] // step)
            w = np.array(z, dtype=np.int64) @ part.B.P.T % q
            j = 0
            for t, e in enumerate(part.B.exponents):
                if e > 0:
                    out.append(int(w[t]) % part.orders[j])
                    j += 1
            for t in range(part.B.rank, len(part.coords)):
                out.append(int(w[t]) % part.orders[j])
                j += 1
        return tuple(out)

    def is_zero_class(self, x: np.ndarray) -> bool:
        return not any(self.coordinates(x))

    def element(self, coeffs) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        for c, g in zip(coeffs, self.generators):
            out = (out + int(c) * g) % self.m
        return out


def invariant_factors_from_orders(orders: list[int]) -> list[int]:
    """Merge prime-power cyclic orders into a divisibility chain ``d1 | d2 | ...``."""
    by_prime: dict[int, list[int]] = {}
    for o in orders:
        if o <= 1:
            continue
        p = factor_modulus(o)[0][0]
        by_prime.setdefault(p, []).append(o)
    if not by_prime:
        return []
    length = max(len(v) for v in by_prime.values())
    chain = [1] * length
    for v in by_prime.values():
        v = sorted(v)
        for i, o in enumerate(v):
            chain[length - len(v) + i] *= o
    return chain

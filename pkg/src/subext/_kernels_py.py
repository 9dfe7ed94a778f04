"""Pure numpy versions of the Clifford kernels (same API as the compiled module)."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def _popcounts(size: int) -> np.ndarray:
    a = np.arange(size, dtype=np.int64)
    out = np.zeros(size, dtype=np.int64)
    while a.any():
        out += a & 1
        a >>= 1
    return out


@lru_cache(maxsize=None)
def _generator_signs(n: int, j: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return 1 - 2 * (_popcounts(1 << n)[idx >> (j + 1)] & 1)


@lru_cache(maxsize=None)
def _sign_table(n: int) -> np.ndarray:
    size = 1 << n
    pc = _popcounts(size)
    a = np.arange(size, dtype=np.int64)
    par = np.zeros((size, size), dtype=np.int64)
    for i in range(n):
        above = pc[a >> (i + 1)]
        par += np.outer(above, (a >> i) & 1)
    return 1 - 2 * (par & 1)


def blade_sign(a: int, b: int) -> int:
    s = 0
    i = 0
    while b >> i:
        if (b >> i) & 1:
            s += bin(a >> (i + 1)).count("1")
        i += 1
    return -1 if s & 1 else 1


def section_vector(word, n: int) -> tuple[np.ndarray, int]:
    """``(v, h)`` with ``prod (e_j - e_{j+1})`` over ``word`` equal to ``2^h v``, ``v`` not all even."""
    size = 1 << n
    v = np.zeros(size, dtype=np.int64)
    v[0] = 1
    idx = np.arange(size, dtype=np.int64)
    halvings = 0
    for j in word:
        out = np.zeros(size, dtype=np.int64)
        out[idx ^ (1 << j)] += _generator_signs(n, j) * v
        out[idx ^ (1 << (j + 1))] -= _generator_signs(n, j + 1) * v
        v = out
        while not (v & 1).any() and v.any():
            v >>= 1
            halvings += 1
    return v, halvings


def product_coefficient(x: np.ndarray, y: np.ndarray, m: int) -> int:
    """Coefficient of the blade ``m`` in the Clifford product ``x y``."""
    n = int(x.shape[0]).bit_length() - 1
    a = np.arange(x.shape[0], dtype=np.int64)
    return int((_sign_table(n)[a, a ^ m] * x * y[a ^ m]).sum())


def clifford_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    size = x.shape[0]
    n = size.bit_length() - 1
    a = np.arange(size, dtype=np.int64)
    terms = _sign_table(n) * np.outer(x, y)
    out = np.zeros(size, dtype=np.int64)
    np.add.at(out, (a[:, None] ^ a[None, :]).ravel(), terms.ravel())
    return out

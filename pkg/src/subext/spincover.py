"""The double cover 2.A_n inside the even Clifford algebra.

Generators ``e_1..e_n`` square to ``+1`` and anticommute; a monomial is a
bitmask (bit ``i`` stands for ``e_{i+1}``).  The transposition ``(j, j+1)``
lifts to ``(e_j - e_{j+1})/sqrt 2`` and an even permutation lifts to the
product along its canonical transposition word.  Even words only involve
powers of ``1/2``, so elements are integer vectors with a dyadic shift.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import kernels
from .cochain import Cochain2, ExtensionData
from .errors import InputError, InvariantError
from .gmodule import GModule
from .perm import Perm, PermGroup, alternating_group, format_cycles, identity, is_even, mul, transposition_word

MAX_DEGREE = 12
SECTION_CACHE = 16384
_LIMIT = 1 << 62


class SpinElement:
    """``2^-shift * sum coeffs[m] e_m`` together with its image in A_n."""

    __slots__ = ("n", "vector", "shift", "perm")

    def __init__(self, n: int, vector: np.ndarray, shift: int, perm: Perm):
        self.n = n
        self.vector = vector
        self.shift = shift
        self.perm = perm

    @classmethod
    def normalized(cls, n: int, vector: np.ndarray, shift: int, perm: Perm) -> "SpinElement":
        v = np.array(vector, dtype=np.int64)
        while shift > 0 and v.any() and not (v & 1).any():
            v >>= 1
            shift -= 1
        v.setflags(write=False)
        return cls(n, v, shift, perm)

    @classmethod
    def one(cls, n: int) -> "SpinElement":
        v = np.zeros(1 << n, dtype=np.int64)
        v[0] = 1
        return cls.normalized(n, v, 0, identity(n))

    def normalize(self) -> "SpinElement":
        return SpinElement.normalized(self.n, self.vector, self.shift, self.perm)

    @property
    def coeffs(self) -> dict[tuple[int, ...], int]:
        """Nonzero coefficients keyed by sorted 1-based index tuples."""
        out = {}
        for m in np.flatnonzero(self.vector):
            m = int(m)
            out[tuple(i + 1 for i in range(self.n) if (m >> i) & 1)] = int(self.vector[m])
        return out

    def __mul__(self, other: "SpinElement") -> "SpinElement":
        if self.n != other.n:
            raise InputError("Clifford elements of different degree")
        a, b = self.vector, other.vector
        bound = int(np.abs(a).max()) * int(np.abs(b).max()) * min(np.count_nonzero(a), np.count_nonzero(b))
        if bound >= _LIMIT:
            raise OverflowError("Clifford product would overflow 64-bit coefficients")
        p = kernels.clifford_product(a, b)
        return SpinElement.normalized(self.n, p, self.shift + other.shift, mul(self.perm, other.perm))

    def __neg__(self) -> "SpinElement":
        v = -self.vector
        v.setflags(write=False)
        return SpinElement(self.n, v, self.shift, self.perm)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpinElement):
            return NotImplemented
        return self.n == other.n and self.shift == other.shift and np.array_equal(self.vector, other.vector)

    def __hash__(self) -> int:
        return hash((self.n, self.shift, self.vector.tobytes()))

    def scalar(self) -> int | None:
        """The value if the element is ``+1`` or ``-1``, else ``None``."""
        if self.shift == 0 and np.count_nonzero(self.vector) == 1 and abs(int(self.vector[0])) == 1:
            return int(self.vector[0])
        return None

    def __repr__(self) -> str:
        return f"SpinElement(n={self.n}, shift={self.shift}, terms={np.count_nonzero(self.vector)}, perm={format_cycles(self.perm)})"


def clifford_product(a: SpinElement, b: SpinElement) -> SpinElement:
    return a * b


class SpinCover:
    """Section, cocycle and extension data for 2.A_n."""

    def __init__(self, n: int, group: PermGroup | None = None):
        if not 2 <= n <= MAX_DEGREE:
            raise InputError(f"spin cover degree must be in 2..{MAX_DEGREE}")
        self.n = n
        self.group = group if group is not None else alternating_group(n)
        self.module = GModule.trivial(self.group, 2)
        self._section = lru_cache(maxsize=SECTION_CACHE)(self._compute_section)

    def _compute_section(self, g: Perm) -> SpinElement:
        word = transposition_word(g)
        v, halvings = kernels.section_vector(word, self.n)
        shift = len(word) // 2 - halvings
        if shift < 0:
            raise InvariantError("section vector has a non-dyadic scale")
        v.setflags(write=False)
        return SpinElement(self.n, v, shift, g)

    def section(self, g: Perm) -> SpinElement:
        if len(g) != self.n:
            raise InputError(f"expected a permutation of degree {self.n}")
        if not is_even(g):
            raise InputError(f"{format_cycles(g)} is odd")
        return self._section(tuple(g))

    def sign(self, x: Perm, y: Perm, strict: bool = False) -> int:
        """``+1`` or ``-1`` with ``s(x) s(y) = sign * s(xy)``.

        The default compares one coefficient exactly; ``strict`` compares the
        full product.
        """
        sx, sy, sxy = self.section(x), self.section(y), self.section(mul(x, y))
        if strict:
            p = sx * sy
            if p == sxy:
                return 1
            if p == -sxy:
                return -1
            raise InvariantError(f"s(x)s(y) is not +-s(xy) for x={format_cycles(x)}, y={format_cycles(y)}")
        m = int(np.flatnonzero(sxy.vector)[0])
        c = int(kernels.product_coefficient(sx.vector, sy.vector, m))
        t = int(sxy.vector[m])
        lhs = c << sxy.shift
        rhs = t << (sx.shift + sy.shift)
        if lhs == rhs:
            return 1
        if lhs == -rhs:
            return -1
        raise InvariantError(f"s(x)s(y) is not +-s(xy) for x={format_cycles(x)}, y={format_cycles(y)}")

    def cocycle_value(self, x: Perm, y: Perm) -> int:
        return 0 if self.sign(x, y) > 0 else 1

    def cocycle(self) -> Cochain2:
        """The class of the cover as a lazily evaluated Z/2-valued 2-cocycle on A_n."""
        return Cochain2(self.module, self.group, func=lambda x, y: (self.cocycle_value(x, y),))

    def extension(self) -> ExtensionData:
        return ExtensionData(self.group, self.module, self.cocycle())

    def element_order(self, g: Perm) -> int:
        """Order of the lift ``s(g)`` in 2.A_n."""
        x, sgn, k = g, 1, 1
        while True:
            if all(x[i] == i for i in range(self.n)):
                return k if sgn > 0 else 2 * k
            sgn *= self.sign(x, g)
            x = mul(x, g)
            k += 1


@lru_cache(maxsize=None)
def spin_cover(n: int) -> SpinCover:
    return SpinCover(n)


def spin_section(g: Perm) -> SpinElement:
    return spin_cover(len(g)).section(g)


def spin_cocycle(g: Perm, h: Perm) -> int:
    if len(g) != len(h):
        raise InputError("permutations of different degree")
    return spin_cover(len(g)).cocycle_value(g, h)

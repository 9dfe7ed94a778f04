"""Time the compiled Clifford kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

import numpy as np

from subext import _kernels_py
from subext.perm import alternating_group, transposition_word

try:
    from subext import _kernels as _compiled
except ImportError:
    _compiled = None


def workloads(n: int, rng: random.Random):
    G = alternating_group(n)
    words = [transposition_word(G.random_element(rng)) for _ in range(50)]
    sections = [_kernels_py.section_vector(w, n)[0] for w in words[:10]]
    pairs = list(zip(sections, sections[1:]))
    return {
        "section_vector": lambda k: [k.section_vector(w, n) for w in words],
        "product_coefficient": lambda k: [k.product_coefficient(a, b, int(np.flatnonzero(a)[0])) for a, b in pairs],
        "clifford_product": lambda k: [k.clifford_product(a, b) for a, b in pairs[:3]],
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--degrees", type=int, nargs="+", default=[6, 9])
    args = ap.parse_args()
    if _compiled is None:
        print("compiled extension not built; only the fallback is timed")
    rng = random.Random(0)
    print(f"{'kernel':<22}{'n':>3}{'python ms':>12}{'compiled ms':>14}{'speedup':>10}")
    for n in args.degrees:
        for name, work in workloads(n, rng).items():
            py = min(timeit.repeat(lambda: work(_kernels_py), number=1, repeat=args.repeat)) * 1e3
            if _compiled is None:
                print(f"{name:<22}{n:>3}{py:>12.2f}{'-':>14}{'-':>10}")
                continue
            cc = min(timeit.repeat(lambda: work(_compiled), number=1, repeat=args.repeat)) * 1e3
            print(f"{name:<22}{n:>3}{py:>12.2f}{cc:>14.2f}{py / cc:>9.1f}x")


if __name__ == "__main__":
    main()

"""Compare the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import math
import timeit

import numpy as np

from tempeur import _pykernels

try:
    from tempeur import _ckernels
except ImportError:
    _ckernels = None


def bench(label, fn, repeat):
    # best of `repeat` single runs
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    return label, best


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    else:
        print("compiled kernels not built; timing the fallback only")

    cases = []
    for twice_s in (1, 4, 10):
        cases.append((f"wigner_small_d x200   2s={twice_s:<2}", "wigner", twice_s, np.linspace(0, 2 * math.pi, 200)))
    for twice_s, n in ((1, 101), (4, 101), (4, 1001), (10, 1001)):
        cases.append((f"entropy curve n={n:<5} 2s={twice_s:<2}", "curve", twice_s, np.linspace(0, 2 * math.pi, n)))

    print(f"{'case':36s}" + "".join(f"{name:>12s}" for name in backends) + ("     speedup" if len(backends) > 1 else ""))
    for label, kind, twice_s, angles in cases:
        times = []
        for mod in backends.values():
            if kind == "wigner":
                def fn(mod=mod):
                    for a in angles:
                        mod.wigner_small_d(twice_s, float(a))
            else:
                def fn(mod=mod):
                    mod.conditional_entropy_curve(twice_s, angles)
            times.append(bench(label, fn, args.repeat)[1])
        line = f"{label:36s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) > 1:
            line += f"{times[0] / times[1]:11.1f}x"
        print(line)

    # agreement check on the benchmarked inputs
    if _ckernels is not None:
        angles = np.linspace(0, 2 * math.pi, 1001)
        diff = np.max(np.abs(_ckernels.conditional_entropy_curve(10, angles) - _pykernels.conditional_entropy_curve(10, angles)))
        print(f"max |cython - python| on 2s=10 curve: {diff:.2e}")


if __name__ == "__main__":
    main()

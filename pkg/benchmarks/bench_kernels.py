"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported directly, so one process measures both.
"""

import argparse
import timeit

from ellipticlie import _kernels_py as py
from ellipticlie.freelie import is_lyndon, standard_bracketing
from ellipticlie.derivations import epsilon_std

try:
    from ellipticlie import _ckernels as cy
except ImportError:
    cy = None


def _lookup(w):
    return standard_bracketing(w) if is_lyndon(w) else None


def workloads(mod):
    e10 = epsilon_std(10)
    e6 = epsilon_std(6)
    imgs6 = e6.images()
    x = e10.dA
    y = e6.dT
    big = mod.derive(e10.dA, imgs6)
    return {
        "bracket (deg 11 x deg 7)": lambda: mod.bracket(x, y),
        "derive eps6 on eps10(A)": lambda: mod.derive(x, imgs6),
        "lyndon coords (deg 17)": lambda: mod.triangular_reduce(big, _lookup),
        "substitute (K=12)": lambda: mod.substitute(y, {"A": {"A": 1, "AT": 1, "TA": -1}, "T": {"T": 1}}, 12),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", py)] + ([("cython", cy)] if cy is not None else [])
    loads = {name: workloads(mod) for name, mod in backends}
    # warm the shared caches (standard bracketings) before timing
    for fn in loads["python"].values():
        fn()
    print(f"{'workload':<28}" + "".join(f"{n:>12}" for n, _ in backends) + ("     speedup" if cy else ""))
    for key in loads["python"]:
        times = []
        for name, _ in backends:
            t = min(timeit.repeat(loads[name][key], number=1, repeat=args.repeat))
            times.append(t)
        row = f"{key:<28}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if cy is not None:
            row += f"{times[0] / times[1]:>11.2f}x"
        print(row)
    if cy is not None:
        for key, fn in loads["python"].items():
            assert fn() == loads["cython"][key](), f"backends disagree on {key}"
        print("outputs agree")


if __name__ == "__main__":
    main()

"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat R]

Times v^p t_i (dense derivation kernel) and the symbolic expansion of
(4x^3 - g2 x - g3)^((p-1)/2) (sparse multiplication kernel), and checks
that both backends agree.
"""

import argparse
import time

from ramvf import _kernels
from ramvf.cartier import symbolic_half_power
from ramvf.rvf import CLASSICAL, make_ramanujan, vp_components

PRIMES = (31, 61, 97)


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])

    cases = []
    for p in PRIMES:
        v = make_ramanujan(CLASSICAL, p)
        cases.append((f"iterate_p  p={p}", lambda v=v: vp_components(v)))
        cases.append((f"half_power p={p}", lambda p=p: symbolic_half_power(p).tolist()))

    print(f"{'case':<20}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in cases:
        times, outs = [], []
        for b in backends:
            _kernels.set_backend(b)
            fn()  # warm up (jit compilation)
            t, out = _time(fn, args.repeat)
            times.append(t)
            outs.append(out)
        if len(outs) == 2 and outs[0] != outs[1]:
            raise SystemExit(f"{name}: backends disagree")
        speed = f"{times[0] / times[1]:9.1f}x" if len(times) == 2 else ""
        print(f"{name:<20}" + "".join(f"{t * 1000:10.2f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()

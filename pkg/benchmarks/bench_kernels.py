"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload is run once per backend before timing so JIT compilation is
excluded. Results from both backends are compared for equality.
"""
import argparse
import time

import numpy as np

from oie import cayley_table, csa, csm, make_atomic
from oie._kernels import HAVE_NUMBA, use_backend
from oie.cli.scenarios import grid_intervals


def sprint_events(lanes=3, width=6):
    slots = grid_intervals(0, width, 2, width, 1)
    return [make_atomic(f"lane{k}", slots) for k in range(1, lanes + 1)]


def workloads():
    events = sprint_events()
    idx = tuple(range(1, len(events) + 1))
    seq = [make_atomic(f"s{k}", [(t, t + 1) for t in range(0, 12)]) for k in range(3)]
    return {
        "csa sprint 3 lanes": lambda: csa(events, idx, (0, 6)),
        "csm 3 x 12 slots": lambda: csm(seq, (1, 2, 3)),
        "cayley n=10": lambda: cayley_table(10).cells,
    }


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    print(f"{'workload':<22}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in workloads().items():
        row, outs = [], []
        for backend in backends:
            with use_backend(backend):
                fn()  # warm-up / compile
                t, out = best_of(fn, args.repeat)
            row.append(t)
            outs.append(out)
        assert all(same(outs[0], o) for o in outs[1:]), f"{name}: backends disagree"
        speed = f"{row[0] / row[-1]:>9.2f}x" if len(row) > 1 else f"{'n/a':>10}"
        print(f"{name:<22}" + "".join(f"{t * 1e3:>10.2f}ms" for t in row) + speed)


if __name__ == "__main__":
    main()

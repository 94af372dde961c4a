"""Timing comparison of the compiled kernels against the pure-Python twins.

Runs the three hot paths on identical inputs through both backends and
prints a small table.  Usage::

    python3 benchmarks/bench_backends.py [--points 200000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from nullcong._core import python_backend


def _load_compiled():
    try:
        from nullcong._core import _speedups
    except ImportError:
        return None
    return _speedups


def _best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _workloads(n_points: int):
    from nullcong.congruence import DISTINGUISHED_EVENT, _chart_coefficients, grid_events

    rng = np.random.default_rng(0)
    u = 0.4 * (rng.normal(size=n_points) + 1j * rng.normal(size=n_points))

    side = max(2, round(n_points ** 0.25))
    pts = grid_events(DISTINGUISHED_EVENT, 0.1, side)
    c0, c1 = _chart_coefficients(pts)
    seeds = np.zeros(len(pts), dtype=complex)

    n_shear = n_points // 10
    o = rng.normal(size=(n_shear, 2)) + 1j * rng.normal(size=(n_shear, 2))
    jac = rng.normal(size=(n_shear, 4, 2)) + 1j * rng.normal(size=(n_shear, 4, 2))

    return [
        (f"g_many             ({n_points} pts)", lambda b: b.g_many(u)),
        (f"g_prime_many       ({n_points} pts)", lambda b: b.g_prime_many(u)),
        (f"cr_newton_seeded   ({len(pts)} pts)", lambda b: b.cr_newton_seeded(c0, c1, seeds)),
        (f"cr_newton_chain    ({len(pts)} pts)", lambda b: b.cr_newton_chain(c0, c1, 0.0 + 0.0j)),
        (f"shear_twist_raw    ({n_shear} pts)", lambda b: b.shear_twist_raw(o, jac)),
    ]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    ns = ap.parse_args()

    compiled = _load_compiled()
    if compiled is None:
        print("compiled extension not built; showing pure-Python timings only")

    rows = []
    for label, call in _workloads(ns.points):
        t_py = _best_of(lambda: call(python_backend), ns.repeat)
        if compiled is not None:
            t_c = _best_of(lambda: call(compiled), ns.repeat)
            rows.append((label, t_py * 1e3, t_c * 1e3, t_py / t_c))
        else:
            rows.append((label, t_py * 1e3, None, None))

    header = f"{'kernel':<38} {'python (ms)':>12} {'compiled (ms)':>14} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, t_py, t_c, ratio in rows:
        if t_c is None:
            print(f"{label:<38} {t_py:>12.3f} {'-':>14} {'-':>9}")
        else:
            print(f"{label:<38} {t_py:>12.3f} {t_c:>14.3f} {ratio:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Compiled vs pure-Python finite-field kernels.

Times the full O(p^2) scan that finds the zeros of li_{p-3} on F_p, which
dominates every prime-range sweep.  Run after an editable install:

    python3 benchmarks/bench_kernels.py --primes 101 1009 4999 9973
"""

from __future__ import annotations

import argparse
import statistics
import time

from kimloci import _fallback

try:
    from kimloci import _kernels
except ImportError:
    _kernels = None


def _time(fn, repeat: int) -> float:
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[101, 1009, 4999, 9973])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'p':>7} {'python (s)':>12} {'compiled (s)':>13} {'speedup':>8}")
    for p in args.primes:
        coeffs = _fallback.li_coeffs(p - 3, p)
        py_row = _fallback.poly_row(coeffs, p)
        t_py = _time(lambda: _fallback.poly_row(coeffs, p), args.repeat)
        if _kernels is None:
            print(f"{p:>7} {t_py:>12.4f} {'-':>13} {'-':>8}")
            continue
        c_coeffs = _kernels.li_coeffs(p - 3, p)
        assert list(c_coeffs) == list(coeffs), "li coefficients disagree"
        assert list(_kernels.poly_row(c_coeffs, p)) == list(py_row), "rows disagree"
        t_c = _time(lambda: _kernels.poly_row(c_coeffs, p), args.repeat)
        print(f"{p:>7} {t_py:>12.4f} {t_c:>13.4f} {t_py / t_c:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``.

Batch evaluation vectorises Horner's rule over all residues with numpy, so
the O(p**2) scan stays usable (if slower) without a C compiler.
"""

from __future__ import annotations

import numpy as np

MAX_PRIME = 1 << 31


def poly_row(coeffs, p: int) -> list[int]:
    a = np.arange(p, dtype=np.int64)
    out = np.zeros(p, dtype=np.int64)
    if p < 1 << 31:
        for c in reversed(list(coeffs)):
            out *= a
            out += c % p
            out %= p
        return out.tolist()
    # big primes overflow int64 products; use object arrays
    vals = [0] * p
    for c in reversed(list(coeffs)):
        vals = [(v * x + c) % p for x, v in enumerate(vals)]
    return vals


def poly_eval(coeffs, a: int, p: int) -> int:
    acc = 0
    a %= p
    for c in reversed(list(coeffs)):
        acc = (acc * a + c) % p
    return acc


def li_coeffs(n: int, p: int) -> list[int]:
    e = (-n) % (p - 1)
    return [0] + [pow(k, e, p) for k in range(1, p)]

"""All values of li_n on F_p in O(p log p).

With a primitive root g and a = g^j, li_n(g^j) = sum_i x_i g^(ij) where x_i
collects the coefficients of exponents congruent to i mod p-1.  That is a
length-(p-1) DFT over F_p.  Writing ij = T(i+j) - T(i) - T(j) with
T(m) = m(m-1)/2 turns it into a correlation, which is evaluated exactly with
floating-point FFTs on 9-bit limbs.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_PRIME = 1 << 18
_LIMB = 9
_MASK = (1 << _LIMB) - 1


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    L = p - 1
    qs = _prime_factors(L)
    for g in range(2, p):
        if all(pow(g, L // q, p) != 1 for q in qs):
            return g
    raise ValueError(f"no primitive root mod {p}")


def _fast_len(n: int) -> int:
    best = 1 << max(n - 1, 1).bit_length()
    a = 1
    while a < best:
        b = a
        while b < best:
            c = b
            while c < n:
                c *= 5
            best = min(best, c)
            b *= 3
        a *= 2
    return best


@lru_cache(maxsize=4)
def _tables(p: int):
    """Powers of g, discrete logs, and the chirp g^T(m) for m < 2(p-1) - 1."""
    L = p - 1
    g = primitive_root(p)
    pw = np.ones(L, dtype=np.int64)
    k = 1
    while k < L:
        m = min(k, L - k)
        pw[k:k + m] = pw[:m] * pow(g, k, p) % p
        k += m
    dlog = np.zeros(p, dtype=np.int64)
    dlog[pw] = np.arange(L)
    m = np.arange(2 * L - 1, dtype=np.int64)
    tri = (m * (m - 1) // 2) % L
    chirp = pw[tri]
    unchirp = pw[(-tri[:L]) % L]
    size = _fast_len(2 * L - 1)
    fc = [np.fft.rfft(chirp & _MASK, size), np.fft.rfft(chirp >> _LIMB, size)]
    return pw, dlog, unchirp, fc, size


def _rounded(x: np.ndarray) -> np.ndarray:
    r = np.rint(x)
    err = float(np.abs(x - r).max(initial=0.0))
    if err > 0.25:
        raise ArithmeticError(f"FFT rounding error {err} too large for an exact result")
    return r.astype(np.int64)


def li_row_transform(n: int, p: int) -> np.ndarray:
    """li_n(a) mod p for every a in [0, p), as an int64 array indexed by a."""
    if not 3 <= p < MAX_PRIME:
        raise ValueError(f"transform path needs 3 <= p < {MAX_PRIME}, got {p}")
    L = p - 1
    pw, dlog, unchirp, fc, size = _tables(p)
    x = pw[(-n * dlog[np.arange(L)]) % L]
    # exponent p-1 folds onto class 0: its coefficient is (p-1)^-n = (-1)^n
    x[0] = 1 if n % 2 == 0 else p - 1
    u = (x * unchirp % p)[::-1]
    fu = [np.fft.rfft(u & _MASK, size), np.fft.rfft(u >> _LIMB, size)]
    lo = _rounded(np.fft.irfft(fu[0] * fc[0], size)) % p
    mid = _rounded(np.fft.irfft(fu[0] * fc[1] + fu[1] * fc[0], size)) % p
    hi = _rounded(np.fft.irfft(fu[1] * fc[1], size)) % p
    conv = (lo + (mid << _LIMB) + (hi << 2 * _LIMB) % p) % p
    vals = conv[L - 1:2 * L - 1] * unchirp % p
    row = np.zeros(p, dtype=np.int64)
    row[pw] = vals
    return row

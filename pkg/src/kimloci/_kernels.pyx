# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for dense polynomial evaluation over F_p.

All residues are uint32; products are reduced with a Barrett step that is
exact for p < 2**18.
"""

from array import array

from libc.stdint cimport uint32_t, uint64_t

cdef enum:
    BARRETT_SHIFT = 46
MAX_PRIME = 1 << 18


cdef inline uint32_t _mulmod(uint64_t x, uint32_t p, uint64_t m) noexcept nogil:
    # x < 2**46 and m = floor(2**46 / p), so the quotient is low by at most one
    cdef uint64_t q = (x * m) >> BARRETT_SHIFT
    cdef uint32_t r = <uint32_t>(x - q * p)
    return r - p if r >= p else r


cdef void _horner_all(const uint32_t[::1] c, uint32_t p, uint32_t[::1] out) noexcept nogil:
    cdef uint64_t m = ((<uint64_t>1) << BARRETT_SHIFT) // p
    cdef Py_ssize_t deg = c.shape[0] - 1
    cdef Py_ssize_t k
    cdef uint32_t a, ck
    for a in range(p):
        out[a] = 0
    for k in range(deg, -1, -1):
        ck = c[k]
        for a in range(p):
            out[a] = _mulmod(<uint64_t>out[a] * a + ck, p, m)


def _check(p):
    if not 2 <= p < MAX_PRIME:
        raise ValueError(f"compiled kernels need 2 <= p < {MAX_PRIME}, got {p}")


def poly_row(coeffs, unsigned int p):
    """Values of sum(coeffs[k] * a**k) mod p for every a in range(p)."""
    _check(p)
    cdef uint32_t[::1] c = array("I", [x % p for x in coeffs]) if len(coeffs) else array("I", [0])
    out = array("I", bytes(4 * p))
    cdef uint32_t[::1] o = out
    with nogil:
        _horner_all(c, p, o)
    return out


def poly_eval(coeffs, unsigned int a, unsigned int p):
    """Single-point Horner evaluation mod p."""
    _check(p)
    cdef uint32_t[::1] c = array("I", [x % p for x in coeffs]) if len(coeffs) else array("I", [0])
    cdef uint64_t m = ((<uint64_t>1) << BARRETT_SHIFT) // p
    cdef uint32_t acc = 0
    cdef uint32_t aa = a % p
    cdef Py_ssize_t k
    with nogil:
        for k in range(c.shape[0] - 1, -1, -1):
            acc = _mulmod(<uint64_t>acc * aa + c[k], p, m)
    return acc


def li_coeffs(unsigned int n, unsigned int p):
    """Coefficient table [0, 1**-n, 2**-n, ..., (p-1)**-n] mod p."""
    _check(p)
    out = array("I", bytes(4 * p))
    cdef uint32_t[::1] o = out
    cdef uint64_t m = ((<uint64_t>1) << BARRETT_SHIFT) // p
    cdef uint32_t e = (p - 1 - n % (p - 1)) % (p - 1)
    cdef uint32_t k, base, acc, ee
    with nogil:
        # k**-n == k**e since k**(p-1) == 1
        for k in range(1, p):
            acc = 1
            base = k
            ee = e
            while ee:
                if ee & 1:
                    acc = _mulmod(<uint64_t>acc * base, p, m)
                base = _mulmod(<uint64_t>base * base, p, m)
                ee >>= 1
            o[k] = acc
    return out

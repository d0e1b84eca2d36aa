"""Finite polylogarithms over F_p and p-adic polylogarithm series.

The finite polylogarithm li_n(z) = sum_{k=1}^{p-1} z^k / k^n is a polynomial
over F_p.  It is the mod-p shadow of the modified p-adic polylogarithm
Li_n(z) - p^-n Li_n(z^p), which is how the verifier reaches unit arguments
without Coleman integration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _backend, _transform
from .padic import (
    PAdic,
    PAdicDomainError,
    _floor_log,
    _series_cutoff,
    iwasawa_log,
    padic_log,
    valuation,
)


@dataclass(frozen=True, slots=True, eq=False)
class FpElement:
    """A residue modulo p, stored reduced to [0, p).

    Compares equal to the plain integer with the same reduced value, so
    ``finite_li_roots(2, 5) == {4}`` reads naturally.
    """

    p: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"FpElement({self.value} mod {self.p})"

    def _other(self, other) -> int:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError(f"mixed primes {self.p} and {other.p}")
            return other.value
        return other

    def __add__(self, other):
        return FpElement(self.p, self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return FpElement(self.p, self.value - self._other(other))

    def __rsub__(self, other):
        return FpElement(self.p, self._other(other) - self.value)

    def __mul__(self, other):
        return FpElement(self.p, self.value * self._other(other))

    __rmul__ = __mul__

    def inverse(self) -> FpElement:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return FpElement(self.p, pow(self.value, -1, self.p))


class FpPoly:
    """Dense polynomial over F_p, coefficients in ascending degree."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int]):
        cs = [int(c) % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.p = p
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, FpPoly) and (self.p, self.coeffs) == (other.p, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"FpPoly(p={self.p}, degree={self.degree})"

    def __mul__(self, other: FpPoly) -> FpPoly:
        if not self.coeffs or not other.coeffs:
            return FpPoly(self.p, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FpPoly(self.p, out)

    def __call__(self, a) -> FpElement:
        if not self.coeffs:
            return FpElement(self.p, 0)
        return FpElement(self.p, _backend.poly_eval(self.coeffs, int(a) % self.p, self.p))

    def values(self) -> list[int]:
        """Values at 0, 1, ..., p-1."""
        if not self.coeffs:
            return [0] * self.p
        return list(_backend.poly_row(self.coeffs, self.p))


def _residue(a, p: int | None) -> tuple[int, int]:
    if isinstance(a, FpElement):
        if p is not None and p != a.p:
            raise ValueError(f"element lives mod {a.p}, not mod {p}")
        return a.value, a.p
    if p is None:
        raise TypeError("p is required for integer arguments")
    return int(a) % p, p


def _check_odd_prime(p: int) -> None:
    from .padic import is_prime

    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def finite_li_poly(n: int, p: int) -> FpPoly:
    """li_n as an explicit polynomial of degree p-1."""
    if n < 1:
        raise ValueError("weight n must be positive")
    _check_odd_prime(p)
    return FpPoly(p, _backend.li_coeffs(n, p))


def finite_li_eval(n: int, a, p: int | None = None) -> FpElement:
    """li_n(a) in F_p by a single Horner pass over the inverse-power table."""
    if n < 1:
        raise ValueError("weight n must be positive")
    a, p = _residue(a, p)
    _check_odd_prime(p)
    return FpElement(p, _backend.poly_eval(_backend.li_coeffs(n, p), a, p))


# below this the Horner kernels beat the FFT set-up cost
TRANSFORM_CUTOFF = 1024


def finite_li_row(n: int, p: int, method: str = "auto") -> list[int]:
    """li_n(a) for every a in F_p, as plain integers indexed by a.

    ``method`` is "horner" (direct summation, O(p^2)), "transform"
    (O(p log p) via a DFT over F_p) or "auto".
    """
    if n < 1:
        raise ValueError("weight n must be positive")
    _check_odd_prime(p)
    if method == "auto":
        method = "transform" if TRANSFORM_CUTOFF <= p < _transform.MAX_PRIME else "horner"
    if method == "transform":
        return _transform.li_row_transform(n, p).tolist()
    if method != "horner":
        raise ValueError(f"unknown row method {method!r}")
    return list(_backend.poly_row(_backend.li_coeffs(n, p), p))


@lru_cache(maxsize=8192)
def finite_li_roots(n: int, p: int) -> frozenset[FpElement]:
    """All a in F_p minus {0, 1} with li_n(a) = 0, by evaluating li_n everywhere."""
    if n == p - 3 and p < 5:
        raise ValueError("li_{p-3} needs p >= 5")
    if TRANSFORM_CUTOFF <= p < _transform.MAX_PRIME:
        zeros = np.flatnonzero(_transform.li_row_transform(n, p)[2:] == 0) + 2
        return frozenset(FpElement(p, int(a)) for a in zeros)
    row = finite_li_row(n, p)
    return frozenset(FpElement(p, a) for a in range(2, p) if row[a] == 0)


def closed_form_li(p: int) -> FpPoly:
    """The expansion of z(z+1)(z-1)^(p-3) over F_p."""
    _check_odd_prime(p)
    if p < 5:
        raise ValueError("closed form needs p >= 5")
    m = p - 3
    # (z-1)^m = sum_j C(m, j) (-1)^(m-j) z^j; j < p keeps C(m, j+1) division-free mod p
    binom = [0] * (m + 1)
    c = 1
    for j in range(m + 1):
        binom[j] = c if (m - j) % 2 == 0 else -c
        c = c * (m - j) * pow(j + 1, -1, p) % p
    return FpPoly(p, [0, 1, 1]) * FpPoly(p, binom)


def modified_polylog_mod_p(n: int, zbar, p: int | None = None) -> FpElement:
    """(1 - zbar)^-1 li_n(zbar): the reduction of the modified polylog at any lift."""
    z, p = _residue(zbar, p)
    if z in (0, 1):
        raise PAdicDomainError(f"zbar must avoid 0 and 1, got {z}")
    return finite_li_eval(n, z, p) * pow(1 - z, -1, p)


# -- p-adic series --------------------------------------------------------------


def polylog_series(k: int, z: PAdic, N: int | None = None) -> PAdic:
    """Li_k(z) = sum z^m / m^k on the open unit disc.

    The result is correct to absolute precision N (default: that of z), or
    less when the precision of z does not support N digits.
    """
    if k < 1:
        raise ValueError("weight k must be positive")
    p = z.p
    if N is None:
        N = z.absprec
    if z.is_zero():
        if z.val < 1:
            raise PAdicDomainError("polylog series needs v_p(z) >= 1")
        a = z.val
        # every term is O(p^(m*a - k*v_p(m)))
        K = _series_cutoff(lambda m: m * a - k * _floor_log(m, p),
                           lambda m: m >= k and m * a >= N and p ** (m * a - N) >= m**k, N)
        bound = min([N] + [m * a - k * valuation(m, p) for m in range(1, K + 1)])
        return PAdic.zero(p, bound)
    vz = z.val
    if vz < 1:
        raise PAdicDomainError(f"polylog series needs v_p(z) >= 1, got {z}")
    K = _series_cutoff(lambda m: m * vz - k * _floor_log(m, p),
                       lambda m: m >= k and m * vz >= N and p ** (m * vz - N) >= m**k, N)
    if K == 0:
        return PAdic.zero(p, N)
    vals = [valuation(m, p) for m in range(1, K + 1)]
    absprec = min([N] + [z.absprec + (m - 1) * vz - k * vals[m - 1] for m in range(1, K + 1)])
    shift = max([0] + [k * vals[m - 1] - m * vz for m in range(1, K + 1)])
    mod = p ** (N + k * _floor_log(K, p))
    out_mod = p ** (N + shift)
    zint = z.residue()
    scale = p**shift
    total = 0
    zp = 1
    for m in range(1, K + 1):
        zp = zp * zint % mod
        e = vals[m - 1]
        unit = m // p**e
        total += (zp * scale // p ** (k * e)) * pow(unit, -k, out_mod)
    return PAdic.from_residue(total, p, absprec, shift=-shift)


def li1(z: PAdic, N: int | None = None) -> PAdic:
    """Li_1(z) = -log(1 - z), with the Iwasawa branch when 1 - z is not a unit."""
    if z.is_zero():
        if z.val < 1:
            raise PAdicDomainError("Li_1 of an unknown non-integral value")
        out = PAdic.zero(z.p, z.val)
    else:
        w = 1 - z
        if w.is_zero():
            raise PAdicDomainError(f"Li_1 is singular at z = 1 (1 - z = {w})")
        if w.val < 0:
            raise PAdicDomainError(f"Li_1 needs p-integral z, got {z}")
        out = -(iwasawa_log(w) if w.val == 0 else padic_log(w))
    return out if N is None else out.truncate(N)


def modified_polylog_series(n: int, z: PAdic, N: int | None = None) -> PAdic:
    """Li_n(z) - p^-n Li_n(z^p) for v_p(z) >= 1, to absolute precision N."""
    if N is None:
        N = z.absprec
    if not z.is_zero() and z.val < 1:
        raise PAdicDomainError(f"modified polylog series needs v_p(z) >= 1, got {z}")
    p = z.p
    head = polylog_series(n, z, N)
    # padding n digits survives the exact division by p^n
    tail = polylog_series(n, z**p, N + n) * PAdic(p, -n, 1, N + 2 * n)
    return (head - tail).truncate(N)


def modified_li1_unit(z: PAdic) -> PAdic:
    """Li_1(z) - Li_1(z^p)/p through logarithms, for z with 1 - z a unit."""
    w = 1 - z
    if w.is_zero() or w.val != 0:
        raise PAdicDomainError(f"1 - z must be a unit, got {w}")
    p = z.p
    return -iwasawa_log(w) + iwasawa_log(1 - z**p) * PAdic(p, -1, 1, z.absprec + 1)

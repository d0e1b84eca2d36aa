"""Fixed-precision arithmetic in Z_p and Q_p for odd primes p.

A nonzero element is stored as ``p**val * unit`` where the unit is known
modulo ``p**prec`` (relative precision).  Elements that are indistinguishable
from zero are kept in a separate zero state that only remembers the bound
``O(p**val)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator


class PrecisionError(ArithmeticError):
    """Raised when a value is zero to the tracked precision but a nonzero one is required."""


class PAdicDomainError(ValueError):
    """Raised when an argument lies outside the domain of a p-adic function."""


def valuation(n: int, p: int) -> int:
    """v_p(n) for a nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _floor_log(m: int, p: int) -> int:
    e = 0
    q = p
    while q <= m:
        q *= p
        e += 1
    return e


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


@dataclass(frozen=True, slots=True)
class PAdic:
    """An element of Q_p known to finite precision.

    Nonzero state: ``unit`` is coprime to p and lies in ``[1, p**prec)``.
    Zero state: ``unit == 0``, ``prec == 0`` and ``val`` is the absolute
    precision of the (unknown) small value.
    """

    p: int
    val: int
    unit: int
    prec: int

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, p: int, absprec: int) -> PAdic:
        return cls(p, absprec, 0, 0)

    @classmethod
    def from_int(cls, n: int, p: int, prec: int) -> PAdic:
        if prec < 1:
            raise ValueError("precision must be at least 1")
        if n == 0:
            return cls.zero(p, prec)
        v = valuation(n, p)
        return cls(p, v, (n // p**v) % p**prec, prec)

    @classmethod
    def from_fraction(cls, q: Fraction | int, p: int, prec: int) -> PAdic:
        q = Fraction(q)
        if q == 0:
            return cls.zero(p, prec)
        num = cls.from_int(q.numerator, p, prec)
        return num * cls.from_int(q.denominator, p, prec).inverse()

    @classmethod
    def from_residue(cls, r: int, p: int, absprec: int, shift: int = 0) -> PAdic:
        """The element ``p**shift * r`` where r is known modulo ``p**(absprec - shift)``."""
        width = absprec - shift
        if width <= 0:
            return cls.zero(p, absprec)
        r %= p**width
        if r == 0:
            return cls.zero(p, absprec)
        k = valuation(r, p)
        prec = width - k
        return cls(p, shift + k, (r // p**k) % p**prec, prec)

    # -- inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def absprec(self) -> int:
        return self.val + self.prec

    def residue(self) -> int:
        """Integer representative in ``[0, p**absprec)``; requires val >= 0."""
        if self.is_zero():
            return 0
        if self.val < 0:
            raise PAdicDomainError("element is not p-integral")
        return (self.unit * self.p**self.val) % self.p**self.absprec

    def reduce(self) -> int:
        """Reduction modulo p of a p-integral element."""
        if self.is_zero():
            if self.val < 1:
                raise PrecisionError("residue mod p is unknown at this precision")
            return 0
        if self.val < 0:
            raise PAdicDomainError("element is not p-integral")
        return self.unit % self.p if self.val == 0 else 0

    def require_nonzero(self) -> PAdic:
        if self.is_zero():
            raise PrecisionError(f"value is zero to precision O({self.p}^{self.val})")
        return self

    def truncate(self, absprec: int) -> PAdic:
        """Drop digits beyond the given absolute precision."""
        if absprec >= self.absprec:
            return self
        if self.is_zero() or absprec <= self.val:
            return PAdic.zero(self.p, absprec)
        prec = absprec - self.val
        return PAdic(self.p, self.val, self.unit % self.p**prec, prec)

    def __str__(self) -> str:
        if self.is_zero():
            return f"O({self.p}^{self.val})"
        return f"{self.unit}*{self.p}^{self.val} + O({self.p}^{self.absprec})"

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> PAdic:
        if isinstance(other, PAdic):
            if other.p != self.p:
                raise ValueError(f"mixed primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                return PAdic.zero(self.p, max(self.absprec, self.prec, 1))
            v = valuation(q.numerator, self.p) - valuation(q.denominator, self.p)
            # exact constants carry at least the precision of self
            return PAdic.from_fraction(q, self.p, max(self.prec, self.absprec - v, 1))
        return NotImplemented

    def __neg__(self) -> PAdic:
        if self.is_zero():
            return self
        return PAdic(self.p, self.val, (-self.unit) % self.p**self.prec, self.prec)

    def __add__(self, other) -> PAdic:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        absprec = min(self.absprec, other.absprec)
        terms = [x for x in (self, other) if not x.is_zero()]
        if not terms:
            return PAdic.zero(self.p, absprec)
        m = min(x.val for x in terms)
        s = sum(x.unit * self.p ** (x.val - m) for x in terms)
        return PAdic.from_residue(s, self.p, absprec, shift=m)

    __radd__ = __add__

    def __sub__(self, other) -> PAdic:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> PAdic:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> PAdic:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return PAdic.zero(self.p, self.val + other.val)
        prec = min(self.prec, other.prec)
        return PAdic(self.p, self.val + other.val, (self.unit * other.unit) % self.p**prec, prec)

    __rmul__ = __mul__

    def inverse(self) -> PAdic:
        if self.is_zero():
            raise ZeroDivisionError(f"cannot invert O({self.p}^{self.val})")
        mod = self.p**self.prec
        return PAdic(self.p, -self.val, pow(self.unit, -1, mod), self.prec)

    def __truediv__(self, other) -> PAdic:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> PAdic:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int) -> PAdic:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return PAdic(self.p, 0, 1, max(self.prec, 1))
        if self.is_zero():
            if self.val <= 0:
                raise PrecisionError("power of an unknown non-integral value")
            return PAdic.zero(self.p, self.val * e)
        return PAdic(self.p, self.val * e, pow(self.unit, e, self.p**self.prec), self.prec)


@dataclass(frozen=True)
class PrecisionPolicy:
    """Precision schedule used when a zero/nonzero decision is ambiguous."""

    default: int = 8
    factor: int = 2
    max_prec: int = 64

    def __post_init__(self):
        if self.default < 1 or self.factor < 2 or self.max_prec < self.default:
            raise ValueError(f"invalid precision policy {self}")

    def schedule(self, start: int | None = None) -> Iterator[int]:
        n = self.default if start is None else start
        while True:
            yield min(n, self.max_prec)
            if n >= self.max_prec:
                return
            n *= self.factor


def certify_nonzero(compute: Callable[[int], PAdic], policy: PrecisionPolicy,
                    start: int | None = None) -> tuple[PAdic, int]:
    """Evaluate ``compute(N)`` along the policy until a nonzero digit shows up.

    Returns the value and the precision that exposed it.  A value that stays
    zero up to ``policy.max_prec`` raises PrecisionError: finite precision can
    never certify vanishing.
    """
    last = None
    for n in policy.schedule(start):
        last = compute(n)
        if not last.is_zero():
            return last, n
    raise PrecisionError(f"still {last} at maximum precision {policy.max_prec}")


def padic_from_integer(n: int, p: int, N: int) -> PAdic:
    _check_prime(p)
    return PAdic.from_int(n, p, N)


def teichmuller(a: int, p: int, N: int) -> PAdic:
    """The (p-1)-st root of unity congruent to a mod p, to relative precision N."""
    _check_prime(p)
    if not 1 <= a <= p - 1:
        raise ValueError(f"Teichmuller residue must lie in [1, {p - 1}], got {a}")
    mod = p**N
    x = a
    for _ in range(N):
        y = pow(x, p, mod)
        if y == x:
            break
        x = y
    return PAdic(p, 0, x, N)


# -- power series ---------------------------------------------------------------


def _series_cutoff(term_val: Callable[[int], int], lower_ok: Callable[[int], bool], N: int) -> int:
    """Least K such that ``term_val(m) >= N`` for every m > K.

    ``lower_ok(m)`` must be a monotone certificate: once true, it stays true
    and implies ``term_val(m') >= N`` for all m' >= m.
    """
    bound = 1
    while not lower_ok(bound):
        bound += 1
    K = 0
    for m in range(1, bound):
        if term_val(m) < N:
            K = m
    return K


def _log1p_residue(t: int, vt: int, p: int, N: int) -> int:
    """log(1+t) mod p**N for an integer t with v_p(t) = vt >= 1."""
    # term t^m/m has valuation m*vt - v_p(m) >= m*vt - floor(log_p m)
    K = _series_cutoff(
        lambda m: m * vt - _floor_log(m, p),
        lambda m: m * vt >= N and p ** (m * vt - N) >= m,
        N,
    )
    extra = _floor_log(K, p) if K else 0
    mod = p ** (N + extra)
    out_mod = p**N
    total = 0
    tp = 1
    for m in range(1, K + 1):
        tp = tp * t % mod
        e = valuation(m, p)
        term = (tp // p**e) * pow(m // p**e, -1, mod) % out_mod
        total += term if m % 2 else -term
    return total % out_mod


def iwasawa_log(u: PAdic) -> PAdic:
    """The Iwasawa logarithm of a p-adic unit.

    Uses log(u) = log(u**(p-1)) / (p-1), so the result vanishes on roots of
    unity.  The result has absolute precision equal to the unit's precision.
    """
    if u.is_zero() or u.val != 0:
        raise PAdicDomainError(f"iwasawa_log needs a unit, got {u}")
    p, N = u.p, u.prec
    mod = p**N
    t = (pow(u.unit, p - 1, mod) - 1) % mod
    if t == 0:
        return PAdic.zero(p, N)
    r = _log1p_residue(t, valuation(t, p), p, N)
    return PAdic.from_residue(r * pow(p - 1, -1, mod), p, N)


def padic_log(x: PAdic) -> PAdic:
    """Logarithm on Q_p^x with the Iwasawa branch log(p) = 0."""
    if x.is_zero():
        raise PAdicDomainError("log of a value that is zero to precision")
    return iwasawa_log(PAdic(x.p, 0, x.unit, x.prec))


def _vp_factorial(m: int, p: int) -> int:
    v = 0
    q = p
    while q <= m:
        v += m // q
        q *= p
    return v


def exp_principal(t: PAdic, N: int | None = None) -> PAdic:
    """exp(t) for v_p(t) >= 1, to absolute precision N (capped by that of t)."""
    p = t.p
    N = t.absprec if N is None else min(N, t.absprec)
    if t.is_zero():
        if t.val < 1:
            raise PAdicDomainError("exp needs v_p(t) >= 1")
        return PAdic(p, 0, 1, N)
    if t.val < 1:
        raise PAdicDomainError(f"exp needs v_p(t) >= 1, got {t}")
    vt = t.val
    # v_p(m!) <= (m-1)/(p-1)
    K = _series_cutoff(
        lambda m: m * vt - _vp_factorial(m, p),
        lambda m: m * vt * (p - 1) - (m - 1) >= N * (p - 1),
        N,
    )
    mod = p ** (N + _vp_factorial(K, p))
    out_mod = p**N
    tint = t.residue()
    total = 1
    tp = 1
    fact_unit = 1
    fact_val = 0
    for m in range(1, K + 1):
        tp = tp * tint % mod
        e = valuation(m, p)
        fact_val += e
        fact_unit = fact_unit * (m // p**e) % mod
        total += (tp // p**fact_val) * pow(fact_unit, -1, mod)
    return PAdic.from_residue(total, p, N)

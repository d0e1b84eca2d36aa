"""S-integral points of the thrice-punctured line and their Kummer data."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable

from .padic import PAdic, is_prime
from .selmer import Cusp, RefinementCondition

DEFAULT_BOUND = 20


class NotSIntegralError(ValueError):
    pass


@dataclass(frozen=True)
class RationalPoint:
    """A reduced fraction a/b with b > 0 avoiding the cusps 0 and 1."""

    a: int
    b: int = 1

    def __post_init__(self):
        a, b = self.a, self.b
        if b == 0:
            raise ValueError("infinity is a cusp, not a point of Y")
        if b < 0:
            a, b = -a, -b
        g = gcd(a, b)
        a, b = a // g, b // g
        if a == 0 or a == b:
            raise ValueError(f"{a}/{b} is a cusp, not a point of Y")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def of(cls, value) -> RationalPoint:
        if isinstance(value, RationalPoint):
            return value
        q = Fraction(value)
        return cls(q.numerator, q.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.b)

    @property
    def height(self) -> int:
        return max(abs(self.a), self.b)

    def sort_key(self):
        return (self.height, self.value)

    def to_padic(self, p: int, N: int) -> PAdic:
        return PAdic.from_fraction(self.value, p, N)

    def __str__(self):
        return str(self.a) if self.b == 1 else f"{self.a}/{self.b}"


def _is_smooth(n: int, S: Iterable[int]) -> bool:
    n = abs(n)
    if n == 0:
        return False
    for l in S:
        while n % l == 0:
            n //= l
    return n == 1


def is_s_integral(z: RationalPoint, S: Iterable[int]) -> bool:
    S = tuple(S)
    return _is_smooth(z.a, S) and _is_smooth(z.b, S) and _is_smooth(z.a - z.b, S)


def _vl(n: int, l: int) -> int:
    v = 0
    while n % l == 0:
        n //= l
        v += 1
    return v


def _check_S(S: Iterable[int]) -> tuple[int, ...]:
    S = tuple(sorted(set(S)))
    for l in S:
        if not is_prime(l):
            raise ValueError(f"S must contain primes, got {l}")
    return S


def enumerate_integral_points(S: Iterable[int], B: int = DEFAULT_BOUND) -> list[RationalPoint]:
    """S-integral points z = +-prod l^e_l with |e_l| <= B, sorted by height.

    Only points inside the exponent box are found; completeness beyond B is
    not claimed.
    """
    S = _check_S(S)
    if B < 1:
        raise ValueError("exponent bound must be at least 1")
    found = set()
    for exps in itertools.product(range(-B, B + 1), repeat=len(S)):
        num = den = 1
        for l, e in zip(S, exps):
            if e > 0:
                num *= l**e
            elif e < 0:
                den *= l**-e
        for sign in (1, -1):
            a = sign * num
            if a != den and _is_smooth(den - a, S):
                found.add(RationalPoint(a, den))
    return sorted(found, key=RationalPoint.sort_key)


@dataclass(frozen=True)
class KummerVector:
    """(x_l, y_l) = (v_l(z), -v_l(1 - z)) for each l in S."""

    S: tuple[int, ...]
    x: tuple[int, ...]
    y: tuple[int, ...]

    def __getitem__(self, l: int) -> tuple[int, int]:
        i = self.S.index(l)
        return self.x[i], self.y[i]

    def regions(self, l: int) -> set[Cusp]:
        """The linear conditions R_0, R_1, R_oo containing (x_l, y_l)."""
        x, y = self[l]
        out = set()
        if y == 0:
            out.add(Cusp.ZERO)
        if x == 0:
            out.add(Cusp.ONE)
        if x + y == 0:
            out.add(Cusp.INF)
        return out

    def __str__(self):
        return " ".join(f"(x{l},y{l})=({x},{y})" for l, x, y in zip(self.S, self.x, self.y))


def kummer_coordinates(z, S: Iterable[int]) -> KummerVector:
    z = RationalPoint.of(z)
    S = _check_S(S)
    if not is_s_integral(z, S):
        raise NotSIntegralError(f"{z} is not {set(S) or '{}'}-integral")
    xs = tuple(_vl(z.a, l) - _vl(z.b, l) for l in S)
    # 1 - z = (b - a)/b
    ys = tuple(-(_vl(z.b - z.a, l) - _vl(z.b, l)) for l in S)
    return KummerVector(S, xs, ys)


def reduce_mod_ell(z, l: int) -> Cusp | int:
    """Reduction of (a : b) in P^1(F_l): a Cusp, or a residue in Y(F_l)."""
    z = RationalPoint.of(z)
    if z.b % l == 0:
        return Cusp.INF
    r = z.a * pow(z.b, -1, l) % l
    if r == 0:
        return Cusp.ZERO
    if r == 1:
        return Cusp.ONE
    return r


def refinement_membership(z, sigma: RefinementCondition, S: Iterable[int]) -> bool:
    """Whether z reduces into Y(F_l) or onto the cusp sigma_l for every l in S."""
    z = RationalPoint.of(z)
    S = _check_S(S)
    if not isinstance(sigma, RefinementCondition):
        sigma = RefinementCondition(tuple(sigma))
    if len(sigma) != len(S):
        raise ValueError(f"refinement condition {sigma} does not match S = {S}")
    if not is_s_integral(z, S):
        raise NotSIntegralError(f"{z} is not {set(S) or '{}'}-integral")
    for l, c in zip(S, sigma):
        r = reduce_mod_ell(z, l)
        if isinstance(r, Cusp) and r is not c:
            return False
    return True


def compatible_conditions(z, S: Iterable[int]) -> list[RefinementCondition]:
    S = _check_S(S)
    return [s for s in RefinementCondition.all(len(S)) if refinement_membership(z, s, S)]

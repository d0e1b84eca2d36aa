"""The S_3 of Moebius automorphisms of P^1 minus {0, 1, oo}."""

from __future__ import annotations

import enum
from fractions import Fraction

from .padic import PAdic
from .points import RationalPoint
from .selmer import Cusp, RefinementCondition


class PoleError(ZeroDivisionError):
    pass


class Moebius(enum.Enum):
    """Each member carries the matrix (a, b, c, d) of z -> (az + b)/(cz + d)."""

    ID = (1, 0, 0, 1)             # z
    INV = (0, 1, 1, 0)            # 1/z
    ONEMINUS = (-1, 1, 0, 1)      # 1 - z
    INVONEMINUS = (0, 1, -1, 1)   # 1/(1 - z)
    RATIO1 = (1, -1, 1, 0)        # (z - 1)/z
    RATIO2 = (1, 0, 1, -1)        # z/(z - 1)

    @property
    def label(self) -> str:
        return self.name.lower()

    def cusp_image(self, c: Cusp) -> Cusp:
        a, b, cc, d = self.value
        if c is Cusp.INF:
            num, den = a, cc
        else:
            num, den = a * int(c) + b, cc * int(c) + d
        if den == 0:
            return Cusp.INF
        q = Fraction(num, den)
        assert q.denominator == 1 and q in (0, 1), q
        return Cusp(int(q))

    @property
    def cusp_permutation(self) -> dict[Cusp, Cusp]:
        return {c: self.cusp_image(c) for c in Cusp}

    def __matmul__(self, other: Moebius) -> Moebius:
        """Composition: (self @ other)(z) = self(other(z))."""
        a, b, c, d = self.value
        e, f, g, h = other.value
        m = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        for el in Moebius:
            if _projectively_equal(m, el.value):
                return el
        raise AssertionError(f"composition {m} left the group")

    @property
    def inverse(self) -> Moebius:
        for el in Moebius:
            if (self @ el) is Moebius.ID:
                return el
        raise AssertionError("no inverse")

    @classmethod
    def parse(cls, name: str) -> Moebius:
        return cls[name.upper()]


def _projectively_equal(m, n) -> bool:
    # rank-one test on the pair of 4-vectors
    return all(m[i] * n[j] == m[j] * n[i] for i in range(4) for j in range(4))


def apply_moebius(sigma: Moebius, z):
    """Apply sigma to a RationalPoint, Fraction, PAdic, or Cusp."""
    a, b, c, d = sigma.value
    if isinstance(z, Cusp):
        return sigma.cusp_image(z)
    if isinstance(z, PAdic):
        den = z * c + d if c else PAdic.from_int(d, z.p, max(z.prec, 1))
        if den.is_zero():
            raise PoleError(f"{sigma.label} has a pole at {z}")
        num = z * a + b if a else PAdic.from_int(b, z.p, max(z.prec, 1))
        return num / den
    point = isinstance(z, RationalPoint)
    q = z.value if point else Fraction(z)
    den = c * q + d
    if den == 0:
        raise PoleError(f"{sigma.label} has a pole at {q}")
    w = (a * q + b) / den
    return RationalPoint.of(w) if point else w


def act_on_refinement(sigma: Moebius, cond: RefinementCondition) -> RefinementCondition:
    return RefinementCondition(tuple(sigma.cusp_image(c) for c in cond))


def orbit(z) -> list[RationalPoint]:
    """The S_3-orbit of z, sorted by height."""
    z = RationalPoint.of(z)
    return sorted({apply_moebius(s, z) for s in Moebius}, key=RationalPoint.sort_key)

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kimloci.moebius import Moebius, PoleError, act_on_refinement, apply_moebius, orbit
from kimloci.padic import PAdic
from kimloci.points import RationalPoint, enumerate_integral_points, reduce_mod_ell, refinement_membership
from kimloci.selmer import Cusp, RefinementCondition

# the six maps written out directly, as an oracle independent of the matrices
FORMULAS = {
    Moebius.ID: lambda z: z,
    Moebius.INV: lambda z: 1 / z,
    Moebius.ONEMINUS: lambda z: 1 - z,
    Moebius.INVONEMINUS: lambda z: 1 / (1 - z),
    Moebius.RATIO1: lambda z: (z - 1) / z,
    Moebius.RATIO2: lambda z: z / (z - 1),
}

rationals = st.fractions(max_denominator=10**6).filter(lambda q: q not in (0, 1))


def test_apply_examples():
    assert apply_moebius(Moebius.ONEMINUS, RationalPoint(2)) == RationalPoint(-1)
    assert apply_moebius(Moebius.INV, RationalPoint(2)) == RationalPoint(1, 2)
    assert apply_moebius(Moebius.RATIO1, RationalPoint(-1)) == RationalPoint(2)
    with pytest.raises(PoleError):
        apply_moebius(Moebius.INV, Fraction(0))


def test_refinement_examples():
    one, zero = RefinementCondition.parse("1"), RefinementCondition.parse("0")
    assert act_on_refinement(Moebius.ID, one) == one
    assert act_on_refinement(Moebius.ONEMINUS, one) == zero
    assert act_on_refinement(Moebius.INV, zero) == RefinementCondition.parse("inf")


def test_orbit_examples():
    assert [str(z) for z in orbit(-1)] == ["-1", "1/2", "2"]
    assert {z.value for z in orbit(3)} == {3, Fraction(1, 3), -2, Fraction(-1, 2), Fraction(2, 3), Fraction(3, 2)}


def test_orbit_sizes():
    for a in range(-30, 31):
        for b in range(1, 13):
            q = Fraction(a, b)
            if q in (0, 1):
                continue
            size = len(orbit(q))
            assert 6 % size == 0
            assert (size == 3) == (q in (-1, 2, Fraction(1, 2)))


def test_cusp_permutations_are_s3():
    perms = {tuple(s.cusp_permutation[c] for c in Cusp) for s in Moebius}
    assert perms == set(itertools.permutations(Cusp))
    assert Moebius.INVONEMINUS.cusp_permutation == {Cusp.ZERO: Cusp.ONE, Cusp.ONE: Cusp.INF, Cusp.INF: Cusp.ZERO}


def test_group_table():
    for s, t in itertools.product(Moebius, repeat=2):
        st_ = s @ t
        for c in Cusp:
            assert st_.cusp_image(c) is s.cusp_image(t.cusp_image(c))
        assert (s @ s.inverse) is Moebius.ID


@settings(max_examples=1000)
@given(s=st.sampled_from(list(Moebius)), t=st.sampled_from(list(Moebius)), z=rationals)
def test_group_law_on_points(s, t, z):
    lhs = apply_moebius(s @ t, z)
    rhs = apply_moebius(s, apply_moebius(t, z))
    assert lhs == rhs == FORMULAS[s](FORMULAS[t](z))


@settings(max_examples=1000)
@given(s=st.sampled_from(list(Moebius)), z=rationals, p=st.sampled_from([3, 5, 7, 13, 101]))
def test_padic_application_matches_rationals(s, z, p):
    zp = PAdic.from_fraction(z, p, 10)
    try:
        w = FORMULAS[s](z)
    except ZeroDivisionError:
        return
    try:
        got = apply_moebius(s, zp)
    except PoleError:
        return
    if got.is_zero():
        assert w == 0 or (w.numerator % p**got.val == 0)
        return
    expected = PAdic.from_fraction(w, p, 10)
    n = min(got.absprec, expected.absprec)
    assert got.truncate(n) == expected.truncate(n)


def test_membership_equivariance_and_reduction_compatibility():
    checked = 0
    for S in ([2], [2, 3], [3, 5]):
        points = enumerate_integral_points(S, 4)
        for z in points:
            for s in Moebius:
                w = apply_moebius(s, z)
                for l in S:
                    r = reduce_mod_ell(z, l)
                    if isinstance(r, Cusp):
                        assert reduce_mod_ell(w, l) is s.cusp_image(r)
                for sigma in RefinementCondition.all(len(S)):
                    assert refinement_membership(w, act_on_refinement(s, sigma), S) == \
                        refinement_membership(z, sigma, S)
                    checked += 1
    assert checked >= 1000

from fractions import Fraction

import pytest

from kimloci.points import (
    NotSIntegralError,
    RationalPoint,
    compatible_conditions,
    enumerate_integral_points,
    is_s_integral,
    kummer_coordinates,
    reduce_mod_ell,
    refinement_membership,
)
from kimloci.selmer import Cusp, RefinementCondition


def brute_points(S, B):
    """z = +-prod l^e with 1 - z also an S-unit, by a plain double loop."""
    units = {Fraction(1)}
    for l in S:
        units = {u * Fraction(l) ** e for u in units for e in range(-B, B + 1)}
    units |= {-u for u in units}

    def smooth(n):
        n = abs(n)
        for l in S:
            while n and n % l == 0:
                n //= l
        return n == 1

    return {z for z in units if z != 1 and smooth((1 - z).numerator) and smooth((1 - z).denominator)}


def test_point_invariants():
    assert str(RationalPoint(2, 4)) == "1/2"
    assert RationalPoint(3, -6) == RationalPoint(-1, 2)
    for a, b in ((0, 1), (5, 5), (1, 0)):
        with pytest.raises(ValueError):
            RationalPoint(a, b)


def test_enumeration_examples():
    assert enumerate_integral_points([], 10) == []
    assert [str(z) for z in enumerate_integral_points([2], 4)] == ["-1", "1/2", "2"]
    pts = {z.value for z in enumerate_integral_points([2, 3], 6)}
    for q in (3, -2, 9, Fraction(1, 9), Fraction(3, 4), Fraction(4, 3), Fraction(-1, 2), Fraction(2, 3)):
        assert q in pts


@pytest.mark.parametrize("S,B", [([2], 6), ([3], 5), ([2, 3], 6), ([2, 5], 4), ([2, 3, 5], 3)])
def test_enumeration_matches_brute_force(S, B):
    assert {z.value for z in enumerate_integral_points(S, B)} == brute_points(S, B)


def test_enumeration_sorted_by_height():
    pts = enumerate_integral_points([2, 3], 4)
    keys = [z.sort_key() for z in pts]
    assert keys == sorted(keys)


def test_kummer_examples():
    assert kummer_coordinates(2, [2])[2] == (1, 0)
    assert kummer_coordinates(-1, [2])[2] == (0, -1)
    assert kummer_coordinates(Fraction(1, 2), [2])[2] == (-1, 1)
    assert kummer_coordinates(2, [2]).regions(2) == {Cusp.ZERO}
    assert kummer_coordinates(-1, [2]).regions(2) == {Cusp.ONE}
    assert kummer_coordinates(Fraction(1, 2), [2]).regions(2) == {Cusp.INF}
    with pytest.raises(NotSIntegralError):
        kummer_coordinates(3, [2])


def test_reduction_examples():
    assert reduce_mod_ell(-1, 2) is Cusp.ONE
    assert reduce_mod_ell(Fraction(1, 2), 2) is Cusp.INF
    assert reduce_mod_ell(3, 7) == 3
    assert reduce_mod_ell(9, 3) is Cusp.ZERO


def test_membership_examples():
    one = RefinementCondition.parse("1")
    assert refinement_membership(-1, one, [2])
    assert not refinement_membership(2, one, [2])
    assert refinement_membership(2, RefinementCondition.parse("0"), [2])
    assert refinement_membership(3, RefinementCondition.parse("1,0"), [2, 3])
    with pytest.raises(ValueError):
        refinement_membership(2, RefinementCondition.parse("0,0"), [2])


@pytest.mark.parametrize("S", [[2], [3], [2, 3], [2, 5], [2, 3, 5]])
def test_trichotomy_cusp_consistency_and_cover(S):
    for z in enumerate_integral_points(S, 4):
        assert is_s_integral(z, S)
        kv = kummer_coordinates(z, S)
        for l in S:
            x, y = kv[l]
            assert x * y * (x + y) == 0
            r = reduce_mod_ell(z, l)
            if r is Cusp.ZERO:
                assert y == 0 and x > 0
            elif r is Cusp.ONE:
                assert x == 0 and y < 0
            elif r is Cusp.INF:
                assert x + y == 0 and x < 0
            else:
                assert (x, y) == (0, 0)
        conds = compatible_conditions(z, S)
        assert conds
        for sigma in conds:
            for l, c in zip(sorted(S), sigma):
                assert c in kv.regions(l)

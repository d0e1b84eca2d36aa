from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import PRIMES
from kimloci.padic import (
    PAdic,
    PAdicDomainError,
    PrecisionError,
    PrecisionPolicy,
    certify_nonzero,
    exp_principal,
    iwasawa_log,
    padic_from_integer,
    padic_log,
    teichmuller,
    valuation,
)

N = 8


def mod_of(x: PAdic, n: int) -> int:
    """x mod p^n for a p-integral x known to at least n digits."""
    assert x.absprec >= n, (x, n)
    return x.residue() % x.p**n


def frac_mod(q: Fraction, p: int, n: int) -> int:
    assert q.denominator % p != 0
    return q.numerator * pow(q.denominator, -1, p**n) % p**n


def oracle_log(u: int, p: int, n: int) -> int:
    """Iwasawa log of the integer unit u, by an exact rational partial sum."""
    t = pow(u, p - 1) - 1
    vt = valuation(t, p)
    total = Fraction(0)
    k = 1
    # stop once every later term t^k/k has valuation >= n + 2
    while not (k * vt - (k.bit_length()) >= n + 2 and k > n):
        total += Fraction((-1) ** (k + 1) * t**k, k)
        k += 1
    return frac_mod(total / (p - 1), p, n)


def oracle_exp(t: int, p: int, n: int) -> int:
    total, term, k = Fraction(1), Fraction(1), 1
    while k <= 4 * n + 8:
        term = term * t / k
        total += term
        k += 1
    return frac_mod(total, p, n)


# -- examples -------------------------------------------------------------------


def test_from_integer_examples():
    z = padic_from_integer(0, 5, 3)
    assert z.is_zero() and z.absprec == 3
    x = padic_from_integer(45, 5, 3)
    assert (x.val, x.unit) == (1, 9)
    m = padic_from_integer(-1, 5, 3)
    assert (m.val, m.unit) == (0, 124)


def test_rendering():
    assert str(padic_from_integer(45, 5, 3)) == "9*5^1 + O(5^4)"
    assert str(PAdic.zero(5, 3)) == "O(5^3)"


def test_arith_examples():
    two, three = padic_from_integer(2, 5, 3), padic_from_integer(3, 5, 3)
    s = two + three
    assert (s.val, s.unit) == (1, 1)
    assert (two - two).is_zero()
    assert (padic_from_integer(6, 5, 3) ** 2).unit == 36


def test_inverse_examples():
    one = padic_from_integer(1, 5, 3)
    assert one.inverse() == one
    assert padic_from_integer(2, 5, 3).inverse().unit == 63
    inv5 = padic_from_integer(5, 5, 3).inverse()
    assert (inv5.val, inv5.unit) == (-1, 1)
    with pytest.raises(ZeroDivisionError):
        PAdic.zero(5, 3).inverse()


def test_teichmuller_examples():
    assert teichmuller(1, 7, 6).unit == 1
    assert teichmuller(4, 5, 3).unit == 124
    w = teichmuller(2, 5, 3)
    assert w.unit == 57
    assert pow(57, 2, 125) == 124 and pow(57, 4, 125) == 1


def test_log_examples():
    assert iwasawa_log(padic_from_integer(-1, 5, 4)).is_zero()
    assert iwasawa_log(teichmuller(2, 5, 3)).is_zero()
    assert mod_of(iwasawa_log(padic_from_integer(2, 3, 5)), 5) == 24
    with pytest.raises(PAdicDomainError):
        iwasawa_log(padic_from_integer(3, 3, 5))


def test_padic_log_branch_kills_p():
    assert padic_log(padic_from_integer(5, 5, 4)).is_zero()
    assert padic_log(padic_from_integer(10, 5, 4)) == iwasawa_log(padic_from_integer(2, 5, 4))


def test_exp_examples():
    assert mod_of(exp_principal(PAdic.zero(7, 4)), 4) == 1
    assert mod_of(exp_principal(padic_from_integer(5, 5, 3), 2), 2) == 6
    e3 = exp_principal(padic_from_integer(3, 3, 4))
    assert mod_of(e3, 4) == oracle_exp(3, 3, 4)
    assert mod_of(iwasawa_log(e3), 4) == 3
    with pytest.raises(PAdicDomainError):
        exp_principal(padic_from_integer(2, 5, 3))


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("u", [2, 3, 10, 1 + 5 * 7, 123456789])
def test_log_against_rational_series(p, u):
    if u % p == 0:
        pytest.skip("not a unit")
    assert mod_of(iwasawa_log(padic_from_integer(u, p, 6)), 6) == oracle_log(u, p, 6)


@pytest.mark.parametrize("p", PRIMES)
def test_exp_against_rational_series(p):
    for m in (1, 2, -4, 17):
        t = p * m
        assert mod_of(exp_principal(padic_from_integer(t, p, 6)), 6) == oracle_exp(t, p, 6)


def test_precision_policy_escalates():
    pol = PrecisionPolicy(8, 2, 64)
    assert list(pol.schedule()) == [8, 16, 32, 64]
    assert list(PrecisionPolicy(5, 3, 40).schedule()) == [5, 15, 40]
    with pytest.raises(ValueError):
        PrecisionPolicy(8, 1, 64)


def test_certify_nonzero():
    seen = []

    def compute(n):
        seen.append(n)
        return PAdic.zero(5, n) if n < 32 else padic_from_integer(1, 5, n)

    value, used = certify_nonzero(compute, PrecisionPolicy())
    assert used == 32 and seen == [8, 16, 32] and not value.is_zero()
    with pytest.raises(PrecisionError):
        certify_nonzero(lambda n: PAdic.zero(5, n), PrecisionPolicy(max_prec=16))


def test_precision_never_grows():
    x = PAdic.from_residue(7, 5, 3)
    y = padic_from_integer(1, 5, 20)
    assert (x * y).absprec <= 3 and (x + y).absprec <= 3


# -- properties -----------------------------------------------------------------


def padics(p):
    return st.builds(
        lambda m, v, n: PAdic.from_int(m * p**v, p, n),
        st.integers(-(10**12), 10**12).filter(lambda m: m % p != 0),
        st.integers(0, 5),
        st.integers(1, 12),
    )


def units(p):
    return st.integers(1, p**N - 1).filter(lambda u: u % p != 0)


@pytest.mark.parametrize("p", PRIMES)
@settings(max_examples=1000)
@given(data=st.data())
def test_ultrametric(p, data):
    x, y = data.draw(padics(p)), data.draw(padics(p))
    s = x + y
    if s.is_zero():
        assert s.val >= min(x.val, y.val)
        return
    assert s.val >= min(x.val, y.val)
    if x.val != y.val:
        assert s.val == min(x.val, y.val)


@pytest.mark.parametrize("p", PRIMES)
@settings(max_examples=1000)
@given(data=st.data())
def test_arithmetic_matches_integers(p, data):
    a = data.draw(st.integers(-(10**9), 10**9))
    b = data.draw(st.integers(-(10**9), 10**9))
    x, y = PAdic.from_int(a, p, N), PAdic.from_int(b, p, N)
    for got, exact in ((x + y, a + b), (x - y, a - b), (x * y, a * b)):
        if got.is_zero():
            assert exact % p**got.val == 0
        else:
            assert got.residue() == exact % p**got.absprec


@pytest.mark.parametrize("p", PRIMES)
@settings(max_examples=1000)
@given(data=st.data())
def test_log_homomorphism(p, data):
    u, w = data.draw(units(p)), data.draw(units(p))
    lu = iwasawa_log(PAdic.from_int(u, p, N))
    lw = iwasawa_log(PAdic.from_int(w, p, N))
    luw = iwasawa_log(PAdic.from_int(u * w, p, N))
    assert mod_of(luw, N) == (mod_of(lu, N) + mod_of(lw, N)) % p**N


@pytest.mark.parametrize("p", PRIMES + [10007])
@settings(max_examples=1000)
@given(data=st.data())
def test_teichmuller_fixed_point(p, data):
    a = data.draw(st.integers(1, p - 1))
    w = teichmuller(a, p, N)
    assert w.unit % p == a
    assert pow(w.unit, p - 1, p**N) == 1
    assert pow(w.unit, p, p**N) == w.unit
    assert iwasawa_log(w).is_zero()


@pytest.mark.parametrize("p", PRIMES)
def test_torsion_kernel_every_residue(p):
    for a in range(1, p):
        assert iwasawa_log(teichmuller(a, p, N)).is_zero()


@pytest.mark.parametrize("p", PRIMES)
@settings(max_examples=1000)
@given(data=st.data())
def test_log_exp_round_trip(p, data):
    m = data.draw(st.integers(-(10**9), 10**9).filter(lambda m: m != 0))
    t = PAdic.from_int(p * m, p, N)
    back = iwasawa_log(exp_principal(t))
    assert mod_of(back, t.absprec) == t.residue()


@pytest.mark.parametrize("p", PRIMES)
@settings(max_examples=1000)
@given(data=st.data())
def test_inverse_round_trip(p, data):
    x = data.draw(padics(p))
    prod = x * x.inverse()
    assert prod.val == 0 and prod.unit == 1
    assert x.inverse().val == -x.val

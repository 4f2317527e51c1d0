import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cg_asym.algebra import HalfInt, make_su2_context
from cg_asym.errors import ParityError
from cg_asym.stretched import (
    BigRationalSqrt,
    log_factorial,
    stretched_cg_asymptotic,
    stretched_cg_exact,
    stretched_cg_log,
    stretched_ratio,
)
from cg_asym.tridiag import exact_cg


def test_hand_values():
    assert stretched_cg_exact(1, 1, 0) == pytest.approx(math.sqrt(2 / 3), rel=1e-15)
    assert stretched_cg_exact(1, 1, 1) == pytest.approx(1 / math.sqrt(6), rel=1e-15)
    assert stretched_ratio(1, 1, 0).ratio == Fraction(2, 3)


def test_outside_support_is_zero():
    assert stretched_cg_exact(3, 2, 3) == 0.0
    assert stretched_cg_log(3, 2, -3) == 0.0


def test_parity_error():
    with pytest.raises(ParityError):
        stretched_cg_exact(1, "1/2", 0)


def test_big_rational_sqrt_is_correctly_rounded_enough():
    for num, den in [(2, 1), (1, 3), (10**40 + 7, 3), (5, 10**50)]:
        assert float(BigRationalSqrt(Fraction(num, den))) == pytest.approx(math.sqrt(num / den), rel=2e-16)
    with pytest.raises(ValueError):
        BigRationalSqrt(Fraction(-1, 2))


def test_log_factorial_against_lgamma():
    for k in (0, 1, 2, 10, 170, 5000, 30000):
        assert log_factorial(k) == pytest.approx(math.lgamma(k + 1), rel=1e-14, abs=1e-14)


def _spins_upto(total):
    for t1 in range(0, total + 1):
        for t2 in range(t1 % 2, total + 1 - t1, 2):
            yield HalfInt(t1), HalfInt(t2)


def test_exact_and_log_paths_agree():
    worst = 0.0
    for s1, s2 in _spins_upto(40):
        top = min(s1.twice, s2.twice)
        for tm in range(-top, top + 1, 2):
            m = HalfInt(tm)
            exact = float(stretched_ratio(s1, s2, m))
            worst = max(worst, abs(exact - stretched_cg_log(s1, s2, m)))
    assert worst <= 1e-10


@given(t1=st.integers(0, 90), t2=st.integers(0, 90), data=st.data())
def test_symmetries(t1, t2, data):
    t2 += (t1 + t2) % 2  # s1 + s2 integral
    top = min(t1, t2)
    m = HalfInt(data.draw(st.integers(-top, top).filter(lambda t: (t - t1) % 2 == 0)))
    s1, s2 = HalfInt(t1), HalfInt(t2)
    v = stretched_cg_exact(s1, s2, m)
    assert stretched_cg_exact(s2, s1, m) == v
    assert stretched_cg_exact(s1, s2, -m) == v


def test_matches_tridiagonal_oracle():
    for t1 in range(1, 31):
        for t2 in range(1, 31):
            if (t1 + t2) % 2:
                continue  # M = 0 needs s1 + s2 integral
            s1, s2 = HalfInt(t1), HalfInt(t2)
            table = exact_cg(make_su2_context(s1, s2, 0), 0)
            # table index m = m2, m1 = -m
            closed = np.array([stretched_cg_exact(s1, s2, HalfInt.of(float(m))) for m in table.grid])
            assert np.allclose(table.values, closed, atol=1e-10, rtol=0), (s1, s2)


def test_asymptotic_value_and_ratio_at_50():
    assert stretched_cg_asymptotic(50, 50, 0) == pytest.approx((2 / (math.pi * 50)) ** 0.25, rel=1e-15)
    assert stretched_cg_asymptotic(50, 50, 0) == pytest.approx(0.33591, abs=5e-6)
    assert 0.99 <= stretched_cg_exact(50, 50, 0) / stretched_cg_asymptotic(50, 50, 0) <= 1.01


def test_asymptotic_ratio_improves():
    gaps = [abs(stretched_cg_exact(s, s, 0) / stretched_cg_asymptotic(s, s, 0) - 1) for s in (10, 20, 40, 80)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_asymptotic_tail_decreases():
    values = [stretched_cg_asymptotic(12, "17/2", m) for m in np.arange(0, 40) + 0.5]
    assert all(b < a for a, b in zip(values, values[1:]))

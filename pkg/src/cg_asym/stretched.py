"""Closed-form stretched su(2) coefficients (s1, -m; s2, m | s1+s2, 0).

The exact value is the square root of a ratio of factorials.  Small spins go
through exact big-integer rationals; larger ones through a log-factorial sum.
The Gaussian large-spin limit is provided alongside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import HalfInt, HalfIntLike
from .errors import DomainError, ParityError

EXACT_PATH_LIMIT = 40  # largest s1 + s2 evaluated with big integers by default
_LGAMMA_ABOVE = 20000


@dataclass(frozen=True)
class BigRationalSqrt:
    """sqrt(ratio) with the ratio held exactly."""

    ratio: Fraction

    def __post_init__(self):
        if self.ratio < 0:
            raise ValueError("BigRationalSqrt needs a non-negative ratio")

    def __float__(self) -> float:
        # scale so the integer square root carries ~60 significant bits
        num, den = self.ratio.numerator, self.ratio.denominator
        if num == 0:
            return 0.0
        shift = max(0, 128 - (num.bit_length() - den.bit_length()))
        shift += shift % 2
        root = math.isqrt((num << shift) // den)
        return math.ldexp(root, -shift // 2)


@lru_cache(maxsize=None)
def log_factorial(k: int) -> float:
    """ln(k!) by compensated summation of ln j (lgamma for very large k)."""
    if k < 0:
        raise ValueError("negative factorial")
    if k > _LGAMMA_ABOVE:
        return math.lgamma(k + 1)
    return math.fsum(math.log(j) for j in range(2, k + 1))


def _integer_arguments(s1: HalfInt, s2: HalfInt, m: HalfInt):
    if s1.twice < 0 or s2.twice < 0:
        raise DomainError("spins must be non-negative")
    if not (s1 + m).is_integral or not (s2 + m).is_integral:
        raise ParityError(f"s1+m and s2+m must be integral (s1={s1}, s2={s2}, m={m})")
    t1, t2 = s1.twice, s2.twice
    total = int(s1 + s2)
    return t1, t2, total, int(s1 + m), int(s1 - m), int(s2 + m), int(s2 - m)


def stretched_ratio(s1: HalfIntLike, s2: HalfIntLike, m: HalfIntLike) -> BigRationalSqrt:
    s1, s2, m = HalfInt.of(s1), HalfInt.of(s2), HalfInt.of(m)
    t1, t2, total, a, b, c, d = _integer_arguments(s1, s2, m)
    if min(a, b, c, d) < 0:
        return BigRationalSqrt(Fraction(0))
    f = math.factorial
    num = f(t1) * f(t2) * f(total) * f(total)
    den = f(t1 + t2) * f(a) * f(b) * f(c) * f(d)
    return BigRationalSqrt(Fraction(num, den))


def stretched_cg_log(s1: HalfIntLike, s2: HalfIntLike, m: HalfIntLike) -> float:
    s1, s2, m = HalfInt.of(s1), HalfInt.of(s2), HalfInt.of(m)
    t1, t2, total, a, b, c, d = _integer_arguments(s1, s2, m)
    if min(a, b, c, d) < 0:
        return 0.0
    lf = log_factorial
    log_ratio = math.fsum(
        [lf(t1), lf(t2), 2.0 * lf(total), -lf(t1 + t2), -lf(a), -lf(b), -lf(c), -lf(d)]
    )
    return math.exp(0.5 * log_ratio)


def stretched_cg_exact(s1: HalfIntLike, s2: HalfIntLike, m: HalfIntLike) -> float:
    """(s1, -m; s2, m | s1+s2, 0); zero when |m| > min(s1, s2)."""
    s1, s2, m = HalfInt.of(s1), HalfInt.of(s2), HalfInt.of(m)
    if float(s1 + s2) <= EXACT_PATH_LIMIT:
        return float(stretched_ratio(s1, s2, m))
    return stretched_cg_log(s1, s2, m)


def stretched_cg_asymptotic(s1: HalfIntLike, s2: HalfIntLike, m: HalfIntLike) -> float:
    """Large-spin Gaussian limit of the stretched coefficient."""
    s1, s2, m = float(HalfInt.of(s1)), float(HalfInt.of(s2)), float(HalfInt.of(m))
    if s1 <= 0 or s2 <= 0:
        raise DomainError("asymptotic stretched coefficient needs s1, s2 > 0")
    width = (s1 + s2) / (s1 * s2)
    return (width / math.pi) ** 0.25 * math.exp(-0.5 * m * m * width)

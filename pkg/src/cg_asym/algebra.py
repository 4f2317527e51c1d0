"""Representation data and scalar kernels for su(2) and su(1,1) couplings.

Both groups lead to the same three-term recursion for the coupling
coefficients, viewed as functions of the grid variable m:

    T psi(m) = f0(m) psi(m) + f1(m) psi(m+1) + f1(m-1) psi(m-1)

For su(2) the grid variable is m = m2 with M = m1 + m2 fixed; for su(1,1) it
is m with n1 = N/2 - m and n2 = N/2 + m.  The radicand under f1 is in both
cases a product of four linear factors in x, which is how it is stored here so
that boundary zeros come out exact and analytic derivatives are cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import DomainError, ParityError, RangeError

# radicand factors in [-RADICAND_TOL, 0] are treated as roundoff zeros
RADICAND_TOL = 1e-9


@dataclass(frozen=True, order=True)
class HalfInt:
    """An integer or half-integer, stored as twice its value."""

    twice: int

    @classmethod
    def of(cls, value: "HalfIntLike") -> "HalfInt":
        """Coerce ints, floats, Fractions and strings like ``"7/2"``."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, (bool, np.bool_)):
            raise TypeError("bool is not a half-integer")
        if isinstance(value, (int, np.integer)):
            return cls(2 * int(value))
        frac = Fraction(value)
        doubled = 2 * frac
        if doubled.denominator != 1:
            raise ParityError(f"{value!r} is not an integer or half-integer")
        return cls(int(doubled))

    @property
    def is_integral(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2

    def __int__(self) -> int:
        if not self.is_integral:
            raise ParityError(f"{self} is not integral")
        return self.twice // 2

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other):
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __str__(self) -> str:
        if self.is_integral:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


HalfIntLike = Union[HalfInt, int, float, Fraction, str]


def _hmax(a: HalfInt, b: HalfInt) -> HalfInt:
    return a if a.twice >= b.twice else b


def _hmin(a: HalfInt, b: HalfInt) -> HalfInt:
    return a if a.twice <= b.twice else b


@dataclass(frozen=True)
class Radicand:
    """Kernel data shared by both groups.

    ``factors`` holds four (c, d) pairs for linear factors c + d*x; the first
    two multiply into the first radicand factor, the last two into the second.
    f1(x) = sign * sqrt(prod(c + d*x)).  ``f0`` holds the coefficients of the
    diagonal quadratic, lowest order first.
    """

    factors: tuple[tuple[float, float], ...]
    sign: float
    f0: tuple[float, float, float]


@dataclass(frozen=True)
class Su2Context:
    s1: HalfInt
    s2: HalfInt
    M: HalfInt
    sigma1: float = field(compare=False)
    sigma2: float = field(compare=False)
    m_min: HalfInt = field(compare=False)
    m_max: HalfInt = field(compare=False)
    dim: int = field(compare=False)

    group = "su2"

    @property
    def sigma1_sq(self) -> float:
        return _spin_casimir(self.s1)

    @property
    def sigma2_sq(self) -> float:
        return _spin_casimir(self.s2)

    @property
    def grid(self) -> np.ndarray:
        return float(self.m_min) + np.arange(self.dim, dtype=float)

    @property
    def lo(self) -> float:
        return float(self.m_min)

    @property
    def hi(self) -> float:
        return float(self.m_max)

    @property
    def label(self) -> str:
        return f"su2(s1={self.s1},s2={self.s2},M={self.M})"

    @property
    def F_window(self) -> tuple[float, float]:
        """Open interval on which F and its derivatives are real."""
        return self.lo, self.hi

    @property
    def radicand(self) -> Radicand:
        s1, s2, M = float(self.s1), float(self.s2), float(self.M)
        # sigma1^2 - m1(m1-1) = (s1 + m1)(s1 - m1 + 1) with m1 = M - x
        # sigma2^2 - x(x+1)   = (s2 - x)(s2 + x + 1)
        factors = (
            (s1 + M, -1.0),
            (s1 - M + 1.0, 1.0),
            (s2, -1.0),
            (s2 + 1.0, 1.0),
        )
        c0 = self.sigma1_sq + self.sigma2_sq - M * M + M
        return Radicand(factors, 1.0, (c0, 2.0 * M, -2.0))


@dataclass(frozen=True)
class Su11Context:
    k1: float
    k2: float
    N: int
    kappa1: float = field(compare=False)
    kappa2: float = field(compare=False)
    dim: int = field(compare=False)

    group = "su11"

    @property
    def grid(self) -> np.ndarray:
        return -self.N / 2 + np.arange(self.dim, dtype=float)

    @property
    def lo(self) -> float:
        return -self.N / 2

    @property
    def hi(self) -> float:
        return self.N / 2

    @property
    def label(self) -> str:
        return f"su11(k1={self.k1:g},k2={self.k2:g},N={self.N})"

    @property
    def F_window(self) -> tuple[float, float]:
        """Open interval on which F and its derivatives are real.

        For k < 1/2 the continuum radicand dips negative within 1 - 2k of
        the grid edge, even though it vanishes at the grid points.
        """
        return self.lo + max(0.0, 1.0 - 2.0 * self.k2), self.hi - max(0.0, 1.0 - 2.0 * self.k1)

    @property
    def radicand(self) -> Radicand:
        half_n = self.N / 2
        tk1 = 2 * self.k1 + half_n
        tk2 = 2 * self.k2 + half_n
        factors = (
            (tk1 - 1.0, -1.0),
            (half_n, -1.0),
            (tk2, 1.0),
            (half_n + 1.0, 1.0),
        )
        c0 = (tk1 + tk2 - 2.0) * half_n
        return Radicand(factors, -1.0, (c0, tk2 - tk1, 2.0))


Context = Union[Su2Context, Su11Context]


def _spin_casimir(s: HalfInt) -> float:
    # s(s+1) = t(t+2)/4 with t = 2s; exact in binary64 for any sane spin
    return s.twice * (s.twice + 2) / 4


def make_su2_context(s1: HalfIntLike, s2: HalfIntLike, M: HalfIntLike) -> Su2Context:
    s1, s2, M = HalfInt.of(s1), HalfInt.of(s2), HalfInt.of(M)
    if s1.twice < 0:
        raise DomainError(f"s1 must be non-negative, got {s1}")
    if s2.twice < 0:
        raise DomainError(f"s2 must be non-negative, got {s2}")
    if not (s1 + s2 + M).is_integral:
        raise ParityError(f"M={M} is incompatible with s1={s1}, s2={s2}: s1+s2+M must be integral")
    if abs(M.twice) > (s1 + s2).twice:
        raise DomainError(f"|M|={abs(M)} exceeds s1+s2={s1 + s2}")
    m_min = _hmax(-s2, M - s1)
    m_max = _hmin(s2, M + s1)
    dim = (m_max - m_min).twice // 2 + 1
    return Su2Context(
        s1=s1,
        s2=s2,
        M=M,
        sigma1=math.sqrt(_spin_casimir(s1)),
        sigma2=math.sqrt(_spin_casimir(s2)),
        m_min=m_min,
        m_max=m_max,
        dim=dim,
    )


def make_su11_context(k1: float, k2: float, N: int) -> Su11Context:
    k1, k2 = float(k1), float(k2)
    if not (math.isfinite(k1) and k1 > 0):
        raise DomainError(f"k1 must be positive, got {k1}")
    if not (math.isfinite(k2) and k2 > 0):
        raise DomainError(f"k2 must be positive, got {k2}")
    if int(N) != N or N < 0:
        raise DomainError(f"N must be a non-negative integer, got {N}")
    N = int(N)
    return Su11Context(
        k1=k1, k2=k2, N=N, kappa1=k1 + N / 4, kappa2=k2 + N / 4, dim=N + 1
    )


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

def _lin(factors, x):
    return [c + d * x for c, d in factors]


def _radicand_value(rad: Radicand, x):
    """Product of the two quadratic radicand factors, checked and clamped."""
    l1, l2, l3, l4 = _lin(rad.factors, x)
    first = l1 * l2
    second = l3 * l4
    bad = (np.asarray(first) < -RADICAND_TOL) | (np.asarray(second) < -RADICAND_TOL)
    if np.any(bad):
        raise DomainError(f"x={x} lies outside the physical window (negative radicand)")
    return np.maximum(first, 0.0) * np.maximum(second, 0.0)


def _f0(rad: Radicand, x):
    c0, c1, c2 = rad.f0
    return c0 + x * (c1 + c2 * x)


def _f1(rad: Radicand, x):
    return rad.sign * np.sqrt(_radicand_value(rad, x))


def su2_kernels(ctx: Su2Context, x):
    """Return (f0(x), f1(x)) for su(2); f1 is non-negative."""
    rad = ctx.radicand
    return _f0(rad, x), _f1(rad, x)


def su11_kernels(ctx: Su11Context, x):
    """Return (f0(x), f1(x)) for su(1,1) in the psi-phase; f1 is non-positive."""
    rad = ctx.radicand
    return _f0(rad, x), _f1(rad, x)


def kernels(ctx: Context, x):
    rad = ctx.radicand
    return _f0(rad, x), _f1(rad, x)


def _radicand_derivs(rad: Radicand, x: float) -> tuple[float, float, float]:
    lin = _lin(rad.factors, x)
    slopes = [d for _, d in rad.factors]
    P = lin[0] * lin[1] * lin[2] * lin[3]
    dP = 0.0
    d2P = 0.0
    for i in range(4):
        rest = 1.0
        for j in range(4):
            if j != i:
                rest *= lin[j]
        dP += slopes[i] * rest
        for j in range(4):
            if j == i:
                continue
            rest2 = 1.0
            for k in range(4):
                if k != i and k != j:
                    rest2 *= lin[k]
            d2P += slopes[i] * slopes[j] * rest2
    return P, dP, d2P


def _f1_derivs(rad: Radicand, x: float) -> tuple[float, float, float]:
    P, dP, d2P = _radicand_derivs(rad, x)
    if P <= 0.0:
        raise DomainError(f"x={x} is not strictly inside the grid window")
    root = math.sqrt(P)
    f1 = rad.sign * root
    df1 = rad.sign * dP / (2.0 * root)
    d2f1 = rad.sign * (2.0 * P * d2P - dP * dP) / (4.0 * P * root)
    return f1, df1, d2f1


def F_and_derivs(ctx: Context, x: float) -> tuple[float, float, float]:
    """F(x) = f0(x) + f1(x) + f1(x-1) and its first two derivatives.

    Derivatives are exact (product rule on the quartic radicand).  x must lie
    strictly inside (m_min, m_max).
    """
    x = float(x)
    lo, hi = ctx.F_window
    if not (lo < x < hi):
        raise DomainError(f"x={x} is not strictly inside ({lo}, {hi})")
    rad = ctx.radicand
    c0, c1, c2 = rad.f0
    a, da, d2a = _f1_derivs(rad, x)
    b, db, d2b = _f1_derivs(rad, x - 1.0)
    F = c0 + x * (c1 + c2 * x) + a + b
    dF = c1 + 2.0 * c2 * x + da + db
    d2F = 2.0 * c2 + d2a + d2b
    return F, dF, d2F


# ---------------------------------------------------------------------------
# eigenvalues
# ---------------------------------------------------------------------------

def admissible_n(ctx: Context) -> range:
    if isinstance(ctx, Su2Context):
        # S runs from s1+s2 down to max(|s1-s2|, |M|)
        s_top = ctx.s1 + ctx.s2
        s_low = _hmax(abs(ctx.s1 - ctx.s2), abs(ctx.M))
        return range((s_top - s_low).twice // 2 + 1)
    return range(ctx.N + 1)


def total_spin(ctx: Su2Context, n: int) -> HalfInt:
    return ctx.s1 + ctx.s2 - HalfInt.of(n)


def coupled_k(ctx: Su11Context, n: int) -> float:
    return ctx.N - n + ctx.k1 + ctx.k2


def target_eigenvalue(ctx: Context, n: int) -> float:
    """Eigenvalue of S+S- (or K+K-) carried by the n-th coupled state."""
    if int(n) != n or n not in admissible_n(ctx):
        raise RangeError(f"n={n} is not admissible for {ctx.label}")
    n = int(n)
    if isinstance(ctx, Su2Context):
        S = float(total_spin(ctx, n))
        M = float(ctx.M)
        return S * (S + 1.0) - M * (M - 1.0)
    K = coupled_k(ctx, n)
    return (2.0 * K + n - 1.0) * n

"""Shifted harmonic approximation (SHA) of the coupling coefficients.

The recursion operator is expanded to bilinear order about the centroid x0
where F'(x0) = 0, which turns it into a shifted harmonic oscillator with

    E = F(x0),  A = +-2 f1(x0),  B = -+F''(x0),  (hbar w)^2 = A B,  a^4 = B / A

(upper signs su(2), lower signs su(1,1)).  The simplified variant replaces
these by their leading large-spin / large-N closed forms.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import Context, Su2Context, F_and_derivs, kernels
from .errors import ContextMismatchError, DomainError, NegativeCurvatureError, NoBracketError
from .hermite import OscillatorShape, gaussian_mass_inside, normalized_hermite_function
from .tables import CoeffTable, phase_note_for

log = logging.getLogger(__name__)

X0_TOL = 1e-10


@dataclass(frozen=True)
class ShaParams:
    variant: str  # "full" or "simplified"
    group: str
    x0: float
    E: float
    A: float
    B: float
    C_residual: float
    a: float
    hbar_omega: float
    # simplified variant only: the linear coefficient before folding into x0
    C0: Optional[float] = None

    @property
    def shape(self) -> OscillatorShape:
        return OscillatorShape(self.a, self.x0)


def _assemble(ctx: Context, variant: str, x0: float, E: float, A: float, B: float,
              C: float, C0: Optional[float] = None) -> ShaParams:
    if not (A > 0 and B > 0):
        raise NegativeCurvatureError(
            f"{ctx.label}: SHA needs A>0 and B>0, got A={A:.6g}, B={B:.6g} at x0={x0:.6g}"
        )
    return ShaParams(
        variant=variant,
        group=ctx.group,
        x0=x0,
        E=E,
        A=A,
        B=B,
        C_residual=C,
        a=(B / A) ** 0.25,
        hbar_omega=math.sqrt(A * B),
        C0=C0,
    )


# ---------------------------------------------------------------------------
# simplified closed forms
# ---------------------------------------------------------------------------

def simplified_components(ctx: Context) -> tuple[float, float, float]:
    """Leading-order (A0, C0, B0) of the SHA Hamiltonian.

    The centroid is x0 = C0/B0 for su(2) and x0 = -C0/B0 for su(1,1), which
    differ only because of how the linear term is written for each group.
    """
    if isinstance(ctx, Su2Context):
        s1, s2 = ctx.sigma1, ctx.sigma2
        M = float(ctx.M)
        ssum = s1 + s2
        bracket = ssum * ssum - M * M
        if s1 == 0 or s2 == 0 or bracket <= 0:
            raise DomainError(f"{ctx.label}: simplified su(2) parameters need sigma1, sigma2 > 0 "
                              f"and (sigma1+sigma2)^2 > M^2")
        A0 = 2.0 * s1 * s2 * bracket / (ssum * ssum)
        C0 = 2.0 * ssum * M / s1
        B0 = 2.0 * ssum * ssum / (s1 * s2)
        return A0, C0, B0
    if ctx.N == 0:
        raise DomainError(f"{ctx.label}: simplified su(1,1) parameters need N > 0")
    N = float(ctx.N)
    r = math.sqrt(ctx.kappa1 * ctx.kappa2)
    A0 = 2.0 * N * r
    C0 = (N + 4.0 * r) / (2.0 * r) * (ctx.kappa2 - ctx.kappa1)
    B0 = (N + 4.0 * r) ** 2 / (2.0 * N * r)
    return A0, C0, B0


def simplified_params(ctx: Context) -> ShaParams:
    A0, C0, B0 = simplified_components(ctx)
    if isinstance(ctx, Su2Context):
        ssum = ctx.sigma1 + ctx.sigma2
        x0 = ctx.sigma2 * float(ctx.M) / ssum
    else:
        r = math.sqrt(ctx.kappa1 * ctx.kappa2)
        x0 = ctx.N * (ctx.kappa1 - ctx.kappa2) / (ctx.N + 4.0 * r)
    E = math.nan
    lo_win, hi_win = ctx.F_window
    if lo_win < x0 < hi_win:
        E = F_and_derivs(ctx, x0)[0]
    return _assemble(ctx, "simplified", x0, E, A0, B0, 0.0, C0=C0)


# ---------------------------------------------------------------------------
# full SHA
# ---------------------------------------------------------------------------

def _dF(ctx: Context, x: float) -> float:
    return F_and_derivs(ctx, x)[1]


def _bracket(ctx: Context, start: float) -> tuple[float, float, float, float]:
    lo_win, hi_win = ctx.F_window
    inset = 1e-9 * (ctx.hi - ctx.lo)
    lo_lim, hi_lim = lo_win + inset, hi_win - inset
    if not lo_lim < hi_lim:
        raise NoBracketError(f"{ctx.label}: no interior region on which F is defined")
    start = min(max(start, lo_lim), hi_lim)
    step = 0.5
    while True:
        lo = max(start - step, lo_lim)
        hi = min(start + step, hi_lim)
        d_lo, d_hi = _dF(ctx, lo), _dF(ctx, hi)
        if d_lo == 0.0:
            return lo, lo, d_lo, d_lo
        if d_hi == 0.0:
            return hi, hi, d_hi, d_hi
        if (d_lo > 0) != (d_hi > 0):
            return lo, hi, d_lo, d_hi
        if lo == lo_lim and hi == hi_lim:
            raise NoBracketError(
                f"{ctx.label}: F' does not change sign on the interior; SHA is not applicable"
            )
        step *= 2.0


def find_centroid(ctx: Context, start: Optional[float] = None) -> float:
    """Root of F' inside (m_min, m_max): bisection safeguarded Newton."""
    if start is None:
        try:
            start = simplified_params(ctx).x0
        except DomainError:
            start = 0.5 * (ctx.lo + ctx.hi)
    lo_win, hi_win = ctx.F_window
    if lo_win < start < hi_win:
        if F_and_derivs(ctx, start)[1] == 0.0:
            return start
    lo, hi, d_lo, _ = _bracket(ctx, start)
    if lo == hi:
        return lo
    rising = d_lo < 0
    x = min(max(start, lo), hi)
    for _ in range(200):
        _, d, d2 = F_and_derivs(ctx, x)
        if d == 0.0:
            return x
        if (d < 0) == rising:
            lo = x
        else:
            hi = x
        step_ok = False
        if d2 != 0.0:
            x_new = x - d / d2
            step_ok = lo < x_new < hi
        if not step_ok:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) < X0_TOL or hi - lo < X0_TOL:
            return x_new
        x = x_new
    log.warning("%s: centroid search hit the iteration cap", ctx.label)
    return x


def solve_sha_full(ctx: Context) -> ShaParams:
    if ctx.dim < 3:
        raise DomainError(f"{ctx.label}: full SHA needs at least 3 grid points, have {ctx.dim}")
    x0 = find_centroid(ctx)
    E, C, d2F = F_and_derivs(ctx, x0)
    f1 = float(kernels(ctx, x0)[1])
    if isinstance(ctx, Su2Context):
        A, B = 2.0 * f1, -d2F
    else:
        A, B = -2.0 * f1, d2F
    return _assemble(ctx, "full", x0, E, A, B, C)


def sha_params(ctx: Context, variant: str) -> ShaParams:
    if variant == "full":
        return solve_sha_full(ctx)
    if variant == "simplified":
        return simplified_params(ctx)
    raise ValueError(f"unknown SHA variant {variant!r}")


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def boundary_spill(ctx: Context, params: ShaParams) -> float:
    """Ground-state probability mass that falls outside [m_min, m_max]."""
    return max(0.0, 1.0 - gaussian_mass_inside(params.shape, ctx.lo, ctx.hi))


def approx_cg(ctx: Context, n: int, params: ShaParams, hermite_arg: str = "grid") -> CoeffTable:
    """Oscillator-function approximation of the n-th coefficient table.

    su(2) values carry the (-1)^n Condon-Shortley factor.  With
    ``hermite_arg="swapform"`` (su(2) only) the Hermite argument is
    a (sigma1 m2 - sigma2 m1) / (sigma1 + sigma2) while the Gaussian keeps
    a (m - x0); this form is manifestly odd under s1 m1 <-> s2 m2.
    su(1,1) values are stored in the psi-phase.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if params.group != ctx.group:
        raise ContextMismatchError(f"{params.group} parameters used with {ctx.label}")
    m = ctx.grid
    xi = params.a * (m - params.x0)
    if hermite_arg == "grid":
        values = math.sqrt(params.a) * normalized_hermite_function(n, xi)
    elif hermite_arg == "swapform":
        if not isinstance(ctx, Su2Context):
            raise ValueError("swapform Hermite argument is defined for su(2) only")
        s1, s2 = ctx.sigma1, ctx.sigma2
        m1 = float(ctx.M) - m
        xi_h = params.a * (s1 * m - s2 * m1) / (s1 + s2)
        values = math.sqrt(params.a) * normalized_hermite_function(n, xi_h, shift=xi)
    else:
        raise ValueError(f"unknown hermite_arg {hermite_arg!r}")
    values = np.atleast_1d(values)
    if isinstance(ctx, Su2Context) and n % 2:
        values = -values
    return CoeffTable(
        context=ctx,
        n=n,
        method="sha_" + params.variant,
        values=values,
        phase_note=phase_note_for(ctx),
        boundary_spill=boundary_spill(ctx, params),
    )

"""Exact coupling coefficients from the tridiagonal eigenproblem.

On the fixed-M (su(2)) or fixed-N (su(1,1)) subspace, S+S- or K+K- is a
symmetric tridiagonal matrix whose eigenvalues are known in closed form.  Each
coefficient table is the eigenvector at one of those eigenvalues, extracted by
shifted inverse iteration and then sign-fixed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import lapack

from .algebra import Context, Su2Context, kernels, target_eigenvalue
from .errors import ContextMismatchError, ConvergenceError, DomainError
from .hermite import OscillatorShape, oscillator_wf
from .tables import CoeffTable, phase_note_for

log = logging.getLogger(__name__)

MAX_ITER = 20
STOP_RESIDUAL = 1e-11
FAIL_RESIDUAL = 1e-9
SIGN_TIE = 1e-13
# edge components below this fraction of the max get their sign from _tail_sign
SIGN_ANCHOR = 1e-6


@dataclass(frozen=True)
class SymTridiag:
    diag: np.ndarray
    offdiag: np.ndarray
    grid: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.diag)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def norm_inf(self) -> float:
        row = np.abs(self.diag).copy()
        row[:-1] += np.abs(self.offdiag)
        row[1:] += np.abs(self.offdiag)
        return float(row.max())

    def residual(self, v: np.ndarray, lam: float) -> float:
        """||T v - lam v|| / ||T||_inf."""
        return float(np.linalg.norm(self.matvec(v) - lam * v)) / max(self.norm_inf(), 1e-300)


def build_matrix(ctx: Context) -> SymTridiag:
    m = ctx.grid
    f0, f1 = kernels(ctx, m)
    return SymTridiag(
        diag=np.asarray(f0, dtype=float),
        offdiag=np.asarray(f1[:-1], dtype=float),
        grid=m,
    )


def _solve_shifted(T: SymTridiag, shift: float, rhs: np.ndarray) -> np.ndarray:
    if T.dim == 1:
        return rhs / (T.diag - shift)
    dl = T.offdiag.copy()
    du = T.offdiag.copy()
    d = T.diag - shift
    _, _, _, x, info = lapack.dgtsv(dl, d, du, rhs.copy())
    if info != 0:
        raise ConvergenceError(f"shifted tridiagonal solve failed (info={info})")
    return x


def _start_vector(ctx: Context, n: int) -> np.ndarray:
    # local import: sha depends on tables, not on this module
    from .sha import simplified_params

    m = ctx.grid
    try:
        params = simplified_params(ctx)
        v = np.atleast_1d(oscillator_wf(n, OscillatorShape(params.a, params.x0), m))
        if np.linalg.norm(v) > 1e-8:
            return v
        x0 = params.x0
    except (DomainError, ValueError):
        x0 = 0.5 * (ctx.lo + ctx.hi)
    v = np.zeros(ctx.dim)
    v[int(np.argmin(np.abs(m - x0)))] = 1.0
    return v


def _inverse_iteration(T: SymTridiag, lam: float, v: np.ndarray) -> tuple[np.ndarray, float]:
    # offset scaled by ||T|| so that lam = 0 (singlet, su(1,1) n = 0) is not an exact pole
    shift = lam + 1e-10 * max(abs(lam), T.norm_inf()) + 1e-300
    v = v / np.linalg.norm(v)
    res = np.inf
    polish = False
    for _ in range(MAX_ITER):
        w = _solve_shifted(T, shift, v)
        # rescale first: near-singular solves can produce entries near 1e300
        peak = np.max(np.abs(w))
        if not np.isfinite(peak) or peak == 0.0:
            break
        w = w / peak
        v = w / np.linalg.norm(w)
        res = T.residual(v, lam)
        if polish:
            break
        # one extra step once converged: the stop residual still leaves
        # ~res*||T||/gap of the neighbouring eigenvectors in v
        polish = res < STOP_RESIDUAL
    return v, res


def _tail_sign(T: SymTridiag, lam: float, v: np.ndarray, i: int) -> float:
    """Sign of v[-1] implied by v[i] and the last rows of T v = lam v.

    The ratios r_j = v[j] / v[j-1] follow from the backward continued fraction
    r_j = f1[j-1] / (lam - f0[j] - f1[j] r_{j+1}), which is the stable
    direction through a decaying tail.  Returns 0.0 if some ratio vanishes.
    """
    sign = float(np.sign(v[i]))
    r_next = 0.0
    for j in range(T.dim - 1, i, -1):
        denom = lam - T.diag[j]
        if j < T.dim - 1:
            denom -= T.offdiag[j] * r_next
        r = T.offdiag[j - 1] / denom if denom != 0.0 else 0.0
        if r == 0.0 or not np.isfinite(r):
            return 0.0
        sign *= float(np.sign(r))
        r_next = r
    return sign


def _fix_sign(ctx: Context, n: int, v: np.ndarray, T: SymTridiag | None = None,
              lam: float | None = None) -> np.ndarray:
    # su(2): Condon-Shortley puts sign (-1)^n on the m = m_max component;
    # su(1,1) psi-phase: positive right tail
    want = -1.0 if isinstance(ctx, Su2Context) and n % 2 else 1.0
    scale = np.max(np.abs(v))
    last = len(v) - 1
    if abs(v[last]) > SIGN_ANCHOR * scale or T is None:
        anchor = last
    else:
        # the edge value is too small to trust its sign; carry the sign out from
        # the outermost well-resolved component instead
        anchor = max(i for i in range(len(v)) if abs(v[i]) > SIGN_ANCHOR * scale)
        edge = _tail_sign(T, lam, v, anchor)
        if edge != 0.0:
            return v if edge == want else -v
    for i in range(anchor, -1, -1):
        if abs(v[i]) > SIGN_TIE * scale:
            return v if np.sign(v[i]) == want else -v
    return v


def exact_cg(ctx: Context, n: int) -> CoeffTable:
    """Exact coefficient table for the n-th coupled state.

    su(2): n = s1 + s2 - S, Condon-Shortley phase.  su(1,1): K = N - n + k1 + k2,
    values in the psi-phase (-1)^(N+m) * coefficient.
    """
    lam = target_eigenvalue(ctx, n)
    T = build_matrix(ctx)
    v, res = _inverse_iteration(T, lam, _start_vector(ctx, n))
    if not res < FAIL_RESIDUAL:
        # a start vector orthogonal to the target is the only realistic cause
        log.debug("%s n=%d: retrying inverse iteration with a dense start", ctx.label, n)
        dense = 1.0 + np.linspace(0.0, 1.0, T.dim) ** 2
        v, res = _inverse_iteration(T, lam, dense)
    if not res < FAIL_RESIDUAL:
        raise ConvergenceError(
            f"{ctx.label} n={n}: inverse iteration residual {res:.3g} after {MAX_ITER} iterations"
        )
    return CoeffTable(
        context=ctx,
        n=int(n),
        method="exact",
        values=_fix_sign(ctx, n, v, T, lam),
        phase_note=phase_note_for(ctx),
    )


def eigen_residual(table: CoeffTable) -> float:
    T = build_matrix(table.context)
    return T.residual(table.values, target_eigenvalue(table.context, table.n))


def gram_residual(tables: list[CoeffTable]) -> float:
    """max |<v_n, v_n'> - delta_nn'| over all pairs, self-pairs included."""
    if not tables:
        return 0.0
    ctx = tables[0].context
    for t in tables[1:]:
        if t.context != ctx:
            raise ContextMismatchError(f"tables from {ctx.label} and {t.context.label}")
    V = np.array([t.values for t in tables])
    ns = np.array([t.n for t in tables])
    target = (ns[:, None] == ns[None, :]).astype(float)
    return float(np.max(np.abs(V @ V.T - target)))

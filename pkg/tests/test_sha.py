import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cg_asym.algebra import F_and_derivs, HalfInt, make_su2_context, make_su11_context
from cg_asym.errors import ContextMismatchError, DomainError, NoBracketError
from cg_asym.sha import (
    _bracket,
    approx_cg,
    find_centroid,
    sha_params,
    simplified_components,
    simplified_params,
    solve_sha_full,
)
from cg_asym.tridiag import exact_cg


def max_err(ctx, n, variant):
    approx = approx_cg(ctx, n, sha_params(ctx, variant)).values
    return float(np.max(np.abs(approx - exact_cg(ctx, n).values)))


def test_simplified_su2_20_15():
    p = simplified_params(make_su2_context(20, 15, 0))
    assert p.x0 == 0.0
    assert p.a**2 == pytest.approx(0.113345, abs=1e-6)
    assert p.a**2 == pytest.approx((math.sqrt(420) + math.sqrt(240)) / math.sqrt(420 * 240), rel=1e-14)


def test_simplified_su11_k1_k1_20():
    p = simplified_params(make_su11_context(1, 1, 20))
    assert p.x0 == 0.0
    assert p.a**2 == pytest.approx(11 / 60, rel=1e-14)


@given(k=st.floats(0.1, 100), N=st.integers(1, 1000))
def test_simplified_su11_equal_k_is_centred(k, N):
    assert simplified_params(make_su11_context(k, k, N)).x0 == 0.0


def test_simplified_su2_general_formula():
    ctx = make_su2_context(12, "15/2", "-7/2")
    s1, s2, M = ctx.sigma1, ctx.sigma2, -3.5
    p = simplified_params(ctx)
    a4 = (s1 + s2) ** 4 / (s1**2 * s2**2 * ((s1 + s2) ** 2 - M**2))
    assert p.a**4 == pytest.approx(a4, rel=1e-13)
    assert p.x0 == pytest.approx(s2 * M / (s1 + s2), rel=1e-15)
    A0, C0, B0 = simplified_components(ctx)
    assert p.x0 == pytest.approx(C0 / B0, rel=1e-14)


def test_simplified_su11_general_formula():
    ctx = make_su11_context(3, 11, 40)
    A0, C0, B0 = simplified_components(ctx)
    r = math.sqrt(ctx.kappa1 * ctx.kappa2)
    p = simplified_params(ctx)
    assert p.a**2 == pytest.approx((40 + 4 * r) / (2 * 40 * r), rel=1e-14)
    assert p.x0 == pytest.approx(-C0 / B0, rel=1e-14)
    assert p.x0 == pytest.approx(40 * (ctx.kappa1 - ctx.kappa2) / (40 + 4 * r), rel=1e-15)


def test_simplified_domain_errors():
    with pytest.raises(DomainError):
        simplified_params(make_su11_context(1, 2, 0))
    with pytest.raises(DomainError):
        simplified_params(make_su2_context(0, 3, 0))


@pytest.mark.parametrize("s", [1, "3/2", 5, "21/2", 40])
def test_full_symmetric_centroid_is_zero(s):
    assert solve_sha_full(make_su2_context(s, s, 0)).x0 == 0.0


def test_full_vs_simplified_20_15():
    ctx = make_su2_context(20, 15, 0)
    full, simple = solve_sha_full(ctx), simplified_params(ctx)
    assert abs(full.x0 - simple.x0) < 0.5
    assert full.a == pytest.approx(simple.a, rel=0.05)
    assert full.E == pytest.approx(F_and_derivs(ctx, full.x0)[0])


@st.composite
def contexts(draw):
    if draw(st.booleans()):
        t1, t2 = draw(st.integers(4, 120)), draw(st.integers(4, 120))
        # keep |M| in the bulk, where the SHA is meant to apply
        bound = (min(t1, t2) // 2) * 2
        tM = draw(st.integers(-bound, bound).filter(lambda t: (t - t1 - t2) % 2 == 0))
        return make_su2_context(HalfInt(t1), HalfInt(t2), HalfInt(tM))
    k1, k2 = draw(st.floats(0.5, 30)), draw(st.floats(0.5, 30))
    return make_su11_context(k1, k2, draw(st.integers(6, 200)))


@settings(max_examples=60, deadline=None)
@given(ctx=contexts())
def test_sha_param_invariants(ctx):
    for p in (solve_sha_full(ctx), simplified_params(ctx)):
        assert p.group == ctx.group
        assert p.A > 0 and p.B > 0
        assert p.a**4 == pytest.approx(p.B / p.A, rel=1e-12)
        assert p.hbar_omega**2 == pytest.approx(p.A * p.B, rel=1e-12)
    full = solve_sha_full(ctx)
    assert ctx.lo < full.x0 < ctx.hi
    _, dF, d2F = F_and_derivs(ctx, full.x0)
    assert abs(dF) <= 1e-9 * max(1.0, abs(d2F))
    assert full.C_residual == dF


def test_su11_small_k_centroid_stays_in_window():
    ctx = make_su11_context(0.2, 0.3, 8)
    full = solve_sha_full(ctx)
    lo, hi = ctx.F_window
    assert lo < full.x0 < hi


def test_no_bracket_when_derivative_keeps_sign(monkeypatch):
    # F' runs from one infinite edge value to the opposite one, so valid
    # contexts always bracket; force the failure path with a stubbed F'
    import cg_asym.sha as sha

    monkeypatch.setattr(sha, "_dF", lambda ctx, x: 1.0)
    with pytest.raises(NoBracketError):
        sha.solve_sha_full(make_su11_context(1, 2, 10))


@settings(max_examples=40, deadline=None)
@given(k1=st.floats(0.01, 500), k2=st.floats(0.01, 500), N=st.integers(2, 300))
def test_su11_always_brackets(k1, k2, N):
    ctx = make_su11_context(k1, k2, N)
    lo, hi = ctx.F_window
    assert lo < find_centroid(ctx) < hi


def test_bracket_contains_root():
    ctx = make_su11_context(10, 17, 100)
    lo, hi, d_lo, d_hi = _bracket(ctx, simplified_params(ctx).x0)
    assert d_lo * d_hi < 0
    assert lo <= find_centroid(ctx) <= hi


def test_full_needs_three_points():
    with pytest.raises(DomainError):
        solve_sha_full(make_su2_context("1/2", "1/2", 0))


def test_prefactor_equal_spins_50():
    ctx = make_su2_context(50, 50, 0)
    value = approx_cg(ctx, 0, simplified_params(ctx)).at(0.0)
    assert value == pytest.approx(0.33508, abs=5e-6)
    # within ~0.3% of the large-spin value (2/(pi s))^(1/4), the gap being sigma vs s
    assert value / (2 / (math.pi * 50)) ** 0.25 == pytest.approx(1.0, abs=0.004)


def test_n1_node_at_centroid():
    ctx = make_su2_context(30, 30, 0)
    table = approx_cg(ctx, 1, simplified_params(ctx))
    assert table.at(0.0) == 0.0


def test_20_15_ground_state_error():
    assert max_err(make_su2_context(20, 15, 0), 0, "full") <= 0.01
    assert max_err(make_su2_context(20, 15, 0), 0, "simplified") <= 0.01


def test_su11_10_17_100_error():
    assert max_err(make_su11_context(10, 17, 100), 10, "full") <= 0.05


@settings(max_examples=20, deadline=None)
@given(p=st.tuples(st.integers(2, 80), st.integers(2, 80)), data=st.data())
def test_swapform_exchange_identity(p, data):
    t1, t2 = p
    tM = data.draw(st.integers(-min(t1, t2), min(t1, t2)).filter(lambda t: (t - t1 - t2) % 2 == 0))
    s1, s2, M = HalfInt(t1), HalfInt(t2), HalfInt(tM)
    ctx, swapped = make_su2_context(s1, s2, M), make_su2_context(s2, s1, M)
    n = data.draw(st.integers(0, 6))
    a = approx_cg(ctx, n, simplified_params(ctx), hermite_arg="swapform").values
    b = approx_cg(swapped, n, simplified_params(swapped), hermite_arg="swapform")
    b_at = np.array([b.at(m) for m in float(M) - ctx.grid])
    assert np.allclose(b_at, (-1) ** n * a, atol=1e-10, rtol=0)


def test_swapform_equals_grid_form_when_centred():
    # with x0 = sigma2 M/(sigma1+sigma2) the two Hermite arguments coincide
    ctx = make_su2_context(9, 4, 3)
    p = simplified_params(ctx)
    grid = approx_cg(ctx, 3, p).values
    swap = approx_cg(ctx, 3, p, hermite_arg="swapform").values
    assert np.allclose(grid, swap, atol=1e-12)


def test_swapform_rejects_su11():
    ctx = make_su11_context(1, 2, 10)
    with pytest.raises(ValueError):
        approx_cg(ctx, 0, simplified_params(ctx), hermite_arg="swapform")


def test_group_mismatch():
    with pytest.raises(ContextMismatchError):
        approx_cg(make_su2_context(5, 5, 0), 0, simplified_params(make_su11_context(1, 2, 10)))


@pytest.mark.parametrize(
    "ctx",
    [make_su2_context(20, 15, 0), make_su2_context(30, 25, 7), make_su11_context(10, 17, 100),
     make_su11_context(25, 30, 80)],
)
def test_norm_proxy(ctx):
    p = solve_sha_full(ctx)
    for n in range(6):
        values = approx_cg(ctx, n, p).values
        assert 0.98 <= np.sum(values**2) <= 1.02


def test_boundary_spill_reported():
    inside = approx_cg(make_su2_context(40, 40, 0), 0, simplified_params(make_su2_context(40, 40, 0)))
    assert inside.boundary_spill < 1e-12
    ctx = make_su11_context(0.5, 1.5, 10)
    edge = approx_cg(ctx, 0, solve_sha_full(ctx))
    assert edge.boundary_spill > 1e-6


@pytest.mark.parametrize("n", [0, 1, 5])
def test_su2_convergence(n):
    errs = [max_err(make_su2_context(20 * lam, 15 * lam, 0), n, "full") for lam in (1, 2, 4, 8)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    if n == 0:
        assert errs[-1] <= 1e-3


def test_su11_convergence():
    errs = [max_err(make_su11_context(1, 2, N), 0, "full") for N in (20, 40, 80, 160)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_full_approaches_simplified():
    gaps = []
    for lam in (1, 2, 4, 8):
        ctx = make_su2_context(20 * lam, 15 * lam, 0)
        full, simple = solve_sha_full(ctx), simplified_params(ctx)
        assert full.x0 == simple.x0 == 0.0
        gaps.append((0.0, abs(full.a / simple.a - 1)))
    for N in (20, 40, 80, 160):
        ctx = make_su11_context(1, 2, N)
        full, simple = solve_sha_full(ctx), simplified_params(ctx)
        gaps.append((abs(full.x0 - simple.x0), abs(full.a / simple.a - 1)))
    su2, su11 = gaps[:4], gaps[4:]
    assert all(b[1] < a[1] for a, b in zip(su2, su2[1:]))
    for i in range(2):
        assert all(b[i] < a[i] for a, b in zip(su11, su11[1:]))


def test_full_beats_simplified_off_centre():
    # with M/sigma held fixed the simplified width keeps an O(1) relative bias
    for lam in (1, 2, 4, 8):
        ctx = make_su2_context(20 * lam, 15 * lam, 6 * lam)
        assert max_err(ctx, 0, "full") < max_err(ctx, 0, "simplified")


def test_c0_closed_form_matches_slope():
    # C0 is (minus) the slope of F at the midpoint to leading order in N
    for N in (10**4, 10**6):
        ctx = make_su11_context(1, 4, N)
        _, C0, _ = simplified_components(ctx)
        dF0 = F_and_derivs(ctx, 0.0)[1]
        assert C0 == pytest.approx(dF0, rel=1e-3)
    # the closed form tends to 4 (k2 - k1); see test_acceptance for the stated 3 (k2 - k1)
    assert C0 / (4 - 1) == pytest.approx(4.0, rel=1e-4)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import hermite as nph
from scipy.special import eval_hermite

from cg_asym.hermite import (
    OscillatorShape,
    gaussian_mass_inside,
    hermite_poly,
    normalized_hermite_function,
    oscillator_wf,
)


def test_hermite_poly_small_cases():
    assert hermite_poly(0, 3.7) == 1.0
    assert hermite_poly(1, 0.5) == 1.0
    assert hermite_poly(2, 1.0) == 2.0
    assert hermite_poly(3, 2.0) == 8 * 8 - 12 * 2


@pytest.mark.parametrize("n", [0, 1, 4, 9, 20])
def test_hermite_poly_matches_scipy(n):
    xi = np.linspace(-4, 4, 41)
    assert np.allclose(hermite_poly(n, xi), eval_hermite(n, xi), rtol=1e-12, atol=1e-12)


def _reference_wf(n, a, x0, x):
    # textbook form with the explicit 2^n n! norm; fine for the small n used here
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    xi = a * (x - x0)
    norm = math.sqrt(a / (math.sqrt(math.pi) * 2.0**n * math.factorial(n)))
    return norm * nph.hermval(xi, coeffs) * np.exp(-0.5 * xi * xi)


@pytest.mark.parametrize("n", [0, 1, 2, 7, 15])
def test_oscillator_wf_matches_textbook_form(n):
    shape = OscillatorShape(0.37, -1.25)
    x = np.linspace(-20, 20, 201)
    assert np.allclose(oscillator_wf(n, shape, x), _reference_wf(n, 0.37, -1.25, x), atol=1e-13)


def test_ground_state_peak_and_node():
    assert oscillator_wf(0, OscillatorShape(1.0, 0.0), 0.0) == pytest.approx(math.pi**-0.25, abs=1e-15)
    assert math.pi**-0.25 == pytest.approx(0.751126, abs=1e-6)
    assert oscillator_wf(1, OscillatorShape(0.3, 2.5), 2.5) == 0.0


def test_ground_state_riemann_sum():
    x = np.arange(-800, 801) / 100
    phi = oscillator_wf(0, OscillatorShape(1.0, 0.0), x)
    assert np.sum(phi**2) * 0.01 == pytest.approx(1.0, abs=1e-6)


def _quadrature(shape):
    x = np.arange(-1200, 1201) * (0.01 / shape.a) + shape.x0
    return x, 0.01 / shape.a


@pytest.mark.parametrize("shape", [OscillatorShape(1.0, 0.0), OscillatorShape(0.21, 7.3)])
def test_normalization_and_orthogonality(shape):
    x, dx = _quadrature(shape)
    phis = np.array([oscillator_wf(n, shape, x) for n in range(21)])
    gram = np.trapezoid(phis[:, None, :] * phis[None, :, :], dx=dx, axis=-1)
    assert np.allclose(np.diag(gram), 1.0, atol=1e-6)
    off = gram[:11, :11] - np.diag(np.diag(gram[:11, :11]))
    assert np.max(np.abs(off)) <= 1e-6


@settings(max_examples=60)
@given(
    n=st.integers(0, 40),
    a=st.floats(0.05, 5),
    x0=st.floats(-50, 50),
    t=st.floats(0, 20),
)
def test_parity(n, a, x0, t):
    shape = OscillatorShape(a, x0)
    left = oscillator_wf(n, shape, x0 - t)
    right = oscillator_wf(n, shape, x0 + t)
    assert right == pytest.approx((-1) ** n * left, rel=1e-9, abs=1e-14)


def test_stable_to_high_order():
    xi = np.linspace(-30, 30, 2001)
    for n in (150, 200):
        h = normalized_hermite_function(n, xi)
        assert np.all(np.isfinite(h))
        assert np.max(np.abs(h)) < 1.0
    # the raw polynomial is the part that overflows
    with np.errstate(over="ignore", invalid="ignore"):
        assert not np.all(np.isfinite(hermite_poly(200, xi)))


def test_high_order_normalization():
    # Gauss-Hermite quadrature is exact for the polynomial part of h_n^2
    nodes, weights = nph.hermgauss(180)
    h = normalized_hermite_function(150, nodes)
    assert np.sum(weights * np.exp(nodes**2) * h * h) == pytest.approx(1.0, abs=1e-10)


def test_shift_moves_only_the_gaussian():
    xi = np.linspace(-3, 3, 13)
    shift = xi + 0.4
    direct = normalized_hermite_function(3, xi) * np.exp(0.5 * (xi**2 - shift**2))
    assert np.allclose(normalized_hermite_function(3, xi, shift=shift), direct, rtol=1e-14)


def test_shape_validation():
    with pytest.raises(ValueError):
        OscillatorShape(0.0, 1.0)
    with pytest.raises(ValueError):
        OscillatorShape(1.0, math.nan)
    with pytest.raises(ValueError):
        hermite_poly(-1, 0.0)


def test_gaussian_mass():
    shape = OscillatorShape(0.5, 1.0)
    assert gaussian_mass_inside(shape, -1e6, 1e6) == pytest.approx(1.0)
    assert gaussian_mass_inside(shape, 1.0, 1e6) == pytest.approx(0.5)
    x = np.linspace(-3, 5, 80001)
    phi2 = oscillator_wf(0, shape, x) ** 2
    assert gaussian_mass_inside(shape, -3, 5) == pytest.approx(np.trapezoid(phi2, x), abs=1e-8)

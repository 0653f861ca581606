import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial.legendre import leggauss
from scipy.special import gammaln
from sympy import S
from sympy.physics.quantum.cg import CG

from diracosc.specfun import (
    default_order,
    gauss_hermite_rule,
    hermite_function,
    hermite_function_derivative,
    hermite_function_table,
    hermite_h,
    laguerre_l,
    ln_gamma,
    radial_rule,
    spherical_harmonic,
    spinor_spherical_harmonic,
    twice_half_integer,
)


def test_hermite_h_low_orders():
    assert hermite_h(0, 0.7) == 1.0
    assert hermite_h(1, 0.5) == pytest.approx(1.0)


def test_hermite_h_degree5_polynomial():
    x = 1.2
    # H_5 = 32x^5 - 160x^3 + 120x
    assert hermite_h(5, x) == pytest.approx(32 * x**5 - 160 * x**3 + 120 * x, rel=1e-14)


def test_hermite_function_known_values():
    assert hermite_function(0, 0.0) == pytest.approx(math.pi ** -0.25, rel=1e-15)
    assert hermite_function(1, 0.0) == 0.0


@pytest.mark.parametrize("n,x", [(40, 2.0), (7, -1.3), (120, 5.0), (300, 0.4)])
def test_hermite_function_extended_precision(n, x):
    mpmath.mp.dps = 50
    ref = (mpmath.hermite(n, x) * mpmath.exp(-mpmath.mpf(x) ** 2 / 2)
           / mpmath.sqrt(2 ** n * mpmath.factorial(n) * mpmath.sqrt(mpmath.pi)))
    assert hermite_function(n, x) == pytest.approx(float(ref), rel=1e-11, abs=1e-300)


def test_hermite_function_large_degree_is_finite():
    x = np.linspace(-150, 150, 7)
    vals = hermite_function(5000, x)
    assert np.all(np.isfinite(vals))
    # far outside the classical region the function is tiny but not NaN
    assert abs(hermite_function(5000, 200.0)) < 1e-100


def test_hermite_function_table_matches_single():
    x = np.linspace(-4, 4, 9)
    table = hermite_function_table(12, x)
    for n in range(13):
        np.testing.assert_allclose(table[n], hermite_function(n, x), rtol=1e-13, atol=1e-300)


def test_hermite_function_derivative_finite_difference():
    x = np.linspace(-3, 3, 13)
    h = 1e-5
    for n in (0, 1, 6):
        fd = (hermite_function(n, x + h) - hermite_function(n, x - h)) / (2 * h)
        np.testing.assert_allclose(hermite_function_derivative(n, x), fd, atol=1e-8)


def test_hermite_orthonormality_up_to_60():
    rule = gauss_hermite_rule(140).unfolded()
    table = hermite_function_table(60, rule.nodes)
    gram = (table * rule.weights) @ table.T
    assert np.abs(gram - np.eye(61)).max() <= 1e-10


def test_gauss_hermite_two_point_and_gaussian_integral():
    rule = gauss_hermite_rule(2)
    np.testing.assert_allclose(rule.nodes, [-1 / math.sqrt(2), 1 / math.sqrt(2)], rtol=1e-15)
    assert gauss_hermite_rule(20).integrate(np.ones(20)) == pytest.approx(math.sqrt(math.pi), rel=1e-14)


@pytest.mark.parametrize("order", [1, 5, 20, 60, 140])
def test_gauss_hermite_moments(order):
    rule = gauss_hermite_rule(order)
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.all(rule.weights > 0)
    logw = np.log(rule.weights)
    x = np.abs(rule.nodes)
    for k in range(order):  # 2k <= 2 order - 1
        exact_log = math.lgamma(k + 0.5)
        with np.errstate(divide="ignore"):
            terms = np.exp(logw + 2 * k * np.log(x) - exact_log) if k else np.exp(logw - exact_log)
        assert terms.sum() == pytest.approx(1.0, rel=1e-12)


def test_rules_are_immutable():
    rule = gauss_hermite_rule(4)
    with pytest.raises(ValueError):
        rule.nodes[0] = 1.0
    with pytest.raises(ValueError):
        gauss_hermite_rule(0)
    with pytest.raises(ValueError):
        radial_rule(10, -1.0)


def test_unfolded_rule_integrates_plain_functions():
    rule = gauss_hermite_rule(60).unfolded()
    assert rule.integrate(1.0 / (1.0 + rule.nodes**2) ** 4) == pytest.approx(5 * math.pi / 16, rel=1e-4)
    assert not rule.weight_folded


def test_radial_rule_moments():
    rule = radial_rule(80, 0.7)
    for k in range(0, 30):
        exact = 0.5 * 0.7 ** (k + 1) * math.gamma((k + 1) / 2)
        got = rule.integrate(rule.nodes**k * np.exp(-(rule.nodes / 0.7) ** 2))
        assert got == pytest.approx(exact, rel=1e-10)


def test_laguerre_closed_forms():
    assert laguerre_l(0, 0.5, 3.1) == 1.0
    for alpha, x in [(0.5, 2.0), (2.5, 0.3)]:
        assert laguerre_l(1, alpha, x) == pytest.approx(1 + alpha - x, rel=1e-15)


def test_laguerre_series_oracle():
    n, alpha, x = 4, 1.5, 2.0
    series = sum((-1) ** k * mpmath.binomial(n + alpha, n - k) * x**k / mpmath.factorial(k)
                 for k in range(n + 1))
    assert laguerre_l(n, alpha, x) == pytest.approx(float(series), rel=1e-14)


@pytest.mark.parametrize("alpha", [0.5, 1.5, 2.5])
def test_laguerre_orthogonality(alpha):
    # x = y^2 turns x^alpha e^-x dx into an even polynomial times e^{-y^2} for half-integer alpha,
    # which Gauss-Hermite integrates exactly
    y, w = np.polynomial.hermite.hermgauss(80)
    x = y * y
    ww = w * np.abs(y) ** (2 * alpha + 1)
    vals = np.array([laguerre_l(n, alpha, x) for n in range(21)])
    gram = (vals * ww) @ vals.T
    norms = np.exp(gammaln(np.arange(21) + alpha + 1) - gammaln(np.arange(21) + 1))
    assert np.all(np.abs(gram - np.diag(norms)) <= 1e-8 * norms[:, None])


def test_spherical_harmonic_closed_forms():
    th, ph = 0.4, 1.3
    assert spherical_harmonic(0, 0, th, ph) == pytest.approx(1 / math.sqrt(4 * math.pi))
    assert spherical_harmonic(1, 0, th, ph) == pytest.approx(math.sqrt(3 / (4 * math.pi)) * math.cos(th))
    # Condon-Shortley: Y_11 = -sqrt(3/8pi) sin(theta) e^{i phi}
    assert spherical_harmonic(1, 1, th, ph) == pytest.approx(
        -math.sqrt(3 / (8 * math.pi)) * math.sin(th) * np.exp(1j * ph))


def test_spherical_harmonic_vs_mpmath():
    for l, mz in [(3, 2), (5, -3), (8, 8), (6, 0)]:
        ref = complex(mpmath.spherharm(l, mz, 0.9, 1.1))
        assert spherical_harmonic(l, mz, 0.9, 1.1) == pytest.approx(ref, rel=1e-12, abs=1e-14)


def test_spherical_harmonic_addition_theorem():
    rng = np.random.default_rng(3)
    th = rng.uniform(0, np.pi, 20)
    ph = rng.uniform(0, 2 * np.pi, 20)
    for l in range(9):
        total = sum(np.abs(spherical_harmonic(l, mz, th, ph)) ** 2 for mz in range(-l, l + 1))
        np.testing.assert_allclose(total, (2 * l + 1) / (4 * np.pi), rtol=1e-10)


def _cg_spinor(kappa, g, th, ph):
    j = S(2 * abs(kappa) - 1) / 2
    l = -kappa - 1 if kappa < 0 else kappa
    twice_g = int(round(2 * g))
    mg = S(twice_g) / 2
    out = np.zeros(2, dtype=complex)
    for slot, ms in enumerate((S(1) / 2, -S(1) / 2)):
        ml = mg - ms
        if abs(ml) <= l:
            c = float(CG(l, ml, S(1) / 2, ms, j, mg).doit())
            out[slot] = c * spherical_harmonic(l, int(ml), th, ph)
    return out


def test_spinor_harmonic_lowest():
    th, ph = 0.8, 2.1
    y = spinor_spherical_harmonic(-1, 0.5, th, ph)
    assert y[0] == pytest.approx(1 / math.sqrt(4 * math.pi))
    assert y[1] == 0


@pytest.mark.parametrize("kappa", [-3, -2, -1, 1, 2, 3])
def test_spinor_harmonic_matches_clebsch_gordan(kappa):
    th, ph = 1.1, -0.4
    for two_g in range(-(2 * abs(kappa) - 1), 2 * abs(kappa), 2):
        got = spinor_spherical_harmonic(kappa, two_g / 2, th, ph)
        np.testing.assert_allclose(got, _cg_spinor(kappa, two_g / 2, th, ph), atol=1e-14)


def test_spinor_harmonic_orthonormality():
    ct, wt = leggauss(24)
    th = np.arccos(ct)
    ph = 2 * np.pi * np.arange(24) / 24
    TH, PH = np.meshgrid(th, ph, indexing="ij")
    w = np.outer(wt, np.full(24, 2 * np.pi / 24))
    labels = [(k, tg / 2) for k in (-3, -2, -1, 1, 2, 3)
              for tg in range(-(2 * abs(k) - 1), 2 * abs(k), 2)]
    ys = np.array([spinor_spherical_harmonic(k, g, TH, PH) for k, g in labels])
    gram = np.einsum("aijc,ij,bijc->ab", np.conj(ys), w, ys)
    assert np.abs(gram - np.eye(len(labels))).max() <= 1e-8


def test_spinor_harmonic_rejects_bad_labels():
    with pytest.raises(ValueError):
        spinor_spherical_harmonic(0, 0.5, 0.1, 0.1)
    with pytest.raises(ValueError):
        spinor_spherical_harmonic(-1, 1.5, 0.1, 0.1)
    with pytest.raises(ValueError):
        twice_half_integer(1.0)


def test_ln_gamma_product_form():
    exact = 4.5 * 3.5 * 2.5 * 1.5 * 0.5 * math.sqrt(math.pi)
    assert ln_gamma(5.5) == pytest.approx(math.log(exact), rel=1e-14)
    with pytest.raises(ValueError):
        ln_gamma(0.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.01, max_value=150.0))
def test_ln_gamma_against_mpmath(x):
    assert ln_gamma(x) == pytest.approx(float(mpmath.loggamma(x)), rel=1e-13, abs=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=80), st.floats(min_value=-12, max_value=12))
def test_hermite_recurrence_identity(n, x):
    # x h_n = sqrt(n/2) h_{n-1} + sqrt((n+1)/2) h_{n+1}
    lhs = x * hermite_function(n, x)
    rhs = math.sqrt((n + 1) / 2) * hermite_function(n + 1, x)
    if n:
        rhs += math.sqrt(n / 2) * hermite_function(n - 1, x)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-12)


def test_default_order():
    assert default_order(40) == 112

import math

import mpmath
import numpy as np
import pytest
from scipy.integrate import quad

from hriesz import kernel_bounds as kb
from hriesz.special_fn import gamma_ratio


def test_tanh_sinh_halfline_known_integrals():
    val, err, nodes = kb.tanh_sinh_halfline(lambda x: 1.0 / (1.0 + x * x))
    assert val == pytest.approx(math.pi / 2, rel=1e-13)
    assert err <= 1e-10 and nodes > 0
    val, _, _ = kb.tanh_sinh_halfline(lambda x: x ** -0.5 * np.exp(-x))
    assert val == pytest.approx(math.sqrt(math.pi), rel=1e-10)


def test_tanh_sinh_quadrant_known_integral():
    val, _, _ = kb.tanh_sinh_quadrant(lambda x, y: np.exp(-x - 2 * y))
    assert val == pytest.approx(0.5, rel=1e-12)


def test_sphere_area():
    assert kb.sphere_area(1) == pytest.approx(2 * math.pi)
    assert kb.sphere_area(2) == pytest.approx(2 * math.pi ** 2)
    assert kb.sphere_area(30) == pytest.approx(float(2 * mpmath.pi ** 30 / mpmath.gamma(30)), rel=1e-12)


def test_folland_c_positive_and_closed_form():
    for n in range(1, 21):
        c = kb.folland_c(n)
        assert c > 0
        assert c == pytest.approx(kb.folland_c_closed(n), rel=1e-9)
    with pytest.raises(ValueError):
        kb.folland_c(0)


def test_folland_c_n1_against_scipy():
    inner = lambda t: quad(lambda r: (1 + t * t + r ** 4) ** -2.5 * r ** 3, 0, np.inf, epsabs=1e-14)[0]  # noqa: E731
    val, _ = quad(inner, 0, np.inf, epsabs=1e-13)
    ref = 1.0 / (1 * 3 * 2 * math.pi * 2 * val)
    assert kb.folland_c(1) == pytest.approx(ref, rel=1e-9)
    assert kb.folland_c(1) == pytest.approx(1 / (2 * math.pi), rel=1e-12)


def test_folland_c_resolution_doubling():
    f = kb._folland_integrand(3)
    vals = []
    for level in (6, 7):
        x, w = kb._halfline_nodes(level)
        vals.append(float(w @ f(x[:, None], x[None, :]) @ w))
    assert abs(vals[1] / vals[0] - 1) < 1e-8


def test_folland_phi0_examples():
    n = 2
    c = kb.folland_c(n)
    assert kb.folland_phi0(n, 1.0, 0.0) == pytest.approx(c)
    assert kb.folland_phi0(1, 1.0, 1.0) == pytest.approx(kb.folland_c(1) * 2 ** -0.5)
    for s in (0.5, 2.0):
        assert kb.folland_phi0(n, s * 0.7, s * s * 1.3) == pytest.approx(s ** (-2 * n) * kb.folland_phi0(n, 0.7, 1.3), rel=1e-12)
    with pytest.raises(ValueError):
        kb.folland_phi0(n, 0.0, 0.0)


def test_kernel_K_properties():
    n = 2
    assert kb.kernel_K(n, 1.3, 0.0) == 0
    assert kb.kernel_K(n, 0.8, -0.6) == -kb.kernel_K(n, 0.8, 0.6)
    h = 1e-5
    fd = (kb.folland_phi0(n, 1.0, 1.0 + h) - kb.folland_phi0(n, 1.0, 1.0 - h)) / (2 * h)
    assert kb.kernel_K(n, 1.0, 1.0) == pytest.approx(fd, rel=1e-6)
    for s in (0.5, 2.0):
        scaled = kb.kernel_K(n, s * 0.9, s * s * 0.4)
        assert scaled == pytest.approx(s ** (-2 * n - 2) * kb.kernel_K(n, 0.9, 0.4), rel=1e-12)
    with pytest.raises(ValueError):
        kb.kernel_K(n, 0.0, 0.0)


def test_christ_bound_measured_values():
    vals = [kb.christ_bound(n) for n in range(1, 11)]
    assert all(v <= 1 for v in vals)
    assert all(b < a for a, b in zip(vals, vals[1:]))
    # measured: exactly half the gamma ratio
    for n, v in enumerate(vals, start=1):
        assert v == pytest.approx(0.5 * gamma_ratio(n), rel=1e-9)


def test_christ_bound_against_scipy_n2():
    n = 2
    num, _ = quad(lambda r: (1 + r ** 4) ** (-n / 2 - 1) * r ** (2 * n - 1), 0, np.inf, epsabs=1e-14)
    ref = n * kb.folland_c_closed(n) * 2 * math.pi ** 2 * num
    assert kb.christ_bound(n) == pytest.approx(ref, rel=1e-9)


def test_lemma34_factors():
    res = kb.lemma34_numeric(2)
    assert res.numerator.value == pytest.approx(0.25, abs=1e-8)
    assert res.factors["t_factor"][0] == pytest.approx(1.0, abs=1e-9)
    assert res.factors_agree
    assert not res.numerator.flagged and not res.denominator.flagged
    assert res.denominator.error <= 1e-8 * max(1, res.denominator.value)


def test_lemma34_ratio_matches_product_of_factors():
    for n in range(1, 21):
        res = kb.lemma34_numeric(n)
        assert res.ratio == pytest.approx(res.closed_ratio, rel=1e-9)
        ref = float(mpmath.gamma(mpmath.mpf(n) / 2)
                    / (2 * mpmath.sqrt(mpmath.pi) * mpmath.gamma(mpmath.mpf(n + 1) / 2)))
        assert res.ratio == pytest.approx(ref, rel=1e-9)


def _profile(s):
    return np.exp(-s * s) * (1 + s * s)


def test_hecke_zero_and_precondition():
    assert kb.hecke_radial_coeff(lambda s: 0 * s, 2, 1, 0, 2, 1.0) == 0
    with pytest.raises(ValueError):
        kb.hecke_radial_coeff(_profile, 0, 1, 0, 2, 1.0)
    with pytest.raises(ValueError):
        kb.hecke_radial_coeff(_profile, 2, 1, 0, 2, 0.0)


def test_hecke_against_scipy():
    k, p, q, n, lam = 3, 1, 1, 2, 1.7
    dim = n + p + q
    pre = math.gamma(k - p + 1) * math.gamma(n) / math.gamma(k + q + n) * 2 * math.pi ** dim / math.gamma(dim)
    lag = lambda x: float(mpmath.laguerre(k, dim - 1, x))  # noqa: E731
    val, _ = quad(lambda s: _profile(s) * lag(lam * s * s / 2) * math.exp(-lam * s * s / 4) * s ** (2 * dim - 1),
                  0, np.inf, epsabs=1e-14, limit=200)
    assert kb.hecke_radial_coeff(_profile, k, p, q, n, lam) == pytest.approx(pre * val, rel=1e-9)


@pytest.mark.parametrize("p,q", [(1, 0), (1, 1), (2, 1)])
def test_hecke_scaling_pairs(p, q):
    n, k, lam = 2, 3, 1.0
    deg = 2 * n + p + q
    base = kb.hecke_radial_coeff(_profile, k, p, q, n, lam)
    for r in (0.5, 2.0):
        scaled = kb.hecke_radial_coeff(lambda s: r ** deg * _profile(r * s), k, p, q, n, lam * r * r)
        assert scaled == pytest.approx(r ** (-p - q) * base, rel=1e-7)


def test_hecke_lambda_family():
    # R_k^lam(g^lam) = R_k^1(g^1) lam^{-(p+q)/2} with g^lam(s) = lam^{deg/2} g(sqrt(lam) s)
    n, k, p, q = 1, 2, 2, 0
    deg = 2 * n + p + q
    base = kb.hecke_radial_coeff(_profile, k, p, q, n, 1.0)
    for lam in (0.3, 5.0):
        r = math.sqrt(lam)
        val = kb.hecke_radial_coeff(lambda s: r ** deg * _profile(r * s), k, p, q, n, lam)
        assert val == pytest.approx(base * lam ** (-(p + q) / 2), rel=1e-7)


def test_hecke_scaling_exponent_fit():
    slope, vals = kb.hecke_scaling_exponent(_profile, 2, 1, 1, 1)
    assert slope == pytest.approx(-2, abs=1e-6)
    assert len(vals) == 5

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import eval_genlaguerre, roots_genlaguerre

from hriesz.special_fn import (
    QuadGrid,
    check_index,
    gamma_ratio,
    gauss_laguerre,
    hermite_fn,
    inner_mu,
    laguerre_fn,
    laguerre_poly,
    lgamma,
    psi,
    simplex,
    unit,
)


def test_multi_index_helpers():
    assert unit(3, 2) == (0, 1, 0)
    with pytest.raises(ValueError):
        unit(2, 3)
    with pytest.raises(ValueError):
        check_index((1, -1))
    with pytest.raises(ValueError):
        check_index(())
    keys = simplex(2, 2)
    assert keys == sorted(keys)
    assert len(keys) == 6 and all(sum(a) <= 2 for a in keys)


@pytest.mark.parametrize("x", [0.5, 1.0, 3.7, 10.5, 33.3, 120.0, 171.5])
def test_lgamma_matches_mpmath(x):
    ref = float(mpmath.loggamma(x))
    assert abs(lgamma(x) - ref) <= 1e-13 * max(1.0, abs(ref))


def test_lgamma_reflection_region():
    for x in (0.1, 0.25, 0.4):
        assert lgamma(x) == pytest.approx(float(mpmath.loggamma(x)), rel=1e-13)


def test_laguerre_poly_examples():
    assert laguerre_poly(0, 2.5, 7.0) == 1.0
    assert laguerre_poly(1, 2, 1) == pytest.approx(2.0, abs=1e-15)
    assert laguerre_poly(2, 1, 2) == pytest.approx(-1.0, abs=1e-14)
    with pytest.raises(ValueError):
        laguerre_poly(3, -1.0, 0.5)


def test_laguerre_poly_against_scipy():
    x = np.linspace(0, 50, 101)
    for k in (3, 10, 25):
        for nu in (0, 1.5, 4):
            ref = eval_genlaguerre(k, nu, x)
            got = laguerre_poly(k, nu, x)
            assert np.allclose(got, ref, rtol=1e-10, atol=1e-10 * np.abs(ref).max())


def test_laguerre_recurrence_consistency():
    x = np.linspace(0, 50, 201)
    nu = 2.0
    L = [laguerre_poly(k, nu, x) for k in range(12)]
    for k in range(1, 11):
        lhs = (k + 1) * L[k + 1]
        rhs = (2 * k + nu + 1 - x) * L[k] - (k + nu) * L[k - 1]
        scale = np.maximum(np.abs(lhs), 1.0)
        assert np.max(np.abs(lhs - rhs) / scale) <= 1e-12


def test_laguerre_fn_examples():
    assert laguerre_fn(0, 3.0, 2.0, 0.0) == 1.0
    assert laguerre_fn(0, 1, 1, 2) == pytest.approx(math.exp(-1), rel=1e-15)
    assert abs(laguerre_fn(1, 0, 1, math.sqrt(2))) <= 1e-15


def test_psi_examples():
    assert psi((0,), (0,), (0.0,)) == 1.0
    assert psi((0,), (1,), (0.0,)) == pytest.approx(2 ** -0.5, rel=1e-15)
    with pytest.raises(ValueError):
        psi((0, 1), (0,), (1.0, 1.0))


def test_psi_normalization_adaptive():
    # independent of the Gauss-Laguerre machinery: adaptive quadrature in r
    for a, m in [(0, 0), (3, 1), (6, 2)]:
        val, _ = quad(lambda r: psi((a,), (m,), (r,)) ** 2 * r ** (2 * m + 1), 0, 60,
                      limit=200, epsabs=1e-13, epsrel=1e-13)
        assert val == pytest.approx(1.0, abs=1e-9)


def test_hermite_fn_examples():
    assert hermite_fn(0, 1, 0) == pytest.approx(math.pi ** -0.25, rel=1e-15)
    assert hermite_fn(1, 1, 0) == 0.0
    x = np.linspace(-12, 12, 24001)
    assert np.trapezoid(hermite_fn(2, 1, x) ** 2, x) == pytest.approx(1.0, abs=1e-10)


def test_hermite_fn_against_closed_form():
    x = np.linspace(-4, 4, 33)
    lam = 1.7
    y = math.sqrt(lam) * x
    for k in range(6):
        Hk = np.array([float(mpmath.hermite(k, v)) for v in y])
        ref = (lam / math.pi) ** 0.25 / math.sqrt(2.0 ** k * math.factorial(k)) * Hk * np.exp(-y * y / 2)
        assert np.allclose(hermite_fn(k, lam, x), ref, atol=1e-13)


def test_hermite_orthonormality():
    x = np.linspace(-15, 15, 30001)
    H = np.array([hermite_fn(k, 0.5, x) for k in range(6)])
    G = np.trapezoid(H[:, None] * H[None], x, axis=-1)
    assert np.abs(G - np.eye(6)).max() <= 1e-10


def test_gauss_laguerre_single_point():
    g = gauss_laguerre(1, 0.0)
    assert isinstance(g, QuadGrid)
    assert g.nodes == pytest.approx([1.0], abs=1e-15)
    assert g.weights == pytest.approx([1.0], abs=1e-15)


def test_gauss_laguerre_third_moment():
    g = gauss_laguerre(32, 1.0)
    assert np.sum(g.weights * g.nodes ** 3) == pytest.approx(24.0, rel=1e-10)


@pytest.mark.parametrize("mu", [0, 1, 2.5, 6])
def test_gauss_laguerre_total_mass_and_order(mu):
    g = gauss_laguerre(20, mu)
    assert np.all(np.diff(g.nodes) > 0) and np.all(g.weights > 0)
    assert g.weights.sum() == pytest.approx(math.gamma(mu + 1), rel=1e-12)


@pytest.mark.parametrize("count,mu", [(8, 0), (16, 3), (32, 6), (64, 2)])
def test_gauss_laguerre_moment_exactness(count, mu):
    g = gauss_laguerre(count, mu)
    with mpmath.workdps(40):
        nodes = [mpmath.mpf(float(v)) for v in g.nodes]
        weights = [mpmath.mpf(float(v)) for v in g.weights]
        for d in range(0, 2 * count):
            got = mpmath.fsum(w * x ** d for w, x in zip(weights, nodes))
            ref = mpmath.gamma(mu + d + 1)
            assert abs(got / ref - 1) <= 1e-10, d


def test_gauss_laguerre_against_scipy_roots():
    x, w = roots_genlaguerre(24, 1.5)
    g = gauss_laguerre(24, 1.5)
    assert np.allclose(g.nodes, x, rtol=1e-12)
    assert np.allclose(g.weights, w, rtol=1e-9, atol=1e-300)


def test_gamma_ratio_examples():
    assert gamma_ratio(1) == 1.0
    assert gamma_ratio(2) == pytest.approx(2 / math.pi, rel=1e-14)
    # value confirmed with mpmath and the product recurrence
    assert gamma_ratio(100) == pytest.approx(0.07998817343, rel=1e-9)
    assert gamma_ratio(100) < math.sqrt(2 / (math.pi * 99)) * 1.01


def test_gamma_ratio_mpmath_and_recurrence():
    rec = {1: 1.0, 2: 2 / math.pi}
    for n in range(3, 201):
        rec[n] = rec[n - 2] * (n - 2) / (n - 1)
    for n in range(1, 201):
        ref = float(mpmath.gamma(mpmath.mpf(n) / 2) / (mpmath.sqrt(mpmath.pi) * mpmath.gamma(mpmath.mpf(n + 1) / 2)))
        assert gamma_ratio(n) == pytest.approx(ref, rel=1e-13)
        assert gamma_ratio(n) == pytest.approx(rec[n], rel=1e-12)


def test_gamma_ratio_decreasing_and_bounded():
    vals = [gamma_ratio(n) for n in range(1, 60)]
    assert all(v <= 1.0 for v in vals)
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_inner_mu_examples():
    m = (1, 0)
    grids = [gauss_laguerre(32, mj) for mj in m]
    p0 = lambda r: psi((0, 0), m, r)  # noqa: E731
    p1 = lambda r: psi((1, 2), m, r)  # noqa: E731
    zero = lambda r: np.zeros(len(r))  # noqa: E731
    assert inner_mu(p0, p0, m, grids) == pytest.approx(1.0, abs=1e-12)
    assert abs(inner_mu(p0, p1, m, grids)) <= 1e-9
    assert inner_mu(zero, zero, m, grids) == 0.0
    with pytest.raises(ValueError):
        inner_mu(p0, p0, (0, 0), grids)


def test_orthonormality_invariant():
    # n <= 3, m entries <= 3, |alpha| <= 6, 64 points per axis
    rng = np.random.default_rng(3)
    for n in (1, 2, 3):
        for _ in range(4):
            m = tuple(int(v) for v in rng.integers(0, 4, n))
            grids = [gauss_laguerre(64, mj) for mj in m]
            keys = simplex(n, 6)
            picks = [keys[i] for i in rng.choice(len(keys), size=min(6, len(keys)), replace=False)]
            for a in picks:
                for b in picks:
                    val = inner_mu(lambda r: psi(a, m, r), lambda r: psi(b, m, r), m, grids)
                    assert abs(val - (a == b)) <= 1e-9


@settings(max_examples=40, deadline=None)
@given(k=st.integers(0, 30), nu=st.floats(0, 8), x=st.floats(0, 60))
def test_laguerre_matches_mpmath_property(k, nu, x):
    ref = float(mpmath.laguerre(k, nu, x))
    got = laguerre_poly(k, nu, x)
    assert abs(got - ref) <= 1e-9 * max(1.0, abs(ref))

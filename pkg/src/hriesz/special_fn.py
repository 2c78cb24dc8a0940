"""Special functions: Laguerre/Hermite evaluation, multiple Laguerre basis,
generalized Gauss-Laguerre quadrature and log-Gamma.

Multi-indices are plain tuples of nonnegative ints.  Axes are 1-based in the
public API (``j = 1..n``) to match the usual operator notation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

__all__ = [
    "QuadratureError",
    "QuadGrid",
    "order",
    "unit",
    "check_index",
    "simplex",
    "lgamma",
    "log_factorial",
    "laguerre_poly",
    "laguerre_table",
    "laguerre_fn",
    "psi_axis_table",
    "psi",
    "hermite_fn",
    "gauss_laguerre",
    "gamma_ratio",
    "mu_rule",
    "inner_mu",
]

DEFAULT_QUAD = 64


class QuadratureError(RuntimeError):
    """Raised when a quadrature rule cannot be built or does not converge."""


# --------------------------------------------------------------------------
# multi-indices


def order(alpha) -> int:
    return int(sum(alpha))


def unit(n: int, j: int) -> tuple:
    """The unit multi-index e_j (1-based axis)."""
    if not 1 <= j <= n:
        raise ValueError(f"axis {j} outside 1..{n}")
    return tuple(1 if i == j - 1 else 0 for i in range(n))


def check_index(alpha, n: int | None = None) -> tuple:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) == 0 or any(a < 0 for a in alpha):
        raise ValueError(f"invalid multi-index {alpha}")
    if n is not None and len(alpha) != n:
        raise ValueError(f"multi-index {alpha} has length {len(alpha)}, expected {n}")
    return alpha


def simplex(n: int, K: int) -> list:
    """All multi-indices of length n with order <= K, in lexicographic order."""
    if n < 1 or K < 0:
        raise ValueError("need n >= 1 and K >= 0")
    return [a for a in itertools.product(range(K + 1), repeat=n) if sum(a) <= K]


# --------------------------------------------------------------------------
# log-Gamma (Lanczos, g = 7, 9 terms)

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def lgamma(x: float) -> float:
    """log Gamma(x) for x > 0 by the Lanczos approximation."""
    x = float(x)
    if x <= 0.0:
        raise ValueError("lgamma is only implemented for x > 0")
    if x < 0.5:
        # reflection keeps the series in its accurate range
        return math.log(math.pi / math.sin(math.pi * x)) - lgamma(1.0 - x)
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (x + 0.5) * math.log(t) - t + math.log(acc)


def log_factorial(k: int) -> float:
    return lgamma(k + 1.0)


def gamma_ratio(n: int) -> float:
    """pi^{-1/2} Gamma(n/2) / Gamma((n+1)/2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 1.0  # Gamma(1/2) = sqrt(pi)
    return math.exp(lgamma(n / 2.0) - lgamma((n + 1) / 2.0) - 0.5 * math.log(math.pi))


# --------------------------------------------------------------------------
# Laguerre


def _check_nu(nu: float) -> None:
    if nu <= -1:
        raise ValueError(f"Laguerre parameter must exceed -1, got {nu}")


def laguerre_table(kmax: int, nu: float, x) -> np.ndarray:
    """Rows L_0^nu(x) .. L_kmax^nu(x) by the forward three-term recurrence."""
    _check_nu(nu)
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = nu + 1.0 - x
    for k in range(1, kmax):
        out[k + 1] = ((2 * k + nu + 1.0 - x) * out[k] - (k + nu) * out[k - 1]) / (k + 1)
    return out


def laguerre_poly(k: int, nu: float, x):
    """Generalized Laguerre polynomial L_k^nu(x)."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    val = laguerre_table(k, nu, x)[k]
    return float(val) if val.ndim == 0 else val


def laguerre_fn(k: int, nu: float, lam: float, r):
    """Laguerre function L_k^nu(lam r^2/2) exp(-lam r^2/4)."""
    r = np.asarray(r, dtype=float)
    x = 0.5 * lam * r * r
    val = laguerre_table(k, nu, x)[k] * np.exp(-0.5 * x)
    return float(val) if val.ndim == 0 else val


def psi_axis_table(kmax: int, m: int, r) -> np.ndarray:
    """Normalized one-axis factors (2^-m k!/(k+m)!)^{1/2} phi_k^m(r), k = 0..kmax."""
    r = np.asarray(r, dtype=float)
    s = 0.5 * r * r
    tab = laguerre_table(kmax, m, s) * np.exp(-0.5 * s)
    k = np.arange(kmax + 1)
    lognorm = 0.5 * (-m * math.log(2.0) + np.array([log_factorial(i) - log_factorial(i + m) for i in k]))
    return tab * np.exp(lognorm).reshape((-1,) + (1,) * r.ndim)


def psi(alpha, m, r):
    """Multiple Laguerre function Psi_alpha^m at r (shape (n,) or (N, n))."""
    alpha = check_index(alpha)
    n = len(alpha)
    m = check_index(m, n)
    r = np.asarray(r, dtype=float)
    if r.shape[-1] != n:
        raise ValueError(f"point dimension {r.shape[-1]} does not match n = {n}")
    val = np.ones(r.shape[:-1])
    for j in range(n):
        val = val * psi_axis_table(alpha[j], m[j], r[..., j])[alpha[j]]
    return float(val) if val.ndim == 0 else val


# --------------------------------------------------------------------------
# Hermite


def hermite_fn(k: int, lam: float, x):
    """L2-normalized Hermite function of degree k, scaled by lam."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    x = np.asarray(x, dtype=float)
    y = math.sqrt(lam) * x
    h_prev = np.zeros_like(y)
    h = (lam / math.pi) ** 0.25 * np.exp(-0.5 * y * y)
    # normalized form of H_{k+1} = 2y H_k - 2k H_{k-1}
    for i in range(k):
        h_prev, h = h, math.sqrt(2.0 / (i + 1)) * y * h - math.sqrt(i / (i + 1)) * h_prev
    return float(h) if h.ndim == 0 else h


# --------------------------------------------------------------------------
# generalized Gauss-Laguerre quadrature


@dataclass(frozen=True)
class QuadGrid:
    """Gauss-Laguerre rule for the weight s^mu e^{-s} on (0, inf)."""

    mu: float
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def count(self) -> int:
        return len(self.nodes)


def gauss_laguerre(count: int = DEFAULT_QUAD, mu: float = 0.0) -> QuadGrid:
    """Golub-Welsch nodes; weights from the Christoffel function at each node.

    The eigenvector route loses relative accuracy on the tiny tail weights, so
    weights are recomputed as 1/sum_k p_k(x)^2 with orthonormal p_k, rescaled
    on the fly to avoid overflow.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if mu <= -1:
        raise ValueError("mu must exceed -1")
    k = np.arange(count)
    diag = 2.0 * k + mu + 1.0
    off = np.sqrt(k[1:] * (k[1:] + mu))
    try:
        nodes = eigh_tridiagonal(diag, off, eigvals_only=True)
    except LinAlgError as exc:
        raise QuadratureError(f"tridiagonal eigensolve failed: {exc}") from exc
    nodes = np.sort(nodes)
    if not np.all(np.isfinite(nodes)) or nodes[0] <= 0:
        raise QuadratureError("eigensolve returned invalid nodes")

    log_mass = math.lgamma(mu + 1.0)
    p_prev = np.zeros(count)
    p = np.full(count, math.exp(-0.5 * log_mass))
    total = p * p
    log_scale = np.zeros(count)
    for i in range(count - 1):
        p_next = ((nodes - diag[i]) * p - (off[i - 1] if i > 0 else 0.0) * p_prev) / off[i]
        p_prev, p = p, p_next
        total = total + p * p
        big = np.abs(p) > 1e100
        if np.any(big):
            p[big] *= 1e-100
            p_prev[big] *= 1e-100
            total[big] *= 1e-200
            log_scale[big] += 200.0 * math.log(10.0)
    weights = np.exp(-np.log(total) - log_scale)
    return QuadGrid(mu=float(mu), nodes=nodes, weights=weights)


def mu_rule(grids) -> tuple[np.ndarray, np.ndarray]:
    """Tensor rule for prod_j r_j^{2 mu_j + 1} dr_j on the positive orthant.

    With s = r^2/2 each axis becomes 2^mu s^mu ds, so the effective weight is
    2^mu w_i e^{s_i} at r_i = sqrt(2 s_i).  Returns points (N, n) and weights (N,).
    """
    axes_r = []
    axes_w = []
    for g in grids:
        axes_r.append(np.sqrt(2.0 * g.nodes))
        axes_w.append(np.exp(np.log(g.weights) + g.nodes + g.mu * math.log(2.0)))
    mesh = np.meshgrid(*axes_r, indexing="ij")
    pts = np.stack([a.ravel() for a in mesh], axis=-1)
    w = axes_w[0]
    for ax in axes_w[1:]:
        w = np.multiply.outer(w, ax)
    return pts, np.ravel(w)


def inner_mu(f, g, m, grids) -> float:
    """Integral of f*g against dmu_m by tensor Gauss-Laguerre quadrature.

    ``f`` and ``g`` map an (N, n) array of radii to N values.
    """
    m = check_index(m)
    if len(grids) != len(m):
        raise ValueError("need one grid per axis")
    for mj, grid in zip(m, grids):
        if abs(grid.mu - mj) > 1e-14:
            raise ValueError(f"grid exponent {grid.mu} does not match type {mj}")
    pts, w = mu_rule(grids)
    return float(np.sum(w * np.asarray(f(pts)) * np.asarray(g(pts))))

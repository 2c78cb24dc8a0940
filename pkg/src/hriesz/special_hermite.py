"""Special Hermite functions, twisted convolution and the Riesz transform
T_{zbar_j} on m-homogeneous functions.

Two independent routes meet in :func:`intertwine_defect`:

* ``t_zbar`` expands g(z) = z^m f(|z|) in special Hermite functions, with
  coefficients from per-axis Gauss-Legendre radial integrals in r;
* the Laguerre route expands f in Psi_alpha^m by Gauss-Laguerre quadrature in
  s = r^2/2 and applies R_{j,m} in coefficient space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .laguerre_riesz import LaguerreBasisSpec, analyze, riesz_factor, riesz_laguerre, synthesize
from .special_fn import DEFAULT_QUAD, check_index, laguerre_fn, laguerre_table, log_factorial, simplex

__all__ = [
    "BoundaryDecayError",
    "SeriesNonConvergence",
    "PlaneGridFn",
    "MHomogeneous",
    "phi_special",
    "coeff_reduce",
    "coeff_table",
    "t_zbar",
    "riesz_side",
    "intertwine_phase",
    "intertwine_defect",
    "sample_points",
    "twisted_conv",
    "project_k",
    "laguerre_plane",
    "kernel_Km",
]

DEFAULT_R = 8.0
DEFAULT_POINTS = 128
# size of the summed operand on the grid boundary, relative to its peak;
# operands below DECAY_FLOOR everywhere on the boundary always pass
DECAY_TOL = 1e-2
DECAY_FLOOR = 1e-9


class BoundaryDecayError(ValueError):
    """The twisted-convolution integrand has not decayed on the grid boundary."""


class SeriesNonConvergence(ArithmeticError):
    """A truncated series failed its tail test."""


# --------------------------------------------------------------------------
# special Hermite functions and m-homogeneous functions


def _phi_norm(alpha, m) -> float:
    """(alpha!/(alpha+m)!)^{1/2} 2^{-|m|/2}."""
    logs = sum(log_factorial(a) - log_factorial(a + b) for a, b in zip(alpha, m))
    return math.exp(0.5 * logs - 0.5 * sum(m) * math.log(2.0))


def phi_special(alpha, m, z):
    """Phi_{alpha, alpha+m}(z) for z of shape (n,) or (N, n) complex."""
    alpha = check_index(alpha)
    n = len(alpha)
    m = check_index(m, n)
    z = np.asarray(z, dtype=complex)
    if z.shape[-1] != n:
        raise ValueError("point dimension mismatch")
    val = (2 * math.pi) ** (-n / 2) * _phi_norm(alpha, m) * (-1j) ** sum(m)
    out = np.full(z.shape[:-1], val, dtype=complex)
    for i in range(n):
        out = out * z[..., i] ** m[i] * laguerre_fn(alpha[i], m[i], 1.0, np.abs(z[..., i]))
    return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class MHomogeneous:
    """g(z) = z^m f(|z_1|, ..., |z_n|) with a polyradial profile f on (N, n) radii."""

    m: tuple
    profile: object

    def __post_init__(self):
        object.__setattr__(self, "m", check_index(self.m))

    @property
    def n(self) -> int:
        return len(self.m)

    def __call__(self, z):
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        return np.prod(z ** np.array(self.m), axis=-1) * np.asarray(self.profile(np.abs(z)))


def _radial_rule(nodes: int, R: float):
    x, w = leggauss(nodes)
    return 0.5 * R * (x + 1.0), 0.5 * R * w


def coeff_table(g: MHomogeneous, K: int, nodes: int = 192, R: float = 24.0) -> dict:
    """(g, Phi_{alpha, alpha+m}) for every |alpha| <= K.

    Polar coordinates in each z_j reduce the inner product to
    (2 pi)^{n/2} i^{|m|} (alpha!/(alpha+m)!)^{1/2} 2^{-|m|/2}
        * int f(r) prod_j phi_{alpha_j}^{m_j}(r_j) r_j^{2 m_j + 1} dr,
    computed with tensor Gauss-Legendre on [0, R]^n.
    """
    n, m = g.n, g.m
    r, w = _radial_rule(nodes, R)
    mesh = np.meshgrid(*([r] * n), indexing="ij")
    pts = np.stack([a.ravel() for a in mesh], axis=-1)
    vals = np.asarray(g.profile(pts), dtype=float).reshape((nodes,) * n)
    for i in range(n):
        tab = laguerre_table(K, m[i], 0.5 * r * r) * np.exp(-0.25 * r * r)
        tab = tab * (w * r ** (2 * m[i] + 1))
        vals = np.tensordot(vals, tab, axes=([0], [1]))
    pre = (2 * math.pi) ** (n / 2) * 1j ** sum(m)
    return {a: pre * _phi_norm(a, m) * vals[a] for a in simplex(n, K)}


def coeff_reduce(g: MHomogeneous, alpha, nodes: int = 192, R: float = 24.0) -> complex:
    alpha = check_index(alpha, g.n)
    return coeff_table(g, sum(alpha), nodes, R)[alpha]


def _as_points(z, n):
    z = np.asarray(z, dtype=complex)
    single = z.ndim == 1
    z = np.atleast_2d(z)
    if z.shape[1] != n:
        raise ValueError("point dimension mismatch")
    return z, single


def t_zbar(j: int, g: MHomogeneous, z, K: int, coeffs: dict | None = None):
    """Truncated T_{zbar_j} g(z) = i sum (2a_j)^{1/2}(2|a|+n)^{-1/2} (g, Phi_{a,a+m}) Phi_{a-e_j, a+m}(z)."""
    n, m = g.n, g.m
    if not 1 <= j <= n:
        raise ValueError(f"axis {j} outside 1..{n}")
    pts, single = _as_points(z, n)
    if coeffs is None:
        coeffs = coeff_table(g, K)
    shifted = tuple(mi + (i == j - 1) for i, mi in enumerate(m))
    out = np.zeros(len(pts), dtype=complex)
    for a, c in coeffs.items():
        if a[j - 1] == 0 or sum(a) > K:
            continue
        b = a[: j - 1] + (a[j - 1] - 1,) + a[j:]
        # Phi_{b, a+m} = Phi_{b, b + (m + e_j)}
        out += riesz_factor(a, j) * c * phi_special(b, shifted, pts)
    out *= 1j
    return complex(out[0]) if single else out


def riesz_side(j: int, g: MHomogeneous, z, K: int, quad: int = DEFAULT_QUAD):
    """z^m (z_j/|z_j|) R_{j,m} f(|z|), through the Laguerre coefficient route."""
    pts, single = _as_points(z, g.n)
    if np.any(np.abs(pts[:, j - 1]) == 0):
        raise ValueError("sample with z_j = 0")
    coeffs = analyze(g.profile, LaguerreBasisSpec(g.m, K, quad))
    rf = synthesize(riesz_laguerre(j, coeffs), np.abs(pts))
    zj = pts[:, j - 1]
    out = np.prod(pts ** np.array(g.m), axis=-1) * (zj / np.abs(zj)) * rf
    return complex(out[0]) if single else out


def intertwine_phase(j: int, g: MHomogeneous, samples, K: int) -> complex:
    """Least-squares constant w with t_zbar ~ w * z^m (z_j/|z_j|) R_{j,m} f."""
    left = t_zbar(j, g, samples, K)
    right = riesz_side(j, g, samples, K)
    den = np.vdot(right, right)
    return complex(np.vdot(right, left) / den) if den != 0 else complex("nan")


def intertwine_defect(j: int, g: MHomogeneous, samples, K: int, phase: complex = 1.0,
                      relative: bool = True) -> float:
    """max |t_zbar - phase * z^m (z_j/|z_j|) R_{j,m} f| over the samples.

    With ``relative`` the maximum is divided by max |t_zbar| (unless that is
    zero).  ``phase = 1`` is the constant that the displayed special Hermite
    formulas produce; pass ``1j`` for the form with a leading factor i.
    """
    pts, _ = _as_points(samples, g.n)
    if np.any(np.abs(pts[:, j - 1]) == 0):
        raise ValueError("sample with z_j = 0")
    left = t_zbar(j, g, pts, K)
    right = riesz_side(j, g, pts, K)
    diff = float(np.abs(left - phase * right).max())
    scale = float(np.abs(left).max())
    if not relative or scale == 0:
        return diff
    return diff / scale


def sample_points(n: int, count: int, seed: int, rmin: float = 0.2, rmax: float = 3.0):
    """Seeded points in C^n with rmin <= |z_i| <= rmax on every axis (PCG64 generator)."""
    rng = np.random.default_rng(seed)
    rad = rng.uniform(rmin, rmax, size=(count, n))
    ang = rng.uniform(0.0, 2 * math.pi, size=(count, n))
    return rad * np.exp(1j * ang)


# --------------------------------------------------------------------------
# twisted convolution on a plane grid (n = 1)


@dataclass(frozen=True)
class PlaneGridFn:
    """Samples on the square grid x_i = -R + 2R i/N, i = 0..N-1 (both axes).

    ``values[a, b]`` is the sample at z = x_a + i x_b.
    """

    values: np.ndarray
    R: float = DEFAULT_R

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("grid must be square")
        if v.shape[0] < 32 or v.shape[0] % 2:
            raise ValueError("need an even number >= 32 of points per axis")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite samples")
        object.__setattr__(self, "values", v)

    @property
    def N(self) -> int:
        return self.values.shape[0]

    @property
    def h(self) -> float:
        return 2.0 * self.R / self.N

    @property
    def axis(self) -> np.ndarray:
        return -self.R + self.h * np.arange(self.N)

    def points(self) -> np.ndarray:
        x = self.axis
        return x[:, None] + 1j * x[None, :]

    @classmethod
    def sample(cls, fn, R: float = DEFAULT_R, N: int = DEFAULT_POINTS):
        """Sample a callable of complex z on the grid."""
        h = 2.0 * R / N
        x = -R + h * np.arange(N)
        return cls(fn(x[:, None] + 1j * x[None, :]), R)

    def sup(self) -> float:
        return float(np.abs(self.values).max())


def laguerre_plane(k: int):
    """The plane function phi_k^0(z) = L_k^0(|z|^2/2) e^{-|z|^2/4}."""
    return lambda z: laguerre_fn(k, 0, 1.0, np.abs(z)) + 0j


def _check_decay(F: PlaneGridFn, tol: float):
    v = np.abs(F.values)
    ring = max(v[0].max(), v[-1].max(), v[:, 0].max(), v[:, -1].max())
    peak = v.max()
    if ring > max(tol * peak, DECAY_FLOOR):
        raise BoundaryDecayError(f"boundary/peak ratio {ring / peak:.3g} exceeds {tol:g}")


def _difference_lattice(N, h):
    return h * np.arange(-(N - 1), N)


def _padded(F: PlaneGridFn) -> np.ndarray:
    """Grid samples placed on the (2N-1)^2 difference lattice, zero outside."""
    N = F.N
    D = np.zeros((2 * N - 1, 2 * N - 1), dtype=complex)
    # lattice index e sits at (e - N + 1) h; grid index i at (i - N/2) h
    off = N // 2 - 1
    D[off:off + N, off:off + N] = F.values
    return D


def _twisted_sum(D, S, x, sign, h):
    """out[a, b] = h^2 sum_{c,d} D[a-c, b-d] S[c, d] exp(sign i/2 (x_b x_c - x_a x_d)).

    Direct O(N^4) quadrature, looped over output rows.
    """
    N = len(x)
    idx = np.arange(N)[:, None] - np.arange(N)[None, :] + N - 1
    T = D[:, idx]  # T[e, b, d] = D[e, b - d]
    row_phase = np.exp(sign * 0.5j * np.outer(x, x))  # [c, b]: x_b u_c
    out = np.empty((N, N), dtype=complex)
    for a in range(N):
        block = T[a:a + N][::-1]  # block[c] = T[a - c + N - 1]
        Sp = S * np.exp(-sign * 0.5j * x[a] * x)[None, :]
        inner = np.matmul(block, Sp[:, :, None])[..., 0]  # [c, b]
        out[a] = np.sum(inner * row_phase, axis=0)
    return out * h * h


def twisted_conv(F, G, decay_tol: float = DECAY_TOL, R: float | None = None, N: int | None = None):
    """(F x G)(z) = int F(z - w) G(w) exp((i/2) Im(z wbar)) dw on the grid.

    Each argument is a :class:`PlaneGridFn` or a callable of complex z.  A
    callable is evaluated exactly where it is needed, so a kernel whose tails
    reach past the window is not truncated; sampled operands are zero off
    the grid.  When G is a callable the equivalent form
    int F(w) G(z - w) exp(-(i/2) Im(z wbar)) dw is used.
    """
    grid = next((a for a in (F, G) if isinstance(a, PlaneGridFn)), None)
    if grid is None:
        grid = PlaneGridFn.sample(F, R or DEFAULT_R, N or DEFAULT_POINTS)
        F = grid
    x, h = grid.axis, grid.h
    lattice = _difference_lattice(grid.N, h)
    L = lattice[:, None] + 1j * lattice[None, :]
    if callable(F) and not isinstance(F, PlaneGridFn):
        S = G if isinstance(G, PlaneGridFn) else PlaneGridFn.sample(G, grid.R, grid.N)
        _check_decay(S, decay_tol)
        vals = _twisted_sum(F(L), S.values, x, +1, h)
    elif callable(G) and not isinstance(G, PlaneGridFn):
        _check_decay(F, decay_tol)
        vals = _twisted_sum(G(L), F.values, x, -1, h)
    else:
        if F.values.shape != G.values.shape or F.R != G.R:
            raise ValueError("operands live on different grids")
        _check_decay(G, decay_tol)
        vals = _twisted_sum(_padded(F), G.values, x, +1, h)
    return PlaneGridFn(vals, grid.R)


def project_k(F: PlaneGridFn, k: int, decay_tol: float = DECAY_TOL) -> PlaneGridFn:
    """k-th special Hermite projection (2 pi)^{-1} F x phi_k^0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = twisted_conv(F, laguerre_plane(k), decay_tol)
    return PlaneGridFn(out.values / (2 * math.pi), F.R)


# --------------------------------------------------------------------------
# the kernel K_m


def kernel_Km(pdeg: int, qdeg: int, n: int, r: float, K: int,
              rtol: float = 1e-12, atol: float = 1e-14, check: bool = True) -> float:
    """Partial sum of K_m(r) = sum_k (2k + 2p + n)^{-m/2} phi_k^{n+p+q-1}(r), k < K, m = p + q.

    With ``check`` the last term must fall below rtol * |sum| or atol;
    otherwise :class:`SeriesNonConvergence` is raised.
    """
    m = pdeg + qdeg
    if pdeg < 0 or qdeg < 0 or m < 1:
        raise ValueError("need p, q >= 0 with p + q >= 1")
    if n < 1 or K < 1:
        raise ValueError("need n >= 1 and K >= 1")
    nu = n + m - 1
    s = 0.5 * r * r
    k = np.arange(K)
    terms = (2.0 * k + 2 * pdeg + n) ** (-m / 2.0) * laguerre_table(K - 1, nu, s) * math.exp(-0.5 * s)
    total = float(math.fsum(terms))
    last = abs(terms[-1])
    if check and not (last <= rtol * abs(total) or last <= atol):
        raise SeriesNonConvergence(
            f"K_m tail test failed at r={r}: last term {last:.3g}, partial sum {total:.3g}")
    return total

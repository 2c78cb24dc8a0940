"""Multiple Laguerre expansions of type m and the Laguerre Riesz transforms.

Coefficients live on the simplex |alpha| <= K.  A transform R_{j,m} maps
type-m coefficients to type-(m + e_j) coefficients; the extra factor r_j is
kept in the evaluation rule (``LagCoeffs.r_axis``) rather than folded into
the coefficients, so the coefficient map is a contraction between
orthonormal systems (r_j^2 dmu_m = dmu_{m+e_j}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .special_fn import (
    DEFAULT_QUAD,
    check_index,
    gauss_laguerre,
    mu_rule,
    psi_axis_table,
    simplex,
    unit,
)

__all__ = [
    "LaguerreBasisSpec",
    "LagCoeffs",
    "analyze",
    "synthesize",
    "riesz_laguerre",
    "riesz_factor",
    "gram",
    "weighted_probe",
]


@dataclass(frozen=True)
class LaguerreBasisSpec:
    m: tuple
    K: int
    quad: int = DEFAULT_QUAD

    def __post_init__(self):
        object.__setattr__(self, "m", check_index(self.m))
        if self.K < 0:
            raise ValueError("K must be nonnegative")
        if self.quad < 1:
            raise ValueError("quad must be positive")

    @property
    def n(self) -> int:
        return len(self.m)

    @cached_property
    def grids(self):
        return [gauss_laguerre(self.quad, mj) for mj in self.m]

    @cached_property
    def keys(self):
        return simplex(self.n, self.K)

    def shifted(self, j: int) -> "LaguerreBasisSpec":
        """Basis of type m + e_j with the same truncation."""
        e = unit(self.n, j)
        return LaguerreBasisSpec(tuple(a + b for a, b in zip(self.m, e)), self.K, self.quad)


@dataclass(frozen=True)
class LagCoeffs:
    spec: LaguerreBasisSpec
    data: dict = field(default_factory=dict)
    # 1-based axis whose radius multiplies the expansion, or None
    r_axis: int | None = None

    def __post_init__(self):
        for a in self.data:
            if len(a) != self.spec.n or sum(a) > self.spec.K:
                raise ValueError(f"coefficient index {a} outside the basis")
        object.__setattr__(self, "data", dict(sorted(self.data.items())))

    def norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.data.values()))

    def get(self, alpha) -> float:
        return self.data.get(tuple(alpha), 0.0)


def _axis_tables(spec: LaguerreBasisSpec, r: np.ndarray):
    """Per-axis normalized factor tables, each (K+1, N) for radii r of shape (N, n)."""
    return [psi_axis_table(spec.K, spec.m[i], r[:, i]) for i in range(spec.n)]


def analyze(f, spec: LaguerreBasisSpec) -> LagCoeffs:
    """Coefficients (f, Psi_alpha^m) in L^2(dmu_m), |alpha| <= K.

    f maps an (N, n) array of radii to N real values.  The tensor quadrature
    is contracted axis by axis.
    """
    pts, w = mu_rule(spec.grids)
    shape = (spec.quad,) * spec.n
    vals = (np.asarray(f(pts), dtype=float) * w).reshape(shape)
    for i, grid in enumerate(spec.grids):
        tab = psi_axis_table(spec.K, spec.m[i], np.sqrt(2.0 * grid.nodes))
        # contract the leading quadrature axis; the new degree axis goes last
        vals = np.tensordot(vals, tab, axes=([0], [1]))
    return LagCoeffs(spec, {a: float(vals[a]) for a in spec.keys})


def synthesize(c: LagCoeffs, r):
    """Evaluate sum_alpha c_alpha Psi_alpha^m(r), times r_j if the type carries one."""
    r = np.asarray(r, dtype=float)
    single = r.ndim == 1
    pts = np.atleast_2d(r)
    if pts.shape[1] != c.spec.n:
        raise ValueError("point dimension mismatch")
    tabs = _axis_tables(c.spec, pts)
    out = np.zeros(len(pts))
    for a, v in c.data.items():
        if v == 0:
            continue
        term = np.full(len(pts), v)
        for i, ai in enumerate(a):
            term = term * tabs[i][ai]
        out += term
    if c.r_axis is not None:
        out = out * pts[:, c.r_axis - 1]
    return float(out[0]) if single else out


def riesz_factor(alpha, j: int) -> float:
    """(2 alpha_j)^{1/2} (2|alpha| + n)^{-1/2}."""
    return math.sqrt(2 * alpha[j - 1] / (2 * sum(alpha) + len(alpha)))


def riesz_laguerre(j: int, c: LagCoeffs) -> LagCoeffs:
    """R_{j,m}: d_{alpha - e_j} = (2 alpha_j)^{1/2}(2|alpha|+n)^{-1/2} c_alpha."""
    n = c.spec.n
    if not 1 <= j <= n:
        raise ValueError(f"axis {j} outside 1..{n}")
    if c.r_axis is not None:
        raise ValueError("input already carries a radial prefactor")
    out = {}
    for a, v in c.data.items():
        if a[j - 1] == 0:
            continue
        b = a[: j - 1] + (a[j - 1] - 1,) + a[j:]
        out[b] = riesz_factor(a, j) * v
    return LagCoeffs(c.spec.shifted(j), out, r_axis=j)


def gram(spec: LaguerreBasisSpec) -> tuple[list, np.ndarray]:
    """Gram matrix of {Psi_alpha^m} under the tensor quadrature.

    The quadrature and the basis both factor over axes, so the matrix is the
    entrywise product of one-dimensional Gram matrices.
    """
    ones = []
    for i, grid in enumerate(spec.grids):
        tab = psi_axis_table(spec.K, spec.m[i], np.sqrt(2.0 * grid.nodes))
        w = np.exp(np.log(grid.weights) + grid.nodes + grid.mu * math.log(2.0))
        ones.append((tab * w) @ tab.T)
    keys = spec.keys
    idx = np.array(keys)
    G = np.ones((len(keys), len(keys)))
    for i in range(spec.n):
        G *= ones[i][np.ix_(idx[:, i], idx[:, i])]
    return keys, G


def weighted_probe(j: int, m, p: float, f, K: int = 10, quad: int = DEFAULT_QUAD):
    """Both sides of the weighted inequality for R_{j,m} at exponent p.

    lhs = int |R_{j,m} f|^p prod r_i^{m_i (p-2)} dmu_m
    rhs = int |f|^p         prod r_i^{m_i (p-2)} dmu_m

    ``f`` is a type-m ``LagCoeffs`` or a callable on (N, n) radii; a callable
    is expanded to order K first.  The weight folds into Gauss-Laguerre
    exponents mu_i = m_i p / 2.
    """
    if p <= 1:
        raise ValueError("p must exceed 1")
    m = check_index(m)
    spec = LaguerreBasisSpec(m, K, quad)
    if isinstance(f, LagCoeffs):
        coeffs = f
        fun = lambda pts: synthesize(coeffs, pts)  # noqa: E731
    else:
        coeffs = analyze(f, spec)
        fun = f
    exps = [mi * p / 2.0 for mi in m]
    if min(exps) <= -1:
        raise ValueError("weight exponent leaves the integrable range")
    pts, w = mu_rule([gauss_laguerre(quad, e) for e in exps])
    rf = synthesize(riesz_laguerre(j, coeffs), pts)
    lhs = float(np.sum(w * np.abs(rf) ** p))
    rhs = float(np.sum(w * np.abs(np.asarray(fun(pts))) ** p))
    return lhs, rhs

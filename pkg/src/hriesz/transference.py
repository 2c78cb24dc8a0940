"""Scalar de Leeuw periodization harness.

A multiplier m acts on the line by Tf(t) = (2 pi)^{-1} int e^{-i lam t} m(lam) fhat(lam) dlam
and on the circle by sum_k e^{-ikt} m(k) fhat(k), i.e. the component e^{-i lam t}
is multiplied by m(lam).  Both are discretized with the DFT: bin j of an
N-point grid with spacing h carries frequency lam_j = 2 pi j_signed / (N h),
where j_signed runs over numpy's ``fftfreq`` ordering.

Line grids default to N = 4096 on [-32 pi, 32 pi) (spacing pi/64, integers at
every 32nd bin); circle grids use N = 128 on [0, 2 pi) with the same spacing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EdgeMassError",
    "MultiplierSpec",
    "SampledSignal",
    "ENSEMBLE_VERSION",
    "LINE_N",
    "LINE_HALF",
    "CIRCLE_N",
    "frequencies",
    "line_grid",
    "circle_grid",
    "apply_line",
    "apply_circle",
    "ensemble",
    "norm_compare",
    "identity",
    "shift",
    "hilbert",
    "builtin",
]

LINE_N = 4096
LINE_HALF = 32 * math.pi
CIRCLE_N = 128
EDGE_FRACTION = 1 / 16
EDGE_TOL = 1e-10
ENSEMBLE_VERSION = "1"
ENSEMBLE_SIZE = 200
WINDOW_SIGMA = 4 * math.pi


class EdgeMassError(ValueError):
    """Line signal is not negligible near the ends of its window."""


@dataclass(frozen=True)
class MultiplierSpec:
    symbol: object
    label: str
    continuous_at_integers: bool = True
    bound: float = 1.0

    def __call__(self, lam):
        return np.asarray(self.symbol(np.asarray(lam, dtype=float)), dtype=complex)

    def sampled(self, lam) -> np.ndarray:
        vals = self(lam)
        if not np.all(np.isfinite(vals)):
            raise ValueError(f"symbol {self.label!r} is not finite on the band")
        if np.abs(vals).max(initial=0.0) > self.bound * (1 + 1e-12):
            raise ValueError(f"symbol {self.label!r} exceeds its declared bound {self.bound}")
        return vals


@dataclass(frozen=True)
class SampledSignal:
    samples: np.ndarray
    h: float
    interpretation: str

    def __post_init__(self):
        x = np.asarray(self.samples, dtype=complex)
        object.__setattr__(self, "samples", x)
        N = x.shape[-1]
        if N < 64 or N & (N - 1):
            raise ValueError("length must be a power of two >= 64")
        if self.h <= 0:
            raise ValueError("spacing must be positive")
        if self.interpretation not in ("line", "circle"):
            raise ValueError("interpretation is 'line' or 'circle'")
        if self.interpretation == "circle" and abs(self.h * N - 2 * math.pi) > 1e-12:
            raise ValueError("circle signals need h N = 2 pi")

    @property
    def N(self) -> int:
        return self.samples.shape[-1]

    def norm(self, p: float) -> np.ndarray:
        """Discrete L^p norm (h sum |x|^p)^{1/p} along the last axis."""
        return (self.h * np.sum(np.abs(self.samples) ** p, axis=-1)) ** (1.0 / p)


def frequencies(N: int, h: float) -> np.ndarray:
    """lam_j = 2 pi j_signed / (N h) in DFT bin order."""
    return 2 * math.pi * np.fft.fftfreq(N) * N / (N * h)


def line_grid(N: int = LINE_N, half: float = LINE_HALF) -> np.ndarray:
    return -half + 2 * half * np.arange(N) / N


def circle_grid(N: int = CIRCLE_N) -> np.ndarray:
    return 2 * math.pi * np.arange(N) / N


def _multiply(mspec, s):
    # x_l = sum_j X_j e^{-2 pi i j l / N}: the e^{-i lam t} components are ifft(x)
    lam = frequencies(s.N, s.h)
    if s.interpretation == "circle":
        lam = np.rint(lam)
    X = np.fft.ifft(s.samples, axis=-1)
    return SampledSignal(np.fft.fft(mspec.sampled(lam) * X, axis=-1), s.h, s.interpretation)


def _edge_check(s: SampledSignal):
    x = np.abs(s.samples)
    w = max(1, int(s.N * EDGE_FRACTION))
    peak = x.max(axis=-1)
    edge = np.maximum(x[..., :w].max(axis=-1), x[..., -w:].max(axis=-1))
    bad = edge > EDGE_TOL * np.maximum(peak, 1e-300)
    if np.any(bad & (peak > 0)):
        raise EdgeMassError(f"edge mass {float(np.max(edge / np.maximum(peak, 1e-300))):.3g} "
                            f"exceeds {EDGE_TOL:g} of the peak")


def apply_line(mspec: MultiplierSpec, s: SampledSignal) -> SampledSignal:
    """Line multiplier on a windowed signal (rows of a 2-D array are separate signals)."""
    if s.interpretation != "line":
        raise ValueError("apply_line needs a line signal")
    _edge_check(s)
    return _multiply(mspec, s)


def apply_circle(mspec: MultiplierSpec, s: SampledSignal) -> SampledSignal:
    """Periodized multiplier: Fourier coefficient k is multiplied by m(k)."""
    if s.interpretation != "circle":
        raise ValueError("apply_circle needs a circle signal")
    return _multiply(mspec, s)


def _circle_members(seed: int) -> np.ndarray:
    """Ensemble of trigonometric signals on the circle grid, shape (200, CIRCLE_N).

    Composition (version 1): 120 random band-limited polynomials of degree
    <= 16, 40 periodized Gaussian bumps, 40 periodic chirps
    exp(i (a cos t + b t)).
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    t = circle_grid()
    out = np.empty((ENSEMBLE_SIZE, CIRCLE_N), dtype=complex)
    k = np.arange(-16, 17)
    for i in range(120):
        deg = int(rng.integers(1, 17))
        c = rng.standard_normal(k.size) + 1j * rng.standard_normal(k.size)
        c[np.abs(k) > deg] = 0
        out[i] = np.exp(1j * np.outer(t, k)) @ c
    kk = np.arange(-63, 64)
    for i in range(120, 160):
        width = rng.uniform(0.2, 1.0)
        centre = rng.uniform(0, 2 * math.pi)
        c = np.exp(-0.5 * (width * kk) ** 2 - 1j * kk * centre)
        out[i] = np.exp(1j * np.outer(t, kk)) @ c
    for i in range(160, ENSEMBLE_SIZE):
        a = rng.uniform(1.0, 6.0)
        b = int(rng.integers(-8, 9))
        out[i] = np.exp(1j * (a * np.cos(t) + b * t))
    return out


def ensemble(seed: int):
    """Matched circle and line ensembles.

    Each line member is the periodic extension of a circle member over the
    window times a Gaussian of width 4 pi, the construction that carries
    circle norms to line norms.
    """
    circ = _circle_members(seed)
    t = line_grid()
    reps = LINE_N // CIRCLE_N
    window = np.exp(-0.5 * (t / WINDOW_SIGMA) ** 2)
    line = np.tile(circ, reps) * window
    h = 2 * LINE_HALF / LINE_N
    return (SampledSignal(circ, 2 * math.pi / CIRCLE_N, "circle"),
            SampledSignal(line, h, "line"))


def norm_compare(mspec: MultiplierSpec, p: float, ensemble_seed: int) -> tuple[float, float]:
    """Empirical lower bounds (line, circle) for the L^p operator norms.

    Each is the maximum of ||T s||_p / ||s||_p over the seeded ensemble; the
    whole ensemble is transformed as one batch.
    """
    if not p > 1:
        raise ValueError("p must exceed 1")
    circ, line = ensemble(ensemble_seed)
    line_ratio = apply_line(mspec, line).norm(p) / line.norm(p)
    circ_ratio = apply_circle(mspec, circ).norm(p) / circ.norm(p)
    return float(line_ratio.max()), float(circ_ratio.max())


def identity() -> MultiplierSpec:
    return MultiplierSpec(lambda lam: np.ones_like(lam), "identity")


def shift(a: float = 1.0) -> MultiplierSpec:
    """e^{i a lam}: translation f(t) -> f(t - a)."""
    return MultiplierSpec(lambda lam: np.exp(1j * a * lam), f"shift({a:g})")


def hilbert() -> MultiplierSpec:
    """-i sgn(lam), with sgn(0) = 0; not continuous at the integer 0."""
    return MultiplierSpec(lambda lam: -1j * np.sign(lam), "hilbert", continuous_at_integers=False)


def builtin(name: str) -> MultiplierSpec:
    table = {"identity": identity, "shift": shift, "hilbert": hilbert}
    if name not in table:
        raise ValueError(f"unknown multiplier {name!r}")
    return table[name]()

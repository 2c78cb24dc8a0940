import math

import numpy as np
import pytest

from hriesz.transference import (
    CIRCLE_N,
    LINE_N,
    EdgeMassError,
    MultiplierSpec,
    SampledSignal,
    apply_circle,
    apply_line,
    builtin,
    circle_grid,
    ensemble,
    frequencies,
    hilbert,
    identity,
    line_grid,
    norm_compare,
    shift,
)

H_LINE = 64 * math.pi / LINE_N


def _line(fn):
    t = line_grid()
    return t, SampledSignal(fn(t), H_LINE, "line")


def test_frequencies_match_numpy():
    lam = frequencies(128, 2 * math.pi / 128)
    assert np.allclose(lam, np.fft.fftfreq(128, 1 / 128))


def test_line_identity():
    _, s = _line(lambda t: np.exp(-t * t / 2) * (1 + 0.3j * t))
    out = apply_line(identity(), s)
    assert np.abs(out.samples - s.samples).max() <= 1e-12


def test_shift_translates_gaussian():
    # exact oracle: e^{i a lam} sends f(t) to f(t - a)
    t, s = _line(lambda t: np.exp(-t * t / 2))
    for a in (1.0, -2.5):
        out = apply_line(shift(a), s)
        assert np.abs(out.samples - np.exp(-(t - a) ** 2 / 2)).max() <= 1e-12
        peak = t[np.argmax(np.abs(out.samples))]
        assert abs(peak - a) <= H_LINE


def test_hilbert_of_even_real_bump_is_real_and_odd():
    t, s = _line(lambda t: np.exp(-t * t / 2))
    y = apply_line(hilbert(), s).samples
    assert np.abs(y.imag).max() <= 1e-8
    # grid is symmetric about 0 after dropping the first point
    assert np.abs(y[1:] + y[1:][::-1]).max() <= 1e-8


def test_hilbert_of_gaussian_against_dawson():
    # the symbol acts on e^{-i lam t} components, so -i sgn gives minus the
    # classical transform: -(2/sqrt(pi)) D(t/sqrt(2)) for e^{-t^2/2}
    from scipy.special import dawsn
    t, s = _line(lambda t: np.exp(-t * t / 2))
    y = apply_line(hilbert(), s).samples.real
    ref = -2 / math.sqrt(math.pi) * dawsn(t / math.sqrt(2))
    # the output decays like 1/t, so periodization costs about 1e-3 near the middle
    mid = np.abs(t) <= 8
    assert np.abs(y[mid] - ref[mid]).max() <= 1e-3


def test_circle_identity_and_single_modes():
    t = circle_grid()
    s = SampledSignal(np.cos(3 * t) + 0.5j * np.sin(7 * t), 2 * math.pi / CIRCLE_N, "circle")
    assert np.abs(apply_circle(identity(), s).samples - s.samples).max() <= 1e-14
    m = MultiplierSpec(lambda lam: 1 / (1 + lam * lam), "bump")
    for k in (-5, 0, 2, 9):
        mode = SampledSignal(np.exp(-1j * k * t), 2 * math.pi / CIRCLE_N, "circle")
        out = apply_circle(m, mode).samples
        assert np.abs(out - mode.samples / (1 + k * k)).max() <= 1e-13


def test_circle_hilbert_on_cosine():
    t = circle_grid()
    s = SampledSignal(np.cos(3 * t), 2 * math.pi / CIRCLE_N, "circle")
    out = apply_circle(hilbert(), s).samples
    assert np.abs(out + np.sin(3 * t)).max() <= 1e-12


def test_periodization_consistency():
    # a smooth symbol applied to a windowed periodic signal agrees with the circle action
    m = MultiplierSpec(lambda lam: np.exp(-lam * lam / 50), "gauss")
    t = circle_grid()
    circ = SampledSignal(np.cos(2 * t) + np.sin(5 * t), 2 * math.pi / CIRCLE_N, "circle")
    on_circle = apply_circle(m, circ).samples
    tl = line_grid()
    window = np.exp(-0.5 * (tl / (4 * math.pi)) ** 2)
    line = SampledSignal(np.tile(circ.samples, LINE_N // CIRCLE_N) * window, H_LINE, "line")
    on_line = apply_line(m, line).samples
    expected = np.tile(on_circle, LINE_N // CIRCLE_N) * window
    mid = np.abs(tl) <= 2 * math.pi
    assert np.abs(on_line[mid] - expected[mid]).max() <= 1e-2


def test_edge_mass_rejected():
    _, s = _line(lambda t: np.ones_like(t))
    with pytest.raises(EdgeMassError):
        apply_line(identity(), s)
    _, z = _line(lambda t: np.zeros_like(t))
    assert np.abs(apply_line(identity(), z).samples).max() == 0


def test_signal_validation():
    with pytest.raises(ValueError):
        SampledSignal(np.zeros(100), 0.1, "line")
    with pytest.raises(ValueError):
        SampledSignal(np.zeros(64), -1.0, "line")
    with pytest.raises(ValueError):
        SampledSignal(np.zeros(64), 0.1, "circle")
    with pytest.raises(ValueError):
        SampledSignal(np.zeros(64), 0.1, "torus")
    with pytest.raises(ValueError):
        apply_circle(identity(), SampledSignal(np.zeros(64), 0.1, "line"))


def test_symbol_bound_enforced():
    big = MultiplierSpec(lambda lam: 2 * np.ones_like(lam), "two")
    t = circle_grid()
    with pytest.raises(ValueError):
        apply_circle(big, SampledSignal(np.cos(t), 2 * math.pi / CIRCLE_N, "circle"))
    ok = MultiplierSpec(lambda lam: 2 * np.ones_like(lam), "two", bound=2.0)
    apply_circle(ok, SampledSignal(np.cos(t), 2 * math.pi / CIRCLE_N, "circle"))


def test_builtin_table():
    assert builtin("identity").label == "identity"
    assert not builtin("hilbert").continuous_at_integers
    with pytest.raises(ValueError):
        builtin("riesz")


def test_ensemble_reproducible_and_shaped():
    c1, l1 = ensemble(7)
    c2, l2 = ensemble(7)
    assert np.array_equal(c1.samples, c2.samples) and np.array_equal(l1.samples, l2.samples)
    assert c1.samples.shape == (200, CIRCLE_N) and l1.samples.shape == (200, LINE_N)
    assert not np.array_equal(ensemble(8)[0].samples, c1.samples)


def test_norm_compare_identity_and_p2():
    line, circ = norm_compare(identity(), 3.0, 1)
    assert abs(line - 1) <= 1e-10 and abs(circ - 1) <= 1e-10
    line, circ = norm_compare(hilbert(), 2.0, 1)
    assert line <= 1 + 1e-9 and circ <= 1 + 1e-9
    assert norm_compare(hilbert(), 2.0, 1) == (line, circ)
    with pytest.raises(ValueError):
        norm_compare(identity(), 1.0, 1)

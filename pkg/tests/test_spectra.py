import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from orlicz_jackson import (AliasingError, ConfigError, Spectrum, WindowError, partial_sum, read_samples,
                            spectrum_from_rule, spectrum_from_samples, tail)


def test_delta_rule():
    s = spectrum_from_rule("delta", 3, k0=1)
    assert np.array_equal(s.coeffs, [0, 0, 0, 0, 1, 0, 0])


def test_geometric_rule():
    s = spectrum_from_rule("geometric", 2, r=0.5)
    assert np.allclose(s.coeffs, [0.25, 0.5, 1, 0.5, 0.25])


def test_power_rule():
    s = spectrum_from_rule("power", 2, s=2.0)
    assert np.allclose(s.coeffs, [0.25, 1, 0, 1, 0.25])


def test_lacunary_rule():
    s = spectrum_from_rule("lacunary", 8, amplitudes=[3.0, 2.0, 1.0])
    assert s[1] == s[-1] == 3 and s[2] == 2 and s[4] == 1 and s[3] == 0 and s[8] == 0


def test_unknown_rule():
    with pytest.raises(ConfigError):
        spectrum_from_rule("sinc", 3)


def test_window_invariants():
    with pytest.raises(ConfigError):
        Spectrum(np.ones(4))
    with pytest.raises(ValueError):
        Spectrum(np.array([0, np.nan, 0]))
    with pytest.raises(WindowError):
        spectrum_from_rule("delta", 2)[3]


def test_samples_cosine():
    x = 2 * np.pi * np.arange(16) / 16
    s = spectrum_from_samples(np.cos(x), 2)
    assert np.allclose(s.coeffs, [0, 0.5, 0, 0.5, 0], atol=1e-12)


def test_samples_constant():
    s = spectrum_from_samples(np.ones(8), 1)
    assert np.allclose(s.coeffs, [0, 1, 0], atol=1e-12)


def test_samples_sawtooth():
    N = 4096
    x = 2 * np.pi * np.arange(N) / N
    f = np.where(x > 0, (np.pi - x) / 2, 0.0)
    s = spectrum_from_samples(f, 8)
    k = np.arange(1, 9)
    assert np.max(np.abs(s.magnitudes[9:] - 1 / (2 * k))) < 1e-3


def test_aliasing_refused():
    with pytest.raises(AliasingError):
        spectrum_from_samples(np.ones(7), 3)


def test_partial_sum_and_tail_examples():
    g = spectrum_from_rule("geometric", 2, r=0.5)
    assert np.allclose(partial_sum(g, 2).coeffs, [0, 0.5, 1, 0.5, 0])
    assert np.allclose(tail(g, 2).coeffs, [0.25, 0, 0, 0, 0.25])
    assert partial_sum(g, 3) == g
    assert np.allclose(tail(g, 1).coeffs, [0.25, 0.5, 0, 0.5, 0.25])
    assert partial_sum(spectrum_from_rule("delta", 3, k0=2), 2).degree() == -1
    assert tail(partial_sum(g, 2), 2).degree() == -1
    with pytest.raises(WindowError):
        tail(g, 4)


def test_read_samples(tmp_path):
    N = 8
    x = 2 * np.pi * np.arange(N) / N
    path = tmp_path / "f.txt"
    np.savetxt(path, np.column_stack([x, np.cos(x), np.zeros(N)]))
    s = spectrum_from_samples(read_samples(path), 2)
    assert abs(s[1] - 0.5) < 1e-12
    np.savetxt(path, np.column_stack([x + 0.1, np.cos(x), np.zeros(N)]))
    with pytest.raises(ConfigError):
        read_samples(path)


coeff_arrays = st.integers(0, 6).flatmap(
    lambda K: arrays(complex, 2 * K + 1, elements=st.complex_numbers(max_magnitude=1e3, allow_nan=False,
                                                                    allow_infinity=False)))


@given(coeff_arrays, st.integers(1, 7))
def test_partial_sum_plus_tail_reconstructs(c, n):
    s = Spectrum(c)
    n = min(n, s.K + 1)
    assert partial_sum(s, n) + tail(s, n) == s


@given(st.integers(0, 8), st.data())
def test_samples_exact_on_trig_polynomials(K, data):
    c = data.draw(arrays(float, 2 * K + 1, elements=st.floats(-5, 5))) \
        + 1j * data.draw(arrays(float, 2 * K + 1, elements=st.floats(-5, 5)))
    N = max(4 * K, 2 * K + 2)
    x = 2 * np.pi * np.arange(N) / N
    k = np.arange(-K, K + 1)
    f = np.exp(1j * np.outer(x, k)) @ c
    s = spectrum_from_samples(f, K)
    assert np.max(np.abs(s.coeffs - c)) <= 1e-12 * max(1.0, np.abs(c).sum())


@given(st.integers(1, 8), st.data())
def test_parseval(K, data):
    c = data.draw(arrays(float, 2 * K + 1, elements=st.floats(-3, 3)))
    N = 4 * K + 4
    x = 2 * np.pi * np.arange(N) / N
    f = np.exp(1j * np.outer(x, np.arange(-K, K + 1))) @ c
    s = spectrum_from_samples(f, K)
    assert np.isclose(np.sum(s.magnitudes ** 2), np.mean(np.abs(f) ** 2), rtol=1e-10, atol=1e-12)

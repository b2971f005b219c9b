import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from hypothesis.extra.numpy import arrays

from orlicz_jackson import (NormKind, OrliczFamily, Spectrum, WindowError, best_approx, best_approx_sequence,
                            direct_best_approx, norm, spectrum_from_rule)


def test_polynomial_has_zero_error():
    c = np.zeros(11)
    c[3:8] = [1, -2, 3, 0.5, 1]
    s = Spectrum(c)
    for n in range(3, 6):
        assert best_approx(OrliczFamily.power(5, 2), s, n) == 0.0


def test_geometric_examples():
    g = spectrum_from_rule("geometric", 60, r=0.5)
    assert best_approx(OrliczFamily.power(60, 1), g, 2) == pytest.approx(1.0, rel=1e-12)
    assert best_approx(OrliczFamily.power(60, 2), g, 1) == pytest.approx(math.sqrt(2 / 3), rel=1e-12)


def test_sequence_examples():
    d = spectrum_from_rule("delta", 6, k0=4, amplitude=2.5)
    E = best_approx_sequence(OrliczFamily.power(6, 2), d, range(1, 8))
    assert np.allclose(E[:, 1], [2.5] * 4 + [0.0] * 3)
    r = 0.7
    g = spectrum_from_rule("geometric", 120, r=r)
    E = best_approx_sequence(OrliczFamily.power(120, 1), g, [1, 3, 5])
    assert np.allclose(E[:, 1], 2 * r ** E[:, 0] / (1 - r), rtol=1e-12)


def test_window_exceeded():
    g = spectrum_from_rule("geometric", 4, r=0.5)
    with pytest.raises(WindowError):
        best_approx(OrliczFamily.power(4, 2), g, 6)
    with pytest.raises(WindowError):
        best_approx_sequence(OrliczFamily.power(4, 2), g, [1, 6])


def test_direct_minimisation_matches_tail():
    fam = OrliczFamily.power(2, [2, 1.5, 1, 3, 2])
    s = Spectrum(np.array([0.3, -1, 2, 0.5 + 1j, -0.7]))
    for n in (1, 2):
        for kind in NormKind:
            val, _ = direct_best_approx(fam, s, n, kind)
            assert val == pytest.approx(best_approx(fam, s, n, kind), rel=1e-4)


family_spec = st.integers(2, 6).flatmap(lambda K: st.tuples(
    st.just(K),
    arrays(float, 2 * K + 1, elements=st.sampled_from([1.0, 1.5, 2.0, 4.0])),
    arrays(float, 2 * K + 1, elements=st.floats(-3, 3)),
))


@given(family_spec, st.sampled_from(list(NormKind)))
def test_sequence_nonincreasing(fs, kind):
    K, p, c = fs
    E = best_approx_sequence(OrliczFamily.power(K, p), Spectrum(c), range(1, K + 2), kind)[:, 1]
    assert np.all(np.diff(E) <= 1e-12 * max(E.max(), 1e-300))


@given(family_spec, st.sampled_from(list(NormKind)), st.data())
def test_bounded_by_norm_and_polynomial_invariant(fs, kind, data):
    K, p, c = fs
    fam = OrliczFamily.power(K, p)
    s = Spectrum(c)
    n = data.draw(st.integers(1, K + 1))
    E = best_approx(fam, s, n, kind)
    assert E <= norm(fam, s, kind) * (1 + 1e-12)
    t = np.zeros(2 * K + 1)
    t[K - n + 1:K + n] = data.draw(arrays(float, 2 * n - 1, elements=st.floats(-5, 5)))
    assert best_approx(fam, s + Spectrum(t), n, kind) == pytest.approx(E, rel=1e-12, abs=1e-300)

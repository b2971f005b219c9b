import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from hypothesis.extra.numpy import arrays

from orlicz_jackson import (INFINITY, ConfigError, DomainError, NormKind, OrliczFamily, Spectrum, conjugate,
                            dual_ascent, dual_feasible_value, luxemburg_norm, modular, norm, orlicz_norm)

GOLDEN = (1 + math.sqrt(5)) / 2


def spec(*values):
    return Spectrum(np.array(values, dtype=complex))


def mixed_family():
    # M_0(u) = u, M_{+-1}(u) = u^2
    return OrliczFamily.power(1, [2.0, 1.0, 2.0])


# -- spec examples --------------------------------------------------------------

def test_modular_examples():
    sq = OrliczFamily.power(2, 2)
    assert modular(sq, spec(0, 0, 0, 3, 4), 5.0) == pytest.approx(1.0, rel=1e-15)
    assert modular(sq, spec(0, 0, 0, 0, 0), 1.0) == 0.0
    assert modular(mixed_family(), spec(0, 1, 1), 2.0) == pytest.approx(0.75, rel=1e-15)
    with pytest.raises(DomainError):
        modular(sq, spec(0, 0, 1, 0, 0), 0.0)
    with pytest.raises(ConfigError):
        modular(OrliczFamily.power(1, 2), spec(0, 0, 1, 0, 0), 1.0)


def test_luxemburg_examples():
    assert luxemburg_norm(OrliczFamily.power(2, 2), spec(0, 0, 0, 3, 4)) == pytest.approx(5.0, rel=1e-10)
    assert luxemburg_norm(OrliczFamily.power(2, 1), spec(0, 0, 0, 1, 2)) == pytest.approx(3.0, rel=1e-10)
    for method in ("auto", "newton", "generic"):
        assert luxemburg_norm(mixed_family(), spec(0, 1, 1), method) == pytest.approx(GOLDEN, rel=1e-10)


def test_zero_sequence_short_circuits():
    for kind in NormKind:
        assert norm(mixed_family(), spec(0, 0, 0), kind) == 0.0


def test_conjugate_examples():
    assert conjugate(OrliczFamily.power(0, 2, 0.25), 0, 3.0) == pytest.approx(9.0, rel=1e-12)
    lin = OrliczFamily.power(0, 1)
    assert conjugate(lin, 0, 0.5) == 0.0 and conjugate(lin, 0, 1.0) == 0.0
    assert conjugate(lin, 0, 1.5) is INFINITY
    assert conjugate(OrliczFamily.power(0, 3, 1 / 3), 0, 1.0) == pytest.approx(2 / 3, rel=1e-12)


def test_conjugate_custom_matches_closed_form():
    # numeric conjugate of a callable against the closed form of the same power
    cube = OrliczFamily.custom(0, lambda u: u ** 3 / 3)
    for v in (0.1, 1.0, 2.5):
        assert conjugate(cube, 0, v) == pytest.approx(v ** 1.5 / 1.5, rel=1e-8)


def test_orlicz_examples():
    assert orlicz_norm(OrliczFamily.power(2, 1), spec(0, 0, 0, 1, 2)) == pytest.approx(3.0, rel=1e-10)
    assert orlicz_norm(OrliczFamily.power(2, 2, 0.25), spec(0, 0, 0, 3, 4)) == pytest.approx(5.0, rel=1e-10)
    assert orlicz_norm(OrliczFamily.scaled_power(2, 2), spec(0, 0, 0, 3, 4)) == pytest.approx(5.0, rel=1e-10)


def test_orlicz_random_five_terms_in_sandwich():
    rng = np.random.default_rng(3)
    fam = OrliczFamily.power(2, [2, 2, 1, 2, 2])
    for _ in range(20):
        s = Spectrum(rng.normal(size=5) + 1j * rng.normal(size=5))
        lux, orl = luxemburg_norm(fam, s), orlicz_norm(fam, s)
        assert lux * (1 - 1e-9) <= orl <= 2 * lux * (1 + 1e-9)


def test_dual_feasible_examples():
    lin = OrliczFamily.power(1, 1)
    d = dual_feasible_value(lin, spec(0, 1, 2), [1, 1, 1])
    assert d.feasible and d.value == pytest.approx(3.0)
    d = dual_feasible_value(lin, spec(0, 1, 2), [0, 0, 0])
    assert d.feasible and d.value == 0.0
    d = dual_feasible_value(lin, spec(0, 1, 2), [0, 2, 0])
    assert not d.feasible and d.constraint == INFINITY
    quarter = OrliczFamily.power(1, 2, 0.25)
    best, lam = dual_ascent(quarter, spec(0, 3, 4))
    assert best.feasible and best.value == pytest.approx(5.0, rel=1e-6)
    assert lam[1:] == pytest.approx([0.6, 0.8], rel=1e-4)


def test_dual_infeasible_flagged_not_silent():
    d = dual_feasible_value(OrliczFamily.power(0, 2, 0.25), spec(1), [2.0])
    assert not d.feasible and d.constraint == pytest.approx(4.0)


# -- properties -----------------------------------------------------------------

@st.composite
def family_and_spectrum(draw, max_K=3, exponents=(1.0, 1.5, 2.0, 3.0)):
    K = draw(st.integers(0, max_K))
    size = 2 * K + 1
    p = draw(arrays(float, size, elements=st.sampled_from(exponents)))
    mu = draw(arrays(float, size, elements=st.floats(0.1, 4.0)))
    c = draw(arrays(float, size, elements=st.floats(-10, 10)))
    assume(np.any(np.abs(c) > 1e-6))
    return OrliczFamily.power(K, p, mu), Spectrum(c)


@given(family_and_spectrum())
def test_sandwich(fs):
    fam, s = fs
    lux, orl = luxemburg_norm(fam, s), orlicz_norm(fam, s)
    assert lux * (1 - 1e-6) <= orl <= 2 * lux * (1 + 1e-6)


@given(family_and_spectrum(), st.floats(-50, 50).filter(lambda a: abs(a) > 1e-3))
def test_luxemburg_homogeneous(fs, a):
    fam, s = fs
    assert luxemburg_norm(fam, a * s) == pytest.approx(abs(a) * luxemburg_norm(fam, s), rel=1e-9)


@given(family_and_spectrum(), st.data())
def test_coordinate_monotone(fs, data):
    fam, s = fs
    i = data.draw(st.integers(0, len(s) - 1))
    grow = data.draw(st.floats(1.0, 3.0))
    c = s.coeffs.copy()
    c[i] = c[i] * grow + (1e-3 if c[i] == 0 else 0)
    bigger = Spectrum(c)
    for kind in NormKind:
        assert norm(fam, bigger, kind) >= norm(fam, s, kind) * (1 - 1e-10)


@given(family_and_spectrum())
def test_modular_at_norm(fs):
    fam, s = fs
    assert modular(fam, s, luxemburg_norm(fam, s)) <= 1 + 1e-8


@given(family_and_spectrum())
def test_routes_agree(fs):
    fam, s = fs
    for kind in NormKind:
        ref = norm(fam, s, kind, "newton")
        assert norm(fam, s, kind, "auto") == pytest.approx(ref, rel=1e-9)
        assert norm(fam, s, kind, "generic") == pytest.approx(ref, rel=1e-8)


@given(family_and_spectrum(max_K=2))
def test_dual_oracle_agrees(fs):
    fam, s = fs
    orl = orlicz_norm(fam, s)
    best, _ = dual_ascent(fam, s)
    assert best.feasible
    assert best.value == pytest.approx(orl, rel=1e-4)


@given(st.sampled_from([1.0, 1.5, 2.0, 3.0]), arrays(float, 7, elements=st.floats(-10, 10)))
def test_scaled_power_is_lp(p, c):
    assume(np.any(np.abs(c) > 1e-6))
    s = Spectrum(c)
    lp = np.sum(np.abs(c) ** p) ** (1 / p)
    assert orlicz_norm(OrliczFamily.scaled_power(3, p), s) == pytest.approx(lp, rel=1e-9)

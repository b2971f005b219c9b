import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from orlicz_jackson import (DegenerateMeasureError, DiscreteMeasure, DomainError, Multiplier, NormKind,
                            OrliczFamily, Spectrum, i_functional, lp_witness, ratio_upper_bound, sharp_constant_lp,
                            sharpness_search, spectrum_from_rule, tabulated_constant, verify_direct)
from orlicz_jackson.jackson import _profile

PHI1 = Multiplier.classical(1.0)
PHI2 = Multiplier.classical(2.0)
PI = math.pi


def test_measure_validation():
    with pytest.raises(DomainError):
        DiscreteMeasure(PI, [1.0, 0.5], [1, 1])
    with pytest.raises(DomainError):
        DiscreteMeasure(PI, [1.0, 4.0], [1, 1])
    with pytest.raises(DomainError):
        DiscreteMeasure(PI, [1.0], [0.0])
    assert DiscreteMeasure.uniform(PI).total == pytest.approx(1.0)


def test_i_functional_examples():
    I = i_functional(PHI1, 2, 1, DiscreteMeasure.dirac(PI, PI))
    assert I.value == pytest.approx(0.0, abs=1e-12) and I.k == 2
    I = i_functional(PHI1, 2, 1, DiscreteMeasure.uniform(PI, 64))
    assert I.value == pytest.approx(2.0, abs=1e-2)
    half = DiscreteMeasure(PI, [PI / 2, PI], [0.5, 0.5])
    vals = [_profile(PHI1, 2, 1, [k], half.nodes)[0] @ half.weights for k in range(1, 5)]
    assert vals == pytest.approx([3, 2, 3, 0], abs=1e-12)
    I = i_functional(PHI1, 2, 1, half)
    assert I.value == pytest.approx(0.0, abs=1e-12) and I.k == 4
    with pytest.raises(DomainError):
        i_functional(PHI1, 2, 3, half, k_max=2)


def test_ratio_upper_bound_examples():
    assert ratio_upper_bound(PHI1, 2, 1, DiscreteMeasure.uniform(PI, 64)) == pytest.approx(2 ** -0.5, rel=1e-2)
    with pytest.raises(DegenerateMeasureError):
        ratio_upper_bound(PHI1, 2, 1, DiscreteMeasure.dirac(PI, PI))


def test_sharp_constant_p2_n2():
    res = sharp_constant_lp(PHI1, 2, 2, PI, grid=512, j_max=64)
    assert res.C == pytest.approx(2 ** -0.5, rel=1e-2)
    assert res.J == pytest.approx(res.C ** -2, rel=1e-12)
    assert res.rho.sum() == pytest.approx(1.0, rel=1e-12) and np.all(res.rho >= 0)
    assert res.measure.total == pytest.approx(1.0, rel=1e-12)
    assert res.diagnostics["duality_gap"] < 1e-9


def test_complementary_slackness_p1_alpha2():
    res = sharp_constant_lp(PHI2, 1, 1, PI)
    bound = ratio_upper_bound(PHI2, 1, 1, res.measure, k_max=res.diagnostics["j_max"])
    assert bound == pytest.approx(res.C, rel=1e-6)


def test_preconditions():
    with pytest.raises(DomainError):
        sharp_constant_lp(PHI1, 2, 1, PI, grid=64)
    with pytest.raises(DomainError):
        sharp_constant_lp(PHI1, 2, 4, PI, j_max=15)
    with pytest.raises(DomainError):
        sharp_constant_lp(Multiplier.custom(lambda t: np.ones_like(t)), 2, 1, PI)


def test_monotone_in_truncation():
    J = [sharp_constant_lp(PHI1, 2, 1, PI, grid=256, j_max=j).J for j in (4, 8, 16, 32)]
    assert np.all(np.diff(J) <= 1e-12)
    J = [sharp_constant_lp(PHI1, 2, 1, PI, grid=g, j_max=16).J for g in (128, 256, 512)]
    assert np.all(np.diff(J) >= -1e-12)


@pytest.mark.parametrize("p,n", [(1, 1), (2, 1), (1, 2), (2, 3)])
def test_against_highs(p, n):
    grid, j_max = 256, 32 * n
    res = sharp_constant_lp(PHI1, p, n, PI, grid=grid, j_max=j_max)
    u = PI * np.arange(1, grid + 1) / grid
    A = _profile(PHI1, p, n, np.arange(n, j_max + 1), u).T
    ref = linprog(-np.ones(A.shape[1]), A_ub=A, b_ub=np.ones(grid), bounds=(0, None), method="highs")
    assert res.J == pytest.approx(-1 / ref.fun, rel=1e-9)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_column_generation_matches_full_tableau(n):
    a = sharp_constant_lp(PHI1, 2, n, PI, grid=256, j_max=16 * n, method="full")
    b = sharp_constant_lp(PHI1, 2, n, PI, grid=256, j_max=16 * n, method="colgen")
    assert a.C == pytest.approx(b.C, rel=1e-10)


def test_sensitivity_reported():
    res = sharp_constant_lp(PHI1, 2, 1, PI, grid=128, j_max=8, sensitivity=True)
    s = res.diagnostics["sensitivity"]
    assert s["grid"] == 256 and s["j_max"] == 16
    assert abs(s["relative_change"]) < 0.05


def test_table_complete_and_consistent():
    for p in (1.0, 2.0):
        for n in range(1, 65):
            assert 0.3 < tabulated_constant(1.0, p, n) < 1.0
    for p, n in ((1.0, 1), (2.0, 3)):
        assert tabulated_constant(1.0, p, n) == pytest.approx(sharp_constant_lp(PHI1, p, n, PI).C, rel=1e-9)
    with pytest.raises(KeyError):
        tabulated_constant(1.0, 3.0, 1)


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6), st.sampled_from([1.0, 2.0]))
def test_weak_duality(seed, p):
    grid, j_max = 128, 16
    res = sharp_constant_lp(PHI1, p, 1, PI, grid=grid, j_max=j_max)
    rng = np.random.default_rng(seed)
    u = PI * np.arange(1, grid + 1) / grid
    pick = np.sort(rng.choice(grid, size=rng.integers(1, 20), replace=False))
    m = DiscreteMeasure(PI, u[pick], rng.random(pick.size) + 1e-3)
    try:
        bound = ratio_upper_bound(PHI1, p, 1, m, k_max=j_max)
    except DegenerateMeasureError:
        return
    assert bound >= res.C - 1e-8


def test_verify_direct_examples():
    for n in (1, 3):
        d = spectrum_from_rule("delta", 8, k0=n)
        r = verify_direct(None, d, n, PHI1, PI, p=2.0, constant=2 ** -0.5)
        assert r.lhs == pytest.approx(1.0) and r.modulus == pytest.approx(2.0)
        assert r.rhs == pytest.approx(math.sqrt(2)) and r.passed
    c = np.zeros(17)
    c[6:11] = 1.0
    r = verify_direct(OrliczFamily.power(8, 1.5), Spectrum(c), 3, PHI1, PI, constant=0.8,
                      norm_kind=NormKind.LUXEMBURG)
    assert r.lhs == 0.0 and r.passed and r.factor == 2


def test_verify_direct_detects_halved_constant():
    d = spectrum_from_rule("delta", 8, k0=2)
    r = verify_direct(None, d, 2, PHI1, PI, p=2.0, constant=0.5 * 2 ** -0.5)
    assert not r.passed and r.slack < 0


def test_s1_general_path_equals_sp_path():
    rng = np.random.default_rng(5)
    lin = OrliczFamily.power(20, 1)
    for n in (1, 2, 5):
        s = Spectrum(rng.normal(size=41) + 1j * rng.normal(size=41))
        g = verify_direct(lin, s, n, PHI1, PI, norm_kind=NormKind.ORLICZ, constant=0.78)
        sp = verify_direct(None, s, n, PHI1, PI, p=1.0, constant=0.78)
        assert g.rhs == pytest.approx(sp.rhs, rel=1e-8)
        assert g.lhs == pytest.approx(sp.lhs, rel=1e-12)


def test_single_frequency_ratio():
    d = spectrum_from_rule("delta", 4, k0=2)
    r = verify_direct(None, d, 2, PHI1, PI, p=2.0, constant=1.0)
    assert r.lhs / r.modulus == pytest.approx(0.5)


@pytest.mark.parametrize("p,n", [(1.0, 1), (2.0, 2)])
def test_sharpness_never_exceeds_constant(p, n):
    C = sharp_constant_lp(PHI1, p, n, PI).C
    s = sharpness_search(PHI1, p, n, PI, budget=40)
    assert s.ratio <= C * (1 + 1e-6)
    assert n <= s.k1 < s.k2 <= 8 * n


def test_lp_witness_approaches_constant():
    res = sharp_constant_lp(PHI1, 2.0, 1, PI)
    w = lp_witness(res)
    fam = OrliczFamily.power(w.K, 2)
    r = verify_direct(None, w, 1, PHI1, PI, p=2.0, constant=1.0)
    assert 0.99 * res.C <= r.lhs / r.modulus <= res.C * (1 + 1e-6)
    assert fam.K == w.K

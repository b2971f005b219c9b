import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from orlicz_jackson import DomainError, SolverError
from orlicz_jackson.simplex import simplex_max


def test_textbook_problem():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), value 36
    r = simplex_max([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert r.value == pytest.approx(36) and r.x == pytest.approx([2, 6])
    assert r.dual_value == pytest.approx(36)


def test_unbounded():
    with pytest.raises(SolverError):
        simplex_max([1, 1], [[1, -1]], [1])


def test_bad_rhs():
    with pytest.raises(DomainError):
        simplex_max([1], [[1]], [-1])


def test_degenerate_cycling_example_terminates():
    # Beale's cycling example, written as a maximisation
    c = [0.75, -150, 0.02, -6]
    A = [[0.25, -60, -0.04, 9], [0.5, -90, -0.02, 3], [0, 0, 1, 0]]
    for rule in ("steepest", "dantzig", "bland"):
        r = simplex_max(c, A, [0, 0, 1], rule=rule)
        assert r.value == pytest.approx(0.05)


@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 10 ** 6), st.sampled_from(["steepest", "dantzig", "bland"]))
def test_matches_highs(m, n, seed, rule):
    rng = np.random.default_rng(seed)
    A = rng.uniform(0, 2, size=(m, n)) * (rng.random((m, n)) < 0.8)
    A[:, A.sum(axis=0) == 0] = 1.0
    b = rng.uniform(0.5, 2, size=m)
    c = rng.uniform(-1, 2, size=n)
    r = simplex_max(c, A, b, rule=rule)
    ref = linprog(-c, A_ub=A, b_ub=b, bounds=(0, None), method="highs")
    assert ref.status == 0
    assert r.value == pytest.approx(-ref.fun, rel=1e-9, abs=1e-12)
    assert r.dual_value == pytest.approx(r.value, rel=1e-9, abs=1e-12)
    assert np.all(A @ r.x <= b * (1 + 1e-9) + 1e-12)
    assert np.all(A.T @ r.y >= c - 1e-9)


def test_warm_start_bad_basis_ignored():
    r = simplex_max([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18], warm=[0, 0, 1])
    assert r.value == pytest.approx(36)
    good = simplex_max([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18], warm=r.basis)
    assert good.value == pytest.approx(36) and good.iterations == 0

"""Inverse estimates, the Bari-Stechkin type condition and rate classification.

Everything here produces finite-range evidence.  Asymptotic statements
(``O(.)`` as ``n -> infinity``) are replaced by explicit numerical tests whose
thresholds are documented next to each function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .approx import best_approx_sequence
from .errors import ConfigError, DomainError, HypothesisError, WindowError
from .orlicz import NormKind, OrliczFamily
from .smoothness import DEFAULT_H_GRID, Multiplier, modulus
from .spectra import Spectrum

__all__ = [
    "Majorant",
    "InverseReport",
    "inverse_bound_general",
    "inverse_bound_alpha",
    "inverse_bounds",
    "ConditionB",
    "check_condition_B",
    "RateReport",
    "classify_rates",
    "Membership",
    "class_membership",
]

BOUNDED, GROWING = "BOUNDED", "GROWING"
BOTH_BOUNDED, BOTH_GROWING, INCONSISTENT = "BOTH-BOUNDED", "BOTH-GROWING", "INCONSISTENT"


@dataclass(frozen=True, eq=False)
class Majorant:
    """Candidate majorant ``omega`` on ``[0, 1]``."""

    func: Callable[[np.ndarray], np.ndarray]
    tag: str = "custom"
    r: float | None = None

    @classmethod
    def power(cls, r: float) -> "Majorant":
        if not r > 0:
            raise ConfigError(f"exponent r must be positive, got {r}")
        return cls(lambda t: np.asarray(t, dtype=float) ** r, "power", float(r))

    @classmethod
    def power_log(cls, r: float) -> "Majorant":
        """``t^r (1 + |ln t|)`` with the value 0 at ``t = 0``."""
        if not r > 0:
            raise ConfigError(f"exponent r must be positive, got {r}")

        def w(t):
            t = np.asarray(t, dtype=float)
            with np.errstate(divide="ignore", invalid="ignore"):
                out = t ** r * (1.0 - np.log(t))
            return np.where(t > 0, out, 0.0)

        return cls(w, "power_log", float(r))

    def __call__(self, t) -> np.ndarray:
        return np.asarray(self.func(np.asarray(t, dtype=float)), dtype=float)

    def validate(self, zero_tol: float = 0.3) -> list[str]:
        """Grid proxies for continuity, monotonicity, positivity and ``omega(0+) = 0``.

        Continuity: the largest increment between neighbouring points of a
        uniform grid must shrink when the grid is refined fourfold (or be
        negligible).  ``omega(0+) = 0``: ``omega(1e-6) <= zero_tol * omega(1)``
        and ``omega(1e-12) < omega(1e-6)``.
        """
        fails = []
        t = np.concatenate([np.geomspace(1e-12, 1e-3, 512), np.linspace(1e-3, 1.0, 4096)[1:]])
        w = self(t)
        if not np.all(np.isfinite(w)):
            return ["omega is not finite on (0, 1]"]
        top = float(self(np.array([1.0]))[0])
        if np.any(w <= 0):
            fails.append(f"omega vanishes at t = {t[np.argmax(w <= 0)]:.6g}")
        drops = np.flatnonzero(np.diff(w) < -1e-12 * max(top, 1e-300))
        if drops.size:
            fails.append(f"omega decreases near t = {t[drops[0]]:.6g}")

        def jump(N):
            return float(np.max(np.abs(np.diff(self(np.linspace(1e-6, 1.0, N))))))

        j1, j4 = jump(1 << 12), jump(1 << 14)
        if j4 > 1e-3 * top and j4 > 0.75 * j1:
            fails.append("omega looks discontinuous (increments do not shrink under refinement)")
        small, tiny = self(np.array([1e-6, 1e-12]))
        if not (small <= zero_tol * top and tiny < small):
            fails.append(f"omega(0+) does not look like 0 (omega(1e-6) = {small:.3g})")
        return fails


@dataclass(frozen=True)
class InverseReport:
    n: int
    lhs: float
    rhs: float
    slack: float
    passed: bool


def _check_window(spec: Spectrum, n: int):
    if not 1 <= n <= spec.K + 1:
        raise WindowError(f"need 1 <= n <= K+1 = {spec.K + 1}, got n={n}")


def _errors_upto(family, spec, n, kind) -> np.ndarray:
    return best_approx_sequence(family, spec, range(1, n + 1), kind)[:, 1]


def _require_monotone_peak(phi: Multiplier, tau: float, points: int = 1024):
    t = np.linspace(0.0, tau, points)
    v = np.asarray(phi(t), dtype=float)
    bad = np.flatnonzero(np.diff(v) < -1e-12 * max(phi.bound, 1.0))
    if bad.size:
        raise HypothesisError(f"phi is not nondecreasing on [0, tau]: drops after t = {t[bad[0]]:.6g}")
    if v[-1] < phi.bound * (1.0 - 1e-9):
        raise HypothesisError(f"phi(tau) = {v[-1]:.6g} is below max phi = {phi.bound:.6g}")


def inverse_bound_general(family: OrliczFamily, spec: Spectrum, phi: Multiplier, tau: float, n: int,
                          norm_kind=NormKind.LUXEMBURG, h_grid: int = DEFAULT_H_GRID) -> InverseReport:
    """``omega_phi(f, tau/n)`` against ``sum_nu [phi(tau nu/n) - phi(tau (nu-1)/n)] E_nu(f)``.

    Requires ``phi`` nondecreasing on ``[0, tau]`` with its global maximum at
    ``tau`` (checked on 1024 points).  PASS iff ``lhs <= rhs (1 + 1e-9)``.
    """
    kind = NormKind.parse(norm_kind)
    _check_window(spec, n)
    _require_monotone_peak(phi, tau)
    E = _errors_upto(family, spec, n, kind)
    grid = np.asarray(phi(tau * np.arange(n + 1) / n), dtype=float)
    rhs = float(np.diff(grid) @ E)
    lhs = modulus(spec, phi, tau / n, family, kind, h_grid)
    return InverseReport(n, lhs, rhs, rhs - lhs, bool(lhs <= rhs * (1.0 + 1e-9)))


def inverse_bound_alpha(family: OrliczFamily, spec: Spectrum, alpha: float, n: int,
                        norm_kind=NormKind.LUXEMBURG, h_grid: int = DEFAULT_H_GRID) -> InverseReport:
    """``omega_alpha(f, pi/n)`` against ``alpha (2 pi/n)^alpha sum_nu nu^(alpha-1) E_nu(f)``."""
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    kind = NormKind.parse(norm_kind)
    _check_window(spec, n)
    E = _errors_upto(family, spec, n, kind)
    nu = np.arange(1, n + 1, dtype=float)
    rhs = float(alpha * (2.0 * math.pi / n) ** alpha * (nu ** (alpha - 1.0) @ E))
    lhs = modulus(spec, Multiplier.classical(alpha), math.pi / n, family, kind, h_grid)
    return InverseReport(n, lhs, rhs, rhs - lhs, bool(lhs <= rhs * (1.0 + 1e-9)))


def inverse_bounds(family: OrliczFamily, spec: Spectrum, alpha: float, n: int,
                   norm_kind=NormKind.LUXEMBURG, h_grid: int = DEFAULT_H_GRID) -> tuple[InverseReport, InverseReport]:
    """Both inverse estimates for the classical multiplier (``tau = pi``), sharing one modulus.

    Returns ``(general, alpha)`` reports, equal to :func:`inverse_bound_general`
    and :func:`inverse_bound_alpha` for the same inputs.
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    kind = NormKind.parse(norm_kind)
    _check_window(spec, n)
    phi = Multiplier.classical(alpha)
    E = _errors_upto(family, spec, n, kind)
    lhs = modulus(spec, phi, math.pi / n, family, kind, h_grid)
    inc = np.diff(np.asarray(phi(math.pi * np.arange(n + 1) / n), dtype=float))
    nu = np.arange(1, n + 1, dtype=float)
    out = []
    for rhs in (float(inc @ E), float(alpha * (2.0 * math.pi / n) ** alpha * (nu ** (alpha - 1.0) @ E))):
        out.append(InverseReport(n, lhs, rhs, rhs - lhs, bool(lhs <= rhs * (1.0 + 1e-9))))
    return out[0], out[1]


@dataclass(frozen=True, eq=False)
class ConditionB:
    ns: np.ndarray
    R: np.ndarray
    growth: float  # R(n_max) / R(n_max / 4)
    verdict: str


def check_condition_B(omega: Majorant, alpha: float, n_max: int = 1 << 16) -> ConditionB:
    """Profile ``R(n) = sum_{v<=n} v^(alpha-1) omega(1/v) / (n^alpha omega(1/n))``.

    BOUNDED if ``R(n_max) / R(n_max/4) < 1.05``.  Logarithmic growth is slow,
    so ``n_max`` should stay large; the default is ``2^16``.
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if n_max < 64:
        raise DomainError(f"n_max must be >= 64, got {n_max}")
    fails = omega.validate()
    if fails:
        raise HypothesisError("majorant fails conditions 1)-4): " + "; ".join(fails))
    v = np.arange(1, int(n_max) + 1, dtype=float)
    w = omega(1.0 / v)
    R = np.cumsum(v ** (alpha - 1.0) * w) / (v ** alpha * w)
    growth = float(R[-1] / R[int(n_max) // 4 - 1])
    return ConditionB(v.astype(int), R, growth, BOUNDED if growth < 1.05 else GROWING)


def _slope(ns, values) -> float:
    x = np.log(1.0 / ns)
    y = np.log(values)
    return float(np.polyfit(x, y, 1)[0])


def _fit_points(n_range, spec) -> np.ndarray:
    ns = np.unique(np.asarray(list(n_range), dtype=int))
    if ns.size and (ns[0] < 1 or ns[-1] > spec.K + 1):
        raise WindowError(f"n range {ns[0]}..{ns[-1]} outside 1..K+1 = {spec.K + 1}")
    if ns.size < 8:
        raise DomainError("rate fits need at least 8 values of n (6 after dropping the two smallest)")
    return ns


@dataclass(frozen=True, eq=False)
class RateReport:
    beta_hat: float
    omega_slope: float
    predicted_slope: float
    log_flag: bool
    category: str
    ns: np.ndarray
    E: np.ndarray
    omega: np.ndarray


def classify_rates(family: OrliczFamily, spec: Spectrum, alpha: float, norm_kind=NormKind.LUXEMBURG,
                   n_range=None, h_grid: int = DEFAULT_H_GRID) -> RateReport:
    """Fit ``E_n ~ n^-beta`` and ``omega_alpha(f, 1/n) ~ n^-s`` on log-log axes.

    The two smallest ``n`` are dropped before least squares.  The predicted
    modulus slope is ``min(beta_hat, alpha)``; the logarithmic middle case is
    flagged when ``|beta_hat - alpha| < 0.05``.
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    kind = NormKind.parse(norm_kind)
    if n_range is None:
        n_range = np.unique(np.geomspace(8, min(128, spec.K + 1), 12).astype(int))
    ns = _fit_points(n_range, spec)
    E = best_approx_sequence(family, spec, ns, kind)[:, 1]
    if np.any(E <= 0):
        raise DomainError(f"E_n vanishes at n = {ns[np.argmax(E <= 0)]}; no decay rate to classify")
    phi = Multiplier.classical(alpha)
    om = np.array([modulus(spec, phi, 1.0 / n, family, kind, h_grid) for n in ns])
    fit = ns[2:]
    beta = _slope(fit, E[2:])
    slope = _slope(fit, om[2:])
    flag = abs(beta - alpha) < 0.05
    if flag:
        category = "O(t^alpha |ln t|)"
    elif beta < alpha:
        category = "O(t^beta)"
    else:
        category = "O(t^alpha)"
    return RateReport(beta, slope, min(beta, alpha), bool(flag), category, ns, E, om)


@dataclass(frozen=True, eq=False)
class Membership:
    e_sup: float
    omega_sup: float
    e_growth: float
    omega_growth: float
    verdict: str
    ns: np.ndarray
    e_ratio: np.ndarray
    omega_ratio: np.ndarray


def _quarter_growth(r: np.ndarray) -> float:
    q = max(1, r.size // 4)
    return float(np.max(r[-q:]) / np.max(r[:q]))


def class_membership(family: OrliczFamily, spec: Spectrum, alpha: float, omega: Majorant,
                     norm_kind=NormKind.LUXEMBURG, n_range=None, n_max: int = 1 << 16,
                     h_grid: int = DEFAULT_H_GRID) -> Membership:
    """Compare ``E_n / omega(1/n)`` with ``omega_alpha(f, 1/n) / omega(1/n)``.

    Each ratio sequence counts as growing when the max over its last quarter
    exceeds 1.2 times the max over its first quarter.  Refuses to run unless
    ``omega`` satisfies the summation condition (``check_condition_B``).
    """
    cond = check_condition_B(omega, alpha, n_max)
    if cond.verdict != BOUNDED:
        raise HypothesisError(
            f"majorant fails condition (B_alpha) for alpha={alpha} "
            f"(R grows by {cond.growth:.4f} over the last quarter of n <= {n_max})")
    kind = NormKind.parse(norm_kind)
    if n_range is None:
        n_range = np.unique(np.geomspace(8, min(128, spec.K + 1), 12).astype(int))
    ns = _fit_points(n_range, spec)
    w = omega(1.0 / ns)
    E = best_approx_sequence(family, spec, ns, kind)[:, 1]
    phi = Multiplier.classical(alpha)
    om = np.array([modulus(spec, phi, 1.0 / n, family, kind, h_grid) for n in ns])
    er, wr = E / w, om / w
    eg, wg = _quarter_growth(er), _quarter_growth(wr)
    e_grows, w_grows = eg > 1.2, wg > 1.2
    if e_grows and w_grows:
        verdict = BOTH_GROWING
    elif not e_grows and not w_grows:
        verdict = BOTH_BOUNDED
    else:
        verdict = INCONSISTENT
    return Membership(float(er.max()), float(wr.max()), eg, wg, verdict, ns, er, wr)

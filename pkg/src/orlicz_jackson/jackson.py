"""Sharp Jackson-type constants and direct-inequality checks.

For a multiplier ``phi``, exponent ``p``, degree ``n`` and ``tau > 0`` the
sharp constant is ``C = J^(-1/p)`` where

    J = inf over rho in the simplex of  max_{u in [0, tau]} sum_j rho_j phi^p(j u / n)

with ``j >= n``.  Discretising ``u`` on a uniform grid and truncating
``j <= j_max`` turns this into a linear program.  Substituting
``x = rho / t`` gives ``max sum x_j  s.t.  A x <= 1, x >= 0`` with
``A[i, j] = phi^p(j u_i / n)``, whose optimum is ``C^p``.  The LP dual,
normalised to unit mass, is a discrete extremal measure.

Any single measure ``v`` also certifies a (non-sharp) constant through
``((v(tau) - v(0)) / I(v))^(1/p)`` with ``I(v) = inf_{k >= n} int phi^p(k u / n) dv``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations

import numpy as np

from .errors import DegenerateMeasureError, DomainError
from .orlicz import NormKind, OrliczFamily
from .approx import best_approx
from .simplex import simplex_max
from .smoothness import DEFAULT_H_GRID, Multiplier, modulus, validate_multiplier
from .spectra import Spectrum

__all__ = [
    "DiscreteMeasure",
    "IFunctional",
    "i_functional",
    "ratio_upper_bound",
    "SharpConstantResult",
    "sharp_constant_lp",
    "lp_witness",
    "tabulated_constant",
    "DirectReport",
    "verify_direct",
    "SharpnessResult",
    "sharpness_search",
]

DEFAULT_GRID = 512


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Nondecreasing step function on ``[0, tau]`` with jumps ``weights`` at ``nodes``."""

    tau: float
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.nodes, dtype=float).ravel()
        w = np.asarray(self.weights, dtype=float).ravel()
        if not self.tau > 0:
            raise DomainError(f"tau must be positive, got {self.tau}")
        if u.shape != w.shape or u.size == 0:
            raise DomainError("nodes and weights must be nonempty and of equal length")
        if np.any(np.diff(u) <= 0) or u[0] < 0 or u[-1] > self.tau * (1 + 1e-12):
            raise DomainError("nodes must be strictly ascending within [0, tau]")
        if np.any(w < 0) or not w.sum() > 0:
            raise DomainError("weights must be nonnegative with positive total")
        object.__setattr__(self, "nodes", u)
        object.__setattr__(self, "weights", w)

    @property
    def total(self) -> float:
        return float(self.weights.sum())

    @classmethod
    def uniform(cls, tau: float, m: int = 64) -> "DiscreteMeasure":
        """``m`` equal masses summing to 1 at the midpoints of ``[0, tau]``."""
        return cls(tau, tau * (np.arange(m) + 0.5) / m, np.full(m, 1.0 / m))

    @classmethod
    def dirac(cls, tau: float, u: float, mass: float = 1.0) -> "DiscreteMeasure":
        return cls(tau, np.array([u]), np.array([mass]))


@dataclass(frozen=True)
class IFunctional:
    value: float
    k: int
    k_max: int
    value_2x: float  # same infimum over [n, 2 k_max]


def _profile(phi: Multiplier, p: float, n: int, ks, nodes) -> np.ndarray:
    return np.asarray(phi(np.outer(ks, nodes) / n), dtype=float) ** p


def i_functional(phi: Multiplier, p: float, n: int, measure: DiscreteMeasure,
                 k_max: int | None = None) -> IFunctional:
    """``min_{n <= k <= k_max} sum_i phi^p(k u_i / n) w_i`` and the minimising ``k``.

    ``k_max`` defaults to ``64 n``; the minimum over ``[n, 2 k_max]`` is
    reported alongside as a truncation check.
    """
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    k_max = 64 * n if k_max is None else int(k_max)
    if k_max < n:
        raise DomainError(f"k_max={k_max} < n={n}")
    ks = np.arange(n, 2 * k_max + 1)
    vals = _profile(phi, p, n, ks, measure.nodes) @ measure.weights
    head = vals[: k_max - n + 1]
    # rounding separates exact ties; report the smallest minimising k
    slack = 1e-12 * measure.total * max(phi.bound, 1.0) ** p
    i = int(np.flatnonzero(head <= head.min() + slack)[0])
    return IFunctional(float(head[i]), int(ks[i]), k_max, float(vals.min()))


def ratio_upper_bound(phi: Multiplier, p: float, n: int, measure: DiscreteMeasure,
                      k_max: int | None = None) -> float:
    """Constant ``((v(tau) - v(0)) / I(v))^(1/p)`` certified by one measure."""
    I = i_functional(phi, p, n, measure, k_max)
    if I.value <= 1e-14 * measure.total * max(phi.bound, 1.0) ** p:
        raise DegenerateMeasureError(
            f"I-functional vanishes (at k={I.k}); this measure certifies no constant")
    return (measure.total / I.value) ** (1.0 / p)


@dataclass(frozen=True, eq=False)
class SharpConstantResult:
    J: float
    C: float
    p: float
    n: int
    tau: float
    frequencies: np.ndarray
    rho: np.ndarray
    measure: DiscreteMeasure
    diagnostics: dict = field(default_factory=dict)


def _column_generation(A: np.ndarray, start: np.ndarray, rule: str, batch: int = 20,
                       tol: float = 1e-10):
    """Solve ``max 1.x, A x <= 1, x >= 0`` over a growing subset of columns.

    Neighbouring columns of ``A`` are nearly parallel, which wrecks the
    conditioning of a simplex run over all of them.  The restricted program
    starts from the well separated columns ``start``; each round prices every
    column with the current duals and adds the ``batch`` most attractive
    ones, warm-starting from the previous basis.  On exit no column has
    positive reduced cost, so the duals are feasible for the full program.
    """
    m, N = A.shape
    S = np.unique(start)
    warm = None
    rounds = iterations = 0
    while True:
        lp = simplex_max(np.ones(S.size), A[:, S], np.ones(m), rule=rule, warm=warm)
        rounds += 1
        iterations += lp.iterations
        gain = 1.0 - A.T @ lp.y
        gain[S] = -np.inf
        order = np.argsort(-gain)[:batch]
        new = order[gain[order] > tol]
        if new.size == 0:
            break
        S2 = np.union1d(S, new)
        pos = np.searchsorted(S2, S)
        warm = np.where(lp.basis < S.size, pos[np.minimum(lp.basis, S.size - 1)],
                        lp.basis - S.size + S2.size)
        S = S2
    x = np.zeros(N)
    x[S] = lp.x
    return x, lp.y, lp.value, lp.dual_value, iterations, rounds, lp.rule_switched


def sharp_constant_lp(phi: Multiplier, p: float, n: int, tau: float, grid: int = DEFAULT_GRID,
                      j_max: int | None = None, sensitivity: bool = False,
                      rule: str = "steepest", method: str = "colgen") -> SharpConstantResult:
    """Solve the discretised minimax program for the sharp constant.

    ``grid`` nodes ``u_i = tau i / grid`` (``i >= 1``; ``u = 0`` is a vacuous
    constraint) and frequencies ``n <= j <= j_max`` (default ``64 n``).  With
    ``sensitivity=True`` the program is re-solved with both parameters
    doubled and the resulting constant is stored in ``diagnostics``.

    ``method="colgen"`` runs the simplex on a growing set of columns
    (see :func:`_column_generation`); ``method="full"`` hands every column to
    the simplex at once, which is only well conditioned for small ``n``.
    """
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    if n < 1 or not tau > 0:
        raise DomainError("need n >= 1 and tau > 0")
    j_max = 64 * n if j_max is None else int(j_max)
    if grid < 128:
        raise DomainError(f"grid must be >= 128, got {grid}")
    if j_max < 4 * n:
        raise DomainError(f"j_max must be >= 4n = {4 * n}, got {j_max}")
    validate_multiplier(phi, 512).raise_if_invalid()

    u = tau * np.arange(1, grid + 1) / grid
    js = np.arange(n, j_max + 1)
    A = _profile(phi, p, n, js, u).T
    if method == "colgen":
        x, y, V, dual, iterations, rounds, switched = _column_generation(A, np.arange(0, js.size, n), rule)
    elif method == "full":
        lp = simplex_max(np.ones(js.size), A, np.ones(grid), rule=rule)
        x, y, V, dual, iterations, rounds, switched = lp.x, lp.y, lp.value, lp.dual_value, lp.iterations, 1, lp.rule_switched
    else:
        raise DomainError(f"unknown method {method!r}")
    if not V > 0:
        raise DomainError("degenerate program: optimum is zero")
    J = 1.0 / V
    C = V ** (1.0 / p)
    rho = x / V
    mass = y.sum()
    active = y > 1e-14 * mass
    measure = DiscreteMeasure(tau, u[active], y[active] / mass)
    coverage = measure.weights @ _profile(phi, p, n, js, measure.nodes).T
    tight = js[coverage <= J * (1.0 + 1e-9)]
    diagnostics = {
        "grid": grid,
        "j_max": j_max,
        "method": method,
        "iterations": iterations,
        "rounds": rounds,
        "bland_fallback": switched,
        "duality_gap": abs(V - dual),
        "support_size": int(np.count_nonzero(rho > 0)),
        "argmin_frequencies": tight,
        "max_profile": float(np.max(A @ rho)),
    }
    if sensitivity:
        fine = sharp_constant_lp(phi, p, n, tau, 2 * grid, 2 * j_max, rule=rule, method=method)
        diagnostics["sensitivity"] = {"grid": 2 * grid, "j_max": 2 * j_max, "C": fine.C,
                                      "relative_change": fine.C / C - 1.0}
    return SharpConstantResult(J, C, float(p), int(n), float(tau), js, rho, measure, diagnostics)


def lp_witness(result: SharpConstantResult) -> Spectrum:
    """Spectrum with ``|c_j|^p = rho_j``: the many-frequency near-extremal function."""
    K = int(result.frequencies[-1])
    c = np.zeros(2 * K + 1)
    c[K + result.frequencies] = np.maximum(result.rho, 0.0) ** (1.0 / result.p)
    return Spectrum(c, "LP extremal weights")


@lru_cache(maxsize=None)
def _constant_table() -> dict:
    table = {}
    with resources.files(__package__).joinpath("data/sharp_constants.csv").open() as fh:
        for row in csv.DictReader(fh):
            key = (float(row["alpha"]), float(row["p"]), int(row["n"]),
                   int(row["grid"]), int(row["j_max"]))
            table[key] = float(row["C"])
    return table


def tabulated_constant(alpha: float, p: float, n: int, grid: int = DEFAULT_GRID,
                       j_max: int | None = None) -> float:
    """Precomputed LP constant for the classical multiplier with ``tau = pi``.

    The table ships with the package (``data/sharp_constants.csv``) and is
    produced by :func:`sharp_constant_lp`; see ``demos/build_constant_table.py``.
    Raises ``KeyError`` for parameters that were not tabulated.
    """
    j_max = 64 * n if j_max is None else j_max
    return _constant_table()[(float(alpha), float(p), int(n), int(grid), int(j_max))]


@dataclass(frozen=True)
class DirectReport:
    n: int
    lhs: float
    modulus: float
    constant: float
    factor: float
    rhs: float
    slack: float
    passed: bool
    path: str


def verify_direct(family: OrliczFamily | None, spec: Spectrum, n: int, phi: Multiplier, tau: float,
                  p: float | None = None, norm_kind=NormKind.ORLICZ, constant_source: str = "lp",
                  measure: DiscreteMeasure | None = None, constant: float | None = None,
                  grid: int = DEFAULT_GRID, j_max: int | None = None,
                  h_grid: int = DEFAULT_H_GRID) -> DirectReport:
    """Check ``E_n(f) <= c * omega_phi(f, tau / n)``.

    With ``p`` given the norms are ``l_p`` norms and ``c = C_{n,phi,p}``.
    Otherwise ``family`` is used with ``c = C_{n,phi,1}`` for the Orlicz norm
    and ``c = 2 C_{n,phi,1}`` for the Luxemburg norm.  The constant comes from
    the LP (``constant_source="lp"``), from a single ``measure``
    (``"measure"``), or is passed in directly.  PASS iff
    ``rhs - lhs >= -1e-4 rhs``.
    """
    kind = NormKind.parse(norm_kind)
    if p is not None:
        if p < 1:
            raise DomainError(f"p must be >= 1, got {p}")
        fam = OrliczFamily.power(spec.K, p)
        kind, factor, cp, path = NormKind.LUXEMBURG, 1.0, float(p), f"S^{p:g}"
    else:
        if family is None:
            raise DomainError("general path needs an Orlicz family")
        fam, cp = family, 1.0
        factor = 1.0 if kind is NormKind.ORLICZ else 2.0
        path = f"general/{kind.value}"
    if constant is None:
        if constant_source == "lp":
            constant = sharp_constant_lp(phi, cp, n, tau, grid, j_max).C
        elif constant_source == "measure":
            if measure is None:
                measure = DiscreteMeasure.uniform(tau, 64)
            constant = ratio_upper_bound(phi, cp, n, measure, j_max)
        else:
            raise DomainError(f"unknown constant source {constant_source!r}")
    lhs = best_approx(fam, spec, n, kind)
    omega = modulus(spec, phi, tau / n, fam, kind, h_grid)
    rhs = factor * constant * omega
    slack = rhs - lhs
    return DirectReport(n, lhs, omega, float(constant), factor, rhs, slack,
                        bool(slack >= -1e-4 * rhs), path)


@dataclass(frozen=True, eq=False)
class SharpnessResult:
    ratio: float
    witness: Spectrum
    k1: int
    k2: int
    theta: float


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def sharpness_search(phi: Multiplier, p: float, n: int, tau: float, budget: int = 60,
                     j_max: int | None = None, h_grid: int = DEFAULT_H_GRID) -> SharpnessResult:
    """Best ``E_n / omega_phi(., tau/n)`` in ``S^p`` over two-frequency spectra.

    Every pair ``n <= k1 < k2 <= j_max`` (default ``j_max = 8 n``) is tried with
    ``|c_k1|^p = theta``, ``|c_k2|^p = 1 - theta``.  The sup over ``h`` of the
    mixed profile is convex in ``theta``, so ``budget`` golden-section steps
    locate the best mass split; the winner is re-evaluated with the full
    modulus routine.
    """
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    j_max = 8 * n if j_max is None else int(j_max)
    ks = np.arange(n, j_max + 1)
    h = np.linspace(0.0, tau / n, h_grid)
    P = np.asarray(phi(np.outer(ks, h)), dtype=float) ** p
    pairs = np.array(list(combinations(range(ks.size), 2)))
    P1, P2 = P[pairs[:, 0]], P[pairs[:, 1]]

    def peak(theta):
        return np.max(theta[:, None] * P1 + (1.0 - theta[:, None]) * P2, axis=1)

    a = np.zeros(len(pairs))
    b = np.ones(len(pairs))
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = peak(x1), peak(x2)
    for _ in range(budget):
        left = f1 <= f2
        b = np.where(left, x2, b)
        a = np.where(left, a, x1)
        nx1 = np.where(left, b - _GOLDEN * (b - a), x2)
        nx2 = np.where(left, x1, a + _GOLDEN * (b - a))
        fe = peak(np.where(left, nx1, nx2))
        f1, f2 = np.where(left, fe, f2), np.where(left, f1, fe)
        x1, x2 = nx1, nx2
    theta = 0.5 * (a + b)
    cands = np.column_stack([peak(theta), peak(np.zeros_like(theta)), peak(np.ones_like(theta))])
    thetas = np.column_stack([theta, np.zeros_like(theta), np.ones_like(theta)])
    flat = int(np.argmin(cands))
    i, j = divmod(flat, 3)
    th = float(thetas[i, j])
    k1, k2 = int(ks[pairs[i, 0]]), int(ks[pairs[i, 1]])

    c = np.zeros(2 * k2 + 1)
    c[k2 + k1] = th ** (1.0 / p)
    c[k2 + k2] = (1.0 - th) ** (1.0 / p)
    witness = Spectrum(c, f"two-frequency witness k={k1},{k2}")
    fam = OrliczFamily.power(k2, p)
    En = best_approx(fam, witness, n, NormKind.LUXEMBURG)
    omega = modulus(witness, phi, tau / n, fam, NormKind.LUXEMBURG, h_grid)
    return SharpnessResult(En / omega, witness, k1, k2, th)

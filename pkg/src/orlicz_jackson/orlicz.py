"""Musielak-Orlicz families on coefficient sequences.

A family assigns a convex nondecreasing ``M_k`` with ``M_k(0) = 0`` to every
index ``|k| <= K``.  Two norms are built from it:

* the Luxemburg norm ``inf{a > 0 : sum_k M_k(|c_k| / a) <= 1}``;
* the Orlicz norm ``sup{sum_k lam_k |c_k| : sum_k M~_k(lam_k) <= 1}``, which is
  computed through the Amemiya formula
  ``inf_{kappa > 0} (1 + sum_k M_k(kappa |c_k|)) / kappa``.

Power families (``M_k(u) = mu_k u^p_k``) are solved by monotone Newton
iterations in log scale; families given by arbitrary callables fall back to
bracketing plus bisection (Luxemburg) and golden-section search (Orlicz).
All solvers are vectorised over rows so that a whole grid of sequences is
normed in one call.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError, DomainError, NonConvergenceError
from .spectra import Spectrum

__all__ = [
    "NormKind",
    "OrliczFamily",
    "INFINITY",
    "modular",
    "luxemburg_norm",
    "orlicz_norm",
    "norm",
    "norms",
    "conjugate",
    "DualValue",
    "dual_feasible_value",
    "dual_ascent",
]

#: Marker returned by :func:`conjugate` when the supremum diverges.
INFINITY = math.inf

REL_TOL = 1e-10
MAX_ITER = 200
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class NormKind(enum.Enum):
    LUXEMBURG = "luxemburg"
    ORLICZ = "orlicz"

    @classmethod
    def parse(cls, value) -> "NormKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ConfigError(f"unknown norm kind {value!r}; use 'luxemburg' or 'orlicz'") from None


def _broadcast(values, size, name) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0:
        arr = np.full(size, float(arr))
    arr = arr.ravel()
    if arr.size != size:
        raise ConfigError(f"{name} needs 1 or {size} values, got {arr.size}")
    return arr


def scaled_power_weight(p: float) -> float:
    """Weight ``mu`` making ``mu u^p`` conjugate to ``v^q`` (``1/p + 1/q = 1``)."""
    if p == 1.0:
        return 1.0
    q = p / (p - 1.0)
    return (p ** (-1.0 / p) * q ** (-1.0 / q)) ** p


@dataclass(frozen=True, eq=False)
class OrliczFamily:
    """Indexed family ``{M_k}``, ``|k| <= K``.

    Use the constructors :meth:`power`, :meth:`scaled_power` and
    :meth:`custom` rather than the raw initializer.
    """

    K: int
    kind: str
    p: np.ndarray | None = None
    mu: np.ndarray | None = None
    funcs: tuple | None = None
    conjugates: tuple | None = None

    def __post_init__(self):
        if self.K < 0:
            raise ConfigError(f"window radius must be >= 0, got {self.K}")
        size = 2 * self.K + 1
        if self.kind in ("power", "scaled_power"):
            p = _broadcast(self.p, size, "exponent p")
            mu = _broadcast(self.mu, size, "weight mu")
            if np.any(~np.isfinite(p)) or np.any(p < 1.0):
                raise ConfigError("power exponents must be finite and >= 1")
            if np.any(~np.isfinite(mu)) or np.any(mu < 0.0):
                raise ConfigError("power weights must be finite and >= 0")
            p.setflags(write=False)
            mu.setflags(write=False)
            object.__setattr__(self, "p", p)
            object.__setattr__(self, "mu", mu)
        elif self.kind == "custom":
            funcs = tuple(self.funcs)
            if len(funcs) != size or not all(callable(f) for f in funcs):
                raise ConfigError(f"custom family needs {size} callables")
            object.__setattr__(self, "funcs", funcs)
            conj = self.conjugates
            conj = (None,) * size if conj is None else tuple(conj)
            if len(conj) != size:
                raise ConfigError(f"custom family needs {size} conjugates (or None)")
            object.__setattr__(self, "conjugates", conj)
            problems = self.check_invariants()
            if problems:
                raise ConfigError("not an Orlicz family: " + "; ".join(problems))
        else:
            raise ConfigError(f"unknown family kind {self.kind!r}")

    # -- constructors -----------------------------------------------------
    @classmethod
    def power(cls, K: int, p=2.0, mu=1.0) -> "OrliczFamily":
        """``M_k(u) = mu_k u^p_k``; scalars broadcast to every index."""
        return cls(int(K), "power", p, mu)

    @classmethod
    def scaled_power(cls, K: int, p=2.0) -> "OrliczFamily":
        """``M_k(u) = (p^{-1/p} q^{-1/q})^p u^p``, whose conjugate is ``v^q``.

        With this normalisation the Orlicz norm is exactly the ``l_p`` norm.
        """
        p_arr = _broadcast(p, 2 * int(K) + 1, "exponent p")
        mu = np.array([scaled_power_weight(float(x)) for x in p_arr])
        return cls(int(K), "scaled_power", p_arr, mu)

    @classmethod
    def custom(cls, K: int, funcs: Callable | Sequence[Callable], conjugates=None) -> "OrliczFamily":
        """Family from vectorised callables ``u -> M_k(u)`` (one per index, or shared)."""
        size = 2 * int(K) + 1
        if callable(funcs):
            funcs = (funcs,) * size
        if conjugates is not None and callable(conjugates):
            conjugates = (conjugates,) * size
        return cls(int(K), "custom", funcs=tuple(funcs), conjugates=conjugates)

    # -- evaluation -------------------------------------------------------
    @property
    def is_power(self) -> bool:
        return self.kind != "custom"

    def column(self, k: int) -> int:
        if abs(k) > self.K:
            raise DomainError(f"index k={k} outside family window K={self.K}")
        return k + self.K

    def evaluate(self, k: int, u) -> np.ndarray:
        """``M_k(u)`` for a scalar index and array ``u >= 0``."""
        c = self.column(k)
        u = np.asarray(u, dtype=float)
        if self.is_power:
            return self.mu[c] * u ** self.p[c]
        return np.asarray(self.funcs[c](u), dtype=float)

    def _evaluate_cols(self, U: np.ndarray, cols: np.ndarray) -> np.ndarray:
        if self.is_power:
            return self.mu[cols] * U ** self.p[cols]
        out = np.empty_like(U)
        groups: dict[int, list[int]] = {}
        for j, c in enumerate(cols):
            groups.setdefault(id(self.funcs[c]), []).append(j)
        for idx in groups.values():
            f = self.funcs[cols[idx[0]]]
            out[..., idx] = f(U[..., idx])
        return out

    def check_invariants(self, grid: np.ndarray | None = None) -> list[str]:
        """Grid check of ``M(0)=0``, nonnegativity, monotonicity and midpoint convexity."""
        u = np.linspace(0.0, 10.0, 201) if grid is None else np.asarray(grid, dtype=float)
        problems = []
        seen = set()
        for k in range(-self.K, self.K + 1):
            f = self.funcs[k + self.K] if not self.is_power else None
            if f is not None and id(f) in seen:
                continue
            if f is not None:
                seen.add(id(f))
            with np.errstate(all="ignore"):
                m = self.evaluate(k, u)
                m0 = float(self.evaluate(k, 0.0))
                mid = self.evaluate(k, 0.5 * (u[:-1] + u[1:]))
            scale = 1e-12 * (1.0 + np.abs(m).max(initial=0.0))
            if m0 != 0.0:
                problems.append(f"M_{k}(0) = {m0} != 0")
            if np.any(m < -scale) or np.any(np.isnan(m)):
                problems.append(f"M_{k} negative or undefined on the grid")
            if np.any(np.diff(m) < -scale):
                problems.append(f"M_{k} not nondecreasing")
            # midpoints catch kinks between nodes, falling slopes kinks at nodes
            slopes = np.diff(m) / np.diff(u)
            if np.any(mid > 0.5 * (m[:-1] + m[1:]) + scale) or np.any(np.diff(slopes) < -scale / np.diff(u).min()):
                problems.append(f"M_{k} not convex")
        return problems


# ---------------------------------------------------------------------------
# Batch machinery: every solver works on an array of magnitudes of shape
# (rows, 2Ks+1) and returns one value per row.

def _as_magnitudes(family: OrliczFamily, coeffs) -> tuple[np.ndarray, np.ndarray]:
    """Return (magnitude matrix restricted to nonzero columns, family columns)."""
    if isinstance(coeffs, Spectrum):
        A = coeffs.magnitudes[None, :]
    else:
        A = np.abs(np.asarray(coeffs))
        if A.ndim == 1:
            A = A[None, :]
    width = A.shape[-1]
    if width % 2 != 1:
        raise ConfigError(f"coefficient rows must have odd length, got {width}")
    Ks = (width - 1) // 2
    if Ks > family.K:
        raise ConfigError(f"coefficient window K={Ks} exceeds family window K={family.K}")
    cols = np.arange(-Ks, Ks + 1) + family.K
    keep = np.any(A != 0, axis=0)
    if not np.all(np.isfinite(A)):
        raise DomainError("non-finite coefficients")
    return np.ascontiguousarray(A[:, keep], dtype=float), cols[keep]


def _modular_rows(family, A, cols, a) -> np.ndarray:
    with np.errstate(over="ignore", invalid="ignore"):
        val = family._evaluate_cols(A / a[:, None], cols).sum(axis=1)
    return np.where(np.isnan(val), np.inf, val)


def _log_terms(family, A, cols):
    """``log(mu_k |c_k|^p_k)`` with -inf for vanishing terms, and the exponents."""
    p = np.broadcast_to(family.p[cols], A.shape)
    mu = family.mu[cols]
    with np.errstate(divide="ignore"):
        L = np.log(mu)[None, :] + p * np.log(A)
    return L, p


def _logsumexp(L, live) -> np.ndarray:
    top = np.max(np.where(live, L, -np.inf), axis=1)
    with np.errstate(under="ignore"):
        s = np.where(live, np.exp(np.where(live, L - top[:, None], 0.0)), 0.0).sum(axis=1)
    return top + np.log(s)


def _luxemburg_power(family, A, cols) -> np.ndarray:
    # m(t) = sum exp(L - p t) is convex decreasing in t = log a; Newton from a
    # start left of the root increases monotonically.
    L, p = _log_terms(family, A, cols)
    live = np.isfinite(L)
    out = np.zeros(A.shape[0])
    rows = np.any(live, axis=1)
    if not np.any(rows):
        return out
    L, p, live = L[rows], p[rows], live[rows]
    # Start at t0 = lse / pbar with pbar the exponent mean under the weights
    # w = exp(L - lse).  Jensen gives m(t0) = sum w exp(lse (1 - p / pbar)) >= 1,
    # so t0 sits left of the root; it is exact for constant p.
    # Exponent arguments are floored at -700: exp underflow is very slow in
    # numpy and floored terms (< 1e-304 each) cannot move a sum converging to 1.
    # Converged rows drop out of the iteration.
    L = np.where(live, L, -1e300)
    p = np.ascontiguousarray(p)
    lse = _logsumexp(L, live)
    w = np.exp(np.maximum(L - lse[:, None], -700.0))
    t = lse * w.sum(axis=1) / np.einsum("ij,ij->i", p, w)
    act = np.arange(t.size)
    for _ in range(MAX_ITER):
        full = act.size == t.size
        La, pa, ta = (L, p, t.copy()) if full else (L[act], p[act], t[act])
        e = np.exp(np.maximum(La - pa * ta[:, None], -700.0))
        m = e.sum(axis=1)
        dm = np.einsum("ij,ij->i", pa, e)
        step = (m - 1.0) / dm
        t[act] = ta + np.maximum(step, 0.0)
        act = act[step > 1e-15 * np.maximum(1.0, np.abs(ta))]
        if act.size == 0:
            break
    else:
        raise NonConvergenceError("Luxemburg Newton iteration did not converge")
    out[rows] = np.exp(t)
    return out


def _orlicz_power(family, A, cols) -> np.ndarray:
    # Stationarity of exp(-t)(1 + sum exp(L + p t)) is h(t) = sum (p-1) exp(L + p t) - 1 = 0,
    # increasing and convex in t; Newton from the right converges monotonically.
    L, p = _log_terms(family, A, cols)
    live = np.isfinite(L)
    out = np.zeros(A.shape[0])
    lin = np.where(live & (p == 1.0), np.exp(np.where(live, L, 0.0)), 0.0).sum(axis=1)
    sup = live & (p > 1.0)
    rows = np.any(sup, axis=1)
    out[~rows] = lin[~rows]  # only linear terms: infimum approached as kappa -> inf
    if not np.any(rows):
        return out
    L, p, live, sup = L[rows], p[rows], live[rows], sup[rows]
    with np.errstate(divide="ignore", invalid="ignore"):
        Ls = np.where(sup, L + np.log(np.where(sup, p - 1.0, 1.0)), -np.inf)
        t = np.min(np.where(sup, -Ls / p, np.inf), axis=1)
    # any start with h(t) >= 0 works; log-sum-exp candidates are exact for constant p
    lse = _logsumexp(Ls, sup)
    for c in (-lse / np.max(np.where(sup, p, 0.0), axis=1), -lse / np.min(np.where(sup, p, np.inf), axis=1)):
        with np.errstate(under="ignore", over="ignore"):
            h = np.where(sup, np.exp(np.where(sup, Ls + p * c[:, None], 0.0)), 0.0).sum(axis=1)
        t = np.where((h >= 1.0 - 1e-12) & (c < t), c, t)
    for _ in range(MAX_ITER):
        with np.errstate(under="ignore", over="ignore"):
            e = np.where(sup, np.exp(np.where(sup, Ls + p * t[:, None], 0.0)), 0.0)
        h = e.sum(axis=1) - 1.0
        dh = (p * e).sum(axis=1)
        step = h / dh
        t = t - np.maximum(step, 0.0)
        if np.all(step <= 1e-15 * np.maximum(1.0, np.abs(t))):
            break
    else:
        raise NonConvergenceError("Orlicz (Amemiya) Newton iteration did not converge")
    with np.errstate(under="ignore"):
        terms = np.where(live, np.exp(np.where(live, L + (p - 1.0) * t[:, None], 0.0)), 0.0)
    out[rows] = np.exp(-t) + terms.sum(axis=1)
    return out


def _luxemburg_bisect(family, A, cols, rtol=REL_TOL) -> np.ndarray:
    rows = A.shape[0]
    out = np.zeros(rows)
    live = np.any(A > 0, axis=1)
    if not np.any(live):
        return out
    A = A[live]
    hi = A.max(axis=1)
    for _ in range(MAX_ITER):
        bad = _modular_rows(family, A, cols, hi) > 1.0
        if not np.any(bad):
            break
        hi = np.where(bad, 2.0 * hi, hi)
    else:
        r = int(np.argmax(bad))
        with np.errstate(over="ignore", invalid="ignore"):
            vals = family._evaluate_cols(A[r] / hi[r], cols)
        k = int(cols[int(np.nanargmax(vals))]) - family.K
        raise NonConvergenceError(
            f"modular never drops to 1 within the bracket cap; offending index k={k} "
            f"(M_k bounded or undefined?)")
    lo = hi.copy()
    tiny = np.zeros(lo.shape, dtype=bool)
    for _ in range(MAX_ITER):
        ok = (_modular_rows(family, A, cols, lo) <= 1.0) & ~tiny
        if not np.any(ok):
            break
        hi = np.where(ok, lo, hi)
        lo = np.where(ok, 0.5 * lo, lo)
        tiny |= lo < 1e-300
    res = np.where(tiny, 0.0, hi)
    for _ in range(MAX_ITER):
        act = ~tiny & (hi > lo * (1.0 + rtol))
        if not np.any(act):
            break
        mid = np.sqrt(lo * hi)
        ok = _modular_rows(family, A, cols, mid) <= 1.0
        hi = np.where(act & ok, mid, hi)
        lo = np.where(act & ~ok, mid, lo)
    else:
        raise NonConvergenceError("Luxemburg bisection hit the iteration cap")
    res = np.where(tiny, 0.0, hi)
    out[live] = res
    return out


def _amemiya_rows(family, A, cols, t) -> np.ndarray:
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        k = np.exp(t)
        g = (1.0 + family._evaluate_cols(A * k[:, None], cols).sum(axis=1)) / k
    return np.where(np.isnan(g), np.inf, g)


_OFFSETS = np.concatenate([-(2.0 ** np.arange(9, -1, -1)), [0.0], 2.0 ** np.arange(10)])


def _orlicz_golden(family, A, cols, rtol=REL_TOL) -> np.ndarray:
    rows = A.shape[0]
    out = np.zeros(rows)
    live = np.any(A > 0, axis=1)
    if not np.any(live):
        return out
    A = A[live]
    t0 = -np.log(A.max(axis=1))
    T = t0[:, None] + _OFFSETS[None, :]
    G = np.column_stack([_amemiya_rows(family, A, cols, T[:, j]) for j in range(T.shape[1])])
    if np.any(~np.isfinite(G.min(axis=1))):
        raise NonConvergenceError("Amemiya functional is infinite for every kappa (divergent modular)")
    j = np.argmin(G, axis=1)
    r = np.arange(A.shape[0])
    a = T[r, np.maximum(j - 1, 0)]
    b = T[r, np.minimum(j + 1, T.shape[1] - 1)]
    best = G[r, j]
    width = float(np.max(b - a))
    # x-tolerance giving ~rtol relative accuracy near a smooth minimum
    n_iter = int(math.ceil(math.log(max(width, 1e-300) / (1e-3 * math.sqrt(rtol))) / -math.log(_GOLDEN)))
    n_iter = min(max(n_iter, 1), MAX_ITER)
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1 = _amemiya_rows(family, A, cols, x1)
    f2 = _amemiya_rows(family, A, cols, x2)
    for _ in range(n_iter):
        left = f1 <= f2
        b = np.where(left, x2, b)
        a = np.where(left, a, x1)
        nx1 = np.where(left, b - _GOLDEN * (b - a), x2)
        nx2 = np.where(left, x1, a + _GOLDEN * (b - a))
        fnew = _amemiya_rows(family, A, cols, np.where(left, nx1, nx2))
        f1, f2 = np.where(left, fnew, f2), np.where(left, f1, fnew)
        x1, x2 = nx1, nx2
        best = np.minimum(best, np.minimum(f1, f2))
    out[live] = best
    return out


def norm_from_power_sum(p: float, S, kind) -> np.ndarray:
    """Norms of sequences with ``S = sum_k mu_k |c_k|^p`` under a single exponent ``p``.

    Luxemburg: ``S^(1/p)``.  Orlicz: the Amemiya infimum sits at
    ``kappa^p = 1 / ((p-1) S)``, giving ``p/(p-1) ((p-1) S)^(1/p)``, and
    ``S`` itself when ``p = 1``.
    """
    S = np.asarray(S, dtype=float)
    if NormKind.parse(kind) is NormKind.LUXEMBURG:
        return S ** (1.0 / p)
    if p == 1.0:
        return S.copy()
    return p / (p - 1.0) * ((p - 1.0) * S) ** (1.0 / p)


def single_exponent(family: OrliczFamily) -> float | None:
    """The common exponent of a power family, or None."""
    if family.is_power and np.all(family.p == family.p[0]):
        return float(family.p[0])
    return None


def _power_closed(family, A, cols, kind) -> np.ndarray:
    p = float(family.p[cols[0]])
    scale = A.max(axis=1)
    safe = np.where(scale > 0, scale, 1.0)
    S = (A / safe[:, None]) ** p @ family.mu[cols]
    return np.where(scale > 0, safe * norm_from_power_sum(p, S, kind), 0.0)


def norms(family: OrliczFamily, coeffs, kind=NormKind.LUXEMBURG, method: str = "auto") -> np.ndarray:
    """Norm of every row of a magnitude matrix (or of a single spectrum).

    ``method`` is ``"auto"`` (closed forms when one exponent serves every
    index, Newton for other power families, otherwise the generic route),
    ``"newton"`` or ``"generic"`` (bisection / golden section).
    """
    kind = NormKind.parse(kind)
    A, cols = _as_magnitudes(family, coeffs)
    if A.shape[1] == 0:
        return np.zeros(A.shape[0])
    if method not in ("auto", "newton", "generic"):
        raise ConfigError(f"unknown norm method {method!r}")
    if method == "newton" and not family.is_power:
        raise ConfigError("Newton route needs a power family")
    fast = family.is_power and method != "generic"
    if fast and method == "auto" and np.all(family.p[cols] == family.p[cols[0]]):
        return _power_closed(family, A, cols, kind)
    if kind is NormKind.LUXEMBURG:
        return _luxemburg_power(family, A, cols) if fast else _luxemburg_bisect(family, A, cols)
    return _orlicz_power(family, A, cols) if fast else _orlicz_golden(family, A, cols)


def norm(family: OrliczFamily, coeffs: Spectrum, kind=NormKind.LUXEMBURG, method: str = "auto") -> float:
    return float(norms(family, coeffs, kind, method)[0])


def modular(family: OrliczFamily, coeffs: Spectrum, a: float) -> float:
    """``sum_k M_k(|c_k| / a)``."""
    if not a > 0:
        raise DomainError(f"scale a must be positive, got {a}")
    A, cols = _as_magnitudes(family, coeffs)
    if A.shape[1] == 0:
        return 0.0
    return float(_modular_rows(family, A, cols, np.array([float(a)]))[0])


def luxemburg_norm(family: OrliczFamily, coeffs: Spectrum, method: str = "auto") -> float:
    """``inf{a > 0 : modular(family, coeffs, a) <= 1}`` (0 for the zero sequence)."""
    return norm(family, coeffs, NormKind.LUXEMBURG, method)


def orlicz_norm(family: OrliczFamily, coeffs: Spectrum, method: str = "auto") -> float:
    """Orlicz (dual) norm via the Amemiya infimum over ``kappa > 0``."""
    return norm(family, coeffs, NormKind.ORLICZ, method)


# ---------------------------------------------------------------------------
# Young conjugates and the dual description of the Orlicz norm

def _power_conjugate(p: float, mu: float, v: float) -> float:
    if v == 0.0:
        return 0.0
    if mu == 0.0:
        return INFINITY
    if p == 1.0:
        return 0.0 if v <= mu else INFINITY
    q = p / (p - 1.0)
    return v ** q / q * (mu * p) ** (1.0 - q)


def _ternary_conjugate(M: Callable, v: float) -> float:
    def g(u):
        return u * v - float(M(np.asarray(u, dtype=float)))

    U = 1.0
    while g(2.0 * U) > g(U):
        U *= 2.0
        if U > 1e150:
            return INFINITY
    lo, hi = 0.0, 2.0 * U
    for _ in range(MAX_ITER):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if g(m1) < g(m2):
            lo = m1
        else:
            hi = m2
    return max(g(0.5 * (lo + hi)), 0.0)


def conjugate(family: OrliczFamily, k: int, v: float) -> float:
    """Young conjugate ``M~_k(v) = sup_{u >= 0} (u v - M_k(u))``.

    Returns :data:`INFINITY` when the supremum diverges.
    """
    if v < 0:
        raise DomainError(f"conjugate argument must be >= 0, got {v}")
    c = family.column(k)
    if family.is_power:
        return _power_conjugate(float(family.p[c]), float(family.mu[c]), float(v))
    if family.conjugates[c] is not None:
        return float(family.conjugates[c](float(v)))
    if v == 0.0:
        return 0.0
    return _ternary_conjugate(family.funcs[c], float(v))


@dataclass(frozen=True)
class DualValue:
    value: float
    constraint: float
    feasible: bool


def dual_feasible_value(family: OrliczFamily, coeffs: Spectrum, lam) -> DualValue:
    """Value ``sum lam_k |c_k|`` of a dual candidate and its feasibility.

    Feasible means ``sum_k M~_k(lam_k) <= 1 + 1e-9``.  Infeasible candidates
    are reported through the ``feasible`` flag, never silently accepted.
    """
    lam = np.asarray(lam, dtype=float).ravel()
    if lam.size != len(coeffs):
        raise ConfigError(f"lambda has {lam.size} entries, coefficients have {len(coeffs)}")
    if np.any(lam < 0):
        raise DomainError("dual weights must be nonnegative")
    if coeffs.K > family.K:
        raise ConfigError(f"coefficient window K={coeffs.K} exceeds family window K={family.K}")
    total = 0.0
    for k, l in zip(coeffs.ks, lam):
        total += conjugate(family, int(k), float(l))
    value = float(np.dot(lam, coeffs.magnitudes))
    return DualValue(value, total, bool(total <= 1.0 + 1e-9))


def _budget_inverse(family: OrliczFamily, k: int, s: float) -> float:
    """Largest ``lam`` with ``M~_k(lam) <= s``."""
    c = family.column(k)
    if family.is_power:
        p, mu = float(family.p[c]), float(family.mu[c])
        if mu == 0.0:
            return 0.0
        if p == 1.0:
            return mu
        q = p / (p - 1.0)
        return (q * max(s, 0.0) * (mu * p) ** (q - 1.0)) ** (1.0 / q)
    lo, hi = 0.0, 1.0
    while conjugate(family, k, hi) <= s:
        lo, hi = hi, 2.0 * hi
        if hi > 1e150:
            raise NonConvergenceError(f"conjugate of M_{k} stays bounded; dual set unbounded")
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        if conjugate(family, k, mid) <= s:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14 * hi:
            break
    return lo


def dual_ascent(family: OrliczFamily, coeffs: Spectrum, sweeps: int = 100) -> tuple[DualValue, np.ndarray]:
    """Brute-force lower bound for the Orlicz norm by pairwise budget exchange.

    Each active coordinate owns a share ``s_k`` of the unit conjugate budget and
    sets ``lam_k`` to the largest value affordable with it.  Sweeps redistribute
    budget between every pair of coordinates by golden-section search; the
    objective is concave in the share, so pairwise optimality is global
    optimality.  Intended for short sequences (at most a handful of terms).
    """
    ks = [int(k) for k, a in zip(coeffs.ks, coeffs.magnitudes) if a > 0]
    mags = {k: float(coeffs.magnitudes[k + coeffs.K]) for k in ks}
    share = {k: 1.0 / max(len(ks), 1) for k in ks}

    def contrib(k, s):
        return mags[k] * _budget_inverse(family, k, s)

    prev = -math.inf
    for _ in range(sweeps):
        for i, j in combinations(ks, 2):
            B = share[i] + share[j]
            lo, hi = 0.0, B
            for _ in range(80):
                m1 = hi - _GOLDEN * (hi - lo)
                m2 = lo + _GOLDEN * (hi - lo)
                if contrib(i, m1) + contrib(j, B - m1) < contrib(i, m2) + contrib(j, B - m2):
                    lo = m1
                else:
                    hi = m2
            x = 0.5 * (lo + hi)
            cands = [(contrib(i, y) + contrib(j, B - y), y) for y in (0.0, x, B)]
            share[i] = max(cands)[1]
            share[j] = B - share[i]
        cur = sum(contrib(k, share[k]) for k in ks)
        if cur - prev <= 1e-15 * max(abs(cur), 1.0):
            break
        prev = cur
    lam = np.zeros(len(coeffs))
    for k in ks:
        lam[k + coeffs.K] = _budget_inverse(family, k, share[k])
    return dual_feasible_value(family, coeffs, lam), lam

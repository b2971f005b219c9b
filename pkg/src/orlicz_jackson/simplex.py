"""Dense tableau simplex for ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``.

The slack basis is feasible, so no phase one is needed.  Entering columns are
chosen by steepest edge (reduced cost over the norm of the tableau column,
exact because the full tableau is kept) or by the plain most negative reduced
cost.  After a run of degenerate pivots the solver switches to Bland's rule
permanently, which guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SolverError

__all__ = ["LPResult", "simplex_max"]


@dataclass(frozen=True)
class LPResult:
    x: np.ndarray
    y: np.ndarray
    value: float
    dual_value: float
    iterations: int
    basis: np.ndarray
    rule_switched: bool


def simplex_max(c, A, b, rule: str = "steepest", tol: float = 1e-11,
                max_iter: int = 100_000, degenerate_limit: int = 50,
                refactor_every: int = 100, pivot_tol: float = 1e-9,
                warm=None) -> LPResult:
    """Solve the LP and return primal ``x``, dual ``y`` and both objective values.

    ``rule`` is ``"steepest"`` (steepest edge), ``"dantzig"`` (most negative
    reduced cost) or ``"bland"`` (smallest eligible index throughout).  The
    first two fall back to Bland's rule after ``degenerate_limit`` consecutive
    degenerate pivots.  Every ``refactor_every`` pivots the tableau is rebuilt
    from the original data and the current basis to stop rounding drift.

    ``warm`` optionally warm-starts from ``m`` column indices of ``[A | I]``;
    it is ignored unless it is nonsingular and primal feasible.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).ravel()
    c = np.asarray(c, dtype=float).ravel()
    m, n = A.shape
    if b.size != m or c.size != n:
        raise DomainError("inconsistent LP dimensions")
    if np.any(b < 0):
        raise DomainError("right-hand side must be nonnegative (slack basis infeasible otherwise)")
    if rule not in ("steepest", "dantzig", "bland"):
        raise DomainError(f"unknown pivot rule {rule!r}")

    full = np.hstack([A, np.eye(m), b[:, None]])
    cost = np.concatenate([c, np.zeros(m)])
    T = np.zeros((m + 1, n + m + 1))
    T[:m] = full
    T[m, :n] = -c
    basis = np.arange(n, n + m)

    def rebuild():
        T[:m] = np.linalg.solve(full[:, basis], full)
        T[m, :-1] = cost[basis] @ T[:m, :-1] - cost
        T[m, -1] = cost[basis] @ T[:m, -1]

    if warm is not None:
        start = np.asarray(warm, dtype=int)
        if start.shape == (m,) and np.unique(start).size == m \
                and start.min() >= 0 and start.max() < n + m:
            saved = T.copy()
            basis = start.copy()
            try:
                rebuild()
                if T[:m, -1].min() < -1e-9 * max(1.0, float(np.abs(b).max())):
                    raise np.linalg.LinAlgError("warm basis infeasible")
            except np.linalg.LinAlgError:
                T[:] = saved
                basis = np.arange(n, n + m)
    bland = rule == "bland"
    switched = False
    stall = 0
    fresh = True

    for it in range(max_iter):
        if it and it % refactor_every == 0:
            rebuild()
            fresh = True
        reduced = T[m, :-1]
        neg = reduced < -tol
        if not np.any(neg):
            if fresh:
                break
            # confirm optimality on a tableau without accumulated rounding
            rebuild()
            fresh = True
            continue
        if bland:
            e = int(np.flatnonzero(neg)[0])
        elif rule == "steepest":
            body = T[:m, :-1]
            weight = np.sqrt(1.0 + np.einsum("ij,ij->j", body, body))
            e = int(np.argmin(np.where(neg, reduced / weight, 0.0)))
        else:
            e = int(np.argmin(reduced))
        col = T[:m, e]
        pos = col > max(tol, pivot_tol * float(np.abs(col).max()))
        if not np.any(pos):
            raise SolverError(f"LP unbounded along column {e} (iteration {it})")
        ratios = np.full(m, np.inf)
        ratios[pos] = np.maximum(T[:m, -1][pos], 0.0) / col[pos]
        rmin = ratios.min()
        ties = np.flatnonzero(ratios <= rmin + tol * (1.0 + abs(rmin)))
        if bland:
            r = int(ties[np.argmin(basis[ties])])
        else:
            r = int(ties[np.argmax(col[ties])])

        if rmin <= tol:
            stall += 1
            if not bland and stall >= degenerate_limit:
                bland = switched = True
        else:
            stall = 0

        T[r] /= T[r, e]
        factor = T[:, e].copy()
        factor[r] = 0.0
        T -= np.outer(factor, T[r])
        basis[r] = e
        fresh = False
    else:
        raise SolverError(f"simplex hit the iteration cap ({max_iter}); "
                          f"objective {T[m, -1]:.6g}, rule {'bland' if bland else rule}")

    B = full[:, basis]
    xb = np.linalg.solve(B, b)
    y = np.maximum(np.linalg.solve(B.T, cost[basis]), 0.0)
    x = np.zeros(n)
    in_x = basis < n
    x[basis[in_x]] = np.maximum(xb[in_x], 0.0)
    return LPResult(x, y, float(c @ x), float(b @ y), it, basis.copy(), switched)

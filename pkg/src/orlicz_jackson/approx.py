"""Best approximation by trigonometric polynomials of degree < n.

In these sequence norms the Fourier sum is the best approximant, so
``E_n(f)`` is the norm of the coefficient tail ``|k| >= n``.
:func:`direct_best_approx` minimises over polynomial coefficients directly
and serves as an independent check of that fact.
"""

from __future__ import annotations

import numpy as np

from .errors import WindowError
from .orlicz import NormKind, OrliczFamily, norm, norms
from .spectra import Spectrum, tail

__all__ = ["best_approx", "best_approx_sequence", "direct_best_approx"]


def best_approx(family: OrliczFamily, spec: Spectrum, n: int, norm_kind=NormKind.LUXEMBURG) -> float:
    """``E_n(f) = ||f - S_{n-1}(f)||`` for ``1 <= n <= K+1``."""
    if not 1 <= n <= spec.K + 1:
        raise WindowError(f"E_n needs 1 <= n <= K+1 = {spec.K + 1}, got n={n}")
    return norm(family, tail(spec, n), norm_kind)


def best_approx_sequence(family: OrliczFamily, spec: Spectrum, n_range, norm_kind=NormKind.LUXEMBURG) -> np.ndarray:
    """Array of ``(n, E_n)`` rows for every ``n`` in ``n_range`` (sorted)."""
    ns = np.unique(np.asarray(list(n_range), dtype=int))
    if ns.size and (ns[0] < 1 or ns[-1] > spec.K + 1):
        raise WindowError(f"n range {ns[0]}..{ns[-1]} outside 1..K+1 = {spec.K + 1}")
    absk = np.abs(spec.ks)
    rows = np.where(absk[None, :] >= ns[:, None], spec.magnitudes[None, :], 0.0)
    E = norms(family, rows, norm_kind) if ns.size else np.zeros(0)
    return np.column_stack([ns.astype(float), E])


def direct_best_approx(family: OrliczFamily, spec: Spectrum, n: int, norm_kind=NormKind.LUXEMBURG,
                       sweeps: int = 400) -> tuple[float, np.ndarray]:
    """Minimise ``||f - t||`` over polynomials ``t`` of degree < n by coordinate descent.

    Starts from ``t = 0`` and moves the real and imaginary parts of each
    coefficient ``|k| <= n-1`` by a shrinking step.  Derivative-free and slow;
    meant for a handful of coefficients.
    """
    if not 1 <= n <= spec.K + 1:
        raise WindowError(f"E_n needs 1 <= n <= K+1 = {spec.K + 1}, got n={n}")
    idx = [k + spec.K for k in range(-(n - 1), n)]
    t = np.zeros(spec.coeffs.size, dtype=complex)

    def objective(tt):
        return norm(family, Spectrum(spec.coeffs - tt), norm_kind)

    best = objective(t)
    step = max(float(spec.magnitudes.max(initial=0.0)), 1e-300)
    for _ in range(sweeps):
        improved = False
        for i in idx:
            for unit in (1.0, 1j):
                for sign in (1.0, -1.0):
                    trial = t.copy()
                    trial[i] += sign * step * unit
                    val = objective(trial)
                    if val < best:
                        t, best, improved = trial, val, True
                        break
        if not improved:
            step *= 0.5
            if step < 1e-14 * max(float(spec.magnitudes.max()), 1e-300):
                break
    return best, t

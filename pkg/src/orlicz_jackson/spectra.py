"""Two-sided Fourier coefficient sequences on a finite window ``|k| <= K``.

Everything downstream works on coefficient sequences only.  The window is a
hard boundary: operations that would need frequencies beyond ``K`` raise
:class:`~orlicz_jackson.errors.WindowError` instead of truncating silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import AliasingError, ConfigError, DomainError, WindowError

__all__ = [
    "Spectrum",
    "RULES",
    "spectrum_from_rule",
    "spectrum_from_samples",
    "read_samples",
    "partial_sum",
    "tail",
]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Coefficients ``c_k`` for ``-K <= k <= K``; ``coeffs[K]`` is ``c_0``.

    ``tail_note`` is free text describing the analytic decay beyond the
    window.  It is never used in computation.
    """

    coeffs: np.ndarray
    tail_note: str = ""
    _abs: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size % 2 != 1:
            raise ConfigError(f"coefficient array must have odd length 2K+1, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise DomainError("spectrum contains non-finite coefficients")
        c.setflags(write=False)
        a = np.abs(c)
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "_abs", a)

    @property
    def K(self) -> int:
        return (self.coeffs.size - 1) // 2

    @property
    def ks(self) -> np.ndarray:
        return np.arange(-self.K, self.K + 1)

    @property
    def magnitudes(self) -> np.ndarray:
        return self._abs

    def __getitem__(self, k: int) -> complex:
        if abs(k) > self.K:
            raise WindowError(f"frequency {k} outside window K={self.K}")
        return complex(self.coeffs[k + self.K])

    def __len__(self) -> int:
        return self.coeffs.size

    def __add__(self, other: "Spectrum") -> "Spectrum":
        if not isinstance(other, Spectrum):
            return NotImplemented
        if other.K != self.K:
            raise ConfigError(f"window mismatch: K={self.K} vs K={other.K}")
        return Spectrum(self.coeffs + other.coeffs)

    def __sub__(self, other: "Spectrum") -> "Spectrum":
        if not isinstance(other, Spectrum):
            return NotImplemented
        return self + (-1.0) * other

    def __mul__(self, a) -> "Spectrum":
        return Spectrum(a * self.coeffs, self.tail_note)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Spectrum) and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def degree(self) -> int:
        """Largest ``|k|`` with a nonzero coefficient (-1 for the zero sequence)."""
        nz = np.nonzero(self._abs)[0]
        if nz.size == 0:
            return -1
        return int(np.max(np.abs(nz - self.K)))

    def with_window(self, K: int) -> "Spectrum":
        """Zero-pad to a larger window (shrinking is refused)."""
        if K < self.K:
            raise WindowError(f"cannot shrink window from {self.K} to {K}")
        c = np.zeros(2 * K + 1, dtype=complex)
        c[K - self.K:K + self.K + 1] = self.coeffs
        return Spectrum(c, self.tail_note)


def _two_sided(K: int, fill) -> np.ndarray:
    k = np.arange(-K, K + 1)
    return fill(k)


def _rule_delta(K, k0=1, amplitude=1.0):
    k0 = int(k0)
    if abs(k0) > K:
        raise WindowError(f"delta at k0={k0} outside window K={K}")
    c = np.zeros(2 * K + 1, dtype=complex)
    c[k0 + K] = amplitude
    return c, f"delta at k={k0}"


def _rule_geometric(K, r=0.5):
    r = float(r)
    if not 0.0 < r < 1.0:
        raise ConfigError(f"geometric ratio must lie in (0, 1), got {r}")
    return _two_sided(K, lambda k: r ** np.abs(k)).astype(complex), f"|c_k| = {r}^|k|"


def _rule_power(K, s=1.0):
    s = float(s)
    if s <= 0:
        raise ConfigError(f"power decay exponent must be positive, got {s}")

    def fill(k):
        out = np.zeros(k.shape)
        nz = k != 0
        out[nz] = np.abs(k[nz]) ** (-s)
        return out

    return _two_sided(K, fill).astype(complex), f"|c_k| = |k|^-{s}"


def _rule_lacunary(K, amplitudes=(1.0,)):
    amps = np.atleast_1d(np.asarray(amplitudes, dtype=complex))
    c = np.zeros(2 * K + 1, dtype=complex)
    for j, a in enumerate(amps):
        k = 2 ** j
        if k > K:
            raise WindowError(f"lacunary term j={j} (k=2^{j}) outside window K={K}")
        c[K + k] = a
        c[K - k] = a
    return c, "lacunary, supported on k = +-2^j"


def _rule_table(K, values=()):
    vals = np.asarray(values, dtype=complex).ravel()
    if vals.size != 2 * K + 1:
        raise ConfigError(f"table rule needs 2K+1={2 * K + 1} values, got {vals.size}")
    return vals, "explicit coefficients"


RULES = {
    "delta": _rule_delta,
    "geometric": _rule_geometric,
    "power": _rule_power,
    "lacunary": _rule_lacunary,
    "table": _rule_table,
}


def spectrum_from_rule(rule: str, K: int, **params) -> Spectrum:
    """Build a spectrum from a named coefficient rule.

    Rules: ``delta`` (``k0``, ``amplitude``), ``geometric`` (``r`` in (0, 1)),
    ``power`` (``s > 0``, ``c_0 = 0``), ``lacunary`` (``amplitudes`` a_j placed
    at ``k = +-2^j``) and ``table`` (``values``, all 2K+1 coefficients).

    >>> spectrum_from_rule("geometric", 2, r=0.5).coeffs.real
    array([0.25, 0.5 , 1.  , 0.5 , 0.25])
    """
    if K < 0:
        raise DomainError(f"window radius must be >= 0, got {K}")
    try:
        build = RULES[rule]
    except KeyError:
        raise ConfigError(f"unknown coefficient rule {rule!r}; known: {sorted(RULES)}") from None
    try:
        c, note = build(int(K), **params)
    except TypeError as exc:
        raise ConfigError(f"bad parameters for rule {rule!r}: {exc}") from None
    return Spectrum(c, note)


def spectrum_from_samples(samples: Sequence[complex] | np.ndarray, K: int) -> Spectrum:
    """Fourier coefficients of ``N`` equispaced samples ``f(2 pi j / N)``.

    Uses the rectangle rule, ``c_k = N^-1 sum_j f(x_j) exp(-i k x_j)``, which is
    exact for trigonometric polynomials of degree ``<= N - K - 1``.
    """
    f = np.asarray(samples, dtype=complex).ravel()
    N = f.size
    if K < 0:
        raise DomainError(f"window radius must be >= 0, got {K}")
    if N < 2 * K + 2:
        raise AliasingError(f"{N} samples cannot resolve window K={K}; need N >= {2 * K + 2}")
    F = np.fft.fft(f) / N
    k = np.arange(-K, K + 1)
    return Spectrum(F[k % N], f"sampled, N={N}")


def read_samples(path: str | Path) -> np.ndarray:
    """Load a ``x real imag`` text file; nodes must be the uniform grid on [0, 2 pi)."""
    try:
        data = np.loadtxt(path, ndmin=2)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read sample file {path}: {exc}") from None
    if data.shape[1] != 3:
        raise ConfigError(f"sample file {path} must have 3 columns (x real imag), got {data.shape[1]}")
    x = data[:, 0]
    N = x.size
    expected = 2 * np.pi * np.arange(N) / N
    if not np.allclose(x, expected, atol=1e-9 * 2 * np.pi):
        raise ConfigError(f"sample nodes in {path} are not the uniform grid 2*pi*j/N")
    return data[:, 1] + 1j * data[:, 2]


def _check_degree(spec: Spectrum, n: int):
    if not 1 <= n <= spec.K + 1:
        raise WindowError(f"degree n={n} outside 1..K+1 for window K={spec.K}")


def partial_sum(spec: Spectrum, n: int) -> Spectrum:
    """Fourier sum ``S_{n-1}``: keep ``|k| <= n-1``, zero the rest."""
    _check_degree(spec, n)
    c = np.where(np.abs(spec.ks) <= n - 1, spec.coeffs, 0)
    return Spectrum(c, spec.tail_note)


def tail(spec: Spectrum, n: int) -> Spectrum:
    """Complement of :func:`partial_sum`: keep ``|k| >= n``."""
    _check_degree(spec, n)
    c = np.where(np.abs(spec.ks) >= n, spec.coeffs, 0)
    return Spectrum(c, spec.tail_note)

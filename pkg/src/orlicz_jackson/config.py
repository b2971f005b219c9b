"""Run configuration: an INI-style file with ``[function]``, ``[family]``,
``[multiplier]`` and ``[run]`` sections.

Example::

    [function]
    rule = table
    K = 1
    values = 0 1 1

    [family]
    kind = power
    p = 2          ; broadcast to every index
    p[0] = 1       ; per-index override, k may be negative

    [run]
    norm = luxemburg

Numbers may be separated by spaces or commas; ``pi`` is accepted wherever a
real number is expected (``tau = pi``, ``tau = pi/2``, ``2*pi``).
"""

from __future__ import annotations

import configparser
import math
import re
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .orlicz import NormKind, OrliczFamily
from .smoothness import DEFAULT_H_GRID, Multiplier
from .spectra import RULES, Spectrum, read_samples, spectrum_from_rule, spectrum_from_samples

__all__ = ["RunConfig", "load_config", "parse_real", "parse_int_range", "DEFAULTS"]

DEFAULTS = {
    "norm": "luxemburg",
    "n": "1..8",
    "tau": "pi",
    "p": "",
    "grid": "512",
    "j_max": "",
    "h_grid": str(DEFAULT_H_GRID),
    "seed": "0",
    "output": "",
}

_PI_TERM = re.compile(r"^\s*([0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$")


def parse_real(text: str) -> float:
    """Float with ``pi`` support: ``pi``, ``2pi``, ``2*pi``, ``pi/2``, ``-pi``."""
    s = str(text).strip().lower()
    m = _PI_TERM.match(s)
    try:
        if m:
            coef = m.group(1)
            a = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
            d = float(m.group(2)) if m.group(2) else 1.0
            return a * math.pi / d
        return float(s)
    except ValueError:
        raise ConfigError(f"not a real number: {text!r}") from None


def _reals(text: str) -> list[float]:
    items = [t for t in re.split(r"[\s,]+", str(text).strip()) if t]
    return [parse_real(t) for t in items]


def parse_int_range(text: str) -> list[int]:
    """``"5"``, ``"1..64"``, ``"1..64:4"`` (step) or a list ``"1 2 4 8"``."""
    s = str(text).strip()
    m = re.fullmatch(r"(-?\d+)\s*\.\.\s*(-?\d+)(?:\s*:\s*(\d+))?", s)
    try:
        if m:
            lo, hi, step = int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)
            if hi < lo or step < 1:
                raise ConfigError(f"empty range {text!r}")
            return list(range(lo, hi + 1, step))
        return [int(t) for t in re.split(r"[\s,]+", s) if t]
    except ValueError:
        raise ConfigError(f"not an integer range: {text!r}") from None


@dataclass
class RunConfig:
    """Fully resolved configuration; every tuning knob has a value."""

    spectrum: Spectrum | None = None
    family: OrliczFamily | None = None
    multiplier: Multiplier | None = None
    norm: NormKind = NormKind.LUXEMBURG
    n: list[int] = field(default_factory=lambda: list(range(1, 9)))
    tau: float = math.pi
    p: float | None = None
    grid: int = 512
    j_max: int | None = None
    h_grid: int = DEFAULT_H_GRID
    seed: int = 0
    output: Path | None = None
    source: str = ""
    given: set = field(default_factory=set)  # [run] keys set explicitly

    def knobs(self) -> dict:
        """Numeric settings as strings, for report headers."""
        out = {}
        for f in fields(self):
            if f.name in ("spectrum", "family", "multiplier", "source", "given"):
                continue
            v = getattr(self, f.name)
            if isinstance(v, NormKind):
                v = v.value
            elif isinstance(v, list):
                if len(v) > 2 and v == list(range(v[0], v[-1] + 1)):
                    v = f"{v[0]}..{v[-1]}"
                else:
                    v = " ".join(map(str, v))
            elif v is None:
                v = "default"
            elif isinstance(v, float):
                v = f"{v:.17g}"
            out[f.name] = str(v)
        return out


def _function(sec, base: Path) -> Spectrum:
    if "samples" in sec:
        path = (base / sec["samples"]).resolve()
        if not path.exists():
            raise ConfigError(f"sample file not found: {path}")
        if "K" not in sec:
            raise ConfigError("[function] with samples needs K")
        return spectrum_from_samples(read_samples(path), int(sec["K"]))
    rule = sec.get("rule")
    if rule is None:
        raise ConfigError("[function] needs 'rule' or 'samples'")
    if rule not in RULES:
        raise ConfigError(f"unknown coefficient rule {rule!r}; known: {sorted(RULES)}")
    if "K" not in sec:
        raise ConfigError("[function] needs K")
    params = {}
    for key, val in sec.items():
        if key in ("rule", "K"):
            continue
        if key in ("values", "amplitudes"):
            params[key] = _reals(val)
        elif key == "k0":
            params[key] = int(val)
        else:
            params[key] = parse_real(val)
    return spectrum_from_rule(rule, int(sec["K"]), **params)


_INDEXED = re.compile(r"^(p|mu)\[\s*(-?\d+)\s*\]$")


def _family(sec, K: int) -> OrliczFamily:
    kind = sec.get("kind", "power")
    size = 2 * K + 1
    if kind in ("power", "scaled_power"):
        arrays = {}
        for name, default in (("p", 2.0), ("mu", 1.0)):
            vals = _reals(sec.get(name, str(default)))
            if len(vals) == 1:
                arr = np.full(size, vals[0])
            elif len(vals) == size:
                arr = np.array(vals)
            else:
                raise ConfigError(f"[family] {name} needs 1 or {size} values, got {len(vals)}")
            arrays[name] = arr
        for key, val in sec.items():
            m = _INDEXED.match(key)
            if m:
                k = int(m.group(2))
                if abs(k) > K:
                    raise ConfigError(f"[family] override {key} outside window K={K}")
                arrays[m.group(1)][k + K] = parse_real(val)
        if kind == "scaled_power":
            if "mu" in sec or any(k.startswith("mu[") for k in sec):
                raise ConfigError("scaled_power fixes its own weights; drop mu")
            return OrliczFamily.scaled_power(K, arrays["p"])
        return OrliczFamily.power(K, arrays["p"], arrays["mu"])
    if kind == "custom":
        u = np.array(_reals(sec.get("u", "")))
        m = np.array(_reals(sec.get("values", "")))
        if u.size < 2 or u.size != m.size or u[0] != 0.0 or np.any(np.diff(u) <= 0):
            raise ConfigError("custom family needs increasing u starting at 0 and matching values")
        slope = (m[-1] - m[-2]) / (u[-1] - u[-2])

        def M(x):
            x = np.asarray(x, dtype=float)
            return np.where(x <= u[-1], np.interp(x, u, m), m[-1] + slope * (x - u[-1]))

        return OrliczFamily.custom(K, M)
    raise ConfigError(f"unknown family kind {kind!r}")


def _multiplier(sec) -> Multiplier:
    kind = sec.get("kind", "classical_alpha")
    if kind == "classical_alpha":
        return Multiplier.classical(parse_real(sec.get("alpha", "1")))
    if kind == "table":
        return Multiplier.table(_reals(sec.get("t", "")), _reals(sec.get("values", "")))
    raise ConfigError(f"unknown multiplier kind {kind!r}")


def load_config(path: str | Path | None = None, text: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Parse a config file (or string) and fill defaults; ``overrides`` patch ``[run]``."""
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    cp.optionxform = str
    base = Path.cwd()
    source = "<defaults>"
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            cp.read(path)
        except configparser.Error as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from None
        base, source = path.parent, str(path)
    elif text is not None:
        try:
            cp.read_string(text)
        except configparser.Error as exc:
            raise ConfigError(f"cannot parse config: {exc}") from None
        source = "<string>"
    unknown = set(cp.sections()) - {"function", "family", "multiplier", "run"}
    if unknown:
        raise ConfigError(f"unknown config sections: {sorted(unknown)}")

    run = dict(DEFAULTS)
    given = set()
    if cp.has_section("run"):
        extra = set(cp["run"]) - set(DEFAULTS)
        if extra:
            raise ConfigError(f"unknown [run] keys: {sorted(extra)}")
        run.update(cp["run"])
        given |= set(cp["run"])
    for key, val in (overrides or {}).items():
        if key not in DEFAULTS:
            raise ConfigError(f"unknown run setting {key!r}")
        if val is not None:
            run[key] = str(val)
            given.add(key)

    cfg = RunConfig(source=source, given=given)
    if cp.has_section("function"):
        cfg.spectrum = _function(cp["function"], base)
    if cp.has_section("family"):
        if cfg.spectrum is None:
            raise ConfigError("[family] needs a [function] section to fix the window K")
        cfg.family = _family(cp["family"], cfg.spectrum.K)
    if cp.has_section("multiplier"):
        cfg.multiplier = _multiplier(cp["multiplier"])
    try:
        cfg.norm = NormKind.parse(run["norm"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    cfg.n = parse_int_range(run["n"])
    if not cfg.n or min(cfg.n) < 1:
        raise ConfigError("degrees n must be >= 1")
    cfg.tau = parse_real(run["tau"])
    if not cfg.tau > 0:
        raise ConfigError("tau must be positive")
    cfg.p = parse_real(run["p"]) if run["p"].strip() else None
    if cfg.p is not None and cfg.p < 1:
        raise ConfigError("p must be >= 1")
    try:
        cfg.grid = int(run["grid"])
        cfg.j_max = int(run["j_max"]) if run["j_max"].strip() else None
        cfg.h_grid = int(run["h_grid"])
        cfg.seed = int(run["seed"])
    except ValueError as exc:
        raise ConfigError(f"bad integer in [run]: {exc}") from None
    cfg.output = Path(run["output"]) if run["output"].strip() else None
    return cfg

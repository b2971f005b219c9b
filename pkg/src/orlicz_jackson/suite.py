"""The scripted acceptance suite.

``suite_functions`` builds the 20 (spectrum, family) pairs used by the
direct- and inverse-theorem sweeps.  Each ``check_*`` function runs one
acceptance criterion and returns a :class:`CheckResult`; :func:`run_suite`
runs them in order and streams one PASS/FAIL line per criterion.
"""

from __future__ import annotations

import hashlib
import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .approx import best_approx, direct_best_approx
from .errors import DegenerateMeasureError, HypothesisError
from .inverse import (BOTH_BOUNDED, BOTH_GROWING, GROWING, INCONSISTENT, Majorant, check_condition_B,
                      class_membership, classify_rates, inverse_bounds)
from .jackson import (DiscreteMeasure, i_functional, lp_witness, ratio_upper_bound, sharp_constant_lp,
                      sharpness_search, tabulated_constant, verify_direct)
from .orlicz import NormKind, OrliczFamily, norm
from .smoothness import Multiplier, modulus
from .spectra import Spectrum, spectrum_from_rule, spectrum_from_samples

__all__ = [
    "SuiteEntry",
    "suite_functions",
    "CheckResult",
    "CHECKS",
    "run_suite",
    "SuiteSummary",
    "check_norm_sandwich",
    "check_sp_specializations",
    "check_tail_formula_oracle",
    "check_sharp_constant",
    "check_duality",
    "check_direct_theorem",
    "check_sharpness",
    "check_inverse",
    "check_rate_table",
    "check_membership",
]

SUITE_K = 96
N_MAX = 64
RATE_K = 4096


@dataclass(frozen=True, eq=False)
class SuiteEntry:
    name: str
    spectrum: Spectrum
    family: OrliczFamily


def _samples(f, N=4096):
    x = 2.0 * np.pi * np.arange(N) / N
    return f(x)


def suite_functions(seed: int = 0, K: int = SUITE_K) -> list[SuiteEntry]:
    """Twenty test functions, each paired with the family it is measured in.

    Four entries draw random coefficients, phases or weights from ``seed``.
    """
    rng = np.random.default_rng(seed)
    size = 2 * K + 1
    k = np.arange(-K, K + 1)
    absk = np.abs(k)

    def rule(name, **kw):
        return spectrum_from_rule(name, K, **kw)

    def sampled(f):
        return spectrum_from_samples(_samples(f), K)

    poly = np.zeros(size, dtype=complex)
    poly[K - 10:K + 11] = rng.normal(size=21) + 1j * rng.normal(size=21)
    phases = np.exp(2j * np.pi * rng.random(size))
    decay = np.where(absk > 0, 1.0 / np.maximum(absk, 1), 0.0)
    rough = rng.random(size) * np.where(absk > 0, np.maximum(absk, 1) ** -1.2, 1.0)
    mixed = 0.5 ** absk + np.where(absk == 30, 0.3, 0.0)

    F = OrliczFamily
    entries = [
        ("geometric-0.5", rule("geometric", r=0.5), F.power(K, 2)),
        ("geometric-0.9", rule("geometric", r=0.9), F.power(K, 1)),
        ("power-0.75", rule("power", s=0.75), F.scaled_power(K, 1.5)),
        ("power-1-weighted", rule("power", s=1.0), F.power(K, 2, 1.0 + absk / K)),
        ("power-1.5-varexp", rule("power", s=1.5), F.power(K, 1.0 + absk / K)),
        ("power-2", rule("power", s=2.0), F.power(K, 3)),
        ("power-3", rule("power", s=3.0), F.scaled_power(K, 3)),
        ("delta-1", rule("delta", k0=1), F.power(K, 2)),
        ("delta-7", rule("delta", k0=7), F.power(K, 1)),
        ("delta-40", rule("delta", k0=40), F.scaled_power(K, 2)),
        ("lacunary", rule("lacunary", amplitudes=[1.0 / (j + 1) for j in range(7)]), F.power(K, 1.5)),
        ("trig-poly-10", Spectrum(poly, "degree 10"), F.power(K, 2)),
        ("random-phase", Spectrum(decay * phases, "|c_k| = 1/|k|"), F.power(K, 1.5 + 0.5 * np.sin(k))),
        ("sawtooth", sampled(lambda x: np.where(x > 0, (np.pi - x) / 2, 0.0)), F.power(K, 2)),
        ("triangle", sampled(lambda x: np.abs(x - np.pi)), F.power(K, 1)),
        ("exp-cos", sampled(lambda x: np.exp(np.cos(x))), F.scaled_power(K, 1.25)),
        ("square-wave", sampled(lambda x: np.sign(np.sin(x))), F.power(K, 2, 2.0)),
        ("abs-sin-half", sampled(lambda x: np.abs(np.sin(x)) ** 0.5), F.power(K, 1.5)),
        ("random-decay", Spectrum(rough, "random |c_k| <= |k|^-1.2"), F.power(K, 2)),
        ("geometric-plus-spike", Spectrum(mixed, "2^-|k| plus a spike at 30"),
         F.power(K, 1.2, 0.5 + rng.random(size))),
    ]
    return [SuiteEntry(*e) for e in entries]


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    values: list = field(default_factory=list, repr=False)
    extra: dict = field(default_factory=dict, repr=False)

    @property
    def digest(self) -> str:
        h = hashlib.sha256()
        for v in self.values:
            h.update(np.asarray(v, dtype=float).tobytes())
        return h.hexdigest()[:16]

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d}. {self.title}: {self.detail} ({self.seconds:.1f}s)"


def _rel_slack(small, big):
    """Relative amount by which ``small <= big`` holds (negative when violated)."""
    return (big - small) / max(abs(big), 1e-300)


def _random_family(rng, K):
    size = 2 * K + 1
    kind = rng.integers(4)
    if kind == 0:
        return OrliczFamily.power(K, rng.uniform(1.0, 4.0, size), rng.uniform(0.1, 3.0, size))
    if kind == 1:
        return OrliczFamily.scaled_power(K, rng.uniform(1.0, 4.0, size))
    if kind == 2:
        return OrliczFamily.power(K, float(rng.choice([1.0, 1.5, 2.0, 3.0])), float(rng.uniform(0.2, 5.0)))
    a = float(rng.uniform(0.5, 2.0))
    return OrliczFamily.custom(K, lambda u, a=a: np.expm1(a * u) - a * u)


def _random_spectrum(rng, K, scale=True):
    c = rng.normal(size=2 * K + 1) + 1j * rng.normal(size=2 * K + 1)
    mask = rng.random(2 * K + 1) < 0.8
    mask[rng.integers(2 * K + 1)] = True
    c *= mask
    if scale:
        c *= 10.0 ** rng.uniform(-3, 3)
    return Spectrum(c)


# -- criterion 1 ------------------------------------------------------------

def check_norm_sandwich(seed: int = 0, trials: int = 200) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = np.inf
    vals = []
    for _ in range(trials):
        K = int(rng.integers(0, 7))
        fam = _random_family(rng, K)
        spec = _random_spectrum(rng, K)
        lux = norm(fam, spec, NormKind.LUXEMBURG)
        orl = norm(fam, spec, NormKind.ORLICZ)
        worst = min(worst, _rel_slack(lux, orl), _rel_slack(orl, 2.0 * lux))
        vals += [lux, orl]
    ok = worst >= -1e-6
    return CheckResult(1, "norm sandwich", ok, f"{trials} pairs, worst relative slack {worst:.3e}", values=vals)


# -- criterion 2 ------------------------------------------------------------

def check_sp_specializations(seed: int = 0, trials: int = 50) -> CheckResult:
    rng = np.random.default_rng(seed + 1)
    worst = 0.0
    vals = []
    for p in (1.0, 1.5, 2.0, 3.0):
        for _ in range(trials):
            K = int(rng.integers(0, 9))
            spec = _random_spectrum(rng, K)
            lp = float(np.sum(spec.magnitudes ** p) ** (1.0 / p))
            fam = OrliczFamily.scaled_power(K, p)
            for method in ("auto", "generic"):
                v = norm(fam, spec, NormKind.ORLICZ, method)
                worst = max(worst, abs(v / lp - 1.0))
                vals.append(v)
            if p == 1.0:
                lin = OrliczFamily.power(K, 1.0)
                for kind in NormKind:
                    v = norm(lin, spec, kind, "generic")
                    worst = max(worst, abs(v / lp - 1.0))
                    vals.append(v)
    ok = worst <= 1e-6
    return CheckResult(2, "S^p specializations", ok, f"max relative error {worst:.3e} (p in 1, 1.5, 2, 3)", values=vals)


# -- criterion 3 ------------------------------------------------------------

def check_tail_formula_oracle(seed: int = 0, trials: int = 30) -> CheckResult:
    rng = np.random.default_rng(seed + 2)
    worst = 0.0
    vals = []
    for i in range(trials):
        n = int(rng.integers(1, 3))
        K = int(rng.integers(n, 3))  # at most 5 coefficients, nonempty tail
        fam = _random_family(rng, K) if i % 3 else OrliczFamily.power(K, float(rng.uniform(1, 3)))
        spec = _random_spectrum(rng, K, scale=False)
        while not np.any(spec.magnitudes[np.abs(spec.ks) >= n]):
            spec = _random_spectrum(rng, K, scale=False)
        kind = NormKind.LUXEMBURG if i % 2 else NormKind.ORLICZ
        tail_val = best_approx(fam, spec, n, kind)
        direct, _ = direct_best_approx(fam, spec, n, kind)
        err = abs(direct - tail_val) / max(tail_val, 1e-300)
        worst = max(worst, err)
        vals += [tail_val, direct]
    ok = worst <= 1e-4
    return CheckResult(3, "tail formula vs direct minimisation", ok, f"{trials} instances, max relative gap {worst:.3e}",
                       values=vals)


# -- criterion 4 ------------------------------------------------------------

def check_sharp_constant() -> CheckResult:
    phi = Multiplier.classical(1.0)
    target = 2.0 ** -0.5
    worst = 0.0
    parts = []
    vals = []
    for n in range(1, 9):
        r = sharp_constant_lp(phi, 2.0, n, math.pi, grid=512, j_max=64 * n)
        worst = max(worst, abs(r.C / target - 1.0))
        vals.append(r.C)
        parts.append(f"{r.C:.5f}")
    uni = DiscreteMeasure.uniform(math.pi, 64)
    I = i_functional(phi, 2.0, 1, uni)
    bound = ratio_upper_bound(phi, 2.0, 1, uni)
    vals += [I.value, bound]
    ok = worst <= 0.01 and abs(I.value - 2.0) <= 1e-2 and abs(bound / target - 1.0) <= 0.01
    detail = (f"C(n=1..8) = {', '.join(parts)}; max deviation from 2^-1/2 {worst:.2%}; "
              f"uniform measure I = {I.value:.6f}, bound {bound:.5f}")
    return CheckResult(4, "sharp L2 constant", ok, detail, values=vals)


# -- criterion 5 ------------------------------------------------------------

def check_duality(seed: int = 0, measures: int = 20) -> CheckResult:
    rng = np.random.default_rng(seed + 3)
    phi = Multiplier.classical(1.0)
    n, grid = 2, 512
    worst_weak = np.inf
    vals = []
    for p in (1.0, 2.0):
        res = sharp_constant_lp(phi, p, n, math.pi, grid=grid)
        jm = res.diagnostics["j_max"]
        made = 0
        while made < measures:
            m = int(rng.integers(1, 25))
            idx = np.sort(rng.choice(np.arange(1, grid + 1), size=m, replace=False))
            v = DiscreteMeasure(math.pi, math.pi * idx / grid, rng.random(m) * 10.0 ** rng.uniform(-2, 2))
            try:
                bound = ratio_upper_bound(phi, p, n, v, jm)
            except DegenerateMeasureError:
                continue
            made += 1
            worst_weak = min(worst_weak, bound - res.C)
            vals.append(bound)
    cs = []
    for p, alpha, nn in ((1.0, 2.0, 1), (2.0, 1.0, 2), (1.0, 1.0, 2)):
        ph = Multiplier.classical(alpha)
        res = sharp_constant_lp(ph, p, nn, math.pi)
        at_star = ratio_upper_bound(ph, p, nn, res.measure, res.diagnostics["j_max"])
        cs.append(abs(at_star / res.C - 1.0))
        vals += [res.C, at_star]
    ok = worst_weak >= -1e-8 and max(cs) <= 1e-6
    detail = (f"{measures} random measures for each p in {{1, 2}}, min(bound - C) = {worst_weak:.3e}; "
              f"complementary slackness max relative gap {max(cs):.3e}")
    return CheckResult(5, "weak duality and complementary slackness", ok, detail, values=vals)


# -- criterion 6 ------------------------------------------------------------

def _constant(alpha, p, n):
    try:
        return tabulated_constant(alpha, p, n)
    except KeyError:
        return sharp_constant_lp(Multiplier.classical(alpha), p, n, math.pi).C


def check_direct_theorem(seed: int = 0, n_max: int = N_MAX, corrupt: float = 1.0,
                         entries: list[SuiteEntry] | None = None, sink: list | None = None) -> CheckResult:
    """Direct inequality in both norms of each entry's family, plus the S^2 path.

    ``corrupt`` scales every constant (0.5 plants a fault the check must catch).
    ``sink`` collects ``(name, report)`` pairs when given.
    """
    entries = suite_functions(seed) if entries is None else entries
    phi = Multiplier.classical(1.0)
    C1 = {n: _constant(1.0, 1.0, n) * corrupt for n in range(1, n_max + 1)}
    C2 = {n: _constant(1.0, 2.0, n) * corrupt for n in range(1, n_max + 1)}
    fails = []
    worst = np.inf
    count = 0
    vals = []
    for e in entries:
        for n in range(1, n_max + 1):
            reports = [verify_direct(e.family, e.spectrum, n, phi, math.pi, norm_kind=kind, constant=C1[n])
                       for kind in NormKind]
            reports.append(verify_direct(None, e.spectrum, n, phi, math.pi, p=2.0, constant=C2[n]))
            for r in reports:
                count += 1
                vals += [r.lhs, r.rhs]
                if sink is not None:
                    sink.append((e.name, r))
                if r.rhs > 0:
                    worst = min(worst, r.slack / r.rhs)
                if not r.passed:
                    fails.append(f"{e.name} n={n} {r.path}")
    ok = not fails
    detail = f"{count} checks, {len(fails)} violations, worst relative slack {worst:.3e}"
    if fails:
        detail += "; first: " + ", ".join(fails[:3])
    return CheckResult(6, "direct theorem sweep", ok, detail, values=vals)


# -- criterion 7 ------------------------------------------------------------

def check_sharpness(budget: int = 60) -> CheckResult:
    phi = Multiplier.classical(1.0)
    parts = []
    ok = True
    vals = []
    rows = []
    for p in (1.0, 2.0):
        for n in range(1, 5):
            res = sharp_constant_lp(phi, p, n, math.pi)
            s = sharpness_search(phi, p, n, math.pi, budget)
            w = lp_witness(res)
            fam = OrliczFamily.power(w.K, p)
            lp_ratio = best_approx(fam, w, n, NormKind.LUXEMBURG) / modulus(w, phi, math.pi / n, fam,
                                                                            NormKind.LUXEMBURG)
            good = 0.9 * res.C <= s.ratio <= res.C * (1 + 1e-6)
            ok &= good
            vals += [s.ratio, res.C, lp_ratio]
            rows.append((p, n, s.ratio, res.C, lp_ratio))
            parts.append(f"p={p:g} n={n}: {s.ratio / res.C:.3f}C (pair {s.k1},{s.k2}; LP support {lp_ratio / res.C:.4f}C)")
    return CheckResult(7, "sharpness of the constant (two-frequency witnesses)", ok, "; ".join(parts), values=vals,
                       extra={"rows": rows})


# -- criterion 8 ------------------------------------------------------------

def check_inverse(seed: int = 0, n_max: int = N_MAX, entries: list[SuiteEntry] | None = None,
                  sink: list | None = None, alphas=(0.5, 1.0, 2.0)) -> CheckResult:
    """Both inverse estimates over the suite; ``sink`` collects ``(name, alpha, general, alpha_form)``."""
    entries = suite_functions(seed) if entries is None else entries
    fails = {"general": [], "alpha": []}
    count = 0
    vals = []
    for alpha in alphas:
        for i, e in enumerate(entries):
            kind = NormKind.LUXEMBURG if i % 2 == 0 else NormKind.ORLICZ
            for n in range(1, n_max + 1):
                g, a = inverse_bounds(e.family, e.spectrum, alpha, n, kind)
                count += 2
                vals += [g.lhs, g.rhs, a.rhs]
                if sink is not None:
                    sink.append((e.name, alpha, g, a))
                if not g.passed:
                    fails["general"].append(f"{e.name} alpha={alpha:g} n={n}")
                if not a.passed:
                    fails["alpha"].append(f"{e.name} alpha={alpha:g} n={n}")
    eq_gap = 0.0
    for alpha in alphas:
        for n in (1, 2, 4, 8, 16):
            spec = spectrum_from_rule("delta", 32, k0=n)
            g, _ = inverse_bounds(OrliczFamily.power(32, 2), spec, alpha, n)
            eq_gap = max(eq_gap, abs(g.lhs - g.rhs))
            vals += [g.lhs, g.rhs]
    ok = not fails["general"] and not fails["alpha"] and eq_gap <= 1e-9
    detail = (f"{count} checks; general-multiplier violations {len(fails['general'])}, "
              f"alpha-form violations {len(fails['alpha'])}; telescoping equality gap {eq_gap:.2e}")
    bad = fails["general"] + fails["alpha"]
    if bad:
        where = sorted({s.split("alpha=")[1].split()[0] for s in fails["alpha"]})
        detail += f"; alpha-form failures at alpha in {{{', '.join(where)}}}, first: " + ", ".join(bad[:3])
    extra = {"general": fails["general"], "alpha": fails["alpha"], "eq_gap": eq_gap, "count": count}
    return CheckResult(8, "inverse theorem sweep", ok, detail, values=vals, extra=extra)


# -- criterion 9 ------------------------------------------------------------

RATE_NS = np.unique(np.geomspace(8, 128, 12).astype(int))


def check_rate_table() -> CheckResult:
    fam = OrliczFamily.power(RATE_K, 2)
    parts = []
    ok = True
    vals = []
    for alpha in (1.0, 2.0):
        for beta, expect in ((alpha / 2, "O(t^beta)"), (alpha, "O(t^alpha |ln t|)"), (2 * alpha, "O(t^alpha)")):
            spec = spectrum_from_rule("power", RATE_K, s=beta + 0.5)
            r = classify_rates(fam, spec, alpha, NormKind.LUXEMBURG, RATE_NS)
            target = min(beta, alpha)
            good = (r.category == expect and abs(r.beta_hat - beta) <= 0.15
                    and abs(r.omega_slope - target) <= 0.15 and r.log_flag == (beta == alpha))
            ok &= good
            vals += [r.beta_hat, r.omega_slope]
            parts.append(f"alpha={alpha:g} beta={beta:g}: beta^={r.beta_hat:.3f} slope={r.omega_slope:.3f} "
                         f"(want {target:g}) flag={'Y' if r.log_flag else 'N'}")
    return CheckResult(9, "rate table", ok, "; ".join(parts), values=vals)


# -- criterion 10 -----------------------------------------------------------

def check_membership() -> CheckResult:
    fam = OrliczFamily.power(RATE_K, 2)
    parts = []
    ok = True
    vals = []
    for alpha in (1.0, 2.0):
        cases = []
        for r in (alpha / 4, alpha / 2, 3 * alpha / 4):
            cases.append((f"|k|^-(r+1/2), r={r:g}", r, spectrum_from_rule("power", RATE_K, s=r + 0.5), BOTH_BOUNDED))
        cases.append((f"2^-|k|, r={alpha / 2:g}", alpha / 2, spectrum_from_rule("geometric", RATE_K, r=0.5),
                      BOTH_BOUNDED))
        r, rp = 3 * alpha / 4, alpha / 4
        cases.append((f"|k|^-(r'+1/2), r'={rp:g} < r={r:g}", r, spectrum_from_rule("power", RATE_K, s=rp + 0.5),
                      BOTH_GROWING))
        for label, r, spec, expect in cases:
            m = class_membership(fam, spec, alpha, Majorant.power(r), NormKind.LUXEMBURG, RATE_NS)
            ok &= m.verdict == expect and m.verdict != INCONSISTENT
            vals += [m.e_sup, m.omega_sup]
            parts.append(f"alpha={alpha:g} {label}: {m.verdict}")
        boundary = check_condition_B(Majorant.power(alpha), alpha)
        refused = False
        try:
            class_membership(fam, spectrum_from_rule("power", RATE_K, s=alpha + 0.5), alpha, Majorant.power(alpha),
                             NormKind.LUXEMBURG, RATE_NS)
        except HypothesisError:
            refused = True
        ok &= boundary.verdict == GROWING and refused
        vals.append(boundary.growth)
        parts.append(f"alpha={alpha:g} boundary r=alpha: condition {boundary.verdict} "
                     f"(growth {boundary.growth:.3f}), membership {'refused' if refused else 'NOT refused'}")
    return CheckResult(10, "class characterization", ok, "; ".join(parts), values=vals)


CHECKS: list[tuple[int, Callable]] = [
    (1, check_norm_sandwich),
    (2, check_sp_specializations),
    (3, check_tail_formula_oracle),
    (4, check_sharp_constant),
    (5, check_duality),
    (6, check_direct_theorem),
    (7, check_sharpness),
    (8, check_inverse),
    (9, check_rate_table),
    (10, check_membership),
]

_SEEDED = {1, 2, 3, 5, 6, 8}


@dataclass
class SuiteSummary:
    results: list[CheckResult]
    seconds: float
    seed: int

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def counts(self) -> tuple[int, int]:
        good = sum(r.passed for r in self.results)
        return good, len(self.results) - good


def _timed(number, fn, **kw) -> CheckResult:
    t0 = time.perf_counter()
    res = fn(**kw)
    res.seconds = time.perf_counter() - t0
    return res


def run_suite(seed: int = 0, corrupt_constant: float = 1.0, only=None,
              stream: Callable[[str], None] | None = print, determinism: bool = True) -> SuiteSummary:
    """Run criteria 1-10 in order, then the wall-clock and determinism criterion.

    ``only`` restricts to a set of criterion numbers.  With ``determinism``
    the cheap seeded criteria (1, 2, 5) are re-run and their output digests
    compared; the full sweeps are not repeated to stay inside the time budget.
    """
    t0 = time.perf_counter()
    results = []
    entries = None
    for number, fn in CHECKS:
        if only is not None and number not in only:
            continue
        kw = {}
        if number in _SEEDED:
            kw["seed"] = seed
        if number in (6, 8):
            entries = entries or suite_functions(seed)
            kw["entries"] = entries
        if number == 6:
            kw["corrupt"] = corrupt_constant
        res = _timed(number, fn, **kw)
        results.append(res)
        if stream:
            stream(res.line())
    if only is None or 11 in only:
        total = time.perf_counter() - t0
        same = True
        if determinism:
            first = {r.number: r.digest for r in results}
            for number, fn in CHECKS:
                if number in (1, 2, 5) and number in first:
                    again = fn(seed=seed)
                    same &= again.digest == first[number]
        res = CheckResult(11, "wall clock and determinism", total < 300.0 and same,
                          f"criteria 1-10 took {total:.1f}s (limit 300s); rerun digests "
                          f"{'identical' if same else 'DIFFER'}")
        res.seconds = time.perf_counter() - t0 - total
        results.append(res)
        if stream:
            stream(res.line())
    return SuiteSummary(results, time.perf_counter() - t0, seed)

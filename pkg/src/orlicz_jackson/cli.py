"""Command-line front end: ``orlicz-jackson <subcommand> [--config FILE] [flags]``.

Each subcommand prints a plain-text report headed by every numeric knob and
writes a CSV (header row, floats with 17 significant digits) to ``--output``,
or to standard output after the report when no path is given.

Exit codes: 0 every check passed, 1 an inequality or verdict failed,
2 configuration or usage error, 3 a solver did not converge.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from .approx import best_approx_sequence
from .config import RunConfig, load_config
from .errors import ConfigError, DomainError, HypothesisError, NonConvergenceError
from .inverse import INCONSISTENT, Majorant, class_membership, classify_rates, inverse_bounds
from .jackson import sharp_constant_lp, tabulated_constant, verify_direct
from .orlicz import NormKind, norms
from .smoothness import Multiplier, modulus
from .suite import N_MAX as SUITE_N_MAX, check_direct_theorem, check_inverse, run_suite

__all__ = ["dispatch", "main"]

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2, 3

SUBCOMMANDS = ("norm", "bestapprox", "modulus", "jackson", "verify-direct", "verify-inverse", "classify", "suite")


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "PASS" if v else "FAIL"
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return str(v)


class _Output:
    """Report lines plus one CSV table, written once at the end."""

    def __init__(self, command: str, cfg: RunConfig, header: list[str]):
        self.lines = [f"# orlicz-jackson {command}", f"# config: {cfg.source}"]
        self.lines += [f"# {k} = {v}" for k, v in cfg.knobs().items()]
        self.header = header
        self.rows = []
        self.output = cfg.output

    def say(self, text: str = ""):
        self.lines.append(text)

    def row(self, *values):
        self.rows.append([_fmt(v) for v in values])

    def flush(self, out=None):
        out = out or sys.stdout
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.rows)
        print("\n".join(self.lines), file=out)
        if self.output is not None:
            with open(self.output, "w", newline="") as fh:
                fh.write(buf.getvalue())
            print(f"# csv written to {self.output}", file=out)
        else:
            print(file=out)
            out.write(buf.getvalue())
        out.flush()


def _need(cfg: RunConfig, *parts: str):
    missing = [p for p in parts if getattr(cfg, p) is None]
    if missing:
        sections = {"spectrum": "[function]", "family": "[family]", "multiplier": "[multiplier]"}
        raise ConfigError("this subcommand needs " + ", ".join(sections[m] for m in missing)
                          + " in the --config file")


def _multiplier(cfg: RunConfig, args) -> Multiplier:
    if args.alpha is not None:
        return Multiplier.classical(args.alpha)
    return cfg.multiplier or Multiplier.classical(1.0)


def _alpha(cfg: RunConfig, args) -> float:
    if args.alpha is not None:
        return float(args.alpha)
    if cfg.multiplier is not None:
        if cfg.multiplier.alpha is None:
            raise ConfigError("this subcommand needs the classical multiplier; give alpha")
        return cfg.multiplier.alpha
    return 1.0


# -- subcommands ----------------------------------------------------------------

def _cmd_norm(cfg, args) -> int:
    _need(cfg, "spectrum", "family")
    out = _Output("norm", cfg, ["kind", "value"])
    kinds = [cfg.norm] + [k for k in NormKind if k is not cfg.norm]
    for kind in kinds:
        v = float(norms(cfg.family, cfg.spectrum.coeffs[None, :], kind)[0])
        out.say(f"{kind.value} norm = {v:.17g}")
        out.row(kind.value, v)
    out.flush()
    return EXIT_OK


def _cmd_bestapprox(cfg, args) -> int:
    _need(cfg, "spectrum", "family")
    out = _Output("bestapprox", cfg, ["n", "E_n"])
    for n, E in best_approx_sequence(cfg.family, cfg.spectrum, cfg.n, cfg.norm):
        out.say(f"n = {int(n):4d}  E_n = {E:.17g}")
        out.row(int(n), float(E))
    out.flush()
    return EXIT_OK


def _cmd_modulus(cfg, args) -> int:
    _need(cfg, "spectrum", "family")
    phi = _multiplier(cfg, args)
    out = _Output("modulus", cfg, ["n", "delta", "omega", "h", "refinement_gap"])
    out.say(f"multiplier: {phi.name or phi.kind}; delta = tau/n")
    for n in cfg.n:
        delta = cfg.tau / n
        r = modulus(cfg.spectrum, phi, delta, cfg.family, cfg.norm, cfg.h_grid, full_output=True)
        out.say(f"n = {n:4d}  omega(f, {delta:.6g}) = {r.value:.17g}  at h = {r.h:.6g}")
        out.row(n, delta, r.value, r.h, r.gap)
    out.flush()
    return EXIT_OK


def _cmd_jackson(cfg, args) -> int:
    phi = _multiplier(cfg, args)
    p = cfg.p if cfg.p is not None else 1.0
    out = _Output("jackson", cfg, ["n", "record", "position", "value"])
    out.say(f"multiplier: {phi.name or phi.kind}; p = {p:g}")
    for n in cfg.n:
        res = sharp_constant_lp(phi, p, n, cfg.tau, cfg.grid, cfg.j_max, sensitivity=not args.no_sensitivity)
        d = res.diagnostics
        out.say(f"n = {n}: C = {res.C:.17g}  J = {res.J:.17g}")
        out.say(f"  grid {d['grid']}, j_max {d['j_max']}, duality gap {d['duality_gap']:.3g}, "
                f"{d['iterations']} pivots in {d['rounds']} rounds, bland fallback {d['bland_fallback']}")
        support = np.flatnonzero(res.rho > 0)
        out.say(f"  rho support ({support.size}): " + " ".join(str(j) for j in res.frequencies[support]))
        out.say(f"  v* nodes ({res.measure.nodes.size}): "
                + " ".join(f"{u:.6g}:{w:.4g}" for u, w in zip(res.measure.nodes, res.measure.weights)))
        out.say("  argmin frequencies: " + " ".join(str(j) for j in d["argmin_frequencies"]))
        out.row(n, "C", "", res.C)
        out.row(n, "J", "", res.J)
        out.row(n, "duality_gap", "", d["duality_gap"])
        if "sensitivity" in d:
            s = d["sensitivity"]
            out.say(f"  sensitivity (grid {s['grid']}, j_max {s['j_max']}): C = {s['C']:.17g} "
                    f"(relative change {s['relative_change']:.3g})")
            out.row(n, "C_refined", "", s["C"])
        for j in support:
            out.row(n, "rho", int(res.frequencies[j]), res.rho[j])
        for u, w in zip(res.measure.nodes, res.measure.weights):
            out.row(n, "measure", float(u), float(w))
    out.flush()
    return EXIT_OK


def _constant(phi: Multiplier, p: float, n: int, cfg: RunConfig) -> float:
    if phi.kind == "classical_alpha" and math.isclose(cfg.tau, math.pi, rel_tol=0, abs_tol=1e-15):
        try:
            return tabulated_constant(phi.alpha, p, n, cfg.grid, cfg.j_max)
        except KeyError:
            pass
    return sharp_constant_lp(phi, p, n, cfg.tau, cfg.grid, cfg.j_max).C


def _cmd_verify_direct(cfg, args) -> int:
    out = _Output("verify-direct", cfg, ["function", "n", "path", "lhs", "modulus", "constant", "factor",
                                         "rhs", "slack", "verdict"])
    reports = []
    if cfg.spectrum is None:
        n_max = max(cfg.n) if "n" in cfg.given else SUITE_N_MAX
        out.say(f"20-function suite, n = 1..{n_max}, constant scale {args.corrupt:g}")
        check_direct_theorem(cfg.seed, n_max, args.corrupt, sink=reports)
    else:
        phi = _multiplier(cfg, args)
        if cfg.p is None:
            _need(cfg, "family")
        for n in cfg.n:
            if cfg.p is not None:
                c = _constant(phi, cfg.p, n, cfg) * args.corrupt
                r = verify_direct(None, cfg.spectrum, n, phi, cfg.tau, p=cfg.p, constant=c, h_grid=cfg.h_grid)
            else:
                c = _constant(phi, 1.0, n, cfg) * args.corrupt
                r = verify_direct(cfg.family, cfg.spectrum, n, phi, cfg.tau, norm_kind=cfg.norm, constant=c,
                                  h_grid=cfg.h_grid)
            reports.append((cfg.spectrum.tail_note or "config", r))
    bad = 0
    for name, r in reports:
        bad += not r.passed
        out.row(name, r.n, r.path, r.lhs, r.modulus, r.constant, r.factor, r.rhs, r.slack, r.passed)
    worst = min((r.slack / r.rhs for _, r in reports if r.rhs > 0), default=math.inf)
    out.say(f"{len(reports)} checks, {bad} violations, worst relative slack {worst:.3e}")
    for name, r in [x for x in reports if not x[1].passed][:10]:
        out.say(f"  FAIL {name} n={r.n} {r.path}: lhs {r.lhs:.6g} > rhs {r.rhs:.6g}")
    out.say("PASS" if bad == 0 else "FAIL")
    out.flush()
    return EXIT_OK if bad == 0 else EXIT_FAIL


def _cmd_verify_inverse(cfg, args) -> int:
    alpha = _alpha(cfg, args)
    out = _Output("verify-inverse", cfg, ["function", "alpha", "n", "lhs", "rhs_general", "rhs_alpha",
                                          "slack_general", "slack_alpha", "verdict_general", "verdict_alpha"])
    rows = []
    if cfg.spectrum is None:
        n_max = max(cfg.n) if "n" in cfg.given else SUITE_N_MAX
        out.say(f"20-function suite, alpha = {alpha:g}, n = 1..{n_max}")
        check_inverse(cfg.seed, n_max, sink=rows, alphas=(alpha,))
    else:
        _need(cfg, "family")
        for n in cfg.n:
            g, a = inverse_bounds(cfg.family, cfg.spectrum, alpha, n, cfg.norm, cfg.h_grid)
            rows.append((cfg.spectrum.tail_note or "config", alpha, g, a))
    bad_g = bad_a = 0
    for name, al, g, a in rows:
        bad_g += not g.passed
        bad_a += not a.passed
        out.row(name, al, g.n, g.lhs, g.rhs, a.rhs, g.slack, a.slack, g.passed, a.passed)
    out.say(f"{len(rows)} degrees; general-multiplier violations {bad_g}, alpha-form violations {bad_a}")
    for name, al, g, a in [x for x in rows if not (x[2].passed and x[3].passed)][:10]:
        out.say(f"  FAIL {name} n={g.n}: omega {g.lhs:.6g}, general rhs {g.rhs:.6g}, alpha rhs {a.rhs:.6g}")
    ok = bad_g == 0 and bad_a == 0
    out.say("PASS" if ok else "FAIL")
    out.flush()
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_classify(cfg, args) -> int:
    _need(cfg, "spectrum", "family")
    alpha = _alpha(cfg, args)
    n_range = cfg.n if "n" in cfg.given else None
    r = classify_rates(cfg.family, cfg.spectrum, alpha, cfg.norm, n_range, cfg.h_grid)
    out = _Output("classify", cfg, ["n", "E_n", "omega_alpha"])
    out.say(f"alpha = {alpha:g}")
    out.say(f"fitted E_n decay beta = {r.beta_hat:.6f}")
    out.say(f"fitted modulus slope = {r.omega_slope:.6f} (predicted {r.predicted_slope:.6f})")
    out.say(f"logarithmic case flagged: {'yes' if r.log_flag else 'no'}")
    out.say(f"rate class: omega_alpha(f, t) = {r.category}")
    for n, E, w in zip(r.ns, r.E, r.omega):
        out.row(int(n), float(E), float(w))
    code = EXIT_OK
    if args.r is not None:
        omega = Majorant.power_log(args.r) if args.log else Majorant.power(args.r)
        try:
            m = class_membership(cfg.family, cfg.spectrum, alpha, omega, cfg.norm, r.ns, h_grid=cfg.h_grid)
        except HypothesisError as exc:
            out.say(f"membership refused: {exc}")
            code = EXIT_FAIL
        else:
            out.say(f"membership for omega = {omega.tag}(r={args.r:g}): {m.verdict} "
                    f"(E growth {m.e_growth:.3f}, modulus growth {m.omega_growth:.3f})")
            if m.verdict == INCONSISTENT:
                code = EXIT_FAIL
    out.flush()
    return code


def _cmd_suite(cfg, args) -> int:
    only = set(args.only) if args.only else None
    summary = run_suite(cfg.seed, args.corrupt, only, stream=lambda line: print(line, flush=True))
    # the CSV carries digests of the computed values, not timings, so reruns are byte-identical
    out = _Output("suite", cfg, ["criterion", "title", "verdict", "digest"])
    good, bad = summary.counts
    out.say(f"{good} passed, {bad} failed in {summary.seconds:.1f}s (seed {summary.seed})")
    for r in summary.results:
        out.row(r.number, r.title, r.passed, r.digest)
    out.flush()
    return EXIT_OK if summary.passed else EXIT_FAIL


COMMANDS = {
    "norm": _cmd_norm,
    "bestapprox": _cmd_bestapprox,
    "modulus": _cmd_modulus,
    "jackson": _cmd_jackson,
    "verify-direct": _cmd_verify_direct,
    "verify-inverse": _cmd_verify_inverse,
    "classify": _cmd_classify,
    "suite": _cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orlicz-jackson", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", metavar="{" + ",".join(SUBCOMMANDS) + "}")
    sub.required = True
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="INI-style run configuration")
        sp.add_argument("--norm", help="luxemburg or orlicz")
        sp.add_argument("--n", help="degree or range, e.g. 4, 1..64, 1..64:4, '1 2 8'")
        sp.add_argument("--tau", help="modulus step scale (pi accepted)")
        sp.add_argument("--p", help="exponent of the S^p path")
        sp.add_argument("--alpha", type=float, help="order of the classical multiplier")
        sp.add_argument("--grid", help="LP grid size")
        sp.add_argument("--j-max", dest="j_max", help="LP frequency cutoff")
        sp.add_argument("--h-grid", dest="h_grid", help="modulus grid size")
        sp.add_argument("--seed", help="seed for the random suite entries")
        sp.add_argument("--output", help="CSV path (standard output when omitted)")
        if name == "jackson":
            sp.add_argument("--no-sensitivity", action="store_true", help="skip the doubled-parameter re-run")
        if name in ("verify-direct", "suite"):
            sp.add_argument("--corrupt", type=float, default=1.0, help="scale every constant (fault injection)")
        if name == "classify":
            sp.add_argument("--r", type=float, help="test membership for the majorant t^r")
            sp.add_argument("--log", action="store_true", help="use t^r (1 + |ln t|) instead")
        if name == "suite":
            sp.add_argument("--only", type=int, nargs="+", help="criterion numbers to run")
    return ap


def dispatch(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    keys = ("norm", "n", "tau", "p", "grid", "j_max", "h_grid", "seed", "output")
    overrides = {k: getattr(args, k) for k in keys}
    try:
        cfg = load_config(args.config, overrides=overrides)
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        ap.print_usage(sys.stderr)
        return EXIT_CONFIG
    except NonConvergenceError as exc:
        print(f"solver did not converge: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except HypothesisError as exc:
        print(f"hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except DomainError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()

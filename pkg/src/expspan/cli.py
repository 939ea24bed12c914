"""Command line entry point wiring all modules together.

Structured results are JSON (complex numbers as [re, im] decimal-string
pairs at full precision; floats would defeat the point of high-precision
computation), plottable tables are CSV.  Identical configuration yields
byte-identical output.  Every failure class has its own exit code:

    2 config/parse error     4 size cap exceeded      6 bad sequence
    3 precision exhausted    5 domain violation       1 anything else
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import mpmath as mp

from . import carleson as carleson_mod
from . import gram as gram_mod
from . import lambda_analysis, products
from . import moment as moment_mod
from . import series as series_mod
from .core import Interval, PrecisionContext, validate_sequence
from .errors import (CapError, ConfigError, DomainError, ExpspanError,
                     PrecisionError, SequenceError)
from .fixtures import list_fixtures, load_sequence

SCHEMA_VERSION = 1

_EXIT_CODES = [
    (ConfigError, 2),
    (PrecisionError, 3),
    (CapError, 4),
    (DomainError, 5),
    (SequenceError, 6),
]


def _pair(z, dps: int) -> list[str]:
    z = mp.mpc(z)
    return [mp.nstr(mp.re(z), dps), mp.nstr(mp.im(z), dps)]


def _num(x, dps: int) -> str:
    return mp.nstr(mp.mpf(x), dps)


def _dump(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _parse_interval(text: str) -> Interval:
    try:
        lo, hi = text.split(",")
        return Interval(mp.mpmathify(lo), mp.mpmathify(hi))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad interval {text!r}; expected 'gamma,beta'") from exc


def _parse_complex(text: str) -> mp.mpc:
    try:
        return mp.mpmathify(text.replace("i", "j"))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"cannot parse complex number {text!r}") from exc


def _load_seq(args) -> "MultiplicitySequence":
    return load_sequence(args.seq, default_terms=args.N)


def _ctx(args) -> PrecisionContext:
    kw = {}
    if getattr(args, "digits", None):
        kw["digits"] = args.digits
    if getattr(args, "N", None):
        kw["trunc_N"] = args.N
    return PrecisionContext(**kw)


def _trend_obj(v: lambda_analysis.TrendVerdict, dps: int) -> dict:
    return {"passed": v.passed,
            "slope": _num(v.slope, dps),
            "first_third_median": _num(v.first_third_median, dps),
            "last_third_max": _num(v.last_third_max, dps),
            "contraction": _num(v.contraction, dps),
            "ratios": [_num(r, dps) for r in v.ratios]}


# -- subcommand handlers --------------------------------------------------------

def _cmd_analyze(args) -> int:
    seq = _load_seq(args)
    dps = 30
    report = lambda_analysis.analyze(seq, args.N, mp.mpmathify(args.eps))
    obj = {
        "schema_version": SCHEMA_VERSION,
        "provenance": report.provenance,
        "N": report.N,
        "condition_a": {"verdict": report.cond_a.verdict,
                        "increment_ratio": _num(report.cond_a.increment_ratio, dps),
                        "partials": [_num(p, dps) for p in report.cond_a.partials]},
        "condition_b": {"eta_hat": _num(report.eta_hat, dps),
                        "passed": report.cond_b_passed},
        "geometric_i": _trend_obj(report.geom_i, dps),
        "geometric_ii": _trend_obj(report.geom_ii, dps),
        "necessary": _trend_obj(report.necessary, dps),
        "density": _trend_obj(report.density, dps),
        "separation_delta": (_num(report.separation_delta, dps)
                             if report.separation_delta is not None else None),
        "gap": {"eps": _num(report.gap.eps, dps),
                "fitted_m": _num(report.gap.fitted_m, dps),
                "disks_disjoint": report.gap.disks_disjoint},
        "condensation": ({"chat": _num(report.condensation.chat, dps),
                          "ratios": [_num(r, dps) for r in report.condensation.ratios]}
                         if report.condensation else None),
        "all_passed": report.all_passed,
    }
    _dump(obj, args.out)
    if args.csv:
        rows = [[n + 1,
                 _num(report.geom_i.ratios[n], dps),
                 _num(report.geom_ii.ratios[n], dps),
                 _num(report.necessary.ratios[n], dps)]
                for n in range(report.N)]
        _write_csv(args.csv, ["n", "geom_i_ratio", "geom_ii_ratio", "necessary_ratio"], rows)
    return 0


def _cmd_validate(args) -> int:
    seq = _load_seq(args)
    violations = validate_sequence(seq)
    _dump({"schema_version": SCHEMA_VERSION,
           "provenance": seq.provenance,
           "valid": not violations,
           "violations": [{"index": v.index, "rule": v.rule, "detail": v.detail}
                          for v in violations]}, args.out)
    return 0


def _cmd_product_eval(args) -> int:
    seq = _load_seq(args)
    ctx = _ctx(args)
    kind = {"F": products.ProductKind.F_PLAIN, "G": products.ProductKind.G_ABS,
            "F_even": products.ProductKind.F_EVEN,
            "L_even": products.ProductKind.L_EVEN}.get(args.kind)
    if kind is None:
        raise ConfigError(f"unknown product kind {args.kind!r}")
    with mp.workdps(ctx.digits):
        z = _parse_complex(args.z)
        val = products.eval_product(kind, seq, args.N, z)
    re, im = _pair(val, args.dps)
    _dump({"schema_version": SCHEMA_VERSION, "kind": args.kind,
           "z": _pair(z, args.dps), "value_re": re, "value_im": im}, args.out)
    return 0


def _cmd_lk(args) -> int:
    seq = _load_seq(args)
    ctx = _ctx(args)
    interval = _parse_interval(args.interval)
    with mp.workdps(ctx.digits):
        lk = products.lk_function(seq, interval, ctx)
        if args.action == "eval":
            z = _parse_complex(args.z)
            val = products.lk_eval(lk, z)
            re, im = _pair(val, args.dps)
            _dump({"schema_version": SCHEMA_VERSION, "z": _pair(z, args.dps),
                   "value_re": re, "value_im": im}, args.out)
            return 0
        eps = mp.mpmathify(args.eps)
        ns = list(range(1, min(args.circles, lk.trunc_N) + 1))
        minima = products.lk_circle_minima(lk, eps, ns)
    rows = [[m.n, _num(m.radius, args.dps), _num(m.min_abs, args.dps),
             _num(m.fitted_const, args.dps)] for m in minima]
    if args.csv:
        _write_csv(args.csv, ["n", "radius", "min_abs_G", "fitted_const"], rows)
    _dump({"schema_version": SCHEMA_VERSION, "eps": _num(eps, args.dps),
           "minima": [{"n": r[0], "radius": r[1], "min_abs": r[2],
                       "fitted_const": r[3]} for r in rows]}, args.out)
    return 0


def _cmd_gram(args) -> int:
    seq = _load_seq(args)
    ctx = _ctx(args)
    dom = (gram_mod.DomainSpec.half_line() if args.half_line
           else gram_mod.DomainSpec.bounded(_parse_interval(args.interval)))
    g = gram_mod.gram_matrix(seq, args.N, dom, ctx)
    dps = args.dps
    obj = {"schema_version": SCHEMA_VERSION, "dim": g.dim,
           "digits_used": g.digits_used,
           "cond_estimate": _num(g.cond_estimate, 8),
           "indices": [[ix.n, ix.k] for ix in g.indices]}
    if args.action == "build":
        obj["matrix"] = [[_pair(g.matrix[i, j], dps) for j in range(g.dim)]
                         for i in range(g.dim)]
        _dump(obj, args.out)
        return 0
    fam = gram_mod.biorthogonal(g)
    if args.action == "distance":
        rows = []
        for i, ix in enumerate(g.indices):
            lam = seq.lam(ix.n)
            d = fam.distances[i]
            rows.append([ix.n, ix.k, _num(mp.re(lam), dps), _num(d, dps),
                         _num(mp.log(d) / mp.re(lam), dps),
                         _num(fam.norms[i], dps)])
        obj["distances"] = [{"n": r[0], "k": r[1], "re_lambda": r[2],
                             "distance": r[3], "log_ratio": r[4],
                             "dual_norm": r[5]} for r in rows]
        _dump(obj, args.out)
        if args.csv:
            _write_csv(args.csv, ["n", "k", "re_lambda", "distance",
                                  "log_distance_over_re_lambda", "dual_norm"], rows)
        return 0
    if args.action == "biorthogonal":
        obj["identity_residual"] = _num(fam.identity_residual, 8)
        obj["norms"] = [_num(v, dps) for v in fam.norms]
        obj["coeffs"] = [[_pair(fam.coeffs[i, j], dps) for j in range(g.dim)]
                         for i in range(g.dim)]
        _dump(obj, args.out)
        return 0
    # mixed: random partitions
    import random
    rng = random.Random(args.seed)
    results = []
    for _ in range(args.partitions):
        n2 = [ix for ix in g.indices if rng.random() < 0.5]
        n1 = [ix for ix in g.indices if ix not in n2]
        rep = gram_mod.mixed_completeness(g, fam, (n1, n2))
        results.append({"n2": [[ix.n, ix.k] for ix in rep.n2],
                        "min_singular": _num(rep.min_singular, 8)})
    obj["partitions"] = results
    _dump(obj, args.out)
    return 0


def _cmd_series(args) -> int:
    s = series_mod.load_series(args.series)
    ctx = _ctx(args)
    with mp.workdps(ctx.digits):
        if args.action == "eval":
            z = _parse_complex(args.z)
            res = series_mod.td_eval(s, z, args.N or s.seq.size)
            re, im = _pair(res.value, args.dps)
            _dump({"schema_version": SCHEMA_VERSION, "value_re": re, "value_im": im,
                   "tail_bound": _num(res.tail_bound, args.dps),
                   "terms_used": res.terms_used}, args.out)
        elif args.action == "abscissa":
            rep = series_mod.star_abscissa(s, args.N or s.seq.size)
            _dump({"schema_version": SCHEMA_VERSION, "a": _num(rep.a, args.dps),
                   "implied_beta": _num(rep.implied_beta, args.dps),
                   "ratios": [_num(r, args.dps) for r in rep.ratios]}, args.out)
        else:
            rep = series_mod.bound_check(s, mp.mpmathify(args.beta),
                                         mp.mpmathify(args.eps))
            _dump({"schema_version": SCHEMA_VERSION, "m_hat": _num(rep.m_hat, args.dps),
                   "argmax": list(rep.argmax) if rep.argmax else None,
                   "verdict": rep.verdict}, args.out)
    return 0


def _cmd_moment(args) -> int:
    seq = _load_seq(args)
    ctx = _ctx(args)
    interval = _parse_interval(args.interval)
    data = moment_mod.load_moments(args.data)
    try:
        sol = moment_mod.solve(data, seq, args.N, interval, ctx, force=args.force)
    except moment_mod.GrowthGateError as exc:
        _dump({"schema_version": SCHEMA_VERSION, "solved": False,
               "reason": str(exc)}, args.out)
        return 0
    obj = series_mod.series_to_obj(sol.series, dps=args.dps)
    obj.update({"schema_version": SCHEMA_VERSION, "solved": True,
                "forced": sol.forced,
                "growth_a": _num(sol.gate.a, args.dps) if mp.isfinite(sol.gate.a) else "-inf",
                "residual_max": _num(sol.residual_max, 8),
                "coefficient_bound_verdict": sol.coefficient_bound.verdict})
    _dump(obj, args.out)
    return 0


def _cmd_carleson(args) -> int:
    ctx = _ctx(args)
    if args.action == "counterexample":
        rep = carleson_mod.counterexample(args.nmax, ctx)
        dps = args.dps
        _dump({"schema_version": SCHEMA_VERSION,
               "samples": [_pair(z, dps) for z in rep.samples],
               "rows": [{"n": r.n,
                         "grouped_abs": [_num(v, dps) for v in r.grouped_abs],
                         "grouped_bound": [_num(v, dps) for v in r.grouped_bound],
                         "ungrouped_abs": [_num(v, dps) for v in r.ungrouped_abs]}
                        for r in rep.rows],
               "grouped_decreasing": rep.grouped_decreasing,
               "ungrouped_increasing": rep.ungrouped_increasing,
               "f_at_zero": _pair(rep.value_at_zero, dps)}, args.out)
        return 0
    seq = _load_seq(args)
    op = carleson_mod.carleson_operator(seq, args.N, ctx)
    if args.action == "apply":
        lam = _parse_complex(args.lam)
        with mp.workdps(ctx.digits):
            val = carleson_mod.apply_to_exponential(op, lam, args.k,
                                                    mp.mpmathify(args.x), ctx)
        re, im = _pair(val, args.dps)
        _dump({"schema_version": SCHEMA_VERSION, "value_re": re, "value_im": im},
              args.out)
        return 0
    # residual over a grid for a series file
    s = series_mod.load_series(args.series)
    lo, hi, steps = args.grid.split(":")
    lo, hi, steps = mp.mpmathify(lo), mp.mpmathify(hi), int(steps)
    grid = [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]
    rep = carleson_mod.residual_on_span(op, s, grid, ctx)
    _dump({"schema_version": SCHEMA_VERSION,
           "sup_residual": _num(rep.sup_residual, 8),
           "scale": _num(rep.scale, 8)}, args.out)
    return 0


def _cmd_fixtures(args) -> int:
    _dump({"schema_version": SCHEMA_VERSION,
           "fixtures": [{"name": f.name, "description": f.description,
                         "paired": f.paired} for f in list_fixtures()]}, args.out)
    return 0


_EXPERIMENT_KINDS = ("analyze", "gram", "biorthogonal", "distance-trend",
                     "series", "moment", "carleson", "counterexample",
                     "full-report")


def _cmd_run(args) -> int:
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    kind = cfg.get("kind")
    if kind not in _EXPERIMENT_KINDS:
        raise ConfigError(f"unknown experiment kind {kind!r}; choose from {_EXPERIMENT_KINDS}")
    outdir = cfg.get("out", args.out or "expspan-report")
    os.makedirs(outdir, exist_ok=True)
    manifest = {"schema_version": SCHEMA_VERSION, "kind": kind, "artifacts": []}

    def art(name):
        manifest["artifacts"].append(name)
        return os.path.join(outdir, name)

    seq_spec = cfg.get("seq")
    if seq_spec is None and kind != "counterexample":
        raise ConfigError("config needs a 'seq' spec")
    N = int(cfg.get("N", 6))
    digits = int(cfg.get("digits", 120))
    ctx = PrecisionContext(digits=digits, trunc_N=N)
    from .fixtures import sequence_from_spec
    seq = sequence_from_spec(seq_spec, default_terms=N) if seq_spec else None
    dps = 30

    if kind in ("analyze", "full-report"):
        rep = lambda_analysis.analyze(seq, N, mp.mpmathify(str(cfg.get("eps", "0.1"))))
        _dump({"provenance": rep.provenance, "all_passed": rep.all_passed,
               "geometric_i": _trend_obj(rep.geom_i, dps),
               "geometric_ii": _trend_obj(rep.geom_ii, dps)}, art("analyze.json"))
    if kind in ("gram", "biorthogonal", "distance-trend", "full-report"):
        interval = _parse_interval(cfg.get("interval", "0,1"))
        g = gram_mod.gram_matrix(seq, N, gram_mod.DomainSpec.bounded(interval), ctx)
        fam = gram_mod.biorthogonal(g)
        _dump({"dim": g.dim, "digits_used": g.digits_used,
               "identity_residual": _num(fam.identity_residual, 8)},
              art("biorthogonal.json"))
        rows = []
        for i, ix in enumerate(g.indices):
            lam = seq.lam(ix.n)
            rows.append([ix.n, mp.nstr(mp.re(lam), dps), mp.nstr(fam.distances[i], dps),
                         mp.nstr(mp.log(fam.distances[i]) / mp.re(lam), dps)])
        _write_csv(art("distance_trend.csv"),
                   ["n", "re_lambda", "distance", "log_distance_over_re_lambda"], rows)
    if kind == "series":
        sobj = cfg.get("series")
        if sobj is None:
            raise ConfigError("series experiment needs a 'series' object")
        s = series_mod.series_from_obj(sobj)
        with mp.workdps(ctx.digits):
            rep = series_mod.star_abscissa(s, s.seq.size)
        _dump({"a": _num(rep.a, dps) if mp.isfinite(rep.a) else "-inf",
               "implied_beta": _num(rep.implied_beta, dps) if mp.isfinite(rep.a) else "inf",
               "ratios": [_num(r, dps) if mp.isfinite(r) else "-inf"
                          for r in rep.ratios]}, art("series_abscissa.json"))
    if kind == "moment":
        rows = cfg.get("data")
        if rows is None:
            raise ConfigError("moment experiment needs a 'data' row list")
        interval = _parse_interval(cfg.get("interval", "0,1"))
        data = moment_mod.moments_from_obj(rows)
        sol = moment_mod.solve(data, seq, N, interval, ctx,
                               force=bool(cfg.get("force", False)))
        _dump({"residual_max": _num(sol.residual_max, 8),
               "growth_a": _num(sol.gate.a, dps) if mp.isfinite(sol.gate.a) else "-inf",
               "forced": sol.forced}, art("moment_solution.json"))
    if kind in ("carleson", "full-report"):
        op = carleson_mod.carleson_operator(seq, N, ctx)
        interval = _parse_interval(cfg.get("interval", "0,1"))
        grid = [interval.gamma + interval.length * (i + 1) / 11 for i in range(10)]
        worst = mp.mpf(0)
        for n in range(1, N + 1):
            for k in range(seq.mu(n)):
                for x in grid:
                    worst = max(worst, abs(carleson_mod.apply_to_exponential(
                        op, seq.lam(n), k, x, ctx)))
        _dump({"sup_annihilation_residual": _num(worst, 8),
               "degree": op.degree}, art("carleson_annihilation.json"))
    if kind in ("counterexample", "full-report"):
        rep = carleson_mod.counterexample(int(cfg.get("nmax", 5)), ctx)
        _dump({"grouped_decreasing": rep.grouped_decreasing,
               "ungrouped_increasing": rep.ungrouped_increasing},
              art("counterexample.json"))
    if not manifest["artifacts"]:
        raise ConfigError(f"experiment kind {kind!r} produced no artifacts; "
                          "nothing to report")
    _dump(manifest, os.path.join(outdir, "manifest.json"))
    return 0


# -- argument wiring -------------------------------------------------------------

def _add_common(p, seq=True):
    if seq:
        p.add_argument("--seq", required=True, help="sequence spec JSON file")
    p.add_argument("--N", type=int, default=8, help="truncation prefix length")
    p.add_argument("--digits", type=int, default=None, help="working decimal digits")
    p.add_argument("--dps", type=int, default=30, help="printed digits")
    p.add_argument("--out", default=None, help="output JSON path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="expspan",
                                 description="high-precision exponential-system toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="sequence class diagnostics")
    p.add_argument("seq", help="sequence spec JSON file")
    p.add_argument("--N", type=int, default=12)
    p.add_argument("--eps", default="0.1")
    p.add_argument("--csv", default=None, help="ratio table CSV path")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("validate", help="report sequence invariant violations")
    p.add_argument("seq", help="sequence spec JSON file")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("product", help="canonical product evaluation")
    psub = p.add_subparsers(dest="action", required=True)
    pe = psub.add_parser("eval")
    _add_common(pe)
    pe.add_argument("--kind", default="F", choices=["F", "G", "F_even", "L_even"])
    pe.add_argument("--z", required=True, help="evaluation point, e.g. '1.5+0.5i'")
    pe.set_defaults(func=_cmd_product_eval)

    p = sub.add_parser("lk", help="windowed even product")
    psub = p.add_subparsers(dest="action", required=True)
    for name in ("eval", "lowerbound"):
        pe = psub.add_parser(name)
        _add_common(pe)
        pe.add_argument("--interval", required=True, help="'gamma,beta'")
        if name == "eval":
            pe.add_argument("--z", required=True)
        else:
            pe.add_argument("--eps", default="0.1")
            pe.add_argument("--circles", type=int, default=4)
            pe.add_argument("--csv", default=None)
        pe.set_defaults(func=_cmd_lk, action=name)

    p = sub.add_parser("gram", help="Gram systems, distances, biorthogonal family")
    psub = p.add_subparsers(dest="action", required=True)
    for name in ("build", "distance", "biorthogonal", "mixed"):
        pe = psub.add_parser(name)
        _add_common(pe)
        pe.add_argument("--interval", default="0,1")
        pe.add_argument("--half-line", action="store_true")
        pe.add_argument("--csv", default=None)
        if name == "mixed":
            pe.add_argument("--partitions", type=int, default=5)
            pe.add_argument("--seed", type=int, default=0)
        pe.set_defaults(func=_cmd_gram, action=name)

    p = sub.add_parser("series", help="Taylor-Dirichlet series operations")
    psub = p.add_subparsers(dest="action", required=True)
    for name in ("eval", "abscissa", "bound"):
        pe = psub.add_parser(name)
        pe.add_argument("--series", required=True, help="series JSON file")
        pe.add_argument("--N", type=int, default=None)
        pe.add_argument("--digits", type=int, default=None)
        pe.add_argument("--dps", type=int, default=30)
        pe.add_argument("--out", default=None)
        if name == "eval":
            pe.add_argument("--z", required=True)
        if name == "bound":
            pe.add_argument("--beta", required=True)
            pe.add_argument("--eps", default="0.1")
        pe.set_defaults(func=_cmd_series, action=name)

    p = sub.add_parser("moment", help="moment problem solver")
    psub = p.add_subparsers(dest="action", required=True)
    pe = psub.add_parser("solve")
    _add_common(pe)
    pe.add_argument("--interval", required=True)
    pe.add_argument("--data", required=True, help="moments JSON file")
    pe.add_argument("--force", action="store_true",
                    help="solve even when the growth gate fails")
    pe.set_defaults(func=_cmd_moment)

    p = sub.add_parser("carleson", help="infinite-order operator experiments")
    psub = p.add_subparsers(dest="action", required=True)
    pe = psub.add_parser("apply")
    _add_common(pe)
    pe.add_argument("--lam", required=True, help="frequency lambda")
    pe.add_argument("--k", type=int, default=0)
    pe.add_argument("--x", default="0")
    pe.set_defaults(func=_cmd_carleson, action="apply")
    pe = psub.add_parser("residual")
    _add_common(pe)
    pe.add_argument("--series", required=True)
    pe.add_argument("--grid", default="0.05:0.95:20", help="lo:hi:steps")
    pe.set_defaults(func=_cmd_carleson, action="residual")
    pe = psub.add_parser("counterexample")
    pe.add_argument("--nmax", type=int, default=5)
    pe.add_argument("--digits", type=int, default=None)
    pe.add_argument("--dps", type=int, default=30)
    pe.add_argument("--out", default=None)
    pe.set_defaults(func=_cmd_carleson, action="counterexample")

    p = sub.add_parser("fixtures", help="list built-in sequences")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_fixtures)

    p = sub.add_parser("run", help="run an experiment config, emit a report bundle")
    p.add_argument("config", help="experiment config JSON")
    p.add_argument("--out", default=None, help="output directory")
    p.set_defaults(func=_cmd_run)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except ExpspanError as exc:
        for klass, code in _EXIT_CODES:
            if isinstance(exc, klass):
                print(f"error: {exc}", file=sys.stderr)
                return code
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line runner: ``czlab <command> [options]``.

Exit codes: 0 success, 1 a check failed (named on stderr), 2 bad configuration.
Every option can also come from ``--config file.json``; flags win over the file.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, acceptance, corpus
from .decay import (CF_OPERATORS, DOMINATION_IDS, PAIRS, DominationReport, cf_commutator_check,
                    cf_local_check, domination_values, good_lambda_curve, previo_check,
                    run_experiment, sup_ratio)
from .dyadic import ROOT
from .errors import CZLabError, ConfigError
from .lerner import lerner_decompose, pointwise_bound_check, verify_family
from .singular import maximal_singular
from .weights import (a1_constant, ap_constant, parse_weight, rubio_de_francia, stein_llogl_check,
                      SCOPES)

SUMMARY_SCHEMA = "czlab-summary-1"

DEFAULTS = {
    "decay": {"pair": None, "seed": "1", "level": 12, "q": 2.0, "k": 2, "mu": 4.0, "points": 64,
              "outdir": "czlab-out", "expect_best": False},
    "goodlambda": {"seed": "1", "level": 12, "lambda_level": None, "points": 64,
                   "outdir": "czlab-out", "min_r2": None},
    "lerner": {"seed": "1", "level": 10, "verify": False, "outdir": None},
    "weights": {"weight": "const", "level": 10, "p": 2.0, "scope": "dyadic", "rubio": None,
                "outdir": None},
    "cf": {"operator": "tstar", "weight": "power:0,power:0.25,power:0.5,power:0.75", "seed": "1",
           "level": 10, "q": 2.0, "k": 1, "delta": 0.5, "max_spread": None, "outdir": None},
    "dominate": {"ident": None, "seed": "0:20", "levels": "8,10,12", "max_spread": 2.0,
                 "outdir": None},
    "suite": {"name": None, "outdir": None},
}


class CheckFailed(Exception):
    pass


# ---------------------------------------------------------------------------
# argument handling

def _parse_seeds(text) -> list:
    """``7``, ``1,2,5`` or ``a:b`` (half open)."""
    if isinstance(text, int):
        return [text]
    out = []
    try:
        for part in str(text).split(","):
            if ":" in part:
                a, b = part.split(":")
                out.extend(range(int(a), int(b)))
            else:
                out.append(int(part))
    except ValueError:
        raise ConfigError(f"bad seed list {text!r}") from None
    if not out:
        raise ConfigError("empty seed list")
    return out


def _parse_levels(text) -> list:
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    try:
        return [int(x) for x in str(text).split(",")]
    except ValueError:
        raise ConfigError(f"bad level list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    p = argparse.ArgumentParser(prog="czlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"czlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False, argument_default=S)
    common.add_argument("--config", help="JSON file with option values")
    common.add_argument("--outdir")

    d = sub.add_parser("decay", parents=[common], argument_default=S, help="level-set decay of one pair")
    d.add_argument("--pair", help=f"one of {', '.join(PAIRS)}")
    d.add_argument("--seed", help="seed, list 1,2,3 or range a:b")
    d.add_argument("--level", type=int)
    d.add_argument("--q", type=float)
    d.add_argument("--k", type=int)
    d.add_argument("--mu", type=float)
    d.add_argument("--points", type=int)
    d.add_argument("--expect-best", dest="expect_best", action="store_true",
                   help="fail unless the predicted beta has the best fit")

    g = sub.add_parser("goodlambda", parents=[common], argument_default=S, help="good-lambda curve")
    g.add_argument("--seed")
    g.add_argument("--level", type=int)
    g.add_argument("--lambda", dest="lambda_level", type=float, help="default: median of T*f")
    g.add_argument("--points", type=int)
    g.add_argument("--min-r2", dest="min_r2", type=float)

    le = sub.add_parser("lerner", parents=[common], argument_default=S, help="sparse decomposition")
    le.add_argument("--seed")
    le.add_argument("--level", type=int)
    le.add_argument("--verify", action="store_true")

    w = sub.add_parser("weights", parents=[common], argument_default=S, help="weight constants")
    w.add_argument("--weight", help="const, power:a or cr:delta:seed")
    w.add_argument("--level", type=int)
    w.add_argument("--p", type=float)
    w.add_argument("--scope", choices=SCOPES)
    w.add_argument("--rubio", type=float, help="run Rubio de Francia on w with this r")

    c = sub.add_parser("cf", parents=[common], argument_default=S, help="local weighted C-F ratios")
    c.add_argument("--operator", help=f"one of {', '.join(CF_OPERATORS + ('commutator', 'previo'))}")
    c.add_argument("--weight", help="comma separated weight specs")
    c.add_argument("--seed")
    c.add_argument("--level", type=int)
    c.add_argument("--q", type=float)
    c.add_argument("--k", type=int)
    c.add_argument("--delta", type=float)
    c.add_argument("--max-spread", dest="max_spread", type=float)

    m = sub.add_parser("dominate", parents=[common], argument_default=S, help="pointwise domination sup ratios")
    m.add_argument("--id", dest="ident", help=f"one of {', '.join(DOMINATION_IDS)}")
    m.add_argument("--seed")
    m.add_argument("--levels")
    m.add_argument("--max-spread", dest="max_spread", type=float)

    s = sub.add_parser("suite", parents=[common], argument_default=S, help="smoke or full matrix")
    s.add_argument("name", nargs="?", help="smoke or full")
    return p


def resolve(command: str, given: dict) -> dict:
    """Defaults, then the config file, then explicit flags."""
    cfg = dict(DEFAULTS[command])
    path = given.pop("config", None)
    if path is not None:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {path}: {e}") from None
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        data = {k.replace("-", "_"): v for k, v in data.items()}
        data.pop("command", None)
        unknown = sorted(set(data) - set(cfg))
        if unknown:
            raise ConfigError(f"unknown config keys for {command}: {', '.join(unknown)}")
        cfg.update(data)
    cfg.update(given)
    return cfg


def _workers(jobs: int) -> int:
    env = os.environ.get("CZLAB_THREADS")
    cap = os.cpu_count() or 1
    if env:
        try:
            cap = max(1, int(env))
        except ValueError:
            raise ConfigError(f"CZLAB_THREADS must be an integer, got {env!r}") from None
    return max(1, min(cap, jobs))


def _map(fn, items: list) -> list:
    """Run jobs on the worker pool; results come back in job order."""
    n = _workers(len(items))
    if n == 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------------------
# output

def _fmt(x: float) -> str:
    return repr(float(x))


def write_curve(path: Path, header, xs, ys):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for a, b in zip(xs, ys):
        w.writerow([_fmt(a), _fmt(b)])
    path.write_text(buf.getvalue())


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _entry_key(e: dict) -> str:
    return json.dumps([e.get("kind"), e.get("pair") or e.get("id") or e.get("operator") or e.get("name"),
                       e.get("seed"), e.get("L"), e.get("weight")], sort_keys=True)


def write_summary(outdir: Path, entries: list):
    """Merge ``entries`` into ``outdir/summary.json``, replacing equal keys."""
    path = outdir / "summary.json"
    old = []
    if path.exists():
        try:
            data = json.loads(path.read_text())
            if data.get("schema") == SUMMARY_SCHEMA:
                old = data.get("entries", [])
        except (json.JSONDecodeError, AttributeError):
            old = []
    merged = {_entry_key(e): e for e in old}
    merged.update({_entry_key(e): _clean(e) for e in entries})
    doc = {"schema": SUMMARY_SCHEMA, "corpus": corpus.CORPUS_VERSION,
           "entries": [merged[k] for k in sorted(merged)]}
    path.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")


def _outdir(cfg) -> Path | None:
    if cfg.get("outdir") is None:
        return None
    p = Path(cfg["outdir"])
    p.mkdir(parents=True, exist_ok=True)
    return p


def _fail(failures: list):
    if failures:
        raise CheckFailed("; ".join(failures))


# ---------------------------------------------------------------------------
# commands

def _decay_job(args):
    pair, seed, L, q, k, mu, points = args
    return run_experiment(pair, seed, L, t_grid=points, q=q, k=k, mu=mu)


def cmd_decay(cfg) -> list:
    if cfg["pair"] is None:
        raise ConfigError("decay needs --pair")
    if cfg["pair"] not in PAIRS:
        raise ConfigError(f"unknown pair {cfg['pair']!r}; expected one of {', '.join(PAIRS)}")
    seeds = _parse_seeds(cfg["seed"])
    L = int(cfg["level"])
    jobs = [(cfg["pair"], s, L, float(cfg["q"]), int(cfg["k"]), float(cfg["mu"]), int(cfg["points"]))
            for s in seeds]
    results = _map(_decay_job, jobs)
    out = _outdir(cfg)
    failures, entries = [], []
    for r in results:
        write_curve(out / f"{r.pair}_{r.seed}_L{r.L}.csv", ["t", "phi"], r.curve.t_values, r.curve.phi_values)
        entries.append({"kind": "decay", **r.summary()})
        tag = f"decay {r.pair} seed {r.seed}"
        if r.curve.escaped > 0:
            failures.append(f"{tag}: escaped mass {r.curve.escaped:.3g}")
        if np.any(np.diff(r.curve.phi_values) > 0):
            failures.append(f"{tag}: phi not non-increasing")
        if r.best_beta is None:
            failures.append(f"{tag}: no fit had enough points")
        elif cfg["expect_best"] and not r.informational and r.best_beta != r.predicted_beta:
            failures.append(f"{tag}: best beta {r.best_beta:g} != predicted {r.predicted_beta:g}")
        best = "none" if r.best_beta is None else f"{r.best_beta:g}"
        print(f"{r.pair} seed={r.seed} L={r.L} best_beta={best} predicted={r.predicted_beta:g} "
              f"control_a1={r.control_a1:.4g}")
    write_summary(out, entries)
    return failures


def _goodlambda_job(args):
    seed, L, lam, points = args
    f = corpus.bump_train(seed, L)
    if lam is None:
        lam = float(np.median(maximal_singular(f).samples))
    return seed, L, lam, good_lambda_curve(f, lam, points=points)


def cmd_goodlambda(cfg) -> list:
    seeds = _parse_seeds(cfg["seed"])
    L = int(cfg["level"])
    lam = cfg["lambda_level"]
    if lam is not None and not float(lam) > 0:
        raise ConfigError("--lambda must be positive")
    results = _map(_goodlambda_job, [(s, L, None if lam is None else float(lam), int(cfg["points"]))
                                     for s in seeds])
    out = _outdir(cfg)
    failures, entries = [], []
    for seed, L, lam_used, c in results:
        write_curve(out / f"goodlambda_{seed}_L{L}.csv", ["gamma", "fraction"], c.gamma_values,
                    c.measure_fractions)
        fit = None if c.fit is None else {"rate": c.fit.alpha_hat, "r_squared": c.fit.r_squared,
                                          "points": c.fit.points_used}
        entries.append({"kind": "goodlambda", "name": "goodlambda", "seed": seed, "L": L,
                        "lambda": lam_used, "fit": fit})
        if np.any(np.diff(c.measure_fractions) < 0):
            failures.append(f"goodlambda seed {seed}: fraction not non-decreasing in gamma")
        if cfg["min_r2"] is not None and (c.fit is None or c.fit.r_squared < cfg["min_r2"]
                                          or c.fit.alpha_hat <= 0):
            failures.append(f"goodlambda seed {seed}: fit below R^2 {cfg['min_r2']}")
        print(f"goodlambda seed={seed} L={L} lambda={lam_used:.4g} fit={fit}")
    write_summary(out, entries)
    return failures


def cmd_lerner(cfg) -> list:
    failures, entries = [], []
    out = _outdir(cfg)
    for seed in _parse_seeds(cfg["seed"]):
        L = int(cfg["level"])
        f = corpus.lerner_member(seed, L)
        fam = lerner_decompose(f)
        line = f"lerner seed={seed} L={L} cubes={len(fam)} generations={len(fam.levels)}"
        entry = {"kind": "lerner", "name": "lerner", "seed": seed, "L": L, "cubes": len(fam)}
        if cfg["verify"]:
            rep = verify_family(f, fam)
            bound = pointwise_bound_check(f, ROOT, fam)
            for ch in rep.checks:
                if not ch.passed:
                    failures.append(f"lerner seed {seed}: {ch.name} (worst {ch.worst:.4g})")
            if not bound.ok:
                failures.append(f"lerner seed {seed}: pointwise_bound ({bound.violations} cells)")
            entry["checks"] = {ch.name: ch.passed for ch in rep.checks}
            entry["pointwise_violations"] = bound.violations
            line += f" verified={rep.ok and bound.ok}"
        if out is not None:
            (out / f"lerner_{seed}_L{L}.json").write_text(fam.to_json() + "\n")
        entries.append(entry)
        print(line)
    if out is not None:
        write_summary(out, entries)
    return failures


def cmd_weights(cfg) -> list:
    L = int(cfg["level"])
    w = parse_weight(str(cfg["weight"]), L)
    p = float(cfg["p"])
    if not p > 1:
        raise ConfigError("--p must exceed 1")
    rep = {"kind": "weights", "weight": cfg["weight"], "L": L, "p": p, "scope": cfg["scope"],
           "ap": ap_constant(w, p, cfg["scope"]), "a1": a1_constant(w, cfg["scope"]),
           "stein_llogl_ratio": stein_llogl_check(w).detail["ratio"]}
    failures = []
    if cfg["rubio"] is not None:
        r = float(cfg["rubio"])
        if not r > 1:
            raise ConfigError("--rubio must exceed 1")
        _, rr = rubio_de_francia(w.values, r, return_report=True)
        rep["rubio"] = {"terms": rr.terms, "norm_bound": rr.norm_bound, "norm_ratio": rr.norm_ratio,
                        "majorizes": rr.majorizes, "a1_excess": rr.a1_excess}
        if not rr.ok:
            failures.append(f"weights {cfg['weight']}: rubio_de_francia properties")
    if not math.isfinite(rep["ap"]):
        failures.append(f"weights {cfg['weight']}: A_p constant not finite")
    print(json.dumps(_clean(rep), sort_keys=True))
    out = _outdir(cfg)
    if out is not None:
        write_summary(out, [rep])
    return failures


def cmd_cf(cfg) -> list:
    op = cfg["operator"]
    ops = CF_OPERATORS + ("commutator", "previo")
    if op not in ops:
        raise ConfigError(f"unknown operator {op!r}; expected one of {', '.join(ops)}")
    L = int(cfg["level"])
    specs = [s for s in str(cfg["weight"]).split(",") if s]
    weights = [parse_weight(s, L) for s in specs]
    q = float(cfg["q"])
    if not q > 1:
        raise ConfigError("--q must exceed 1")
    failures, entries = [], []
    b = corpus.log_symbol(L)
    for seed in _parse_seeds(cfg["seed"]):
        f = corpus.resolution_free(seed, L)
        vals = []
        for spec, w in zip(specs, weights):
            if op == "commutator":
                r = cf_commutator_check(b, f, w, q, int(cfg["k"]))
            elif op == "previo":
                r = previo_check(f, w, q, float(cfg["delta"]))
            elif op == "veccz":
                r = cf_local_check(op, corpus.vector_member(seed, L), w, q)
            elif op == "multilinear-model":
                r = cf_local_check(op, corpus.multi_member(seed, L), w, q)
            else:
                r = cf_local_check(op, f, w, q)
            vals.append(r.normalized)
            entries.append({"kind": "cf", "operator": r.operator, "seed": seed, "L": L, "weight": spec,
                            "ap": r.ap, "lhs": r.lhs, "rhs": r.rhs, "normalized": r.normalized})
            print(f"cf {r.operator} seed={seed} weight={spec} ap={r.ap:.4g} normalized={r.normalized:.4g}")
            if not r.finite:
                failures.append(f"cf {op} seed {seed} {spec}: ratio not finite")
        v = np.array(vals)
        if cfg["max_spread"] is not None and v.size and v.min() > 0:
            spread = float(v.max() / v.min())
            if spread > cfg["max_spread"]:
                failures.append(f"cf {op} seed {seed}: spread {spread:.3g} > {cfg['max_spread']}")
    out = _outdir(cfg)
    if out is not None:
        write_summary(out, entries)
    return failures


def _dominate_job(args):
    ident, seed, L = args
    return sup_ratio(*domination_values(ident, seed, L))


def cmd_dominate(cfg) -> list:
    ident = cfg["ident"]
    if ident is None or str(ident) not in DOMINATION_IDS:
        raise ConfigError(f"--id must be one of {', '.join(DOMINATION_IDS)}")
    ident = str(ident)
    seeds, levels = _parse_seeds(cfg["seed"]), _parse_levels(cfg["levels"])
    jobs = [(ident, s, L) for s in seeds for L in levels]
    sups = dict(zip([(s, L) for _, s, L in jobs], _map(_dominate_job, jobs)))
    rep = DominationReport(ident, seeds, levels, sups)
    failures = []
    for s in seeds:
        sp = rep.spread(s)
        print(f"dominate {ident} seed={s} " + " ".join(f"L{L}={sups[(s, L)]:.4g}" for L in levels)
              + f" spread={sp:.3f}")
        if not sp < cfg["max_spread"]:
            failures.append(f"dominate {ident} seed {s}: spread {sp:.3f} >= {cfg['max_spread']}")
    out = _outdir(cfg)
    if out is not None:
        write_summary(out, [{"kind": "dominate", **rep.summary()}])
    return failures


def cmd_suite(cfg) -> list:
    name = cfg["name"]
    if name not in ("smoke", "full"):
        raise ConfigError(f"suite name must be smoke or full, got {name!r}")
    checks = acceptance.SMOKE if name == "smoke" else acceptance.FULL
    failures, entries = [], []
    t0 = time.perf_counter()
    for fn in checks:
        r = fn()
        print(r.line, flush=True)
        entries.append({"kind": "suite", "name": f"{name}:{r.number}:{r.name}", "ok": r.ok,
                        "summary": r.summary})
        if not r.ok:
            failures.append(f"suite {name}: {r.number}. {r.name}")
    print(f"suite {name} finished in {time.perf_counter() - t0:.1f}s")
    out = _outdir(cfg)
    if out is not None:
        write_summary(out, entries)
    return failures


COMMANDS = {"decay": cmd_decay, "goodlambda": cmd_goodlambda, "lerner": cmd_lerner,
            "weights": cmd_weights, "cf": cmd_cf, "dominate": cmd_dominate, "suite": cmd_suite}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    given = vars(ns)
    command = given.pop("command")
    try:
        cfg = resolve(command, given)
        failures = COMMANDS[command](cfg)
        _fail(failures)
    except (CheckFailed, ArithmeticError) as e:
        print(f"czlab: check failed: {e}", file=sys.stderr)
        return 1
    except CZLabError as e:
        print(f"czlab: configuration error: {e}", file=sys.stderr)
        return 2
    except (TypeError, ValueError) as e:
        print(f"czlab: configuration error: {e}", file=sys.stderr)
        return 2
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

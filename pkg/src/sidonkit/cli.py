"""Command-line front end: ``sidonkit <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or bad input,
3 internal invariant breach (an exact identity failed; always a bug).
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import REFERENCE_PARAMS, BfrParams, combined_bound, delta_formula, theorem1_bound, w_coefficients
from .constructions import construct
from .core import BudgetExceeded, NotSidon, SearchBudget, SidonError, SidonSet, exhaustive_optimal, find_collision
from .exact import ceil_tau_k32, parse_fraction, render_decimal, render_exact, sqrt_ratio_decimal
from .optimize import REFERENCE_POINT, OptimizerConfig, anneal_chains
from .search import TABLE_HEADER, ParseError, SearchConfig, read_rulers, read_table, run_search
from .windows import (
    ZeroVariance,
    edge_variance_fraction,
    et_identity_check,
    s_statistic,
    u_partition,
    v_statistic,
    window_profile,
)

CACHE_ENV = "SIDONKIT_CACHE_DIR"
FIGURES = ("f1_bk_exact", "f2_bk_lower", "f3_v", "f4_s", "f5_vs", "f6_scatter", "f7_profile", "f8_edge")
PLACES = 12

log = logging.getLogger("sidonkit")


class MissingSource(SidonError):
    pass


class InvariantBreach(Exception):
    pass


# --- output -----------------------------------------------------------------

def emit(header, rows, fmt: str, out=None):
    out = out or sys.stdout
    rows = [[str(v) for v in r] for r in rows]
    if fmt == "text":
        widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
        for r in [list(header)] + rows:
            out.write("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")
        return
    w = csv.writer(out, delimiter="," if fmt == "csv" else "\t", lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def rational(value, exact: bool) -> str:
    return render_exact(value) if exact else render_decimal(value, PLACES)


def over_k52(value: Fraction, k: int) -> str:
    """value / k^(5/2) = value * sqrt(k) / k^3, rendered to 12 places."""
    value = Fraction(value)
    return sqrt_ratio_decimal(value.numerator, value.denominator * k**3, k, PLACES)


def default_T(k: int) -> int:
    return ceil_tau_k32(Fraction(1), k)


# --- sources ------------------------------------------------------------------

def load_sets(path) -> list[SidonSet]:
    """Sets from a search table (TSV with the table header) or a ruler file."""
    p = Path(path)
    if not p.exists():
        raise MissingSource(f"no such source: {path}")
    with open(p) as fh:
        first = fh.readline().rstrip("\n")
    if first.split("\t") == TABLE_HEADER:
        return [rec.witness() for _, rec in sorted(read_table(p).items())]
    return [s for _, s in read_rulers(p)]


def load_records(path):
    p = Path(path)
    if not p.exists():
        raise MissingSource(f"no such source: {path}")
    with open(p) as fh:
        first = fh.readline().rstrip("\n")
    if first.split("\t") == TABLE_HEADER:
        return [(k, rec.diameter) for k, rec in sorted(read_table(p).items())]
    return [(s.k, s.diameter) for _, s in read_rulers(p)]


# --- commands -------------------------------------------------------------------

def cmd_verify(args) -> int:
    rows, failed = [], 0
    for path in args.paths:
        with open(path) as fh:
            for lineno, line in enumerate(fh, start=1):
                body = line.split("#", 1)[0].strip()
                if not body:
                    continue
                try:
                    vals = [int(t) for t in body.split()]
                except ValueError:
                    raise ParseError(f"not an integer list: {body!r}", lineno) from None
                ok = all(b > a for a, b in zip(vals, vals[1:]))
                note = "" if ok else "not ascending"
                if ok:
                    hit = find_collision(vals)
                    if hit:
                        (a, b), (c, d) = hit
                        ok, note = False, f"{b}-{a} = {d}-{c}"
                failed += not ok
                diam = vals[-1] - vals[0] if vals else 0
                rows.append([path, lineno, "pass" if ok else "fail", len(vals), diam, note])
    emit(["file", "line", "verdict", "k", "diameter", "note"], rows, args.format)
    if args.format == "text":
        print(f"# {len(rows)} rulers, {failed} failed")
    return 1 if failed else 0


def figure_rows(fig: str, args):
    if fig == "f1_bk_exact":
        if args.source:
            pairs = load_records(args.source)
        else:
            pairs = [(k, exhaustive_optimal(k)[0]) for k in range(1, args.k_max + 1)]
        return ["k", "s_k", "b_k"], [[k, d, sqrt_ratio_decimal(k * k - d, k * k, k, PLACES)] for k, d in pairs]
    if fig == "f2_bk_lower":
        pairs = load_records(need_source(args))
        return ["k", "b_k_lower_bound"], [[k, sqrt_ratio_decimal(k * k - d, k * k, k, PLACES)] for k, d in pairs]

    sets = load_sets(need_source(args))
    if fig == "f7_profile":
        if not sets:
            return ["j", "A_j"], []
        s = sets[args.index]
        prof = window_profile(s, args.T or default_T(s.k))
        return ["j", "A_j"], [[j, int(a)] for j, a in enumerate(prof.counts, start=1)]

    rows = []
    for s in sets:
        k = s.k
        T = args.T or default_T(k)
        if fig == "f8_edge":
            try:
                rows.append([k, rational(edge_variance_fraction(s, T), args.exact)])
            except ZeroVariance:
                log.warning("k=%d: zero variance, edge fraction undefined; row skipped", k)
            continue
        v = v_statistic(window_profile(s, T))
        two_s = 2 * s_statistic(s, T)
        if fig == "f3_v":
            rows.append([k, over_k52(v, k)])
        elif fig == "f4_s":
            rows.append([k, over_k52(two_s, k)])
        elif fig == "f5_vs":
            rows.append([k, over_k52(v + two_s, k)])
        elif fig == "f6_scatter":
            rows.append([k, over_k52(v, k), over_k52(two_s, k)])
    header = {
        "f3_v": ["k", "v_over_k52"],
        "f4_s": ["k", "two_s_over_k52"],
        "f5_vs": ["k", "v_plus_2s_over_k52"],
        "f6_scatter": ["k", "v_over_k52", "two_s_over_k52"],
        "f8_edge": ["k", "edge_fraction"],
    }[fig]
    return header, rows


def need_source(args):
    if not args.source:
        raise MissingSource(f"{args.figure} needs --source (search table or ruler file)")
    return args.source


def cmd_figures(args) -> int:
    header, rows = figure_rows(args.figure, args)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            emit(header, rows, args.format, fh)
    else:
        emit(header, rows, args.format)
    return 0


def _params_from_args(args) -> BfrParams:
    if args.paper:
        return REFERENCE_PARAMS
    vals = [args.tau, args.alpha, args.beta, args.tau2]
    if any(v is None for v in vals):
        raise SidonError("give --paper or all of --tau --alpha --beta --tau2")
    t, a, b, t2 = vals
    d = args.delta if args.delta is not None else delta_formula(t, a, b, t2)
    return BfrParams(t, a, b, d, t2)


def cmd_bounds(args) -> int:
    p = _params_from_args(args)
    rep = combined_bound(p)
    w0, wy, wx = w_coefficients(p.tau, p.alpha, p.beta, p.tau2)
    quantities = [
        ("tau", p.tau), ("alpha", p.alpha), ("beta", p.beta), ("delta", p.delta), ("tau2", p.tau2),
        ("w_const", w0), ("w_y", wy), ("w_x", wx), ("mu_bound", rep.mu_bound),
        ("variance_bound", rep.variance), ("smalls_bound", rep.smalls), ("smalls_closed_form", rep.closed_form),
        ("combined", rep.combined), ("r2_coefficient", rep.r2_coefficient),
    ]
    if args.format == "text":
        for name, v in quantities:
            v = Fraction(v)
            print(f"{name:<19} {render_exact(v)}  ~ {render_decimal(v, PLACES)}")
        x, y = rep.smalls_vertex
        print(f"{'smalls_vertex':<19} x={render_exact(x)} y={render_exact(y)}")
        print(f"{'balanced':<19} {'yes' if rep.balanced else 'no'}")
        return 0
    emit(["quantity", "value"], [[n, rational(v, args.exact)] for n, v in quantities], args.format)
    return 0


def cmd_optimize(args) -> int:
    start = REFERENCE_POINT
    if args.start:
        start = tuple(parse_fraction(t) for t in args.start.split(","))
        if len(start) != 4:
            raise SidonError("--start needs tau,alpha,beta,tau2")
    cfg = OptimizerConfig(
        steps=args.steps,
        initial_temperature=args.temperature,
        cooling=args.cooling,
        step_size=args.step_size,
        seed=args.seed,
        denominator_cap=args.cap,
        start=start,
    )
    res = anneal_chains(cfg, chains=args.chains, workers=args.workers)
    p = res.params
    header = ["tau", "alpha", "beta", "tau2", "delta", "bound_num", "bound_den", "bound_decimal"]
    row = [
        *(rational(v, True) for v in (p.tau, p.alpha, p.beta, p.tau2, p.delta)),
        res.bound.numerator, res.bound.denominator, render_decimal(res.bound, PLACES),
    ]
    emit(header, [row], args.format)
    if args.format == "text":
        print(f"# seed {res.seed}, certified <= 1.99405: {'yes' if res.certified else 'no'}")
    return 0


def cmd_construct(args) -> int:
    kw = {}
    if args.modulus:
        kw["modulus"] = tuple(int(t) for t in args.modulus.replace(",", " ").split())
    if args.generator is not None:
        kw["generator"] = args.generator
    if args.cap is not None:
        kw["cap"] = args.cap
    s = construct(args.name, args.q, **kw)
    res = s.residues if args.raw else s.canonical()
    if args.format == "text":
        print(" ".join(map(str, res)) + "  # " + s.provenance())
    else:
        emit(["construction", "q", "m", "residues"], [[s.construction, s.q, s.m, " ".join(map(str, res))]], args.format)
    return 0


def _default_cache(cfg: SearchConfig) -> str | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    tag = f"k{cfg.k_min}-{cfg.k_max}_{cfg.dilations}"
    if cfg.dilations == "sample":
        tag += f"_n{cfg.sample_size}_s{cfg.seed}"
    tag += "_" + "-".join(cfg.constructions)
    Path(root).mkdir(parents=True, exist_ok=True)
    return str(Path(root) / f"search_{tag}.tsv")


def cmd_search(args) -> int:
    cfg = SearchConfig(
        q_min=args.q_min,
        q_max=args.q_max,
        constructions=tuple(args.constructions.split(",")),
        k_min=args.k_min,
        k_max=args.k_max,
        dilations=args.dilations,
        sample_size=args.sample_size,
        seed=args.seed,
        workers=args.workers,
    )
    cache = args.cache or _default_cache(cfg)
    if cache:
        cfg = SearchConfig(**{**cfg.__dict__, "cache_path": cache})
    table = run_search(cfg)
    rows = [rec.row()[:-1] + [rec.bk_decimal(6), rec.row()[-1]] for _, rec in sorted(table.items())]
    emit(TABLE_HEADER[:-1] + ["b_k_lower_bound", "ruler"], rows, args.format)
    return 0


def cmd_analyze(args) -> int:
    sets = load_sets(args.path)
    if args.stat == "profile":
        if not sets:
            emit(["j", "A_j"], [], args.format)
            return 0
        s = sets[args.index]
        prof = window_profile(s, _T(args, s.k))
        emit(["j", "A_j"], [[j, int(a)] for j, a in enumerate(prof.counts, start=1)], args.format)
        return 0
    rows, breach = [], False
    for s in sets:
        T = _T(args, s.k)
        if args.stat == "stats":
            v = v_statistic(window_profile(s, T))
            ok = s.k == 0 or et_identity_check(s, T) == 0
            breach |= not ok
            rows.append([s.k, T, v.numerator, v.denominator, s_statistic(s, T), "yes" if ok else "no"])
        else:
            part = u_partition(s, T, args.alpha, args.beta)
            rows.append([s.k, *(rational(u, args.exact) for u in part.u), rational(part.x, args.exact), rational(part.y, args.exact)])
    if args.stat == "stats":
        emit(["k", "T", "V_num", "V_den", "S", "identity_ok"], rows, args.format)
    else:
        emit(["k", "u1", "u2", "u3", "u4", "u5", "x", "y"], rows, args.format)
    if breach:
        raise InvariantBreach("exact identity residual is nonzero")
    return 0


def _T(args, k: int) -> int:
    if args.T:
        return args.T
    if args.tau is not None:
        return ceil_tau_k32(args.tau, k)
    return default_T(k)


def cmd_oracle(args) -> int:
    budget = SearchBudget(max_nodes=args.max_nodes, max_seconds=args.max_seconds)
    try:
        d, w = exhaustive_optimal(args.k, budget)
    except BudgetExceeded as e:
        print(f"s_{args.k} <= {e.best.diameter} (budget exhausted, not proven optimal)", file=sys.stderr)
        return 1
    b = theorem1_bound(args.k)
    if args.format == "text":
        print(f"s_{args.k} = {d}")
        if args.witness:
            print(" ".join(map(str, w.elements)))
        return 0
    emit(["k", "s_k", "theorem1_ceil", "witness"], [[args.k, d, b.ceil(), " ".join(map(str, w.elements))]], args.format)
    return 0


# --- parser -----------------------------------------------------------------------

def _fraction(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sidonkit", description=__doc__.splitlines()[0])
    subparsers = ap.add_subparsers(dest="command", required=True)

    def command(name, func, fmt="text", **kw):
        # parents=[...] would share one --format action, and its default, across commands
        p = subparsers.add_parser(name, **kw)
        p.add_argument("--format", choices=("csv", "tsv", "text"), default=fmt)
        p.add_argument("--exact", action="store_true", help="print rationals as num/den")
        p.add_argument("-v", "--verbose", action="store_true")
        p.set_defaults(func=func)
        return p

    p = command("verify", cmd_verify, help="check ruler files line by line")
    p.add_argument("paths", nargs="+")

    p = command("figures", cmd_figures, "csv", help="emit figure data as CSV")
    p.add_argument("figure", choices=FIGURES)
    p.add_argument("--source", help="search table (TSV) or ruler file")
    p.add_argument("--out")
    p.add_argument("--T", type=int, help="window length (default ceil(k^1.5))")
    p.add_argument("--index", type=int, default=0, help="which ruler for f7_profile")
    p.add_argument("--k-max", type=int, default=8, help="f1 without --source: oracle up to this k")

    p = command("bounds", cmd_bounds, help="exact bound certificates")
    p.add_argument("--paper", action="store_true", help="use the reference parameter point")
    for name in ("tau", "alpha", "beta", "tau2", "delta"):
        p.add_argument(f"--{name}", type=_fraction)

    p = command("optimize", cmd_optimize, "tsv", help="anneal the bound parameters, certify exactly")
    p.add_argument("--steps", type=int, default=20000)
    p.add_argument("--temperature", type=float, default=1e-4)
    p.add_argument("--cooling", type=float, default=0.999)
    p.add_argument("--step-size", type=float, default=2e-3)
    p.add_argument("--cap", type=int, default=10**10, help="denominator cap for rationalization")
    p.add_argument("--start", help="tau,alpha,beta,tau2 as fractions (default: reference point)")
    p.add_argument("--chains", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)

    p = command("construct", cmd_construct, help="Singer / Bose / Ruzsa sets")
    p.add_argument("name", choices=("singer", "bose", "ruzsa"))
    p.add_argument("--q", "--p", dest="q", type=int, required=True)
    p.add_argument("--modulus", help="irreducible polynomial coefficients, lowest degree first")
    p.add_argument("--generator", type=int)
    p.add_argument("--cap", type=int)
    p.add_argument("--raw", action="store_true", help="residues as constructed, not canonical")

    p = command("search", cmd_search, "tsv", help="dilation/window search for short rulers")
    p.add_argument("--q-min", type=int, default=2)
    p.add_argument("--q-max", type=int, default=31)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=32)
    p.add_argument("--constructions", default="singer,bose,ruzsa")
    p.add_argument("--dilations", choices=("full", "sample"), default="full")
    p.add_argument("--sample-size", type=int, default=2000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cache", help=f"cache TSV (default: ${CACHE_ENV}/search_*.tsv if set)")
    p.add_argument("--seed", type=int, default=0)

    p = command("analyze", cmd_analyze, "csv", help="window statistics of rulers")
    p.add_argument("path")
    p.add_argument("--stat", choices=("stats", "profile", "partition"), default="stats")
    p.add_argument("--T", type=int)
    p.add_argument("--tau", type=_fraction, help="T = ceil(tau k^1.5)")
    p.add_argument("--alpha", type=_fraction, default=REFERENCE_PARAMS.alpha)
    p.add_argument("--beta", type=_fraction, default=REFERENCE_PARAMS.beta)
    p.add_argument("--index", type=int, default=0)

    p = command("oracle", cmd_oracle, help="exact s_k by branch and bound")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--max-seconds", type=float)
    p.add_argument("--witness", action="store_true")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except NotSidon as e:
        print(f"sidonkit: {e}", file=sys.stderr)
        return 1
    except (InvariantBreach, AssertionError) as e:
        print(f"sidonkit: invariant breach: {e}", file=sys.stderr)
        return 3
    except (SidonError, OSError) as e:
        print(f"sidonkit: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

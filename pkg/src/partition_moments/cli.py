"""Command-line front end: tables of exact values, asymptotics and diagnostics.

Exit codes: 0 success, 2 invalid arguments, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .asymptotics import COROLLARIES, K_MAX, corollary_eval, expected_summands_asymptotic, tk_asymptotic
from .errors import NumericalFailure, PartitionMomentsError
from .exact import exact_moments
from .saddle import SADDLE_TOL, alpha_series, saddle_for_family
from .sequences import enumerate_sequence, parse_family
from .zeta import (barnes_zeta, epstein_zeta, finite_part_at_pole, hurwitz_zeta, riemann_zeta,
                   riemann_zeta_prime, spectral_data, zeta_lambda, zeta_prime_zero)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3

TOLERANCES = {"saddle_residual": SADDLE_TOL, "saddle_tail": 1e-12, "riemann_zeta": 1e-12,
              "hurwitz_zeta": 1e-11, "epstein_zeta": 1e-9}


class UsageError(Exception):
    pass


def parse_n_range(text: str) -> list[int]:
    """'a:b:geometric[:factor]', 'a:b[:step]', 'a,b,c' or a single value."""
    def num(s):
        try:
            v = float(s)
        except ValueError:
            raise UsageError(f"not a number: {s!r}") from None
        if v < 1 or v != int(v):
            raise UsageError(f"n must be a positive integer, got {s!r}")
        return int(v)

    text = text.strip()
    if "," in text:
        values = [num(p) for p in text.split(",") if p.strip()]
    elif ":" in text:
        parts = text.split(":")
        a, b = num(parts[0]), num(parts[1])
        if b < a:
            raise UsageError("empty n range")
        if len(parts) >= 3 and parts[2] == "geometric":
            factor = float(parts[3]) if len(parts) > 3 else 2.0
            if factor <= 1:
                raise UsageError("geometric factor must exceed 1")
            values, x = [], float(a)
            while round(x) <= b:
                if not values or round(x) != values[-1]:
                    values.append(int(round(x)))
                x *= factor
        else:
            step = num(parts[2]) if len(parts) >= 3 else 1
            values = list(range(a, b + 1, step))
    else:
        values = [num(text)]
    if not values:
        raise UsageError("empty n range")
    return values


def _fmt(v, precision):
    if isinstance(v, float):
        if math.isnan(v) or math.isinf(v):
            return str(v)
        # precision counts digits after the leading one, as in %.{p}e
        return f"{v:.{precision + 1}g}"
    return v


def _emit(rows, fmt, precision, out, meta=None):
    if fmt == "json":
        for r in rows:
            obj = {k: v for k, v in r.items()}
            if meta:
                obj["provenance"] = meta
            out.write(json.dumps(obj, default=str) + "\n")
        return
    if not rows:
        return
    header = list(rows[0].keys())
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(r.get(h), precision) for h in header])


def _family(args):
    try:
        return parse_family(args.family)
    except PartitionMomentsError as exc:
        raise UsageError(str(exc)) from None


def _pmap(fn, items, threads):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _meta(args, **extra):
    meta = {"version": __version__, "tolerances": TOLERANCES}
    for key in ("family", "alpha_source", "cutoff", "method"):
        if hasattr(args, key):
            meta[key] = getattr(args, key)
    meta.update(extra)
    return meta


def cmd_exact(args, out):
    fam = _family(args)
    seq = enumerate_sequence(fam, args.cutoff or args.n_max)
    table = exact_moments(seq, args.n_max, args.k, method=args.method)
    if args.format == "csv":
        table.to_csv(out)
    else:
        rows = [{"n": n, **{f"t{k}": str(v) for k, v in enumerate(table[n])}}
                for n in range(1, table.n_max + 1)]
        _emit(rows, "json", args.precision, out, _meta(args))


def _asym_row(fam, n, k, source, cutoff):
    est = tk_asymptotic(fam, n, k, source, cutoff)
    row = {"n": n, "k": k, "log10_value": est.value.log10, "value": est.value.decimal(15),
           "case": est.mu0_case, "alpha": est.alpha_used.alpha, "order": est.order_tag}
    for name, v in est.terms:
        row[name] = v
    return row


def cmd_asym(args, out):
    fam = _family(args)
    ns = parse_n_range(args.n)
    items = [(n, k) for n in ns for k in range(args.k + 1)]
    rows = _pmap(lambda nk: _asym_row(fam, nk[0], nk[1], args.alpha_source, args.cutoff),
                 items, args.threads)
    if args.summands:
        for n in ns:
            m = expected_summands_asymptotic(fam, n, args.alpha_source, args.cutoff)
            rows.append({"n": n, "k": "m", "log10_value": m.value.log10, "value": m.value.decimal(15),
                         "case": m.mu0_case, "alpha": m.alpha_used.alpha, "order": m.order_tag})
    _emit(rows, args.format, args.precision, out, _meta(args))


def cmd_compare(args, out):
    fam = _family(args)
    ns = parse_n_range(args.n)
    seq = enumerate_sequence(fam, max(ns))
    table = exact_moments(seq, max(ns), args.k)

    def row(n):
        r = {"n": n}
        for k in range(args.k + 1):
            est = tk_asymptotic(fam, n, k, args.alpha_source, args.cutoff)
            r[f"ratio{k}"] = math.exp(math.log(table[n][k]) - est.log_value)
        return r

    rows = _pmap(row, ns, args.threads)
    _emit(rows, args.format, args.precision, out, _meta(args))


def cmd_saddle(args, out):
    fam = _family(args)
    ns = parse_n_range(args.n)

    def row(n):
        num = saddle_for_family(fam, n, args.cutoff)
        r = {"n": n, "alpha_numeric": num.alpha, "residual": num.residual, "cutoff": num.cutoff}
        try:
            ser = alpha_series(fam, n)
        except PartitionMomentsError:
            return r
        r["alpha_series"] = ser.alpha
        r["difference"] = num.alpha - ser.alpha
        for label, v in ser.terms:
            r[f"term[{label}]"] = v
        return r

    rows = _pmap(row, ns, args.threads)
    _emit(rows, args.format, args.precision, out, _meta(args))


def cmd_zeta(args, out):
    rows = []
    if args.riemann is not None:
        rows.append({"function": "riemann_zeta", "s": args.riemann, "value": riemann_zeta(args.riemann)})
    if args.riemann_prime is not None:
        rows.append({"function": "riemann_zeta_prime", "s": args.riemann_prime,
                     "value": riemann_zeta_prime(args.riemann_prime)})
    if args.hurwitz is not None:
        s, c = args.hurwitz
        rows.append({"function": "hurwitz_zeta", "s": s, "c": c, "value": hurwitz_zeta(s, c)})
    if args.barnes is not None:
        d, s, *rest = args.barnes
        c = rest[0] if rest else 0.0
        rows.append({"function": "barnes_zeta", "d": int(d), "s": s, "c": c,
                     "value": barnes_zeta(int(d), s, c)})
    if args.epstein is not None:
        d, s = args.epstein
        rows.append({"function": "epstein_zeta", "d": int(d), "s": s, "value": epstein_zeta(int(d), s)})
    if args.family:
        fam = _family(args)
        if args.s is not None:
            rows.append({"function": f"zeta[{fam.name}]", "s": args.s, "value": zeta_lambda(fam, args.s)})
        if args.fp:
            rows.append({"function": f"fp[{fam.name}]", "value": finite_part_at_pole(fam)})
        if args.zeta_prime_0:
            rows.append({"function": f"zeta_prime_0[{fam.name}]", "value": zeta_prime_zero(fam)})
        if args.spectral:
            sd = spectral_data(fam, args.k_max)
            for mu, res in sd.poles:
                rows.append({"function": f"residue[{fam.name}]", "s": mu, "value": res})
            for s, v in sd.zeta_at.items():
                rows.append({"function": f"zeta_at[{fam.name}]", "s": s, "value": v})
            rows.append({"function": f"A0[{fam.name}]", "value": sd.A0})
            if sd.fp_at_pole is not None:
                rows.append({"function": f"fp[{fam.name}]", "value": sd.fp_at_pole})
            rows.append({"function": f"zeta_prime_0[{fam.name}]", "value": sd.zeta_prime_0})
            for key, err in sd.error_estimates.items():
                rows.append({"function": f"error_estimate[{key}]", "value": err})
    if not rows:
        raise UsageError("nothing to evaluate; pass --riemann, --hurwitz, --barnes, --epstein or --family")
    keys = []
    for r in rows:
        keys.extend(k for k in r if k not in keys)
    rows = [{k: r.get(k, "") for k in keys} for r in rows]
    _emit(rows, args.format, args.precision, out, _meta(args))


def cmd_corollary(args, out):
    if args.name not in COROLLARIES:
        raise UsageError(f"unknown corollary {args.name!r}; choose from {', '.join(sorted(COROLLARIES))}")
    if args.name.startswith("one_"):
        raise UsageError("one-singularity corollaries need a family object; use the library API")
    rows = []
    for n in parse_n_range(args.n):
        est = corollary_eval(args.name, n, args.k, corrected=args.corrected)
        rows.append({"n": n, "k": est.k, "quantity": est.quantity, "log10_value": est.value.log10,
                     "value": est.value.decimal(15)})
    _emit(rows, args.format, args.precision, out, _meta(args, corrected=args.corrected))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="partition-moments",
                                description="Exact and asymptotic moments of weighted partitions.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, family=True):
        if family:
            sp.add_argument("--family", required=True,
                            help="naturals, barnes2, barnes3, epstein2, epstein3 or custom:PATH")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--precision", type=int, default=15, help="digits after the leading digit for reals (default 15)")
        sp.add_argument("--threads", type=int, default=1)

    def k_arg(sp, default):
        sp.add_argument("--k", type=int, default=default, choices=range(0, K_MAX + 1), metavar="K",
                        help=f"largest moment order (0..{K_MAX})")

    sp = sub.add_parser("exact", help="exact moment table t^0..t^K for n = 1..N")
    common(sp)
    sp.add_argument("--n-max", type=int, required=True)
    k_arg(sp, 2)
    sp.add_argument("--method", choices=("auto", "fold", "table"), default="auto")
    sp.add_argument("--cutoff", type=int, default=None)
    sp.set_defaults(func=cmd_exact)

    for name, func, hlp in (("asym", cmd_asym, "asymptotic moments from the general theorems"),
                            ("compare", cmd_compare, "ratio of exact to asymptotic moments")):
        sp = sub.add_parser(name, help=hlp)
        common(sp)
        sp.add_argument("--n", required=True, help="a:b:geometric, a:b:step, a,b,c or a single n")
        k_arg(sp, 2)
        sp.add_argument("--alpha-source", choices=("numeric", "series"), default="numeric")
        sp.add_argument("--cutoff", type=int, default=None)
        if name == "asym":
            sp.add_argument("--summands", action="store_true", help="also print the expected number of parts")
        sp.set_defaults(func=func)

    sp = sub.add_parser("saddle", help="saddle-point diagnostics")
    common(sp)
    sp.add_argument("--n", required=True)
    sp.add_argument("--cutoff", type=int, default=None)
    sp.set_defaults(func=cmd_saddle)

    sp = sub.add_parser("zeta", help="spot-check zeta values")
    common(sp, family=False)
    sp.add_argument("--riemann", type=float, metavar="S")
    sp.add_argument("--riemann-prime", type=float, metavar="S")
    sp.add_argument("--hurwitz", type=float, nargs=2, metavar=("S", "C"))
    sp.add_argument("--barnes", type=float, nargs="+", metavar="D S [C]")
    sp.add_argument("--epstein", type=float, nargs=2, metavar=("D", "S"))
    sp.add_argument("--family", default=None)
    sp.add_argument("--s", type=float, default=None)
    sp.add_argument("--fp", action="store_true")
    sp.add_argument("--zeta-prime-0", action="store_true")
    sp.add_argument("--spectral", action="store_true")
    sp.add_argument("--k-max", type=int, default=3)
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("corollary", help="closed-form corollary evaluations")
    common(sp, family=False)
    sp.add_argument("--name", required=True, help=", ".join(sorted(COROLLARIES)))
    sp.add_argument("--n", required=True)
    k_arg(sp, 0)
    sp.add_argument("--corrected", action="store_true",
                    help="replace printed constants that disagree with the general theorem")
    sp.set_defaults(func=cmd_corollary)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if getattr(args, "barnes", None) is not None and len(args.barnes) not in (2, 3):
        parser.print_usage(sys.stderr)
        print("error: --barnes takes D S [C]", file=sys.stderr)
        return EXIT_USAGE
    try:
        args.func(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (PartitionMomentsError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run())

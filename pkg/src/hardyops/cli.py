"""Command-line front end.

Subcommands:
    exponent    -- coupling data (p, lambda_star, lambda_zero, q, r) for a triple
    kernel      -- tabulate exact kernels / envelopes over a sample grid (CSV)
    discretize  -- eigenvalue tables or Hardy-minimum convergence tables
    verify      -- run verification checks, emit JSON reports + CSV summary

Exit codes: 0 success, 1 verification failure, 2 parameter error.
CSV output: comma-separated, header row, '.' decimal point, no locale.
Config files for `verify`: INI-style sections per check, flat key=value pairs.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import sys

import numpy as np

from hardyops import verify as V
from hardyops.coupling import (exponent_p, lambda_star, lambda_zero,
                               make_coupling)
from hardyops.discrete import assemble_form, build_grid, eigendecompose, hardy_quotient_min
from hardyops.kernels import (KernelEnvelope, diff_envelope, heat_envelope,
                              heat_exact_halfline, pt, riesz_envelope)
from hardyops.specfun import DomainError


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def write_table(stream, header: list[str], rows: list[list]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating))
                         else v for v in row])


def read_table(path: str) -> tuple[list[str], list[list[float]]]:
    """Parse a CSV emitted by this tool: header row + float cells."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(cell) for cell in row] for row in reader]
    return header, rows


def _emit(args, header, rows, payload=None):
    out = sys.stdout if args.out is None else open(args.out, "w", encoding="utf-8")
    try:
        if args.format == "json":
            if payload is None:
                payload = [dict(zip(header, row)) for row in rows]
            json.dump(payload, out, indent=1, default=float)
            out.write("\n")
        elif args.format == "csv":
            write_table(out, header, rows)
        else:
            widths = [max(len(str(h)), 12) for h in header]
            out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)) + "\n")
            for row in rows:
                out.write("  ".join((f"{v:.10g}" if isinstance(v, (float, np.floating))
                                     else str(v)).ljust(w)
                                    for v, w in zip(row, widths)) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_exponent(args) -> int:
    alpha = args.alpha
    if args.lambda_star_flag:
        lam = lambda_star(alpha)
    elif args.lambda_zero_flag:
        lam = lambda_zero(args.d, alpha)
    else:
        if args.lam is None:
            raise DomainError("provide --lambda, --lambda-star or --lambda-zero")
        lam = args.lam
    params = make_coupling(args.d, alpha, lam)
    der = params.derived
    from hardyops.coupling import coupling_C
    resid = abs(coupling_C(alpha, params.p) - lam)
    header = ["alpha", "lambda", "p", "lambda_star", "lambda_zero", "q", "r",
              "p0", "residual"]
    row = [alpha, lam, params.p, params.lambda_star,
           params.lambda_zero if params.lambda_zero is not None else float("nan"),
           der.q, der.r, der.p0, resid]
    _emit(args, header, [row])
    return 0


def cmd_kernel(args) -> int:
    lam = args.lam if args.lam is not None else 0.0
    xs = _floats(args.x)
    ys = _floats(args.y)
    ts = _floats(args.t) if args.t else [1.0]
    rows = []
    if args.kind == "heat-exact":
        for t in ts:
            for x in xs:
                for y in ys:
                    rows.append([t, x, y, heat_exact_halfline(lam, t, x, y)])
    elif args.kind == "heat-envelope":
        p = exponent_p(args.alpha, lam)
        env = KernelEnvelope(alpha=args.alpha, d=args.d, p=p, c_exp=args.c_exp)
        for t in ts:
            for x in xs:
                for y in ys:
                    rows.append([t, x, y, heat_envelope(env, t, pt(x), pt(y))])
    elif args.kind == "riesz-envelope":
        params = make_coupling(args.d, args.alpha, lam)
        for s in ts:
            for x in xs:
                for y in ys:
                    rows.append([s, x, y, riesz_envelope(params, s, pt(x), pt(y))])
    else:  # diff-envelope
        p = exponent_p(args.alpha, lam)
        for t in ts:
            for x in xs:
                for y in ys:
                    rows.append([t, x, y,
                                 diff_envelope(args.alpha, args.d, p, t,
                                               pt(x), pt(y), c_exp=args.c_exp)])
    # column order contract: (t_or_s, xd, yd, value)
    _emit(args, ["t_or_s", "xd", "yd", "value"], rows)
    return 0


def cmd_discretize(args) -> int:
    if args.hardy_min:
        target = abs(lambda_star(args.alpha))
        rows = []
        N = args.N
        sizes = []
        while N >= 250:
            sizes.append(N)
            N //= 2
        for n in reversed(sizes):
            nu = hardy_quotient_min(args.alpha, build_grid(args.X, n, args.g))
            rows.append([n, nu, target,
                         (nu - target) / target if target > 0 else nu])
        _emit(args, ["N", "hardy_min", "target", "rel_err"], rows)
        return 0
    grid = build_grid(args.X, args.N, args.g)
    dec = eigendecompose(assemble_form(args.alpha, args.lam, grid,
                                       warn_below_sharp=False))
    k = min(args.count, len(dec.eigenvalues))
    rows = [[i, dec.eigenvalues[i]] for i in range(k)]
    _emit(args, ["index", "eigenvalue"], rows)
    return 0


def cmd_verify(args) -> int:
    config = None
    if args.config:
        parser = configparser.ConfigParser()
        parser.optionxform = str  # parameter keys are case-sensitive
        with open(args.config, encoding="utf-8") as fh:
            parser.read_file(fh)
        config = {name: dict(parser[name]) for name in parser.sections()}
        if args.check != "all":
            config = {k: v for k, v in config.items()
                      if k.split(":")[0] == args.check}
            if not config:
                raise DomainError(f"config has no section for check {args.check!r}")
    elif args.check != "all":
        if args.check not in V.CHECKS:
            raise DomainError(f"unknown check {args.check!r}; "
                              f"known: {sorted(V.CHECKS)}")
        config = {args.check: {}}
    reports = V.run_all(config, seed=args.seed)
    if args.out:
        V.write_reports_json(reports, args.out)
        if args.summary:
            V.write_reports_csv(reports, args.summary)
    else:
        json.dump([r.as_dict() for r in reports], sys.stdout, indent=1,
                  default=float)
        sys.stdout.write("\n")
    for r in reports:
        print(f"[{'PASS' if r.verdict else 'FAIL'}] {r.check_name}",
              file=sys.stderr)
    return 0 if all(r.verdict for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hardyops",
                                 description="Half-space Hardy operator numerics")
    sub = ap.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("exponent", help="coupling/exponent correspondence")
    pe.add_argument("--alpha", type=float, required=True)
    pe.add_argument("--lambda", dest="lam", type=float, default=None)
    pe.add_argument("--lambda-star", dest="lambda_star_flag", action="store_true")
    pe.add_argument("--lambda-zero", dest="lambda_zero_flag", action="store_true")
    pe.add_argument("--d", type=int, default=1)
    pe.set_defaults(func=cmd_exponent)

    pk = sub.add_parser("kernel", help="tabulate kernels/envelopes")
    pk.add_argument("--kind", required=True,
                    choices=["heat-exact", "heat-envelope", "riesz-envelope",
                             "diff-envelope"])
    pk.add_argument("--alpha", type=float, default=2.0)
    pk.add_argument("--lambda", dest="lam", type=float, default=None)
    pk.add_argument("--d", type=int, default=1)
    pk.add_argument("--c-exp", type=float, default=0.25)
    pk.add_argument("--t", type=str, default="1.0",
                    help="comma-separated times (or s-values for riesz-envelope)")
    pk.add_argument("--x", type=str, required=True, help="comma-separated x_d values")
    pk.add_argument("--y", type=str, required=True, help="comma-separated y_d values")
    pk.set_defaults(func=cmd_kernel)

    pd = sub.add_parser("discretize", help="spectra and Hardy-minimum tables")
    pd.add_argument("--alpha", type=float, required=True)
    pd.add_argument("--lambda", dest="lam", type=float, default=0.0)
    pd.add_argument("--N", type=int, default=1000)
    pd.add_argument("--X", type=float, default=10.0)
    pd.add_argument("--g", type=float, default=2.0)
    pd.add_argument("--spectrum", action="store_true")
    pd.add_argument("--hardy-min", dest="hardy_min", action="store_true")
    pd.add_argument("--count", type=int, default=20)
    pd.set_defaults(func=cmd_discretize)

    pv = sub.add_parser("verify", help="run verification checks")
    pv.add_argument("--check", type=str, default="all")
    pv.add_argument("--config", type=str, default=None)
    pv.add_argument("--out", type=str, default=None, help="JSON report path")
    pv.add_argument("--summary", type=str, default=None, help="CSV summary path")
    pv.add_argument("--seed", type=int, default=0)
    pv.set_defaults(func=cmd_verify)

    for p in (pe, pk, pd):
        p.add_argument("--format", choices=["csv", "json", "plain"], default="plain")
        p.add_argument("--out", type=str, default=None)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except DomainError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

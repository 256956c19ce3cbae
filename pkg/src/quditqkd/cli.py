"""Command-line front end: ``quditqkd {threshold,map,verify,simulate,family}``."""

from __future__ import annotations

import argparse
import csv
import sys
from typing import Sequence

import numpy as np

from . import criteria, maps, qkdsim, verify
from .bell import BellSpectrum
from .galois import FieldError, SHIPPED_ORDERS, field, is_prime_power


class CliError(Exception):
    pass


def _config(args: argparse.Namespace) -> None:
    items = {k: v for k, v in vars(args).items() if k != "func"}
    print("# " + " ".join(f"{k}={v}" for k, v in items.items()), file=sys.stderr)


def _shipped(d: int) -> int:
    if d not in SHIPPED_ORDERS:
        raise CliError(f"d={d} is not one of the shipped orders {SHIPPED_ORDERS}")
    return d


def cmd_threshold(args: argparse.Namespace) -> int:
    rows = []
    for d in args.d:
        if not is_prime_power(d):
            raise CliError(f"{d} is not a prime power")
        rows.append((d, criteria.threshold_disturbance(d), criteria.cloning_bound(d)))
    lines = ["d,D_th,D_th_CM"] + [f"{d},{a!r},{b!r}" for d, a, b in rows]
    print("\n".join(lines))
    if args.csv:
        with open(args.csv, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0


def cmd_map(args: argparse.Namespace) -> int:
    d = _shipped(args.d)
    n_delta = args.res_delta or args.res
    grid = maps.sweep(d, tuple(args.D_range), tuple(args.delta_range) if args.delta_range else None,
                      (args.res, n_delta), workers=args.workers)
    try:
        if args.out:
            maps.write_csv(grid, args.out)
        else:
            maps.write_csv(grid, sys.stdout)
        if args.pgm:
            maps.write_pgm(grid, args.pgm)
    except OSError as exc:
        raise CliError(f"cannot write output: {exc}") from exc
    expected = criteria.threshold_disturbance(d)
    counts = " ".join(f"{k}={v}" for k, v in sorted(grid.counts().items()))
    report = sys.stdout if args.out else sys.stderr
    try:
        emp = maps.empirical_threshold(grid)
        print(f"empirical_threshold={emp!r} expected={expected!r} deviation={emp - expected!r} "
              f"D_step={grid.D_step!r}", file=report)
    except maps.ThresholdNotBracketed:
        print(f"empirical_threshold=none (grid does not bracket {expected!r})", file=report)
    print(f"cells {counts}", file=report)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    ok = True
    for d in args.d:
        _shipped(d)
        for res in verify.suite(d, tol=args.tol, seed=args.seed):
            print(res.line())
            ok &= res.passed
    print("ALL PASS" if ok else "FAILURES")
    return 0 if ok else 1


def parse_channel(text: str, d: int) -> qkdsim.PauliChannel:
    spec = field(d)
    if text == "noiseless":
        return qkdsim.PauliChannel.noiseless(spec)
    kind, _, arg = text.partition(":")
    if kind == "isotropic":
        iso = maps.solve_isotropic(d, float(arg), 0.0)
        if iso is None:
            raise CliError(f"isotropic channel with D={arg} and x=y is infeasible for d={d}")
        return qkdsim.PauliChannel(spec, iso.lam())
    if kind == "family":
        return qkdsim.PauliChannel.from_spectrum(criteria.separable_family(spec, float(arg)).spectrum)
    if kind == "bell":
        with open(arg) as fh:
            rows = [[float(v) for v in row] for row in csv.reader(fh) if row]
        return qkdsim.PauliChannel.from_spectrum(BellSpectrum(spec, np.array(rows)))
    raise CliError(f"unknown channel spec {text!r}")


def cmd_simulate(args: argparse.Namespace) -> int:
    d = _shipped(args.d)
    try:
        channel = parse_channel(args.channel, d)
    except (ValueError, OSError) as exc:
        raise CliError(str(exc)) from exc
    if args.mode == "eb":
        run = qkdsim.run_entanglement_based(channel, args.n, args.n_check, args.abort_threshold, args.seed)
    else:
        run = qkdsim.run_prepare_measure(channel, args.n, args.seed)
    sys.stdout.write(run.summary())
    return 0


def cmd_family(args: argparse.Namespace) -> int:
    d = _shipped(args.d)
    spec = field(d)
    lo, hi = criteria.family_interval(d)
    Ds = [float(v) for v in np.linspace(args.D_from, args.D_to, args.steps)]
    bad = [D for D in Ds if not lo - 1e-12 <= D <= hi + 1e-12]
    for D in bad:
        print(f"D={D!r} outside the family interval [{lo!r}, {hi!r}]", file=sys.stderr)
    if bad and args.strict:
        return 2
    out = open(args.out, "w", newline="\n") if args.out else sys.stdout
    failed = False
    try:
        out.write("d,D,trace,min_eig,max_lambda,disturbance,ppt_min\n")
        for D in Ds:
            if D in bad:
                continue
            dg = criteria.separable_family(spec, float(D)).diagnostics()
            failed |= not (abs(dg["trace"] - 1) <= 1e-9 and dg["min_eig"] >= -1e-9
                           and dg["max_lambda"] <= 1 / d + 1e-9 and abs(dg["disturbance"] - D) <= 1e-9
                           and dg["ppt_min"] > -criteria.PPT_TOL)
            out.write(f"{d},{float(D)!r},{dg['trace']!r},{dg['min_eig']!r},{dg['max_lambda']!r},"
                      f"{dg['disturbance']!r},{dg['ppt_min']!r}\n")
    finally:
        if args.out:
            out.close()
    if failed:
        print("some rows violate the separable-family invariants", file=sys.stderr)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quditqkd", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("threshold", help="threshold disturbance and cloning bound per dimension")
    p.add_argument("d", type=int, nargs="+")
    p.add_argument("--csv", help="also write the table to this file")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("map", help="distillability map over (D, x-y)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--res", type=int, default=512, help="grid points per axis")
    p.add_argument("--res-delta", type=int, help="grid points along x-y (default: --res)")
    p.add_argument("--D-range", type=float, nargs=2, default=(0.0, 1.0), metavar=("LO", "HI"))
    p.add_argument("--delta-range", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.add_argument("--pgm", help="optional PGM image path")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("verify", help="run the algebraic invariant suite")
    p.add_argument("d", type=int, nargs="+")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte-Carlo protocol run")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--channel", default="noiseless",
                   help="noiseless | isotropic:D | family:D | bell:FILE.csv")
    p.add_argument("--n", type=int, default=100_000, help="pairs (eb) or transmissions (pm)")
    p.add_argument("--n-check", type=int, help="check pairs (default n/2)")
    p.add_argument("--abort-threshold", type=float, help="default (d-1)/2d")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("eb", "pm"), default="eb")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("family", help="diagnostics of the separable family")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--from", dest="D_from", type=float, required=True)
    p.add_argument("--to", dest="D_to", type=float, required=True)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--out")
    p.add_argument("--no-strict", dest="strict", action="store_false",
                   help="skip out-of-interval values instead of failing")
    p.set_defaults(func=cmd_family)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _config(args)
    try:
        return args.func(args)
    except (CliError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Subcommands: run <config>, convergence <scheme>, make-reference <case>,
compare <a> <b>.  Output root defaults to $WENOKIT_OUT or the current
directory.  Exit codes: 0 success, 1 solver failure, 2 config error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from wenokit import harness, scalar1d
from wenokit.errors import ConfigError
from wenokit.weights import SCHEMES, make_scheme

OUT_ENV = "WENOKIT_OUT"


def _out_root(arg):
    return Path(arg or os.environ.get(OUT_ENV) or ".")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wenokit",
        description="Finite-difference WENO shock-capturing toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a case from a key=value config")
    p_run.add_argument("config", help="config file path, or '-' for stdin")
    p_run.add_argument("--out", default=None, help="output directory")

    p_conv = sub.add_parser(
        "convergence", help="advection grid-convergence ladder")
    p_conv.add_argument("scheme", choices=sorted(SCHEMES))
    p_conv.add_argument("--n-list", default="10,20,40,80,160,320,640",
                        help="comma-separated grid sizes")
    p_conv.add_argument("--out", default=None)

    p_ref = sub.add_parser(
        "make-reference", help="fine-grid WENO5-JS reference run")
    p_ref.add_argument("case", choices=sorted(harness.REFERENCE_DEFAULTS))
    p_ref.add_argument("--n", type=int, default=None)
    p_ref.add_argument("--dt", type=float, default=None)
    p_ref.add_argument("--out", default=None)

    p_cmp = sub.add_parser("compare", help="compare a field to a reference")
    p_cmp.add_argument("field")
    p_cmp.add_argument("reference")
    p_cmp.add_argument("--window", action="append", default=[],
                       metavar="X0:X1", help="density peak window; repeatable")
    p_cmp.add_argument("--interpolate", action="store_true",
                       help="resample the reference onto the field grid")
    return parser


def _cmd_run(args) -> int:
    if args.config == "-":
        text = sys.stdin.read()
    else:
        text = Path(args.config).read_text()
    config = harness.parse_config(text)
    code, manifest = harness.run(config, out_dir=_out_root(args.out))
    for key, value in manifest.items():
        print(f"{key}={harness._fmt(value)}")
    return code


def _cmd_convergence(args) -> int:
    n_list = tuple(int(tok) for tok in args.n_list.split(","))
    params = make_scheme(args.scheme)
    table = scalar1d.run_convergence(params, n_list)
    text = table.formatted()
    sys.stdout.write(text)
    out = _out_root(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"convergence_{args.scheme}.txt").write_text(text)
    return 0


def _cmd_make_reference(args) -> int:
    res = harness.make_reference(args.case, n=args.n, dt=args.dt)
    out = _out_root(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if not res.completed:
        (out / f"reference_{args.case}.failure.txt").write_text(
            res.failure + "\n")
        print(res.failure, file=sys.stderr)
        return 1
    n = len(res.x)
    path = out / f"reference_{args.case}_n{n}.csv"
    harness.write_field_1d(path, res.x,
                           {"rho": res.rho, "u": res.u, "p": res.p})
    print(f"wrote {path}")
    return 0


def _cmd_compare(args) -> int:
    windows = []
    for tok in args.window:
        try:
            lo, hi = (float(part) for part in tok.split(":"))
        except ValueError:
            raise ConfigError(f"bad window {tok!r}; expected X0:X1") from None
        windows.append((lo, hi))
    l2, metrics = harness.compare_to_reference(
        args.field, args.reference, windows=windows,
        interpolate=args.interpolate)
    print(f"l2_rho={l2:.17g}")
    for (lo, hi), m in metrics.items():
        print(f"window {lo:g}:{hi:g} field_max={m['field'][0]:.17g} "
              f"field_min={m['field'][1]:.17g} "
              f"ref_max={m['reference'][0]:.17g} "
              f"ref_min={m['reference'][1]:.17g}")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "convergence": _cmd_convergence,
    "make-reference": _cmd_make_reference,
    "compare": _cmd_compare,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

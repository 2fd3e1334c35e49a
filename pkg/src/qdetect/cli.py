"""Command-line entry point.

    qdetect run --channel depolarizing --sweep p:0:0.25:0.005 -o depol.csv
    qdetect run --channel amplitude-damping --sweep gamma:0:0.6:0.005
    qdetect run --channel two-kraus --grid alpha:0:3.14159:0.02 beta:0:3.14159:0.02
    qdetect run --channel my_channel.json --mode shots --shots 100000 --seed 7
    qdetect validate my_channel.json

``run`` is implied when the first argument is an option.
"""
import argparse
import csv
import io
import json
import shlex
import sys
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from .channels import ChannelError, load_channel, parse_channel_document
from .sweep import COLUMNS, FAMILIES, grid_points, line_points, sweep


def _parse_axis(text: str):
    parts = text.split(":")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected name:start:stop:step, got {text!r}")
    name = parts[0]
    try:
        start, stop, step = (float(x) for x in parts[1:])
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric range in {text!r}") from None
    if step <= 0:
        raise argparse.ArgumentTypeError("sweep step must be positive")
    return name, start, stop, step


def _parse_param(text: str):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        return name, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric value in {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdetect", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"qdetect {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="compute detected bounds for a channel or a sweep")
    run.add_argument("--channel", required=True,
                     help=f"family ({', '.join(FAMILIES)}) or path to a channel JSON file")
    run.add_argument("--param", action="append", type=_parse_param, default=[],
                     metavar="NAME=VALUE", help="fixed channel parameter (repeatable)")
    run.add_argument("--dim", type=int, default=2, help="system dimension d")
    run.add_argument("--mode", choices=("exact", "shots"), default="exact")
    run.add_argument("--shots", type=int, default=100_000, help="shots per setting")
    run.add_argument("--seed", type=int, default=0)
    group = run.add_mutually_exclusive_group()
    group.add_argument("--sweep", type=_parse_axis, metavar="NAME:START:STOP:STEP")
    group.add_argument("--grid", type=_parse_axis, nargs=2, metavar="NAME:START:STOP:STEP")
    run.add_argument("-o", "--output", help="output file (default: stdout)")
    run.add_argument("--format", choices=("csv", "json"), default=None,
                     help="output format (default: from extension, else csv)")
    run.add_argument("--workers", type=int, default=None,
                     help="parallel workers (default: $QDETECT_THREADS or CPU count)")

    val = sub.add_parser("validate", help="check a custom channel JSON document")
    val.add_argument("path")
    return parser


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def render(rows: List[Dict[str, object]], param_names: Sequence[str], meta: Dict[str, object],
           fmt: str) -> str:
    columns = list(param_names) + list(COLUMNS)
    if fmt == "json":
        clean = [{c: (None if r.get(c) is None else
                      float(r[c]) if isinstance(r[c], (float, np.floating)) else r[c])
                  for c in columns} for r in rows]
        return json.dumps({"metadata": meta, "columns": columns, "rows": clean}, indent=1) + "\n"
    buf = io.StringIO()
    for k, v in meta.items():
        buf.write(f"# {k}: {v}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def cmd_run(args, argv: Sequence[str]) -> int:
    fixed = dict(args.param)
    if args.channel in FAMILIES:
        channel = args.channel
        names = FAMILIES[channel].params
    else:
        channel = load_channel(args.channel)
        names = ()
        if args.sweep or args.grid:
            raise ValueError("sweeps need a named channel family")
    if args.mode == "shots" and args.shots < 1:
        raise ValueError("--shots must be at least 1")

    if args.sweep:
        points = line_points(*args.sweep, fixed=fixed)
        names = tuple(dict.fromkeys([args.sweep[0], *fixed]))
    elif args.grid:
        points = grid_points(args.grid, fixed=fixed)
        names = tuple(dict.fromkeys([args.grid[0][0], args.grid[1][0], *fixed]))
    else:
        points = [fixed]
        names = tuple(fixed) if names == () else tuple(dict.fromkeys([*names, *fixed]))
    if isinstance(channel, str):
        unknown = set(names) - set(FAMILIES[channel].params)
        if unknown:
            raise ValueError(f"unknown parameters for {channel}: {sorted(unknown)}")

    rows = sweep(channel, points, dim=args.dim, mode=args.mode, shots=args.shots,
                 seed=args.seed, workers=args.workers)
    fmt = args.format or ("json" if (args.output or "").endswith(".json") else "csv")
    meta = {"qdetect_version": __version__, "command": shlex.join(["qdetect", *argv]),
            "mode": args.mode, "seed": args.seed}
    if args.mode == "shots":
        meta["shots_per_setting"] = args.shots
    text = render(rows, names, meta, fmt)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_validate(args) -> int:
    d_in, d_out, kraus, label = parse_channel_document(args.path)
    S = sum(A.conj().T @ A for A in kraus)
    residual = float(np.abs(S - np.eye(d_in)).max())
    print(f"channel: {label}")
    print(f"d_in: {d_in}")
    print(f"d_out: {d_out}")
    print(f"kraus_operators: {len(kraus)}")
    for j, A in enumerate(kraus):
        print(f"  A_{j}: {A.shape[0]}x{A.shape[1]}, norm {np.linalg.norm(A):.6g}")
    print(f"completeness_residual: {residual:.3e}")
    if residual > 1e-8:
        print("status: FAIL (not trace preserving)")
        return 1
    print("status: OK")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0].startswith("--") and argv[0] not in ("--help", "--version"):
        argv = ["run", *argv]
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(args)
        return cmd_run(args, argv)
    except (ChannelError, ValueError, OSError) as exc:
        print(f"qdetect: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

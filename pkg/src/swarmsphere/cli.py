"""Command-line front end: ``gen``, ``solve`` and ``compare``.

Exit codes are 0 on success, 1 for usage errors, 2 for I/O or parse errors
and 3 when a solver fails. Machine-readable output goes to ``--out`` when
given and to stdout otherwise; human-oriented messages go to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import secrets
import sys
from pathlib import Path

import numpy as np

from . import cloudgen
from .geometry import bounding_box
from .harness import brute_summary, compare, welzl_summary
from .io import CloudFormatError, format_cloud_csv, parse_cloud_csv, parse_cloud_json, write_cloud
from .objective import Weights
from .pso import SwarmConfig, solve

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_SOLVER = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _SolverFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2**64)")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _weights(text: str) -> Weights:
    try:
        return Weights.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_swarm_flags(p):
    p.add_argument("--weights", type=_weights, metavar="L,A,B",
                   help="objective weights lambda,alpha,beta (default: scaled to the cloud)")
    p.add_argument("--particles", type=_positive_int, metavar="N", help="swarm size")
    p.add_argument("--iters", type=_positive_int, metavar="N", help="iteration cap")
    p.add_argument("--trace", type=Path, metavar="PATH",
                   help="trace CSV path (default: next to --out)")


def _add_shell_flags(p, n_default):
    p.add_argument("--radius", type=float, default=cloudgen.DEFAULT_RADIUS, help="shell radius r_a")
    p.add_argument("--n", type=int, default=n_default, help="points per shell")
    p.add_argument("--sigma", type=float, help="noise standard deviation (default 0.05 * radius)")
    p.add_argument("--two-sphere", action="store_true",
                   help="add a second shell centred at (r_a/2, r_a/2, r_a/2)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="swarmsphere", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a noisy spherical shell cloud")
    _add_shell_flags(g, cloudgen.DEFAULT_N)
    g.add_argument("--seed", type=_u64)
    g.add_argument("--out", type=Path, help="output file, .csv or .json (default: CSV on stdout)")

    s = sub.add_parser("solve", help="fit a sphere to a cloud file")
    s.add_argument("cloud", type=Path)
    s.add_argument("--algo", choices=("pso", "welzl", "brute"), default="pso")
    s.add_argument("--seed", type=_u64)
    s.add_argument("--out", type=Path, help="JSON report path (default: stdout)")
    _add_swarm_flags(s)

    c = sub.add_parser("compare", help="run PSO and Welzl on the same cloud")
    c.add_argument("cloud", type=Path, nargs="?",
                   help="cloud file; when omitted a cloud is generated from the shell flags")
    c.add_argument("--seed", type=_u64)
    c.add_argument("--out", type=Path, help="JSON report path (default: stdout)")
    _add_swarm_flags(c)
    _add_shell_flags(c, cloudgen.DEFAULT_N)
    return parser


def _seed(args, announce: bool = True) -> int:
    if args.seed is None:
        args.seed = secrets.randbits(64)
        if announce:
            print(f"seed: {args.seed}", file=sys.stderr)
    return args.seed


def _swarm_config(args) -> SwarmConfig:
    kw = {"seed": args.seed}
    if args.particles is not None:
        kw["n_particles"] = args.particles
    if args.iters is not None:
        kw["max_iters"] = args.iters
    cfg = SwarmConfig(**kw)
    try:
        cfg.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return cfg


def _read(path: Path) -> tuple[np.ndarray, dict]:
    data = path.read_bytes()
    text = data.decode("utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith("["):
        cloud = parse_cloud_json(text)
    else:
        cloud = parse_cloud_csv(text)
    if len(cloud) == 0:
        raise CloudFormatError(f"{path}: empty input")
    meta = {"source": str(path), "sha256": hashlib.sha256(data).hexdigest()}
    return cloud, meta


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)


def _trace_path(args) -> Path | None:
    if args.trace is not None:
        return args.trace
    if args.out is not None:
        return args.out.with_suffix(".trace.csv")
    return None


def _shell_cloud(args) -> tuple[np.ndarray, dict]:
    if args.n <= 0:
        raise UsageError(f"--n must be positive, got {args.n}")
    if not args.radius > 0:
        raise UsageError(f"--radius must be positive, got {args.radius}")
    sigma = cloudgen.DEFAULT_SIGMA_FRACTION * args.radius if args.sigma is None else args.sigma
    if not sigma >= 0:
        raise UsageError(f"--sigma must be non-negative, got {args.sigma}")
    seed = _seed(args, announce=args.command != "gen")
    if args.two_sphere:
        cloud = cloudgen.generate_two_sphere(args.radius, args.n, sigma, seed)
    else:
        cloud = cloudgen.generate_shell(cloudgen.ShellSpec(np.zeros(3), args.radius, args.n, sigma, seed))
    meta = {"source": "generated", "radius": args.radius, "n_per_shell": args.n, "sigma": sigma,
            "two_sphere": args.two_sphere, "seed": seed}
    return cloud, meta


def cmd_gen(args) -> int:
    cloud, meta = _shell_cloud(args)
    if args.out is None:
        sys.stdout.write(format_cloud_csv(cloud))
    else:
        write_cloud(args.out, cloud)
    box = bounding_box(cloud)
    lo = ", ".join(f"{v:.12g}" for v in box.min)
    hi = ", ".join(f"{v:.12g}" for v in box.max)
    print(f"n: {len(cloud)}\nbounding box: ({lo}) .. ({hi})\nseed: {meta['seed']}", file=sys.stderr)
    return EXIT_OK


def cmd_solve(args) -> int:
    if args.algo == "pso":
        _seed(args)
        config = _swarm_config(args)
    cloud, meta = _read(args.cloud)
    try:
        if args.algo == "pso":
            result = solve(cloud, args.weights, config)
            report = dict(result.report(), algo="pso", cloud=meta)
        elif args.algo == "welzl":
            seed = 0 if args.seed is None else args.seed
            report = dict(welzl_summary(cloud, seed), algo="welzl", cloud=meta)
        else:
            report = dict(brute_summary(cloud), algo="brute", cloud=meta)
    except Exception as exc:  # any solver failure maps to one exit code
        raise _SolverFailure(str(exc)) from exc
    _emit(args, report)
    trace = _trace_path(args)
    if args.algo == "pso" and trace is not None:
        trace.write_text(result.trace_csv())
    return EXIT_OK


def cmd_compare(args) -> int:
    if args.cloud is None:
        cloud, meta = _shell_cloud(args)
    else:
        _seed(args)
        cloud, meta = _read(args.cloud)
    config = _swarm_config(args)
    try:
        rep = compare(cloud, args.weights, config, cloud_meta=meta)
    except Exception as exc:
        raise _SolverFailure(str(exc)) from exc
    _emit(args, rep.to_dict())
    trace = _trace_path(args)
    if trace is not None:
        trace.write_text(rep.pso_result.trace_csv())
    print(rep.table(), file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "solve": cmd_solve, "compare": cmd_compare}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"swarmsphere: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, UnicodeDecodeError, CloudFormatError) as exc:
        print(f"swarmsphere: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except _SolverFailure as exc:
        print(f"swarmsphere: solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())

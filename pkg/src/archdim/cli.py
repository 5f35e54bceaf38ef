"""Command-line interface.

Subcommands: ``arch gen``, ``arch check``, ``dim``, ``witness``, ``bounds``,
``sweep``, ``mc-arch``.  Exit codes: 0 success, 1 invalid input, 2 a rank
consensus was numerically inconclusive, 3 a bound or verification verdict
failed.  Every artifact embeds the resolved configuration and tool version;
output files are written atomically after all computation succeeds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import __version__
from .architecture import (
    Architecture,
    brickwork,
    is_causal_slice,
    random_adjacent,
    staircase,
)
from .bounds import make_bound_sheet, randomized_bound_probability
from .contraction import (
    DEFAULT_N_MAX,
    DEFAULT_TOLERANCES,
    accessible_dimension,
)
from .errors import (
    ArchdimError,
    CertificateMismatch,
    ValidationError,
    VerdictError,
)
from .experiments import (
    growth_sweep,
    randomized_architecture_experiment,
    rows_to_csv,
)
from .witness import verify_certificate, witness_point

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INCONCLUSIVE = 2
EXIT_VERDICT = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(message)


def _default_seed() -> int:
    return int(os.environ.get("ARCHDIM_SEED", "0"))


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _config_dict(args: argparse.Namespace, keys: list[str]) -> dict:
    cfg = {"command": args.command}
    for key in keys:
        cfg[key] = getattr(args, key)
    return cfg


def _emit_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        _write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _load_arch(path: str) -> Architecture:
    with open(path) as handle:
        return Architecture.from_json(handle.read())


def _arch_from_args(args: argparse.Namespace) -> Architecture:
    if getattr(args, "infile", None):
        return _load_arch(args.infile)
    family = args.family
    if family == "staircase":
        return staircase(args.n, args.t)
    if family == "brickwork":
        rounds = args.rounds if args.rounds is not None else args.n * args.t
        return brickwork(args.n, rounds)
    if family == "random":
        if args.r is None:
            raise ValidationError("--r is required for the random family")
        return random_adjacent(args.n, args.r, args.seed)
    raise ValidationError(f"unknown family {args.family!r}")


# -- subcommand handlers -------------------------------------------------------


def cmd_arch_gen(args: argparse.Namespace) -> int:
    arch = _arch_from_args(args)
    payload = arch.to_json_dict()
    payload["config"] = _config_dict(
        args, ["family", "n", "t", "rounds", "r", "seed"])
    payload["version"] = __version__
    _emit_json(payload, args.out)
    return EXIT_OK


def cmd_arch_check(args: argparse.Namespace) -> int:
    arch = _load_arch(args.infile)
    ranges = arch.slice_ranges() or ((0, arch.gate_count),)
    slices = []
    for i, (start, stop) in enumerate(ranges):
        sink = is_causal_slice(arch, start, stop)
        slices.append({
            "index": i, "start": start, "stop": stop,
            "causal": sink is not None, "sink": sink,
        })
        state = f"causal, sink {sink}" if sink is not None else "not causal"
        print(f"slice {i} [{start}:{stop}): {state}")
    payload = {
        "n": arch.n,
        "gates": arch.gate_count,
        "marked_slices": arch.slice_count,
        "slices": slices,
        "config": _config_dict(args, ["infile"]),
        "version": __version__,
    }
    if args.out:
        _emit_json(payload, args.out)
    return EXIT_OK


def cmd_dim(args: argparse.Namespace) -> int:
    arch = _arch_from_args(args)
    report = accessible_dimension(
        arch, mode=args.mode, samples=args.samples, seed=args.seed,
        tolerances=(args.tol_loose, args.tol_tight), n_max=args.n_max,
        workers=args.workers)
    payload = report.to_json_dict()
    payload["config"] = _config_dict(
        args, ["family", "n", "t", "rounds", "r", "infile", "mode", "samples",
               "seed", "tol_loose", "tol_tight", "n_max"])
    payload["version"] = __version__
    if report.inconclusive:
        print(f"inconclusive: {report.inconclusive_reason}")
    else:
        print(f"accessible dimension d_A = {report.consensus} "
              f"(bounds [{report.lower_bound}, {report.upper_bound}], "
              f"cap {report.cap})")
    if args.out:
        _emit_json(payload, args.out)
    if args.spectra:
        _write_atomic(args.spectra, report.spectra_csv())
    if report.inconclusive:
        return EXIT_INCONCLUSIVE
    if not report.bounds_ok:
        print("bound sandwich violated", file=sys.stderr)
        return EXIT_VERDICT
    return EXIT_OK


def cmd_witness(args: argparse.Namespace) -> int:
    arch = _arch_from_args(args)
    cert = witness_point(arch, mode=args.mode)
    verdict = verify_certificate(
        cert, arch, check_rank=not args.skip_rank_check, n_max=args.n_max)
    payload = cert.to_json_dict()
    payload["config"] = _config_dict(
        args, ["family", "n", "t", "rounds", "infile", "mode", "n_max"])
    payload["version"] = __version__
    print(f"witness over {verdict.slice_count} slices: "
          f"{verdict.distinct_directions} distinct directions"
          + (f", rank {verdict.witness_rank}"
             if verdict.witness_rank is not None else ""))
    if args.out:
        _emit_json(payload, args.out)
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    sheet = make_bound_sheet(args.n, args.R, args.L)
    print(sheet.format_text())
    payload = sheet.to_json_dict()
    if args.alpha is not None:
        prob = randomized_bound_probability(args.n, args.alpha)
        payload["randomized_probability"] = prob
        print(f"{'randomized bound prob':<22}  {prob:.6g} (alpha={args.alpha})")
    payload["config"] = _config_dict(args, ["n", "R", "L", "alpha"])
    payload["version"] = __version__
    if args.out:
        _emit_json(payload, args.out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    rows = growth_sweep(
        n=args.n, family=args.family, t_max=args.t_max, samples=args.samples,
        seed=args.seed, mode=args.mode,
        tolerances=(args.tol_loose, args.tol_tight), n_max=args.n_max,
        workers=args.workers)
    cfg = _config_dict(
        args, ["n", "family", "t_max", "samples", "seed", "mode", "n_max"])
    comment = f"archdim {__version__} config={json.dumps(cfg, sort_keys=True)}"
    text = rows_to_csv(rows, header_comment=comment)
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    if any(r.accessible is None for r in rows):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_mc_arch(args: argparse.Namespace) -> int:
    summary = randomized_architecture_experiment(
        args.n, args.trials, args.seed, alpha=args.alpha)
    payload = summary.to_json_dict()
    payload["config"] = _config_dict(args, ["n", "trials", "seed", "alpha"])
    payload["version"] = __version__
    lo, hi = summary.interval
    print(f"causal fraction {summary.empirical:.5f} "
          f"(exact {summary.exact:.5f}, 99% interval [{lo:.5f}, {hi:.5f}])")
    if args.out:
        _emit_json(payload, args.out)
    if not summary.within_interval:
        print("empirical fraction outside the 99% interval", file=sys.stderr)
        return EXIT_VERDICT
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def _add_family_options(p: argparse.ArgumentParser, with_random: bool = True,
                        with_infile: bool = True) -> None:
    p.add_argument("--family", default="staircase",
                   choices=["staircase", "brickwork", "random"] if with_random
                   else ["staircase", "brickwork"])
    p.add_argument("--n", type=int, default=3, help="qubit count")
    p.add_argument("--t", type=int, default=1, help="causal slice count")
    p.add_argument("--rounds", type=int, default=None,
                   help="brickwork rounds (defaults to n * t)")
    if with_random:
        p.add_argument("--r", type=int, default=None,
                       help="gate count for the random family")
    if with_infile:
        p.add_argument("--in", dest="infile", default=None,
                       help="architecture JSON file (overrides --family)")


def _add_rank_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--mode", choices=["unitary", "state"], default="unitary")
    p.add_argument("--tol-loose", type=float, default=DEFAULT_TOLERANCES[0])
    p.add_argument("--tol-tight", type=float, default=DEFAULT_TOLERANCES[1])
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> _Parser:
    parser = _Parser(prog="archdim", description=__doc__)
    parser.add_argument("--version", action="version",
                        version=f"archdim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    arch = sub.add_parser("arch", help="generate or inspect architectures")
    arch_sub = arch.add_subparsers(dest="arch_command", required=True)

    gen = arch_sub.add_parser("gen", help="generate an architecture file")
    _add_family_options(gen, with_infile=False)
    gen.add_argument("--seed", type=int, default=_default_seed())
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_arch_gen, infile=None)

    check = arch_sub.add_parser("check", help="causal-slice report")
    check.add_argument("--in", dest="infile", required=True)
    check.add_argument("--out", default=None)
    check.set_defaults(func=cmd_arch_check)

    dim = sub.add_parser("dim", help="consensus accessible dimension")
    _add_family_options(dim)
    _add_rank_options(dim)
    dim.add_argument("--out", default=None, help="rank report JSON")
    dim.add_argument("--spectra", default=None, help="singular-value CSV")
    dim.set_defaults(func=cmd_dim)

    wit = sub.add_parser("witness", help="build and verify a witness point")
    _add_family_options(wit, with_random=False)
    wit.add_argument("--mode", choices=["unitary", "state"], default="unitary")
    wit.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    wit.add_argument("--skip-rank-check", action="store_true")
    wit.add_argument("--out", default=None, help="certificate JSON")
    wit.set_defaults(func=cmd_witness, r=None, seed=_default_seed())

    bnd = sub.add_parser("bounds", help="closed-form bound sheet")
    bnd.add_argument("--n", type=int, required=True)
    bnd.add_argument("--R", type=int, required=True)
    bnd.add_argument("--L", type=int, required=True)
    bnd.add_argument("--alpha", type=float, default=None)
    bnd.add_argument("--out", default=None)
    bnd.set_defaults(func=cmd_bounds)

    swp = sub.add_parser("sweep", help="growth sweep over slice counts")
    swp.add_argument("--family", choices=["staircase", "brickwork"],
                     default="staircase")
    swp.add_argument("--n", type=int, default=3)
    swp.add_argument("--t-max", type=int, required=True)
    _add_rank_options(swp)
    swp.add_argument("--out", default=None, help="CSV output")
    swp.set_defaults(func=cmd_sweep)

    mc = sub.add_parser("mc-arch", help="randomized-architecture Monte Carlo")
    mc.add_argument("--n", type=int, default=5)
    mc.add_argument("--trials", type=int, default=10000)
    mc.add_argument("--seed", type=int, default=_default_seed())
    mc.add_argument("--alpha", type=float, default=0.5)
    mc.add_argument("--out", default=None)
    mc.set_defaults(func=cmd_mc_arch)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (CertificateMismatch, VerdictError) as exc:
        print(f"verdict failure: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: invalid input ({exc})", file=sys.stderr)
        return EXIT_INVALID
    except ArchdimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERDICT


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()

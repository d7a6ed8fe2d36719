"""Command line entry point: verify, run, and sweep subcommands."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .config import parse_config
from .errors import ParseError, SpinGaugeError, ValidationError
from .runner import run_scenario, run_sweep
from .verify import RunReport, run_verify

__all__ = ["main", "EXIT_CODES"]

EXIT_CODES = {
    "ok": 0,
    "verify-failure": 1,
    "usage": 2,
    "parse-error": 3,
    "validation-error": 4,
    "runtime-error": 5,
    "io-error": 6,
}

_EPILOG = """exit codes:
  0  success (every check passed)
  1  one or more checks failed (verify suite or run report)
  2  command line usage error
  3  config parse error (bad syntax, unknown section or key)
  4  config validation error (named field, reason)
  5  numerical or physics runtime error (step bounds, stability, overflow)
  6  file I/O error
"""


def _print_report(rep: RunReport) -> None:
    for c in rep.checks:
        print(f"{c.status.upper():5s} {c.name:50s} max_err={c.max_error:.3e}"
              + (f"  [{c.detail}]" if c.detail else ""))
    for note in rep.notes:
        print(f"note: {note}")
    print(f"{'OK' if rep.ok else 'FAILED'} "
          f"({len(rep.checks)} checks, {rep.elapsed_s:.2f}s)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spingauge",
        description="SU(2) spin gauge field simulations for spin-orbit "
                    "coupled electrons",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the cross-module identity suite",
                              epilog=_EPILOG,
                              formatter_class=argparse.RawDescriptionHelpFormatter)
    p_verify.add_argument("--seed", type=int, default=0,
                          help="RNG seed for the randomized batches (default 0)")
    p_verify.add_argument("--cases", type=int, default=100,
                          help="random cases per batch (default 100)")

    p_run = sub.add_parser("run", help="execute a scenario config",
                           epilog=_EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
    p_run.add_argument("config", help="path to the scenario config file")
    p_run.add_argument("--out", default=None,
                       help="output directory (default: <config stem>_out)")

    p_sweep = sub.add_parser("sweep", help="run a scenario across parameter values",
                             epilog=_EPILOG,
                             formatter_class=argparse.RawDescriptionHelpFormatter)
    p_sweep.add_argument("config", help="path to the scenario config file")
    p_sweep.add_argument("--param", required=True,
                         help="key to sweep, as section.key (e.g. units.coupling)")
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated values for the key")
    p_sweep.add_argument("--out", default=None,
                         help="output directory (default: <config stem>_sweep)")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            rep = run_verify(seed=args.seed, n_random=args.cases)
            _print_report(rep)
            return EXIT_CODES["ok"] if rep.ok else EXIT_CODES["verify-failure"]
        if args.command == "run":
            config_path = Path(args.config)
            text = config_path.read_text(encoding="utf-8")
            scenario = parse_config(text)
            out_dir = args.out or f"{config_path.stem}_out"
            rep = run_scenario(scenario, out_dir)
            _print_report(rep)
            print(f"outputs in {out_dir}/")
            return EXIT_CODES["ok"] if rep.ok else EXIT_CODES["verify-failure"]
        if args.command == "sweep":
            config_path = Path(args.config)
            text = config_path.read_text(encoding="utf-8")
            values = [v for v in args.values.split(",") if v != ""]
            if not values:
                parser.error("--values must name at least one value")
            out_dir = args.out or f"{config_path.stem}_sweep"
            reports = run_sweep(text, args.param, values, out_dir)
            ok = True
            for slug, rep in reports:
                print(f"{'OK' if rep.ok else 'FAILED':6s} {slug} "
                      f"({rep.elapsed_s:.2f}s)")
                ok = ok and rep.ok
            print(f"outputs in {out_dir}/")
            return EXIT_CODES["ok"] if ok else EXIT_CODES["verify-failure"]
        parser.error(f"unknown command {args.command!r}")
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_CODES["parse-error"]
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_CODES["validation-error"]
    except SpinGaugeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CODES["runtime-error"]
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_CODES["io-error"]
    return EXIT_CODES["ok"]


if __name__ == "__main__":
    raise SystemExit(main())

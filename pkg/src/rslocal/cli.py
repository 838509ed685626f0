"""Command line driver: verify <suite> with configurable parameters.

Exit status: 0 when every check passes, 1 when any check fails, 2 for
configuration errors.  A JSON config file may supply any flag's value;
explicit flags win.  The character cache path may also come from the
RSLOCAL_CACHE environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .suites import SUITES, CheckConfig, emit_report, load_cache, run_suite, save_cache

CACHE_ENV = "RSLOCAL_CACHE"


def _parse_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected s,w")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parse_satake(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected t,y1,y2")
    try:
        return tuple(Fraction(part) for part in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Run exact verification suites for the local integral identities.",
    )
    parser.add_argument("suite", choices=SUITES, help="which suite to run")
    parser.add_argument("--deg-u", type=int, default=None, help="U truncation degree (default 8)")
    parser.add_argument("--deg-v", type=int, default=None, help="V truncation degree (default 8)")
    parser.add_argument("--radius", type=int, default=None, help="coefficient grid radius (default 6)")
    parser.add_argument(
        "--prime",
        type=int,
        action="append",
        default=None,
        help="prime to use (repeatable; default 2 3 5)",
    )
    parser.add_argument(
        "--sw",
        type=_parse_pair,
        action="append",
        default=None,
        metavar="S,W",
        help="evaluation point s,w (repeatable; default 2,9 and 3,11)",
    )
    parser.add_argument(
        "--satake",
        type=_parse_satake,
        action="append",
        default=None,
        metavar="T,Y1,Y2",
        help="rational Satake point (repeatable; default: 5 seeded points)",
    )
    parser.add_argument("--seed", type=int, default=None, help="seed for the randomized sweeps")
    parser.add_argument("--format", choices=("text", "json"), default=None, dest="fmt")
    parser.add_argument("--cache", default=None, help="character cache file path")
    parser.add_argument(
        "--no-timing",
        action="store_true",
        default=None,
        help="omit elapsed times so reports are byte-identical across runs",
    )
    parser.add_argument("--config", default=None, help="JSON file of default option values")
    return parser


_CONFIG_KEYS = {
    "deg_u": int,
    "deg_v": int,
    "radius": int,
    "seed": int,
    "format": str,
    "cache": str,
    "no_timing": bool,
}


def _merge_config(args) -> CheckConfig:
    file_values = {}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, ValueError) as exc:
            raise ValueError("cannot read config file: %s" % exc)
        if not isinstance(raw, dict):
            raise ValueError("config file must hold a JSON object")
        for key, value in raw.items():
            if key in _CONFIG_KEYS:
                file_values[key] = _CONFIG_KEYS[key](value)
            elif key == "primes":
                file_values["primes"] = tuple(int(v) for v in value)
            elif key == "sw":
                file_values["sw"] = tuple((int(s), int(w)) for s, w in value)
            elif key == "satake":
                file_values["satake"] = tuple(
                    tuple(Fraction(str(c)) for c in pt) for pt in value
                )
            else:
                raise ValueError("unknown config key %r" % key)

    def pick(flag, key, default):
        if flag is not None:
            return flag
        if key in file_values:
            return file_values[key]
        return default

    cache = pick(args.cache, "cache", None)
    if cache is None:
        cache = os.environ.get(CACHE_ENV) or None
    return CheckConfig(
        suite=args.suite,
        deg_u=pick(args.deg_u, "deg_u", 8),
        deg_v=pick(args.deg_v, "deg_v", 8),
        radius=pick(args.radius, "radius", 6),
        primes=tuple(pick(args.prime, "primes", (2, 3, 5))),
        sw_points=tuple(pick(args.sw, "sw", ((2, 9), (3, 11)))),
        satake_points=pick(args.satake, "satake", None),
        seed=pick(args.seed, "seed", 0),
        cache_path=cache,
        fmt=pick(args.fmt, "format", "text"),
        no_timing=bool(pick(args.no_timing, "no_timing", False)),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
    except ValueError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    errors = cfg.validate()
    if errors:
        for err in errors:
            print("config error: %s" % err, file=sys.stderr)
        return 2
    if cfg.cache_path:
        load_cache(cfg.cache_path)
    reports = run_suite(cfg)
    if cfg.cache_path:
        try:
            save_cache(cfg.cache_path)
        except OSError as exc:
            print("warning: cannot save cache: %s" % exc, file=sys.stderr)
    sys.stdout.write(emit_report(reports, cfg))
    return 0 if all(r.status == "pass" for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())

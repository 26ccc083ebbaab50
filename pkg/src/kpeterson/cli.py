"""Command-line entry point: compute, verify, toda, cache-gc.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 budget exhausted.
"""
from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .affine import BoundExceeded, canonical, is_k_bounded
from .cache import Cache, canonical_json, maybe_cache
from .config import ConfigError, RunConfig, resolve
from .demazure import BudgetExceeded

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _int_list(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _frac_list(text: str) -> List[Fraction]:
    try:
        return [Fraction(x) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from exc


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="rank parameter (>= 2)")
    p.add_argument("--deg", dest="D", type=int, help="truncation degree")
    p.add_argument("--max-length", dest="L", type=int, help="max affine length for enumeration")
    p.add_argument("--mode", choices=["GL", "SL", "gl", "sl"])
    p.add_argument("--jobs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--cache-dir")
    p.add_argument("--json", dest="json_path", help="write the JSON output to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kpeterson", description="K-Peterson identity toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="emit one object as canonical JSON")
    c.add_argument("kind", choices=["gkschur", "gkschur-closed", "groth", "tau", "z-matrix"])
    c.add_argument("--partition", type=_int_list, default=None)
    c.add_argument("--perm", type=_int_list, default=None)
    c.add_argument("--i", dest="index", type=int, default=None)
    _common(c)

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("suite", choices=["main", "det", "krect", "maxfactor", "toda", "groth-props",
                                     "operators", "fixtures", "consistency", "all"])
    _common(v)

    t = sub.add_parser("toda", help="iterate the discrete Toda map on rational data")
    t.add_argument("--steps", type=int, default=3)
    t.add_argument("--z", type=_frac_list, default=None)
    t.add_argument("--Q", type=_frac_list, default=None)
    _common(t)

    g = sub.add_parser("cache-gc", help="drop corrupt cache entries")
    g.add_argument("--all", action="store_true", help="remove every entry")
    _common(g)
    return parser


def _config(args) -> RunConfig:
    keys = ("n", "D", "L", "mode", "jobs", "seed", "cache_dir")
    return resolve({k: getattr(args, k, None) for k in keys})


def _emit(doc, path: Optional[str]) -> None:
    text = canonical_json(doc)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# -- compute ---------------------------------------------------------------------------

def compute_payload(kind: str, cfg: RunConfig, key):
    """The JSON payload for one object; ``key`` is the normalized argument."""
    from .demazure import DemazureContext
    from .quantum import GrothTable
    from .toda import CentralizerData

    if kind in ("gkschur", "gkschur-closed"):
        ctx = DemazureContext(cfg.n, cfg.D, cfg.sl, max_length=cfg.L)
        f = ctx.g(key) if kind == "gkschur" else ctx.g_tilde(key)
        return f.to_json()
    if kind == "groth":
        return GrothTable(cfg.n)[tuple(key)].to_json()
    data = CentralizerData(cfg.n, cfg.D, cfg.sl)
    if kind == "tau":
        return data.tau_list()[key].to_json()
    if kind == "z-matrix":
        return [[data.entry(i, j).to_json() for j in range(1, cfg.n + 1)] for i in range(1, cfg.n + 1)]
    raise UsageError(kind)


def _compute_key(kind: str, args, cfg: RunConfig):
    if kind in ("gkschur", "gkschur-closed"):
        if args.partition is None:
            raise UsageError("--partition is required")
        lam = canonical(args.partition)
        if any(p < 0 for p in args.partition) or not is_k_bounded(lam, cfg.n):
            raise UsageError(f"partition {list(lam)} is not {cfg.n - 1}-bounded")
        return lam
    if kind == "groth":
        if args.perm is None or sorted(args.perm) != list(range(1, cfg.n + 1)):
            raise UsageError(f"--perm must be a permutation of 1..{cfg.n}")
        return tuple(args.perm)
    if kind == "tau":
        if args.index is None or not 0 <= args.index <= cfg.n:
            raise UsageError(f"--i must lie in 0..{cfg.n}")
        return args.index
    return None


def cmd_compute(args, cfg: RunConfig) -> int:
    kind = args.kind
    key = _compute_key(kind, args, cfg)
    jkey = list(key) if isinstance(key, tuple) else key
    cache = maybe_cache(cfg.cache_dir)
    if cache is not None:
        payload = cache.get_or_compute(kind, cfg.n, cfg.D, jkey, lambda: compute_payload(kind, cfg, key), cfg.mode)
    else:
        payload = compute_payload(kind, cfg, key)
    _emit({"config": cfg.as_dict(), "kind": kind, "key": jkey, "result": payload}, args.json_path)
    return EXIT_OK


# -- verify ----------------------------------------------------------------------------

def cmd_verify(args, cfg: RunConfig) -> int:
    from .suites import exit_code, run_suites

    report = run_suites([args.suite], cfg)
    _emit(report, args.json_path)
    if args.json_path:
        s = report["summary"]
        print(f"{args.suite}: {s['pass']} pass, {s['fail']} fail, {s['budget']} budget, {s['skip']} skip")
    return exit_code(report)


# -- toda ------------------------------------------------------------------------------

def cmd_toda(args, cfg: RunConfig) -> int:
    from .toda import F_values, dtoda_orbit

    rng = random.Random(cfg.seed)
    z = args.z or [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(cfg.n)]
    Q = args.Q or [Fraction(rng.randint(1, 9), rng.randint(10, 19)) for _ in range(cfg.n - 1)]
    if len(z) != cfg.n or len(Q) != cfg.n - 1:
        raise UsageError(f"need {cfg.n} z-values and {cfg.n - 1} Q-values")
    if args.steps < 0:
        raise UsageError("--steps must be nonnegative")
    try:
        orbit = dtoda_orbit(z, Q, args.steps)
    except ZeroDivisionError as exc:
        raise UsageError("the orbit hits a pole of the discrete Toda map") from exc
    states = []
    for st in orbit:
        states.append({
            "z": [str(x) for x in st.z],
            "Q": [str(x) for x in st.Q],
            "F": [str(x) for x in F_values(st)],
        })
    conserved = all(s["F"] == states[0]["F"] for s in states)
    _emit({"config": cfg.as_dict(), "states": states, "conserved": conserved}, args.json_path)
    return EXIT_OK if conserved else EXIT_FAIL


def cmd_cache_gc(args, cfg: RunConfig) -> int:
    if not cfg.cache_dir:
        raise UsageError("--cache-dir (or KPETERSON_CACHE_DIR) is required")
    removed = Cache(cfg.cache_dir).gc(remove_all=args.all)
    _emit({"config": cfg.as_dict(), "removed": removed}, args.json_path)
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "toda": cmd_toda, "cache-gc": cmd_cache_gc}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except (ConfigError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, BoundExceeded) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())

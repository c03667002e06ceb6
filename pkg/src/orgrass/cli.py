"""Command-line front end.

Subcommands: dual, g, scan, betti, charrank, cup, verify.  Human-readable
output by default, stable machine output with --json (no timings unless
--timing is given).  Progress for long scans goes to stderr only.

Exit codes: 0 success / all checks pass, 1 verification failure or internal
inconsistency, 2 usage error, 3 result capped (scan or search stopped early).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import __version__
from .cohomology import GrassmannCohomology, GrassmannContext
from .duals import (
    CACHE_ENV,
    default_cache_dir,
    dual_class,
    dual_table,
    load_cache,
    reduced_dual_class,
    save_cache,
    scan_vanishing,
)
from .rank_cup import (
    InconsistencyError,
    charrank_oriented,
    cup_report,
)
from .suites import SUITES

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAPPED = 3


def _dump(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _parse_kill(text: str, k: int) -> set[int]:
    try:
        kill = {int(part) for part in text.split(",") if part.strip()}
    except ValueError:
        raise ValueError(f"cannot parse --kill {text!r}: expected comma-separated indices")
    if not kill <= set(range(1, k + 1)):
        raise ValueError(f"--kill {sorted(kill)} outside 1..{k}")
    return kill


def _cache_dir(args) -> str:
    return args.cache_dir or default_cache_dir()


@contextlib.contextmanager
def _cached_table(k: int, cache_dir: str):
    """Load the disk table first; persist afterwards if memory outgrew it."""
    disk_max = load_cache(k, cache_dir)
    yield
    if dual_table(k).computed_up_to > disk_max:
        save_cache(k, cache_dir)


def cmd_dual(args) -> int:
    with _cached_table(args.k, _cache_dir(args)):
        poly = dual_class(args.k, args.i)
    if args.json:
        _dump({"format": "orgrass-poly/1", "k": args.k, "i": args.i, "poly": str(poly)})
    else:
        print(poly)
    return EXIT_OK


def cmd_g(args) -> int:
    poly = reduced_dual_class(args.k, args.i, {1})
    if args.json:
        _dump({"format": "orgrass-poly/1", "k": args.k, "i": args.i, "poly": str(poly)})
    else:
        print(poly)
    return EXIT_OK


def cmd_scan(args) -> int:
    kill = _parse_kill(args.kill, args.k)
    progress = None
    if args.verbose:
        progress = lambda i: print(f"  ... scanned through degree {i}", file=sys.stderr)
    scan = scan_vanishing(
        args.k, kill, args.lo, args.hi, keep_values=args.values, progress=progress
    )
    if args.json:
        payload = {
            "format": "orgrass-scan/1",
            "k": scan.k,
            "killed": sorted(scan.killed),
            "lo": scan.lo,
            "hi": scan.hi,
            "zero_degrees": list(scan.zero_degrees),
        }
        if scan.values is not None:
            payload["values"] = {str(i): str(p) for i, p in sorted(scan.values.items())}
        _dump(payload)
        return EXIT_OK
    killed = ",".join(str(m) for m in sorted(kill))
    print(f"reductions of the dual classes mod {{w{killed}}} at k={args.k}, degrees {args.lo}..{args.hi}")
    if args.values:
        for i in range(args.lo, args.hi + 1):
            print(f"  {i}: {scan.values[i]}")
    zeros = list(scan.zero_degrees)
    print(f"zero degrees: {zeros if zeros else 'none'}")
    return EXIT_OK


def cmd_betti(args) -> int:
    ctx = GrassmannContext(args.n, args.k)
    with _cached_table(args.k, _cache_dir(args)):
        rep = GrassmannCohomology(ctx).report(args.strategy)
    if args.json:
        _dump(rep.to_dict())
    else:
        print(rep.format_table())
    return EXIT_OK


def cmd_charrank(args) -> int:
    ctx = GrassmannContext(args.n, args.k)
    with _cached_table(args.k, _cache_dir(args)):
        res = charrank_oriented(ctx, cap=args.cap)
    if args.json:
        _dump(
            {
                "format": "orgrass-charrank/1",
                "n": ctx.n,
                "k": ctx.k,
                "value": res.value,
                "exact": res.exact,
                "first_kernel_degree": res.first_kernel_degree,
                "prediction": {"kind": res.prediction.kind, "value": res.prediction.value},
                "agrees": res.agrees,
                "applies_to_manifold": res.applies_to_manifold,
            }
        )
    else:
        kind = "exact" if res.exact else "at least"
        print(f"{ctx}: charrank(oriented canonical bundle) {kind} {res.value}")
        if res.first_kernel_degree is not None:
            print(f"  first cup-by-w1 kernel in degree {res.first_kernel_degree}")
        if res.prediction.kind == "not_covered":
            print("  case table: not covered")
        else:
            word = "=" if res.prediction.kind == "exact" else ">="
            verdict = {True: "agrees", False: "DISAGREES", None: "undecided (scan capped)"}
            print(
                f"  case table: {word} {res.prediction.value} -> {verdict[res.agrees]}"
            )
        if res.applies_to_manifold:
            print("  n is odd: the value is also charrank of the cover manifold")
    return EXIT_OK if res.exact else EXIT_CAPPED


def cmd_cup(args) -> int:
    ctx = GrassmannContext(args.n, args.k)
    with _cached_table(args.k, _cache_dir(args)):
        rep = cup_report(ctx, budget=args.budget)
    if args.json:
        payload = {
            "format": "orgrass-cup/1",
            "n": ctx.n,
            "k": ctx.k,
            "d": rep.d,
            "j_used": rep.j_used,
            "j_source": rep.j_source,
            "r_used": rep.r_used,
            "upper": rep.upper,
            "upper_from_prediction": rep.upper_from_prediction,
            "closed_form": None
            if rep.closed_form is None
            else {"kind": rep.closed_form.kind, "value": rep.closed_form.value},
            "lower_sw": rep.lower_sw,
            "lower_capped": rep.lower_capped,
            "exact": rep.exact,
            "exact_source": rep.exact_source,
        }
        _dump(payload)
    else:
        print(f"G~({ctx.n},{ctx.k}): d={rep.d}, charrank j={rep.j_used} ({rep.j_source}), r={rep.r_used}")
        print(f"  cup-length upper bound: {rep.upper}")
        if rep.closed_form is not None:
            print(
                f"  case table: {rep.closed_form.kind} {rep.closed_form.value} "
                f"(recomputed {rep.upper_from_prediction})"
            )
        capped = " [search capped]" if rep.lower_capped else ""
        print(f"  lower bound from w1-free monomials: {rep.lower_sw}{capped}")
        if rep.exact is not None:
            print(f"  exact: {rep.exact} ({rep.exact_source})")
    return EXIT_CAPPED if rep.lower_capped else EXIT_OK


def cmd_verify(args) -> int:
    kwargs = {}
    if args.suite == "vanishing" and args.hi is not None:
        kwargs = {
            "hi3": args.hi,
            "hi4": min(args.hi, 512),
            "hi5": min(args.hi, 512),
            "hi6": min(args.hi, 128),
        }
    if args.suite in ("charrank", "gysin", "topdie") and args.t_max is not None:
        kwargs = {"n_max": 1 << args.t_max}
    if args.suite == "cup" and args.t_max is not None:
        kwargs = {
            "ts": tuple(t for t in (3, 4, 5) if t <= args.t_max),
            "n_max3": min(32, 1 << args.t_max),
            "n_max4": min(32, 1 << args.t_max),
        }
    rows = SUITES[args.suite](**kwargs)
    ok = all(r.ok for r in rows)
    if args.json:
        payload = {
            "format": "orgrass-verify/1",
            "suite": args.suite,
            "ok": ok,
            "rows": [
                {"name": r.name, "ok": r.ok, "detail": r.detail}
                | ({"data": r.data} if r.data is not None else {})
                | ({"seconds": round(r.seconds, 3)} if args.timing else {})
                for r in rows
            ],
        }
        _dump(payload)
    else:
        for r in rows:
            mark = "PASS" if r.ok else "FAIL"
            timing = f" [{r.seconds:.2f}s]" if args.timing else ""
            print(f"{mark}  {r.name}: {r.detail}{timing}")
        print(f"{'PASS' if ok else 'FAIL'}  {args.suite}: {sum(r.ok for r in rows)}/{len(rows)} checks")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orgrass",
        description="Exact mod-2 computations for oriented Grassmann manifolds.",
    )
    parser.add_argument("--version", action="version", version=f"orgrass {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=None, help=f"cache directory (default: ${CACHE_ENV} or a per-user default)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("-v", "--verbose", action="store_true", help="progress to stderr")

    p = sub.add_parser("dual", parents=[common], help="one dual class of the canonical bundle")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("g", parents=[common], help="mod-w1 reduction of one dual class")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(func=cmd_g)

    p = sub.add_parser("scan", parents=[common], help="vanishing scan of reduced dual classes")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kill", required=True, help="comma-separated variable indices to set to zero")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--values", action="store_true", help="also print every reduced polynomial")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("betti", parents=[common], help="per-degree Gysin report for G(n,k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--strategy", choices=("auto", "direct", "mirror"), default="auto")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("charrank", parents=[common], help="characteristic rank of the oriented canonical bundle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=None, help="stop the kernel scan at this degree")
    p.set_defaults(func=cmd_charrank)

    p = sub.add_parser("cup", parents=[common], help="cup-length bounds for the oriented cover")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=None, help="cap on pullback tests in the lower-bound search")
    p.set_defaults(func=cmd_cup)

    p = sub.add_parser("verify", parents=[common], help="run a reproduction suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--hi", type=int, default=None, help="scan bound for the vanishing suite")
    p.add_argument("--t-max", type=int, default=None, help="restrict grids to n <= 2^t")
    p.add_argument("--timing", action="store_true", help="include per-row timings")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InconsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        parser.exit(EXIT_USAGE, f"{parser.prog}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())

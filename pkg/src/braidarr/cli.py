"""Command-line surface for transitivity checks, enumeration, polynomials,
verification runs, coefficient triangles, and Dyck statistics.

Offset sets are spelled as comma-separated integers (``-1,0,1``, empty for
the empty set) or as a family spec (``shi:2``, ``braid``).  All results go
to stdout as JSON (triangles optionally as CSV) with counts as decimal
strings; wall time goes to stderr so identical invocations stay
byte-identical on stdout.  Exit status: 0 all checks passed, 1 a check
failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from typing import Optional, Sequence

from . import catalan as catalan_mod
from . import charpoly, dyck, enumeration
from .offsets import OffsetSet, parse_spec

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


def _emit(payload: dict) -> None:
    print(json.dumps(payload))


def _offsets_or_exit(spec: str) -> OffsetSet:
    try:
        return parse_spec(spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_INPUT)


class _Report:
    def __init__(self, command: str):
        self.command = command
        self.checks: list = []
        self.started = time.monotonic()

    def add(self, name: str, status: str, detail: str = "", counterexample=None):
        entry = {"name": name, "status": status}
        if detail:
            entry["detail"] = detail
        if counterexample is not None:
            entry["counterexample"] = counterexample
        self.checks.append(entry)

    def extend(self, checks: Sequence[dict]) -> None:
        self.checks.extend(checks)

    def finish(self) -> int:
        failures = sum(1 for c in self.checks if c["status"] == "fail")
        _emit({"command": self.command, "checks": self.checks, "failures": failures})
        elapsed = time.monotonic() - self.started
        print(f"{self.command}: {elapsed:.2f}s", file=sys.stderr)
        return EXIT_CHECK_FAILED if failures else EXIT_OK


# ---------------------------------------------------------------------------
# subcommands


def cmd_check_transitive(args) -> int:
    offsets = _offsets_or_exit(args.set)
    _emit(
        {
            "set": list(offsets.elements),
            "m": offsets.m,
            "transitive": offsets.is_transitive(),
        }
    )
    return EXIT_OK


def cmd_chi(args) -> int:
    offsets = _offsets_or_exit(args.set)
    n = args.n
    if args.method in ("esa", "both") and not offsets.is_transitive():
        print(
            f"error: {offsets} is not transitive; the series method needs "
            "tree counts equal to region counts",
            file=sys.stderr,
        )
        return EXIT_BAD_INPUT
    ff = esa = None
    if args.method in ("ff", "both"):
        ff = charpoly.chi_finite_field(
            offsets, n, quotient=args.quotient, jobs=args.jobs
        )
    if args.method in ("esa", "both"):
        if n >= 1:
            esa = charpoly.chi_exponential(offsets, n)[n - 1]
        else:
            esa = charpoly.IntPolynomial((1,))
    if args.method == "both" and ff != esa:
        print(
            f"error: methods disagree: ff={ff.to_json()} esa={esa.to_json()}",
            file=sys.stderr,
        )
        return EXIT_CHECK_FAILED
    _emit((ff or esa).to_json())
    return EXIT_OK


def cmd_trees(args) -> int:
    offsets = _offsets_or_exit(args.set)
    trees = enumeration.admissible_trees(offsets, args.n)
    payload = {
        "S": list(offsets.elements),
        "n": args.n,
        "count": str(len(trees)),
    }
    if not args.count_only:
        from .trees import serialize

        payload["trees"] = [serialize(t) for t in trees]
    _emit(payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    offsets = _offsets_or_exit(args.set)
    report = _Report("verify")
    for n in range(1, args.n_max + 1):
        dist = enumeration.branch_distribution(offsets, n, jobs=args.jobs)
        poly = charpoly.chi_finite_field(
            offsets, n, quotient=args.quotient, jobs=args.jobs
        )
        ac = charpoly.abs_coefficients(poly)
        expected = tuple(dist.get(j, 0) for j in range(1, n + 1))
        if ac[1:] == expected and ac[0] == 0:
            report.add(f"branches-match-coefficients-n{n}", "pass")
        else:
            report.add(
                f"branches-match-coefficients-n{n}",
                "fail",
                counterexample={"coeffs": list(map(str, ac)), "branches": list(map(str, (0,) + expected))},
            )
        regions = charpoly.region_count(poly)
        total = sum(dist.values())
        if regions == total:
            report.add(f"regions-match-tree-count-n{n}", "pass")
        else:
            report.add(
                f"regions-match-tree-count-n{n}",
                "fail",
                counterexample={"regions": str(regions), "trees": str(total)},
            )
        if 0 in offsets and any(k >= 1 and -k in offsets for k in offsets):
            comp = enumeration.compartment_distribution(offsets, n)
            if comp == dist:
                report.add(f"compartments-match-branches-n{n}", "pass")
            else:
                report.add(
                    f"compartments-match-branches-n{n}",
                    "fail",
                    counterexample={
                        "compartments": {str(k): str(v) for k, v in sorted(comp.items())},
                        "branches": {str(k): str(v) for k, v in sorted(dist.items())},
                    },
                )
        else:
            report.add(
                f"compartments-match-branches-n{n}",
                "skipped",
                detail="needs 0 in S and some k with k, -k in S",
            )
    report.extend(catalan_mod.verify_inequalities(offsets, args.n_max))
    return report.finish()


def _fixture_path():
    return resources.files("braidarr.data").joinpath(catalan_mod.FIXTURE_NAME)


def cmd_triangle(args) -> int:
    spec = args.family if args.family is not None else args.set
    if spec is None:
        print("error: triangle needs --family or --set", file=sys.stderr)
        return EXIT_BAD_INPUT
    offsets = _offsets_or_exit(spec)
    m = catalan_mod._is_catalan_set(offsets)
    if args.unsafe_regen:
        if m != 1:
            print("error: the bundled fixture covers catalan:1 only", file=sys.stderr)
            return EXIT_BAD_INPUT
        rows = {}
        for n in range(1, args.n_max + 1):
            dist = enumeration.branch_distribution(offsets, n, jobs=args.jobs)
            rows[n] = tuple(dist.get(j, 0) for j in range(1, n + 1))
        tri = catalan_mod.Triangle("catalan:1", rows)
        target = args.out or str(_fixture_path())
        with open(target, "w") as fh:
            fh.write(tri.to_csv())
        print(f"wrote {target}", file=sys.stderr)
        return EXIT_OK
    tri = catalan_mod.triangle(m if m is not None else offsets, args.n_max)
    if args.check_fixture:
        if m != 1:
            print("error: the bundled fixture covers catalan:1 only", file=sys.stderr)
            return EXIT_BAD_INPUT
        bundled = catalan_mod.bundled_m1_triangle()
        report = _Report("triangle")
        for n in range(1, args.n_max + 1):
            if n not in bundled.rows:
                report.add(f"fixture-row-n{n}", "skipped", detail="beyond bundled rows")
            elif bundled.rows[n] == tri.rows[n]:
                report.add(f"fixture-row-n{n}", "pass")
            else:
                report.add(
                    f"fixture-row-n{n}",
                    "fail",
                    counterexample={
                        "computed": [str(c) for c in tri.rows[n]],
                        "fixture": [str(c) for c in bundled.rows[n]],
                    },
                )
        return report.finish()
    if args.format == "csv":
        sys.stdout.write(tri.to_csv())
    else:
        _emit(tri.to_json())
    return EXIT_OK


def cmd_dyck(args) -> int:
    try:
        counts = dyck.statistic_distribution(args.m, args.n, args.stat)
    except KeyError:
        print(f"error: unknown statistic {args.stat!r}", file=sys.stderr)
        return EXIT_BAD_INPUT
    _emit(
        {
            "m": args.m,
            "n": args.n,
            "stat": args.stat,
            "counts": {str(j): str(c) for j, c in sorted(counts.items())},
        }
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidarr",
        description="Exact tree models and characteristic polynomials of "
        "integer braid-arrangement deformations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_jobs(p):
        p.add_argument(
            "--jobs", type=int, default=1, help="worker count (results never depend on it)"
        )

    p = sub.add_parser("check-transitive", help="test the two closure conditions")
    p.add_argument("--set", required=True, help='offset set, e.g. "-1,0,1" or "shi:2"')
    p.set_defaults(fn=cmd_check_transitive)

    p = sub.add_parser("chi", help="characteristic polynomial")
    p.add_argument("--set", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--method", choices=("ff", "esa", "both"), default="ff")
    p.add_argument(
        "--quotient",
        action="store_true",
        help="count points with the last coordinate pinned to 0, times q",
    )
    add_jobs(p)
    p.set_defaults(fn=cmd_chi)

    p = sub.add_parser("trees", help="list or count admissible trees")
    p.add_argument("--set", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--count", dest="count_only", action="store_true")
    p.set_defaults(fn=cmd_trees)

    p = sub.add_parser("verify", help="machine-check coefficients against statistics")
    p.add_argument("--set", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--quotient", action="store_true")
    add_jobs(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("triangle", help="coefficient triangle")
    p.add_argument("--family", help='family spec, e.g. "catalan:1"')
    p.add_argument("--set")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--check-fixture", action="store_true")
    p.add_argument(
        "--unsafe-regen",
        action="store_true",
        help="recompute the bundled fixture by exhaustive enumeration and overwrite it",
    )
    p.add_argument("--out", help="alternative output path for --unsafe-regen")
    add_jobs(p)
    p.set_defaults(fn=cmd_triangle)

    p = sub.add_parser("dyck", help="labeled Dyck path statistics")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--stat", choices=("compartments", "rl-maxima"), default="compartments")
    p.set_defaults(fn=cmd_dyck)

    return parser


def _fold_set_values(argv: Sequence[str]) -> list:
    """Turn ``--set -1,0,1`` into ``--set=-1,0,1`` so argparse does not
    mistake a leading-minus set for an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--set", "--family") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    args = build_parser().parse_args(_fold_set_values(argv))
    if getattr(args, "n", None) is not None and args.n < 1 and args.command != "chi":
        print("error: n must be >= 1", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        return args.fn(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``petersen-census <command> [flags]``.

Commands: catalog, count, oracle, mine, verify.  Output is exact and
byte-for-byte reproducible for equal arguments; timings never reach stdout.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import golden
from .graphs import count_ham_cycles_oracle
from .signatures import build_catalog, enumerate_side_intersections, enumerate_signatures
from .transfer import Pipeline, hamiltonian_counts, parity_split_counts
from .verification import verify


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_catalog(args) -> int:
    if not 1 <= args.k <= 5:
        raise SystemExit("catalog: k must be in 1..5")
    if args.dump:
        cat = build_catalog(args.k)
        sides, n_sigs = cat.sides, len(cat)
    else:
        sides = enumerate_side_intersections(args.k)
        n_sigs = len(enumerate_signatures(args.k, sides))
    if args.format == "json":
        doc = {"schemaVersion": 1, "k": args.k, "sides": len(sides), "signatures": n_sigs}
        if args.dump:
            doc["sideIntersections"] = [s.to_json() for s in sides]
        text = json.dumps(doc, indent=1) + "\n"
    elif args.format == "csv":
        text = _csv([(args.k, len(sides), n_sigs)], ["k", "sides", "signatures"])
    else:
        text = f"sides={len(sides)} signatures={n_sigs}\n"
        if args.dump:
            text += "".join(f"{s.id} mask={s.edge_mask} loose={list(s.loose_ends)}\n" for s in sides)
    _emit(text, args.out)
    return 0


def cmd_count(args) -> int:
    if args.k not in (1, 2, 3, 4):
        raise SystemExit("count: k must be in 1..4")
    n_max = args.n_max if args.n_max is not None else 3 * args.k + 20
    if n_max < 3 * args.k:
        raise SystemExit(f"count: --n-max must be at least 3k = {3 * args.k}")
    try:
        series = (parity_split_counts if args.parity else hamiltonian_counts)(args.k, n_max)
    except MemoryError:
        print("count: out of memory; lower --n-max", file=sys.stderr)
        return 3
    if args.format == "json":
        text = series.to_json() + "\n"
    elif args.format == "csv":
        text = series.to_csv()
    else:
        text = "".join(" ".join(str(x) for x in row) + "\n" for row in series.rows())
    _emit(text, args.out)
    return 0


def cmd_oracle(args) -> int:
    if args.n is None:
        raise SystemExit("oracle: --n is required")
    if not 2 * args.k + 1 <= args.n <= 18:
        raise SystemExit("oracle: need 2k + 1 <= n <= 18")
    c = count_ham_cycles_oracle(args.n, args.k)
    if args.format == "json":
        text = json.dumps({"schemaVersion": 1, "n": args.n, "k": args.k, "count": c}) + "\n"
    elif args.format == "csv":
        text = _csv([(args.n, args.k, c)], ["n", "k", "count"])
    else:
        text = f"{c}\n"
    _emit(text, args.out)
    return 0


def cmd_mine(args) -> int:
    from .recurrence import mine

    if args.k not in (3, 4):
        raise SystemExit("mine: k must be 3 or 4")
    report = mine(Pipeline.build(args.k), golden.h_values(args.k), seed=args.seed, h_terms=args.n_max, workers=args.threads)
    if args.format == "json":
        text = report.to_json() + "\n"
    elif args.format == "csv":
        coeffs = report.h_annihilator.poly.int_coeffs()
        text = _csv(list(enumerate(coeffs)), ["degree", "coefficient"])
    else:
        lines = [f"k={args.k}", "SCC classes:"]
        for c in report.classes.classes:
            lines.append(f"  {c.label:>4} x{len(c.members):<5} {c.universal}")
        lines.append(f"SCC composition degree: {report.algorithm1_poly.degree}")
        lines.append(f"after divisor checks: {report.minimized_poly.degree}")
        lines.append(f"minimal on initial: {report.minimal.degree} (certified at n={report.minimal.check_index})")
        ha = report.h_annihilator
        lines.append(f"h annihilator degree {ha.poly.degree}, valid from n={ha.start_index}")
        lines.append("coefficients: " + ha.poly.format().strip())
        lines += [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in report.checks]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0 if all(ok for _, ok in report.checks) else 1


def cmd_verify(args) -> int:
    results, partial = verify(args.k, seed=args.seed, workers=args.threads)
    ok = all(r.passed for r in results)
    if args.format == "json":
        doc = {
            "schemaVersion": 1,
            "k": args.k,
            "partial": partial,
            "ok": ok,
            "checks": [{"name": r.name, "pass": r.passed, "detail": r.detail} for r in results],
        }
        text = json.dumps(doc, indent=1) + "\n"
    elif args.format == "csv":
        text = _csv([(r.name, "pass" if r.passed else "fail", r.detail) for r in results], ["check", "status", "detail"])
    else:
        text = "".join(r.line() + "\n" for r in results)
        if partial:
            text += "partial: only catalog counts are checked for this k\n"
        text += f"{'OK' if ok else 'FAILED'} {sum(r.passed for r in results)}/{len(results)}\n"
    _emit(text, args.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=3)
    common.add_argument("--n-max", type=int, default=None)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", default=None, help="write to a file instead of stdout")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0, help="seed for the random combinations in mine/verify")

    p = argparse.ArgumentParser(prog="petersen-census", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("catalog", parents=[common], help="side intersection and signature counts")
    c.add_argument("--dump", action="store_true", help="also list the side intersections")
    c.set_defaults(func=cmd_catalog)
    c = sub.add_parser("count", parents=[common], help="h_k(n) by transfer")
    c.add_argument("--parity", action="store_true", help="split by loose-end parity")
    c.set_defaults(func=cmd_count)
    c = sub.add_parser("oracle", parents=[common], help="brute-force count for one G(n, k)")
    c.add_argument("--n", type=int)
    c.set_defaults(func=cmd_oracle)
    c = sub.add_parser("mine", parents=[common], help="characteristic polynomials for k = 3 or 4")
    c.set_defaults(func=cmd_mine)
    c = sub.add_parser("verify", parents=[common], help="check everything against the reference data")
    c.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        raise SystemExit("--threads must be positive")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface.

Exit codes are a stable contract:
  0  success / code verified valid
  1  code exists but is invalid
  2  parameter or regime error (bad arguments, out-of-range constructions,
     oracle guard refusals)
  3  I/O or parse failure
"""

from __future__ import annotations

import argparse
import sys
import time
from math import comb

from .builder import RegimeError, build_subcode, check_subcode
from .core import (
    CodeFormatError,
    read_cwc1,
    two_coloring_audit,
    verify_code,
    write_cwc1,
)
from .golomb import RulerError
from .oracle import OracleGuardError, append_result, max_code_bruteforce
from .packing import (
    OverlapError,
    check_divisibility,
    greedy_kw_packing,
    leave_report_text,
    residual_graph,
)
from .planner import plan, plan_text


def _cmd_plan(args) -> int:
    print(plan_text(plan(args.n, args.w)))
    return 0


def _cmd_build(args) -> int:
    result = build_subcode(args.n, args.w)
    p = result.plan
    write_cwc1(
        args.out,
        result.code,
        p.w,
        2 * p.w - 2,
        comments=[f"branch {p.branch.value}", f"sub-code of {p.y + p.z} words"],
    )
    sidecar = args.sidecar or args.out + ".layout"
    with open(sidecar, "w") as fh:
        fh.write(result.layout.sidecar_text(result.leftover) + "\n")

    graph = residual_graph(p.n, result.code, extra_edges=result.leftover)
    div = check_divisibility(graph, p.w)
    sub = check_subcode(result.code, p)
    print(f"wrote {args.out} ({len(result.code)} words), layout in {sidecar}")
    print(sub.as_text())
    print(div.as_text())

    if args.with_packing:
        cliques = greedy_kw_packing(graph, p.w, mode=args.mode)
        leave = graph.edge_count() - len(cliques) * comb(p.w, 2)
        print(
            leave_report_text(
                [
                    {
                        "n": p.n,
                        "w": p.w,
                        "branch": p.branch.value,
                        "x_target": p.x,
                        "x_achieved": len(cliques),
                        "leave_edges": leave,
                    }
                ]
            )
        )
    return 0 if sub.ok and div.ok else 1


def _cmd_verify(args) -> int:
    parsed = read_cwc1(args.path)
    try:
        report = verify_code(parsed.code, seed=args.seed)
    except ValueError as exc:
        print(f"invalid: {exc}")
        return 1
    print(report.as_text())
    print(two_coloring_audit(parsed.code).as_text())
    if len(parsed.code) and report.w != parsed.w:
        print(f"invalid: words have weight {report.w}, header says {parsed.w}")
        return 1
    return 0 if report.valid else 1


def _cmd_oracle(args) -> int:
    d = args.d if args.d is not None else 2 * args.w - 2
    t0 = time.perf_counter()
    size, witness = max_code_bruteforce(args.n, d, args.w, order_seed=args.seed)
    dt = time.perf_counter() - t0
    print(f"A3 = {size}")
    if args.witness:
        write_cwc1(args.witness, witness, args.w, d, comments=["oracle witness"])
        print(f"witness in {args.witness}")
    if args.table:
        append_result(args.table, args.n, d, args.w, size, dt)
    return 0


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="terncwc",
        description="Construct, verify, and audit optimal ternary constant-weight codes.",
    )
    ap.add_argument("--seed", type=int, default=0, help="seed for sampled scans and tie shuffles")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("plan", help="print the build plan for (n, w)")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-w", type=int, required=True)
    sp.set_defaults(func=_cmd_plan)

    sb = sub.add_parser("build", help="build the sub-code and audit it")
    sb.add_argument("-n", type=int, required=True)
    sb.add_argument("-w", type=int, required=True)
    sb.add_argument("-o", "--out", default="subcode.cwc1")
    sb.add_argument("--sidecar", default=None, help="layout path (default: <out>.layout)")
    sb.add_argument("--with-packing", action="store_true", help="pack the residual graph")
    sb.add_argument("--mode", choices=["greedy", "exact"], default="greedy")
    sb.set_defaults(func=_cmd_build)

    sv = sub.add_parser("verify", help="verify a code file")
    sv.add_argument("path")
    sv.set_defaults(func=_cmd_verify)

    so = sub.add_parser("oracle", help="exact maximum code size by brute force")
    so.add_argument("-n", type=int, required=True)
    so.add_argument("-d", type=int, default=None, help="min distance (default 2w - 2)")
    so.add_argument("-w", type=int, required=True)
    so.add_argument("--witness", default=None, help="write one maximum code here")
    so.add_argument("--table", default=None, help="append a CSV result row here")
    so.set_defaults(func=_cmd_oracle)
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except CodeFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except OverlapError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    except (RegimeError, OracleGuardError, RulerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())

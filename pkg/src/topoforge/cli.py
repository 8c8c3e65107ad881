"""Command-line surface: check, puf, kernel, catalog, suite.

Exit codes: 0 success, 1 a certified violation was found, 2 input or
resource error.  Reports go to standard output as plain text, or JSON with
--json where offered.
"""

from __future__ import annotations

import argparse
import json
import sys

from .assignments import SetAssignment, classify_assignment
from .catalog import (
    Budget,
    SuiteConfig,
    enumerate_topologies,
    fingerprint,
    run_suite,
    sorted_indices,
)
from .documents import load_assignment, load_space, space_to_document
from .dspace import greedy_kernel, greedy_kernel_all_orders, kernel_search
from .errors import CertificationError, InputError, ResourceLimitError
from .puf import build_puf_space, upset_oracle

PROP_NAMES = (
    "t0",
    "t1",
    "extent",
    "lindelof",
    "exclusiveness",
    "d",
    "ad",
    "gls",
    "leftsep",
    "opens",
)


def _cmd_check(args: argparse.Namespace) -> int:
    space, _doc = load_space(args.space)
    if args.props:
        wanted = [p.strip() for p in args.props.split(",") if p.strip()]
        unknown = [p for p in wanted if p not in PROP_NAMES]
        if unknown:
            raise InputError(f"unknown properties: {', '.join(unknown)}")
    else:
        wanted = list(PROP_NAMES)
    budget = Budget(dspace_cap=args.cap, seed=args.seed)
    record = fingerprint(space, budget)
    fp = record.fingerprint
    values = {
        "t0": fp.t0,
        "t1": fp.t1,
        "extent": fp.extent,
        "lindelof": fp.lindelof_degree,
        "exclusiveness": fp.exclusiveness,
        "d": fp.is_d,
        "ad": fp.is_ad,
        "gls": fp.gls,
        "leftsep": fp.left_separated,
        "opens": fp.open_count,
    }
    if args.json:
        out = {name: values[name] for name in wanted}
        out["hash"] = record.canonical_hash
        if "d" in wanted and fp.is_d == "no":
            out["no_kernel_assignment"] = record.witnesses.get("no_kernel_assignment")
        print(json.dumps(out, sort_keys=True))
        return 0
    label = {
        "t0": "T0",
        "t1": "T1",
        "extent": "extent",
        "lindelof": "Lindelof degree",
        "exclusiveness": "exclusiveness",
        "d": "D",
        "ad": "aD",
        "gls": "GLS",
        "leftsep": "left-separated",
        "opens": "open sets",
    }
    for name in wanted:
        value = values[name]
        if isinstance(value, bool):
            value = "yes" if value else "no"
        print(f"{label[name]}: {value}")
        if name == "d" and fp.is_d == "no":
            sets = record.witnesses.get("no_kernel_assignment")
            print(f"  counterexample assignment: {sets}")
    print(f"hash: {record.canonical_hash}")
    return 0


def _cmd_puf(args: argparse.Namespace) -> int:
    if args.n > 4:
        raise InputError(f"puf construction capped at ground size 4, got {args.n}")
    puf = build_puf_space(args.n)
    if args.oracle:
        oracle = upset_oracle(args.n)
        if puf.space != oracle:
            raise CertificationError(
                "generated ultrafilter topology differs from the up-set oracle"
            )
    payload = space_to_document(puf.space, ground=args.n)
    with open(args.out, "w") as fh:
        json.dump(payload, fh)
        fh.write("\n")
    suffix = " (oracle equality asserted)" if args.oracle else ""
    print(
        f"wrote P(X) for |X| = {args.n}: {puf.space.n} points, "
        f"{len(puf.space.opens)} opens{suffix}"
    )
    return 0


def _format_point_set(mask: int) -> str:
    return "{" + ",".join(map(str, sorted_indices(mask))) + "}"


def _cmd_kernel(args: argparse.Namespace) -> int:
    space, _doc = load_space(args.space)
    kind, sets = load_assignment(args.assignment, space)
    if kind != "points" or len(sets) != space.n:
        raise InputError("kernel search needs one open set per point")
    for x in range(space.n):
        if not sets[x] >> x & 1:
            raise InputError(f"not a neighborhood assignment: point {x} not in its own set")
    assignment = SetAssignment(space, space.n, sets)
    classify_assignment(assignment)
    if args.greedy_all:
        mode = "greedy-all"
        report = greedy_kernel_all_orders(assignment)
        if report.success:
            print(f"mode: {mode}")
            print(f"order: {report.order}")
            _print_trace(report.result)
            print(f"kernel: {_format_point_set(report.result.kernel.bits)}")
        else:
            print(f"mode: {mode}")
            print(f"kernel: none ({report.orders_tried} orders tried)")
            if report.finding:
                print(f"finding: {report.finding}")
    elif args.greedy:
        mode = "greedy"
        order = tuple(range(space.n))
        result = greedy_kernel(assignment, order)
        print(f"mode: {mode}")
        print(f"order: {order}")
        _print_trace(result)
        if result.success:
            print(f"kernel: {_format_point_set(result.kernel.bits)}")
        else:
            print("kernel: none")
            print(f"failure: {result.failure}")
    else:
        mode = "brute"
        kernel = kernel_search(assignment)
        print(f"mode: {mode}")
        if kernel is None:
            print("kernel: none")
        else:
            print(f"kernel: {_format_point_set(kernel.bits)}")
    return 0


def _print_trace(result) -> None:
    for step in result.trace:
        print(
            f"  pick {step.picked}: N {_format_point_set(step.neighborhood_before)} -> "
            f"{_format_point_set(step.neighborhood_after)}, covered "
            f"{_format_point_set(step.covered_after)}"
        )


def _cmd_catalog(args: argparse.Namespace) -> int:
    mode = "unlabeled" if args.unlabeled else "labeled"
    budget = Budget(seed=args.seed)
    spaces = list(enumerate_topologies(args.n, mode))
    if args.jobs > 1:
        from multiprocessing import Pool

        with Pool(args.jobs) as pool:
            records = pool.map(_fingerprint_for_pool, [(sp, budget) for sp in spaces])
    else:
        records = [fingerprint(sp, budget) for sp in spaces]
    with open(args.out, "w") as fh:
        for record in records:
            fh.write(record.to_json())
            fh.write("\n")
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _fingerprint_for_pool(pair):
    sp, budget = pair
    return fingerprint(sp, budget)


def _cmd_suite(args: argparse.Namespace) -> int:
    cfg = SuiteConfig(max_n=args.max_n, seed=args.seed, samples=args.samples)
    report = run_suite(cfg)
    if args.json:
        payload = {
            "seed": report.seed,
            "violations": report.violations_total,
            "checks": [
                {
                    "name": e.name,
                    "instances": e.instances,
                    "violations": e.violations,
                    "seconds": round(e.seconds, 3),
                    "detail": e.detail,
                }
                for e in report.entries
            ],
        }
        print(json.dumps(payload))
    else:
        print(report.table())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topoforge",
        description="Finite-topology workbench: ultrafilter topologies, companion maps, "
        "D-space and covering-property checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="fingerprint a space document")
    p_check.add_argument("--space", required=True)
    group = p_check.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true")
    group.add_argument("--props", help="comma-separated: " + ",".join(PROP_NAMES))
    p_check.add_argument("--cap", type=int, default=1_000_000)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--json", action="store_true")
    p_check.set_defaults(func=_cmd_check)

    p_puf = sub.add_parser("puf", help="write the ultrafilter topology on P(X)")
    p_puf.add_argument("--n", type=int, required=True)
    p_puf.add_argument("--out", required=True)
    p_puf.add_argument("--oracle", action="store_true")
    p_puf.set_defaults(func=_cmd_puf)

    p_kernel = sub.add_parser("kernel", help="search a kernel for a neighborhood assignment")
    p_kernel.add_argument("--space", required=True)
    p_kernel.add_argument("--assignment", required=True)
    mode = p_kernel.add_mutually_exclusive_group()
    mode.add_argument("--greedy", action="store_true")
    mode.add_argument("--greedy-all", dest="greedy_all", action="store_true")
    mode.add_argument("--brute", action="store_true")
    p_kernel.set_defaults(func=_cmd_kernel)

    p_catalog = sub.add_parser("catalog", help="enumerate and fingerprint all topologies")
    p_catalog.add_argument("--n", type=int, required=True)
    p_catalog.add_argument("--unlabeled", action="store_true")
    p_catalog.add_argument("--out", required=True)
    p_catalog.add_argument("--jobs", type=int, default=1)
    p_catalog.add_argument("--seed", type=int, default=0)
    p_catalog.set_defaults(func=_cmd_catalog)

    p_suite = sub.add_parser("suite", help="replay the full law battery")
    p_suite.add_argument("--max-n", dest="max_n", type=int, default=3)
    p_suite.add_argument("--seed", type=int, default=0)
    p_suite.add_argument("--samples", type=int, default=200)
    p_suite.add_argument("--json", action="store_true")
    p_suite.set_defaults(func=_cmd_suite)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ResourceLimitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CertificationError as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

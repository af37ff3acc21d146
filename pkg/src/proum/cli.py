"""Command-line front end: ``proum {mine,verify,gen,bench,dump-array}``.

Exit codes: 0 success, 1 runtime failure (including a verify mismatch),
2 usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import oracle
from .experiments import PRUNING_CONFIGS
from .io import GenParams, ParseError, generate, load_database, write_generated, write_results
from .miner import MinerConfig, MiningResourceError, mine, verify
from .model import Threshold, UnknownItemError
from .uarray import build_utility_array

log = logging.getLogger("proum")

BENCH_CONFIGS = PRUNING_CONFIGS


def _threshold(text: str) -> Threshold:
    try:
        return Threshold.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _threshold_list(text: str) -> list[Threshold]:
    return [_threshold(part) for part in text.split(",") if part.strip()]


def _add_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data", required=True, type=Path, help="q-sequence dataset file")
    p.add_argument("--profits", required=True, type=Path, help="item<TAB>profit file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="proum", description="High-utility sequential pattern mining")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine high-utility sequential patterns")
    _add_inputs(p)
    p.add_argument("--min-util", required=True, type=_threshold, help="fraction like 0.25 or percent like 25%%")
    p.add_argument("--no-puo", action="store_true", help="skip single-item SWU database revision")
    p.add_argument("--no-puk", action="store_true", help="skip SEU subtree pruning")
    p.add_argument("--max-length", type=int, default=None, help="abort if a longer pattern is reached")
    p.add_argument("--parallel-roots", action="store_true", help="search root subtrees in worker processes")
    p.add_argument("--out", type=Path, help="write results here instead of stdout")
    p.add_argument("--stats", action="store_true", help="append '# key=value' counter lines")

    p = sub.add_parser("verify", help="compare the miner against the brute-force oracle")
    _add_inputs(p)
    p.add_argument("--min-util", required=True, type=_threshold)
    p.add_argument("--max-patterns", type=int, default=oracle.OracleLimits.max_patterns)
    p.add_argument("--max-length", type=int, default=oracle.OracleLimits.max_pattern_length)

    p = sub.add_parser("gen", help="write a synthetic dataset and profit table")
    p.add_argument("--out-dir", required=True, type=Path)
    p.add_argument("--sequences", required=True, type=int)
    p.add_argument("--items", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--mean-elements", type=float, default=GenParams.mean_elements)
    p.add_argument("--mean-items", type=float, default=GenParams.mean_items)
    p.add_argument("--max-elements", type=int, default=None)
    p.add_argument("--max-quantity", type=int, default=GenParams.max_quantity)
    p.add_argument("--profit-min", type=int, default=GenParams.profit_min)
    p.add_argument("--profit-max", type=int, default=GenParams.profit_max)
    p.add_argument("--item-skew", type=float, default=GenParams.item_skew)
    p.add_argument("--stem", default="synthetic", help="output file name stem")

    p = sub.add_parser("bench", help="compare pruning configurations (TSV)")
    _add_inputs(p)
    p.add_argument("--min-util-list", required=True, type=_threshold_list)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--configs", default=",".join(BENCH_CONFIGS), help="subset of full,no-puk,no-puo,none")

    p = sub.add_parser("dump-array", help="print one sequence's utility-array")
    _add_inputs(p)
    p.add_argument("--sid", required=True, type=int)
    return parser


def cmd_mine(args) -> int:
    db = load_database(args.data, args.profits)
    config = MinerConfig(
        args.min_util,
        enable_puo=not args.no_puo,
        enable_puk=not args.no_puk,
        max_pattern_length=args.max_length,
        parallel_roots=args.parallel_roots,
    )
    result = mine(db, config)
    text = write_results(result, stats=args.stats)
    if args.out:
        args.out.write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    log.info("mined %d patterns in %.3fs", len(result), result.stats.elapsed)
    return 0


def cmd_verify(args) -> int:
    db = load_database(args.data, args.profits)
    limits = oracle.OracleLimits(max_pattern_length=args.max_length, max_patterns=args.max_patterns)
    result = mine(db, MinerConfig(args.min_util))
    report = verify(result, db, args.min_util, limits=limits)
    for line in report.lines():
        print(line)
    if report.ok:
        print(f"MATCH\t{len(result)} patterns")
        return 0
    print(f"MISMATCH\tmissing={len(report.missing)} extra={len(report.extra)} misvalued={len(report.misvalued)}")
    return 1


def cmd_gen(args) -> int:
    params = GenParams(
        sequence_count=args.sequences,
        item_universe_size=args.items,
        mean_elements=args.mean_elements,
        mean_items=args.mean_items,
        max_quantity=args.max_quantity,
        profit_min=args.profit_min,
        profit_max=args.profit_max,
        seed=args.seed,
        max_elements=args.max_elements,
        item_skew=args.item_skew,
    )
    data_path, profits_path = write_generated(generate(params), args.out_dir, args.stem)
    print(data_path)
    print(profits_path)
    return 0


def cmd_bench(args) -> int:
    db = load_database(args.data, args.profits)
    names = [c.strip() for c in args.configs.split(",") if c.strip()]
    unknown = [c for c in names if c not in BENCH_CONFIGS]
    if unknown:
        raise ValueError(f"unknown bench config(s): {', '.join(unknown)}")
    repeat = max(1, args.repeat)
    print("threshold\tconfig\tnodes\tprojections\thusps\ttime_s")
    consistent = True
    for threshold in args.min_util_list:
        reference = None
        for name in names:
            config = MinerConfig(threshold, **BENCH_CONFIGS[name])
            times = []
            for _ in range(repeat):
                start = time.perf_counter()
                result = mine(db, config)
                times.append(time.perf_counter() - start)
            if reference is None:
                reference = result.husps
            elif result.husps != reference:
                consistent = False
                log.error("config %s disagrees at threshold %s", name, threshold)
            s = result.stats
            print(f"{threshold}\t{name}\t{s.nodes_visited}\t{s.projections_built}\t{len(result)}\t{sum(times) / repeat:.6f}")
    return 0 if consistent else 1


def cmd_dump_array(args) -> int:
    db = load_database(args.data, args.profits)
    s = db.by_sid(args.sid)
    sys.stdout.write(build_utility_array(s, db.profits).dump())
    return 0


COMMANDS = {
    "mine": cmd_mine,
    "verify": cmd_verify,
    "gen": cmd_gen,
    "bench": cmd_bench,
    "dump-array": cmd_dump_array,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (OSError, ParseError, UnknownItemError, KeyError, ValueError,
            MiningResourceError, oracle.OracleLimitExceeded) as exc:
        print(f"proum {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

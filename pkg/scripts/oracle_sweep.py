"""Compare every pruning config against the brute-force oracle on seeded databases."""
import argparse
import time

from proum.experiments import oracle_equivalence


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=200)
    args = parser.parse_args()
    start = time.perf_counter()
    runs, mismatches = oracle_equivalence(range(args.seeds))
    for m in mismatches:
        print(f"seed={m.seed}\tthreshold={m.threshold}\tconfig={m.config}\t"
              f"missing={len(m.missing)}\textra={len(m.extra)}\tmisvalued={len(m.misvalued)}")
    print(f"{runs} runs, {len(mismatches)} mismatches, {time.perf_counter() - start:.1f}s")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Node counts and wall time for the pruning configs on the fixed synthetic dataset."""
import argparse
import dataclasses

from proum.experiments import BENCH_PARAMS, BENCH_THRESHOLDS, PRUNING_CONFIGS, pruning_benchmark
from proum.io import generate


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--thresholds", default=",".join(BENCH_THRESHOLDS))
    parser.add_argument("--configs", default="full,no-puk", help=f"subset of {','.join(PRUNING_CONFIGS)}")
    parser.add_argument("--repeat", type=int, default=1)
    parser.add_argument("--sequences", type=int, default=BENCH_PARAMS.sequence_count)
    parser.add_argument("--seed", type=int, default=BENCH_PARAMS.seed)
    args = parser.parse_args()
    params = dataclasses.replace(BENCH_PARAMS, sequence_count=args.sequences, seed=args.seed)
    db = generate(params)
    rows = pruning_benchmark(db, args.thresholds.split(","), args.configs.split(","), args.repeat)
    print("threshold\tconfig\tnodes\tprojections\thusps\ttime_s")
    for r in rows:
        print(f"{r.threshold}\t{r.config}\t{r.nodes}\t{r.projections}\t{r.husps}\t{r.seconds:.4f}")


if __name__ == "__main__":
    main()

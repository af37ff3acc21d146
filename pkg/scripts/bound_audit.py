"""Count bound-relation violations over every contained pattern of seeded databases."""
import argparse

from proum.experiments import BOUND_KINDS, BoundAudit, audit_bounds, sweep_database


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=200)
    args = parser.parse_args()
    audit = BoundAudit()
    for seed in range(args.seeds):
        audit.merge(audit_bounds(sweep_database(seed), tag=seed))
    print(f"{audit.patterns} patterns, {audit.pairs} parent/child pairs")
    print("relation\tviolations\tfirst example")
    for kind in BOUND_KINDS:
        print(f"{kind}\t{audit.violations[kind]}\t{audit.examples.get(kind, '-')}")


if __name__ == "__main__":
    main()

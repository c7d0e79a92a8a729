#!/usr/bin/env python3
"""Sweep the factor catalog: group all multisets of up to --max-factors
factors by their K-grid invariant, cross-check against canonical multiset
equality, and run the recovery round trip.

Prints a summary plus any near-collisions (distinct classes whose invariants
share all permutation-invariant data and are only separated by the full
witness search).
"""

import argparse
import time

from kgrid.cartan import canonicalize_spec
from kgrid.catalog import catalog_multisets
from kgrid.invariant import (
    _quick_key,
    classify,
    k_grid_invariant,
    recover_factors,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-factors", type=int, default=3)
    args = parser.parse_args()

    start = time.perf_counter()
    specs = list(catalog_multisets(args.max_factors))
    groups: dict = {}
    for s in specs:
        groups.setdefault(canonicalize_spec(s), []).append(s)

    mismatches = 0
    for canon, members in groups.items():
        for s in members:
            if classify(s, canon).status != "ISOMORPHIC":
                mismatches += 1
                print(f"MISMATCH (should be isomorphic): {s} vs {canon}")

    by_key: dict = {}
    for canon in groups:
        by_key.setdefault(_quick_key(k_grid_invariant(canon)), []).append(canon)
    near_collisions = []
    for bucket in by_key.values():
        for i in range(len(bucket)):
            for j in range(i + 1, len(bucket)):
                verdict = classify(bucket[i], bucket[j])
                if verdict.status != "NOT_ISOMORPHIC":
                    mismatches += 1
                    print(f"MISMATCH (should differ): {bucket[i]} vs {bucket[j]}")
                else:
                    near_collisions.append((bucket[i], bucket[j]))

    recover_failures = 0
    for canon in groups:
        if recover_factors(k_grid_invariant(canon)) != canon:
            recover_failures += 1
            print(f"RECOVERY FAILURE: {canon}")

    elapsed = time.perf_counter() - start
    print(f"{len(specs)} multisets of <= {args.max_factors} factors, "
          f"{len(groups)} isomorphism classes ({elapsed:.1f}s)")
    print(f"classification mismatches: {mismatches}")
    print(f"recovery failures: {recover_failures}")
    print(f"near-collisions separated by the witness search: "
          f"{len(near_collisions)}")
    for a, b in near_collisions:
        print(f"  {a}  |  {b}")
    return 0 if mismatches == 0 and recover_failures == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())

"""Run the finite-field and quaternion oracles at desk scale and print
a short report.

Usage: python scripts/oracle_report.py [q]
"""

import sys

from steinberg_distinction.cosets import CaseTag, Partition, enumerate_coset_matrices
from steinberg_distinction.oracles import (
    FieldSpec,
    enumerate_flags,
    flag_profile,
    quaternion_model_check,
    reduce_to_representative,
)


def main() -> int:
    q = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    spec = FieldSpec(q)
    field = spec.extension()
    ok = True
    for n, parts in [(2, (1, 1)), (3, (1, 1, 1)), (3, (2, 1)), (3, (1, 2))]:
        partition = Partition(parts)
        flags = enumerate_flags(n, q, partition)
        hist: dict[tuple, int] = {}
        for flag in flags:
            key = flag_profile(flag, spec).flat()
            hist[key] = hist.get(key, 0) + 1
        expected = {s.flat() for s in enumerate_coset_matrices(partition, CaseTag.ODD)}
        match = set(hist) == expected
        ok = ok and match
        print(f"n={n} partition={parts}: {len(flags)} flags, {len(hist)} orbits, profiles match: {match}")
        for key, size in sorted(hist.items()):
            print(f"    {list(key)}: {size}")
        sample = flags[:: max(1, len(flags) // 5)]
        for flag in sample:
            h = reduce_to_representative(flag, spec)
            if not all(field.in_base(x) for row in h for x in row):
                print("    reduction produced a non-rational matrix!")
                ok = False
    for a, b in [(-1, -1), (-1, 2), (-1, 3), (2, 3), (-2, -5)]:
        report = quaternion_model_check(a, b)
        ok = ok and report.ok
        print(f"quaternion ({a}, {b}): {'pass' if report.ok else 'FAIL'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

"""Sweep the decision engine over a grid of (m, d) and print the
verdict table next to the parity formula.

Usage: python scripts/sweep_verdicts.py [max_m] [max_d]
"""

import sys

from steinberg_distinction import (
    CaseTag,
    ChiToken,
    exponent_parity_formula,
    steinberg_decision,
)


def main() -> int:
    max_m = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    max_d = int(sys.argv[2]) if len(sys.argv) > 2 else 4
    print(f"{'case':<5} {'m':>2} {'d':>2} {'chi':<5} {'status':<18} formula")
    failures = 0
    for m in range(1, max_m + 1):
        for d in range(1, max_d + 1):
            case = CaseTag.EVEN if d % 2 == 0 else CaseTag.ODD
            expected = exponent_parity_formula(m, d)
            for chi in ChiToken:
                verdict = steinberg_decision(case, m, d, chi)
                should = "DISTINGUISHED" if chi is expected else "NOT_DISTINGUISHED"
                mark = "" if verdict.status.value == should else "  <-- MISMATCH"
                failures += bool(mark)
                print(
                    f"{case.value:<5} {m:>2} {d:>2} {chi.value:<5} "
                    f"{verdict.status.value:<18} {expected.value}{mark}"
                )
    print("all verdicts match the parity formula" if not failures else f"{failures} mismatches")
    return 0 if not failures else 1


if __name__ == "__main__":
    sys.exit(main())

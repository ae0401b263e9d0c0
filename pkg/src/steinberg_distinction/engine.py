"""Distinction decision procedure for twisted Steinberg representations.

The engine runs the combinatorial proof skeleton: the open orbit on the
minimal partition must support the character, and no next-to-minimal
parabolic may support it through the coarsening of the open orbit.  A
supporting next-to-minimal orbit other than that coarsening is outside
the reach of the combinatorics and is surfaced as INCONCLUSIVE rather
than guessed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .characters import ChiToken, SupportReport, minimal_partition, orbit_supports
from .cosets import (
    CaseTag,
    CosetMatrix,
    InvalidInputError,
    Partition,
    anti_diagonal_matrix,
    coarsen,
    enumerate_coset_matrices,
)

__all__ = [
    "VerdictStatus",
    "DistinctionVerdict",
    "steinberg_decision",
    "exponent_parity_formula",
    "cross_check",
]

log = logging.getLogger(__name__)


class VerdictStatus(Enum):
    DISTINGUISHED = "DISTINGUISHED"
    NOT_DISTINGUISHED = "NOT_DISTINGUISHED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class DistinctionVerdict:
    case: CaseTag
    m: int
    d: int
    chi: ChiToken
    status: VerdictStatus
    multiplicity: int
    trace: tuple[tuple[Partition, CosetMatrix, SupportReport], ...]

    def __post_init__(self) -> None:
        if self.status is VerdictStatus.DISTINGUISHED and self.multiplicity != 1:
            raise InvalidInputError("distinguished verdicts have multiplicity 1")
        if self.status is VerdictStatus.NOT_DISTINGUISHED and self.multiplicity != 0:
            raise InvalidInputError("negative verdicts have multiplicity 0")

    def to_json(self) -> dict:
        return {
            "case": self.case.value,
            "m": self.m,
            "d": self.d,
            "chi": self.chi.value,
            "status": self.status.value,
            "multiplicity": self.multiplicity,
            "trace": [
                {"partition": list(p.parts), "report": rep.to_json()}
                for p, _, rep in self.trace
            ],
        }


def _validate(case: CaseTag, m: int, d: int) -> None:
    if m < 1 or d < 1:
        raise InvalidInputError("m and d must be positive")
    if case is CaseTag.EVEN and d % 2:
        raise InvalidInputError("even case requires even d")
    if case is CaseTag.ODD and d % 2 == 0:
        raise InvalidInputError("odd case requires odd d")


def steinberg_decision(
    case: CaseTag, m: int, d: int, chi: ChiToken, kappa: Fraction = Fraction(1)
) -> DistinctionVerdict:
    """Decide distinction of the twisted Steinberg representation.

    Steps: (1) the anti-diagonal orbit on the minimal partition must
    support the character, else NOT_DISTINGUISHED; (2) across every
    next-to-minimal partition, a supporting coarsening of the open orbit
    kills distinction (the invariant form restricts non-trivially to the
    corresponding induced space), while any other supporting orbit is
    INCONCLUSIVE; (3) otherwise DISTINGUISHED with multiplicity one.
    """
    _validate(case, m, d)
    n = 2 * m if case is CaseTag.EVEN else m
    minimal = minimal_partition(case, m)
    s0 = anti_diagonal_matrix(minimal, case)
    trace: list[tuple[Partition, CosetMatrix, SupportReport]] = []
    open_report = orbit_supports(s0, chi, kappa)
    trace.append((minimal, s0, open_report))
    if not open_report.feasible:
        return DistinctionVerdict(
            case, m, d, chi, VerdictStatus.NOT_DISTINGUISHED, 0, tuple(trace)
        )

    killed = False
    stray_support = False
    for k in range(1, n):
        coarse_open = coarsen(s0, k)
        partition = coarse_open.partition
        for s in enumerate_coset_matrices(partition, case):
            report = orbit_supports(s, chi, kappa)
            decisive = s == coarse_open or report.feasible
            if decisive:
                trace.append((partition, s, report))
            if not report.feasible:
                continue
            if s == coarse_open:
                killed = True
            else:
                stray_support = True
    if killed:
        return DistinctionVerdict(
            case, m, d, chi, VerdictStatus.NOT_DISTINGUISHED, 0, tuple(trace)
        )
    if stray_support:
        return DistinctionVerdict(
            case, m, d, chi, VerdictStatus.INCONCLUSIVE, 0, tuple(trace)
        )
    return DistinctionVerdict(
        case, m, d, chi, VerdictStatus.DISTINGUISHED, 1, tuple(trace)
    )


def exponent_parity_formula(m: int, d: int) -> ChiToken:
    """Closed-form answer: the quadratic token iff m d - 1 is odd."""
    if m < 1 or d < 1:
        raise InvalidInputError("m and d must be positive")
    return ChiToken.ETA if (m * d - 1) % 2 else ChiToken.TRIV


def cross_check(case: CaseTag, m: int, d: int) -> bool:
    """Engine verdicts agree with the closed-form parity for both tokens."""
    _validate(case, m, d)
    expected = exponent_parity_formula(m, d)
    ok = True
    for chi in ChiToken:
        verdict = steinberg_decision(case, m, d, chi)
        if verdict.status is VerdictStatus.INCONCLUSIVE:
            log.warning(
                "cross_check: INCONCLUSIVE verdict for case=%s m=%d d=%d chi=%s",
                case.value, m, d, chi.value,
            )
            ok = False
        elif chi is expected:
            ok = ok and verdict.status is VerdictStatus.DISTINGUISHED
        else:
            ok = ok and verdict.status is VerdictStatus.NOT_DISTINGUISHED
    return ok

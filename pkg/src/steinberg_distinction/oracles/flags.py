"""Finite-field flag enumeration and Galois-twist orbit invariants.

Desk-scale oracle for the odd (split) case: flags in F_{q^2}^n are
enumerated through canonical row-reduced representatives, their
invariant profile under the coordinate Frobenius twist is the coset
matrix of their orbit, and the constructive reduction maps any flag to
the canonical representative of its profile by a base-field matrix.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from typing import Iterator

from ..cosets import (
    CaseTag,
    CosetMatrix,
    InvalidInputError,
    Partition,
    build_us_odd,
    fine_layout,
)
from .finite_field import FieldSpec, QuadraticExtension, Vec

__all__ = [
    "Flag",
    "FlagProfile",
    "BudgetExceededError",
    "gaussian_binomial",
    "count_flags",
    "enumerate_flags",
    "flag_profile",
    "representative_flag",
    "reduce_to_representative",
    "FlagCache",
]

FlagProfile = CosetMatrix

CACHE_VERSION = 1
DEFAULT_BUDGET = 10_000


class BudgetExceededError(RuntimeError):
    """Enumeration refused; carries the size estimate."""

    def __init__(self, estimate: int, budget: int):
        super().__init__(f"flag count {estimate} exceeds budget {budget}")
        self.estimate = estimate
        self.budget = budget


@dataclass(frozen=True)
class Flag:
    """Nested subspaces given by row-reduced bases."""

    partition: Partition
    bases: tuple[tuple[Vec, ...], ...]

    def __post_init__(self) -> None:
        dims = [len(b) for b in self.bases]
        prefix = list(itertools.accumulate(self.partition.parts))
        if dims != prefix:
            raise InvalidInputError("basis dimensions must match partition prefixes")


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_flags(n: int, partition: Partition, q2: int) -> int:
    total = 1
    remaining = n
    for part in partition.parts:
        total *= gaussian_binomial(remaining, part, q2)
        remaining -= part
    return total


def _enumerate_rref(field: QuadraticExtension, n: int, k: int) -> Iterator[tuple[Vec, ...]]:
    """All reduced row echelon bases of k-dimensional subspaces of F^n."""
    elements = field.elements()
    for pivots in itertools.combinations(range(n), k):
        free_cells = [
            (r, c)
            for r in range(k)
            for c in range(pivots[r] + 1, n)
            if c not in pivots
        ]
        for values in itertools.product(elements, repeat=len(free_cells)):
            rows = [[field.zero] * n for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = field.one
            for (r, c), v in zip(free_cells, values):
                rows[r][c] = v
            yield tuple(tuple(row) for row in rows)


def enumerate_flags(
    n: int,
    q: int,
    partition: Partition,
    budget: int = DEFAULT_BUDGET,
) -> list[Flag]:
    """Every flag of the given shape exactly once.

    Refuses with the count estimate when the flag variety exceeds the
    budget.
    """
    if partition.total != n:
        raise InvalidInputError("partition must sum to n")
    spec = FieldSpec(q)
    field = spec.extension()
    q2 = q * q
    estimate = count_flags(n, partition, q2)
    if estimate > budget:
        raise BudgetExceededError(estimate, budget)
    prefix = list(itertools.accumulate(partition.parts))
    by_dim = {
        dim: list(_enumerate_rref(field, n, dim)) for dim in sorted(set(prefix))
    }

    def contains(big: tuple[Vec, ...], small: tuple[Vec, ...]) -> bool:
        return all(field.in_span(v, big) for v in small)

    chains: list[tuple[tuple[Vec, ...], ...]] = [()]
    for dim in prefix:
        extended = []
        for chain in chains:
            for cand in by_dim[dim]:
                if not chain or contains(cand, chain[-1]):
                    extended.append(chain + (cand,))
        chains = extended
    flags = [Flag(partition, chain) for chain in chains]
    if len(flags) != estimate:
        raise InvalidInputError(
            f"enumeration produced {len(flags)} flags, expected {estimate}"
        )
    return flags


def flag_profile(flag: Flag, spec: FieldSpec) -> FlagProfile:
    """Coset matrix of the flag's orbit under the base-field group.

    Entry (i, j) counts the dimension jumps of the intersections with
    the Frobenius image of the flag, by inclusion-exclusion on the
    corner dimension table.
    """
    field = spec.extension()
    t = len(flag.partition)
    bases = ((),) + flag.bases
    theta = [tuple(field.vec_frob(v) for v in b) for b in bases]
    r = [[0] * (t + 1) for _ in range(t + 1)]
    for i in range(1, t + 1):
        for j in range(1, t + 1):
            r[i][j] = len(field.intersect(bases[i], theta[j]))
    entries = tuple(
        tuple(
            r[i][j] - r[i - 1][j] - r[i][j - 1] + r[i - 1][j - 1]
            for j in range(1, t + 1)
        )
        for i in range(1, t + 1)
    )
    return CosetMatrix(CaseTag.ODD, flag.partition, entries)


def _us_matrix(s: CosetMatrix, field: QuadraticExtension) -> list[Vec]:
    sym = build_us_odd(s)
    return [
        tuple(row)
        for row in sym.substitute(
            field.zero, field.one, field.lam, field.neg(field.lam)
        )
    ]


def representative_flag(s: CosetMatrix, spec: FieldSpec) -> Flag:
    """Canonical flag with the given profile, from the symbolic
    representative instantiated at the field's square root of a
    nonsquare."""
    if s.case is not CaseTag.ODD:
        raise InvalidInputError("representative flags exist in the odd case only")
    field = spec.extension()
    u_inv = field.matrix_inv(_us_matrix(s, field))
    n = s.n
    cols = [tuple(u_inv[r][c] for r in range(n)) for c in range(n)]
    bases = []
    prefix = 0
    for part in s.partition.parts:
        prefix += part
        bases.append(field.rref(cols[:prefix]))
    return Flag(s.partition, tuple(bases))


def _complements(flag: Flag, field: QuadraticExtension) -> dict[tuple[int, int], tuple[Vec, ...]]:
    """The graded pieces S_{i,j} of the twist decomposition.

    For i < j any complement works and its Frobenius image is used at
    (j, i); the diagonal pieces are chosen Frobenius-stable by working
    inside the fixed points.
    """
    t = len(flag.partition)
    bases = ((),) + flag.bases
    theta = [tuple(field.vec_frob(v) for v in b) for b in bases]
    out: dict[tuple[int, int], tuple[Vec, ...]] = {}
    for i in range(1, t + 1):
        for j in range(i, t + 1):
            u = field.intersect(bases[i], theta[j])
            w = field.sum_spaces(
                field.intersect(bases[i], theta[j - 1]),
                field.intersect(bases[i - 1], theta[j]),
            )
            if i == j:
                u_fixed = field.fixed_subspace(u) if u else ()
                w_fixed = field.fixed_subspace(w) if w else ()
                out[(i, i)] = field.extend_to_complement(w_fixed, u_fixed)
            else:
                comp = field.extend_to_complement(w, u)
                out[(i, j)] = comp
                out[(j, i)] = tuple(field.vec_frob(v) for v in comp)
    return out


def reduce_to_representative(flag: Flag, spec: FieldSpec) -> list[Vec]:
    """Base-field matrix carrying the flag onto its canonical
    representative.

    Sends each graded piece of the flag onto the matching piece of the
    representative; off-diagonal partners are mapped by the Frobenius
    transport of each other, so the assembled matrix commutes with the
    twist and therefore has base-field entries.
    """
    field = spec.extension()
    profile = flag_profile(flag, spec)
    rep = representative_flag(profile, spec)
    src = _complements(flag, field)
    dst = _complements(rep, field)
    t = len(flag.partition)
    order = [(i, j) for i in range(1, t + 1) for j in range(1, t + 1)]
    src_vecs: list[Vec] = []
    dst_vecs: list[Vec] = []
    for key in order:
        a, b = src.get(key, ()), dst.get(key, ())
        if len(a) != len(b):
            raise InvalidInputError("graded pieces of flag and representative differ")
        src_vecs.extend(a)
        dst_vecs.extend(b)
    n = flag.partition.total
    if len(src_vecs) != n:
        raise InvalidInputError("graded pieces do not decompose the space")
    # columns are the basis vectors; h B = B'
    b_mat = [tuple(src_vecs[c][r] for c in range(n)) for r in range(n)]
    b2_mat = [tuple(dst_vecs[c][r] for c in range(n)) for r in range(n)]
    h = field.matrix_mul(b2_mat, field.matrix_inv(b_mat))
    return h


class FlagCache:
    """On-disk cache of flag enumerations keyed by (n, q, partition)."""

    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, n: int, q: int, partition: Partition) -> str:
        key = f"flags_v{CACHE_VERSION}_n{n}_q{q}_" + "-".join(
            str(p) for p in partition.parts
        )
        return os.path.join(self.directory, key + ".json")

    def load(self, n: int, q: int, partition: Partition) -> list[Flag] | None:
        path = self._path(n, q, partition)
        if not os.path.exists(path):
            return None
        with open(path) as fh:
            data = json.load(fh)
        if data.get("version") != CACHE_VERSION:
            return None
        return [
            Flag(
                partition,
                tuple(
                    tuple(tuple(tuple(x) for x in row) for row in basis)
                    for basis in chain
                ),
            )
            for chain in data["flags"]
        ]

    def store(self, n: int, q: int, partition: Partition, flags: list[Flag]) -> None:
        payload = {
            "version": CACHE_VERSION,
            "flags": [
                [[[list(x) for x in row] for row in basis] for basis in flag.bases]
                for flag in flags
            ],
        }
        with open(self._path(n, q, partition), "w") as fh:
            json.dump(payload, fh)

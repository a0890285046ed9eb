"""ACM reduced grid schemes.

A reduced grid-supported scheme is ACM exactly when independent permutations
of its rows and columns turn the incidence into a left-justified staircase
(a Young diagram). Its first difference is then the 0/1 indicator of that
diagram, and adding a line to it needs no extra hypothesis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bigraded import DeltaMatrix, Direction
from .engine import LineAdditionSpec, Mode, add_partial_col, add_partial_row


def conjugate(parts) -> tuple[int, ...]:
    """Conjugate partition: ``out[j] = #{i : parts[i] > j}``."""
    parts = list(parts)
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > j) for j in range(max(parts)))


@dataclass(frozen=True)
class StaircaseProfile:
    """Points per (1,0)-line ``p_0 >= ... >= p_a``; ``q`` is its conjugate."""

    p: tuple

    def __post_init__(self):
        p = tuple(int(v) for v in self.p)
        object.__setattr__(self, "p", p)
        if not p or any(v < 1 for v in p):
            raise ValueError(f"profile parts must be positive, got {p}")
        if any(p[k] < p[k + 1] for k in range(len(p) - 1)):
            raise ValueError(f"profile must be non-increasing, got {p}")

    @classmethod
    def from_cols(cls, q) -> "StaircaseProfile":
        q = tuple(int(v) for v in q)
        if any(q[k] < q[k + 1] for k in range(len(q) - 1)):
            raise ValueError(f"column profile must be non-increasing, got {q}")
        return cls(conjugate(q))

    @property
    def q(self) -> tuple:
        return conjugate(self.p)

    @property
    def degree(self) -> int:
        return sum(self.p)

    def incidence(self) -> frozenset:
        return frozenset((i, j) for i, pi in enumerate(self.p) for j in range(pi))

    def conjugated(self) -> "StaircaseProfile":
        return StaircaseProfile(self.q)


def delta_acm(profile: StaircaseProfile) -> DeltaMatrix:
    """Indicator of ``i <= q_j - 1`` (equivalently ``j <= p_i - 1``)."""
    q = profile.q
    out = np.zeros((len(profile.p), len(q)), np.int64)
    for j, qj in enumerate(q):
        out[:qj, j] = 1
    return DeltaMatrix(out)


@dataclass(frozen=True)
class AcmVerdict:
    acm: bool
    row_order: tuple  # original row indices, most points first
    col_order: tuple
    profile: StaircaseProfile | None = None
    counterwitness: tuple | None = None  # (row, col) in original indices

    def __bool__(self):
        return self.acm


def is_acm(incidence, n_rows: int | None = None, n_cols: int | None = None) -> AcmVerdict:
    """Staircase test after sorting rows and columns by point count.

    Lines with equal counts in a staircase have identical supports, so the
    stable sort order among ties never changes the answer.
    """
    incidence = frozenset(incidence)
    if n_rows is None:
        n_rows = 1 + max(r for r, _ in incidence)
    if n_cols is None:
        n_cols = 1 + max(c for _, c in incidence)
    rc = [0] * n_rows
    cc = [0] * n_cols
    for r, c in incidence:
        rc[r] += 1
        cc[c] += 1
    if min(rc) == 0 or min(cc) == 0:
        raise ValueError("every grid line must carry a point")
    rows = tuple(sorted(range(n_rows), key=lambda k: -rc[k]))
    cols = tuple(sorted(range(n_cols), key=lambda k: -cc[k]))
    for i, r in enumerate(rows):
        for j, c in enumerate(cols):
            if ((r, c) in incidence) != (j < rc[r]):
                return AcmVerdict(False, rows, cols, counterwitness=(r, c))
    return AcmVerdict(True, rows, cols, StaircaseProfile(tuple(rc[r] for r in rows)))


def acm_add_partial_row(d: DeltaMatrix, spec: LineAdditionSpec) -> DeltaMatrix:
    """Row addition to an ACM scheme; valid with no hypothesis check.

    The caller vouches that ``d`` belongs to an ACM scheme.
    """
    result, _, _ = add_partial_row(d, spec, Mode.PREDICT)
    return result


def acm_add_partial_col(d: DeltaMatrix, spec: LineAdditionSpec) -> DeltaMatrix:
    result, _, _ = add_partial_col(d, spec, Mode.PREDICT)
    return result


def acm_add_line(d: DeltaMatrix, spec: LineAdditionSpec) -> DeltaMatrix:
    if spec.direction is Direction.ROW:
        return acm_add_partial_row(d, spec)
    return acm_add_partial_col(d, spec)

"""Coordinate-free update of a first difference when a line of points is added.

The engine only sees the first difference ``d`` of ``X`` and, for every
existing line the new line misses, the number of points of ``X`` on it. The
new line ``R`` (a (1,0)-line disjoint from ``X``) meets columns ``0..n``
except the excluded ones ``i_1..i_r``, which carry ``q_1 <= ... <= q_r``
points. With ``T = {(q_k, n-k+1)}`` the prediction is::

    result[0, j] = 1                     for j <= n
    result[i, j] = d[i-1, j] - [(i,j) in T]   for i >= 1

It is guaranteed only under the vanishing conditions checked by
:func:`hypothesis_holds`. The column case is the transpose of the row case.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .bigraded import DeltaMatrix, Direction


class IndexTooSmall(ValueError):
    pass


class HypothesisNotMet(Exception):
    def __init__(self, verdict: "HypothesisVerdict"):
        self.verdict = verdict
        super().__init__(verdict.describe())


class Mode(enum.Enum):
    STRICT = "strict"
    PREDICT = "predict"


@dataclass(frozen=True)
class LineAdditionSpec:
    """One line addition.

    ``excluded`` lists ``(line index, point count)`` for the existing lines the
    new line misses, sorted by count and then by index. ``n`` is the index of
    the last line met (``n >= b`` for rows, ``n >= a`` for columns).
    """

    direction: Direction
    n: int
    excluded: tuple = ()

    def __post_init__(self):
        exc = tuple(sorted(((int(i), int(q)) for i, q in self.excluded), key=lambda e: (e[1], e[0])))
        object.__setattr__(self, "excluded", exc)
        idx = [i for i, _ in exc]
        if len(set(idx)) != len(idx):
            raise ValueError(f"excluded line indices repeat: {idx}")
        if any(q < 1 for _, q in exc):
            raise ValueError("every excluded line must carry at least one point")
        if any(i < 0 or i > self.n for i in idx):
            raise ValueError(f"excluded indices {idx} outside 0..{self.n}")

    @classmethod
    def from_counts(cls, direction: Direction, n: int, line_counts, hit) -> "LineAdditionSpec":
        """Derive the exclusions from the point counts of the existing lines.

        ``line_counts[k]`` is the number of points on existing line ``k`` of the
        crossing ruling; ``hit`` are the indices in ``0..n`` the new line meets.
        Every index past the existing lines must be hit.
        """
        hit = set(int(h) for h in hit)
        existing = len(line_counts)
        if n < existing - 1:
            raise IndexTooSmall(f"n={n} is below the last existing index {existing - 1}")
        bad = sorted(h for h in hit if not 0 <= h <= n)
        if bad:
            raise ValueError(f"hit indices {bad} outside 0..{n}")
        missing = sorted(set(range(existing, n + 1)) - hit)
        if missing:
            raise ValueError(f"new lines {missing} must be hit by the added line")
        excluded = [(k, line_counts[k]) for k in range(existing) if k not in hit]
        return cls(direction, n, tuple(excluded))

    @property
    def r(self) -> int:
        return len(self.excluded)

    @property
    def counts(self) -> list[int]:
        return [q for _, q in self.excluded]

    def exception_set(self) -> "ExceptionSet":
        qs = self.counts
        if self.direction is Direction.ROW:
            pos = tuple((q, self.n - k) for k, q in enumerate(qs))
        else:
            pos = tuple((self.n - k, q) for k, q in enumerate(qs))
        assert len(set(pos)) == len(pos), "exception positions must be distinct"
        return ExceptionSet(pos)

    def transposed(self) -> "LineAdditionSpec":
        other = Direction.COL if self.direction is Direction.ROW else Direction.ROW
        return LineAdditionSpec(other, self.n, self.excluded)

    def __str__(self):
        word = "add-row" if self.direction is Direction.ROW else "add-col"
        exc = ",".join(f"{i}:{q}" for i, q in self.excluded)
        return f"{word} n={self.n} excluded=[{exc}]"


@dataclass(frozen=True)
class ExceptionSet:
    """Positions where the shifted first difference drops by one."""

    positions: tuple = ()

    def __contains__(self, ij):
        return tuple(ij) in self.positions

    def __iter__(self):
        return iter(self.positions)

    def __len__(self):
        return len(self.positions)


class Verdict(enum.Enum):
    FULL_LINE = "full-line"
    COND1 = "cond1"
    COND2 = "cond2"
    COND3 = "cond3"
    NOT_SATISFIED = "not-satisfied"


@dataclass(frozen=True)
class HypothesisVerdict:
    kind: Verdict
    witness: tuple | None = None  # (k, index along the line, value, (i, j)) of the first nonzero entry

    @property
    def ok(self) -> bool:
        return self.kind is not Verdict.NOT_SATISFIED

    def describe(self) -> str:
        if self.ok:
            return f"hypothesis holds ({self.kind.value})"
        k, i, value, pos = self.witness
        return f"hypothesis not met: k={k}, entry {pos} = {value} != 0"


def _check_bounds(d: DeltaMatrix, spec: LineAdditionSpec):
    last = d.b if spec.direction is Direction.ROW else d.a
    if spec.n < last:
        raise IndexTooSmall(f"n={spec.n} is below the support bound {last}")
    bad = [i for i, _ in spec.excluded if i > last]
    if bad:
        raise ValueError(f"excluded indices {bad} are not existing lines (0..{last})")
    cap = d.a + 1 if spec.direction is Direction.ROW else d.b + 1
    if any(q > cap for q in spec.counts):
        raise ValueError(f"point counts {spec.counts} exceed the {cap} crossing lines")


def hypothesis_holds(d: DeltaMatrix, spec: LineAdditionSpec) -> HypothesisVerdict:
    """Decide which sufficient condition (if any) covers this addition.

    Rows: with ``r >= 2`` it requires ``d[i, n-k+1] == 0`` for ``i >= q_k``,
    for ``k < r`` when ``q_{r-1} < q_r`` and for every ``k <= r`` when they tie.
    """
    if spec.direction is Direction.COL:
        v = hypothesis_holds(d.T, spec.transposed())
        if v.ok:
            return v
        k, i, value, (r, c) = v.witness
        return HypothesisVerdict(v.kind, (k, i, value, (c, r)))
    _check_bounds(d, spec)
    r = spec.r
    if r == 0:
        return HypothesisVerdict(Verdict.FULL_LINE)
    if r == 1:
        return HypothesisVerdict(Verdict.COND1)
    qs = spec.counts
    tied = qs[-2] == qs[-1]
    last_k = r if tied else r - 1
    for k in range(1, last_k + 1):
        col = spec.n - k + 1
        for i in range(qs[k - 1], d.a + 1):
            value = d[i, col]
            if value != 0:
                return HypothesisVerdict(Verdict.NOT_SATISFIED, (k, i, value, (i, col)))
    return HypothesisVerdict(Verdict.COND3 if tied else Verdict.COND2)


def sufficient_condition(d: DeltaMatrix, spec: LineAdditionSpec) -> bool:
    """Numeric shortcut: enough slack in ``n`` makes the vanishing automatic."""
    if spec.r <= 1:
        return True
    qs = spec.counts
    last = d.b if spec.direction is Direction.ROW else d.a
    if qs[-2] < qs[-1]:
        return spec.n >= last + spec.r - 1
    return spec.n >= last + spec.r


def add_full_row(d: DeltaMatrix, n: int) -> DeltaMatrix:
    """A new (1,0)-line meeting every column ``0..n``."""
    if n < d.b:
        raise IndexTooSmall(f"n={n} is below b={d.b}")
    out = np.zeros((d.a + 2, n + 1), np.int64)
    out[0, :] = 1
    out[1:, :] = d.padded(d.a + 1, n + 1)
    return DeltaMatrix(out)


def add_full_col(d: DeltaMatrix, m: int) -> DeltaMatrix:
    return add_full_row(d.T, m).T


def _shift_with_exceptions(d: DeltaMatrix, spec: LineAdditionSpec, t: ExceptionSet) -> DeltaMatrix:
    n = spec.n
    out = np.zeros((d.a + 2, n + 1), np.int64)
    out[0, :] = 1
    out[1:, :] = d.padded(d.a + 1, n + 1)
    for i, j in t:
        out[i, j] -= 1
    return DeltaMatrix(out)


def add_partial_row(d: DeltaMatrix, spec: LineAdditionSpec, mode: Mode = Mode.STRICT):
    """Apply a row addition; returns ``(result, T, verdict)``.

    STRICT raises :class:`HypothesisNotMet` when no condition holds; PREDICT
    always returns the formula, and the caller must treat it as unverified
    unless ``verdict.ok``. When every column is excluded the new line is empty
    and ``d`` comes back unchanged.
    """
    if spec.direction is not Direction.ROW:
        raise ValueError("add_partial_row needs a row spec")
    verdict = hypothesis_holds(d, spec)
    t = spec.exception_set()
    if spec.r == spec.n + 1:
        return d, t, verdict
    if mode is Mode.STRICT and not verdict.ok:
        raise HypothesisNotMet(verdict)
    return _shift_with_exceptions(d, spec, t), t, verdict


def add_partial_col(d: DeltaMatrix, spec: LineAdditionSpec, mode: Mode = Mode.STRICT):
    if spec.direction is not Direction.COL:
        raise ValueError("add_partial_col needs a column spec")
    verdict = hypothesis_holds(d, spec)
    if spec.r == spec.n + 1:
        return d, spec.exception_set(), verdict
    if mode is Mode.STRICT and not verdict.ok:
        raise HypothesisNotMet(verdict)
    row_result, _, _ = add_partial_row(d.T, spec.transposed(), Mode.PREDICT)
    return row_result.T, spec.exception_set(), verdict


def add_line(d: DeltaMatrix, spec: LineAdditionSpec, mode: Mode = Mode.STRICT):
    if spec.direction is Direction.ROW:
        return add_partial_row(d, spec, mode)
    return add_partial_col(d, spec, mode)

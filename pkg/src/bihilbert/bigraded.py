"""Hilbert matrices of 0-dimensional schemes in P^1 x P^1 and their differences.

The canonical object is :class:`DeltaMatrix`, the first difference
``c[i, j] = m[i, j] - m[i-1, j] - m[i, j-1] + m[i-1, j-1]`` of the Hilbert
matrix, stored trimmed to its support rectangle ``[0..a] x [0..b]``. Row index
``i`` is the first bidegree component. The Hilbert matrix itself is only a
query view (:class:`HilbertMatrix`).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np


class StabilizationNotReached(ValueError):
    """A raw Hilbert grid is too small: its last row/column is still growing."""


class NegativeCount(ValueError):
    """A line-count derived from a first difference came out negative."""


class MatrixParseError(ValueError):
    pass


class Direction(enum.Enum):
    ROW = "row"
    COL = "col"


def _as_int_matrix(values) -> np.ndarray:
    arr = np.array(values, dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d integer matrix, got shape {arr.shape}")
    return arr


def trim(arr: np.ndarray) -> np.ndarray:
    """Drop trailing all-zero rows and columns."""
    arr = _as_int_matrix(arr)
    rows = np.flatnonzero(arr.any(axis=1))
    cols = np.flatnonzero(arr.any(axis=0))
    if rows.size == 0:
        raise ValueError("first difference of a non-empty scheme cannot be zero")
    return arr[: rows[-1] + 1, : cols[-1] + 1]


class DeltaMatrix:
    """Trimmed first difference of a Hilbert function.

    Immutable; entries outside the stored rectangle read as 0.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        arr = trim(entries).copy()
        arr.setflags(write=False)
        self._entries = arr

    @classmethod
    def from_rows(cls, rows) -> "DeltaMatrix":
        return cls(rows)

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def a(self) -> int:
        return self._entries.shape[0] - 1

    @property
    def b(self) -> int:
        return self._entries.shape[1] - 1

    @property
    def shape(self) -> tuple[int, int]:
        return self._entries.shape

    @property
    def degree(self) -> int:
        return int(self._entries.sum())

    def __getitem__(self, ij) -> int:
        i, j = ij
        if i < 0 or j < 0 or i > self.a or j > self.b:
            return 0
        return int(self._entries[i, j])

    def padded(self, rows: int, cols: int) -> np.ndarray:
        """Entries on ``[0..rows-1] x [0..cols-1]``, zero-filled past the support."""
        out = np.zeros((rows, cols), np.int64)
        r = min(rows, self.a + 1)
        c = min(cols, self.b + 1)
        out[:r, :c] = self._entries[:r, :c]
        return out

    def tolist(self) -> list[list[int]]:
        return self._entries.tolist()

    @property
    def T(self) -> "DeltaMatrix":
        return DeltaMatrix(self._entries.T)

    def __eq__(self, other):
        if not isinstance(other, DeltaMatrix):
            return NotImplemented
        return np.array_equal(self._entries, other._entries)

    def __hash__(self):
        return hash((self._entries.shape, self._entries.tobytes()))

    def __repr__(self):
        return f"DeltaMatrix({self.tolist()})"

    def __str__(self):
        return to_ascii(self)


class HilbertMatrix:
    """Query view ``m(i, j)`` over a :class:`DeltaMatrix`.

    Negative indices give 0; indices past the support clamp to it.
    """

    __slots__ = ("delta", "_cum")

    def __init__(self, delta: DeltaMatrix):
        self.delta = delta
        cum = delta.entries.cumsum(axis=0).cumsum(axis=1)
        cum.setflags(write=False)
        self._cum = cum

    def __call__(self, i: int, j: int) -> int:
        if i < 0 or j < 0:
            return 0
        return int(self._cum[min(i, self.delta.a), min(j, self.delta.b)])

    def window(self, rows: int, cols: int) -> np.ndarray:
        return np.array([[self(i, j) for j in range(cols)] for i in range(rows)], np.int64)

    @property
    def degree(self) -> int:
        return self.delta.degree


def hilbert_from_delta(d: DeltaMatrix, i: int, j: int) -> int:
    """``m(i, j)`` as the clamped partial sum of ``d``."""
    if i < 0 or j < 0:
        return 0
    return int(d.entries[: min(i, d.a) + 1, : min(j, d.b) + 1].sum())


def delta_from_hilbert(m) -> DeltaMatrix:
    """First difference of a raw Hilbert grid given on ``[0..A] x [0..B]``.

    The grid must already show stabilisation: its last row equals the one
    before it and likewise for the last column.
    """
    m = _as_int_matrix(m)
    if m.shape[0] < 2 or m.shape[1] < 2:
        raise StabilizationNotReached("need at least one guard row and one guard column")
    if not np.array_equal(m[-1], m[-2]):
        j = int(np.flatnonzero(m[-1] != m[-2])[0])
        raise StabilizationNotReached(f"last row still changes at column {j}")
    if not np.array_equal(m[:, -1], m[:, -2]):
        i = int(np.flatnonzero(m[:, -1] != m[:, -2])[0])
        raise StabilizationNotReached(f"last column still changes at row {i}")
    padded = np.zeros((m.shape[0] + 1, m.shape[1] + 1), np.int64)
    padded[1:, 1:] = m
    c = padded[1:, 1:] - padded[:-1, 1:] - padded[1:, :-1] + padded[:-1, :-1]
    return DeltaMatrix(c)


@dataclass(frozen=True)
class DirectionalDifference:
    """``a[i, j] = m[i, j] - m[i, j-1]`` (ROW) or ``b[i, j] = m[i, j] - m[i-1, j]`` (COL).

    Stored on the support rectangle plus one guard row and column.
    """

    direction: Direction
    values: np.ndarray


def directional_difference(d: DeltaMatrix, direction: Direction) -> DirectionalDifference:
    grid = d.padded(d.a + 2, d.b + 2)
    axis = 0 if direction is Direction.ROW else 1
    vals = grid.cumsum(axis=axis)
    vals.setflags(write=False)
    return DirectionalDifference(direction, vals)


def stabilization_index(m: HilbertMatrix | DeltaMatrix, *, fix_j: int | None = None,
                        fix_i: int | None = None) -> int:
    """``i(j)`` when ``fix_j`` is given, ``j(i)`` when ``fix_i`` is given.

    ``i(j)`` is the least ``t`` with ``m(t, j) == m(t+1, j)``.
    """
    if isinstance(m, DeltaMatrix):
        m = HilbertMatrix(m)
    if (fix_j is None) == (fix_i is None):
        raise ValueError("give exactly one of fix_j, fix_i")
    if fix_j is not None:
        val = lambda t: m(t, fix_j)  # noqa: E731
    else:
        val = lambda t: m(fix_i, t)  # noqa: E731
    t = 0
    while val(t) != val(t + 1):
        t += 1
    return t


def transpose(d: DeltaMatrix) -> DeltaMatrix:
    return d.T


# -- structural checks --------------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    condition: int | None = None
    witness: tuple = ()
    message: str = ""

    def __bool__(self):
        return self.ok


def gmr_check(d: DeltaMatrix) -> CheckReport:
    """Necessary conditions on the first difference of any 0-dimensional scheme.

    1. every entry is at most 1;
    2. once an entry is <= 0, every entry weakly south-east of it is <= 0;
    3. row partial sums ``sum_{t<=j} c[i, t]`` are >= 0 and weakly decrease in
       ``i`` (for ``i >= 1``), and symmetrically for column partial sums.

    Checked on the support plus one guard row/column; past that everything is
    constant. Failures are reported, never raised.
    """
    c = d.entries
    over = np.argwhere(c > 1)
    if over.size:
        i, j = map(int, over[0])
        return CheckReport(False, 1, ((i, j),), f"entry ({i},{j}) = {int(c[i, j])} > 1")

    rows, cols = c.shape
    for i in range(rows):
        for j in range(cols):
            if c[i, j] <= 0:
                block = c[i:, j:]
                pos = np.argwhere(block > 0)
                if pos.size:
                    r, s = int(pos[0][0]) + i, int(pos[0][1]) + j
                    return CheckReport(
                        False, 2, ((i, j), (r, s)),
                        f"entry ({i},{j}) = {int(c[i, j])} <= 0 but ({r},{s}) = {int(c[r, s])} > 0",
                    )

    g = d.padded(rows + 1, cols + 1)
    row_part = g.cumsum(axis=1)
    col_part = g.cumsum(axis=0)
    for i in range(rows + 1):
        for j in range(cols + 1):
            if row_part[i, j] < 0:
                return CheckReport(False, 3, ((i, j),), f"row partial sum at ({i},{j}) is negative")
            if i >= 1 and row_part[i, j] > row_part[i - 1, j]:
                return CheckReport(
                    False, 3, ((i, j), (i - 1, j)),
                    f"row partial sum at ({i},{j}) exceeds the one at ({i - 1},{j})",
                )
            if col_part[i, j] < 0:
                return CheckReport(False, 3, ((i, j),), f"column partial sum at ({i},{j}) is negative")
            if j >= 1 and col_part[i, j] > col_part[i, j - 1]:
                return CheckReport(
                    False, 3, ((i, j), (i, j - 1)),
                    f"column partial sum at ({i},{j}) exceeds the one at ({i},{j - 1})",
                )
    return CheckReport(True)


@dataclass(frozen=True)
class ProfileReport:
    """Histograms ``k -> number of lines carrying exactly k points``.

    ``row_profile`` counts (1,0)-lines, ``col_profile`` counts (0,1)-lines.
    Zero counts are omitted.
    """

    row_profile: dict
    col_profile: dict

    def swapped(self) -> "ProfileReport":
        return ProfileReport(self.col_profile, self.row_profile)


def _histogram_from_sums(sums: np.ndarray, what: str) -> dict:
    sums = np.append(sums, 0)
    out = {}
    for k in range(len(sums) - 1):
        n = int(sums[k] - sums[k + 1])
        if n < 0:
            raise NegativeCount(f"{what}: {n} lines with {k + 1} points")
        if n:
            out[k + 1] = n
    return out


def line_profiles(d: DeltaMatrix) -> ProfileReport:
    """Line-count histograms read off the first difference.

    The number of (1,0)-lines with exactly ``j+1`` points is ``S_j - S_{j+1}``
    where ``S_j`` is the ``j``-th column sum; (0,1)-lines use row sums.
    """
    c = d.entries
    return ProfileReport(
        row_profile=_histogram_from_sums(c.sum(axis=0), "(1,0)-lines"),
        col_profile=_histogram_from_sums(c.sum(axis=1), "(0,1)-lines"),
    )


# -- serialisation ------------------------------------------------------------


def to_ascii(d: DeltaMatrix | np.ndarray) -> str:
    arr = d.entries if isinstance(d, DeltaMatrix) else _as_int_matrix(d)
    width = max(len(str(int(v))) for v in arr.flat)
    return "\n".join(" ".join(str(int(v)).rjust(width) for v in row) for row in arr)


def from_ascii(text: str) -> DeltaMatrix:
    return DeltaMatrix(parse_int_grid(text.strip().splitlines()))


def parse_int_grid(lines) -> np.ndarray:
    rows = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.replace("−", "-").split()])
        except ValueError as exc:
            raise MatrixParseError(f"bad matrix row {line!r}") from exc
    if not rows:
        raise MatrixParseError("empty matrix")
    if len({len(r) for r in rows}) != 1:
        raise MatrixParseError("ragged matrix rows")
    return np.array(rows, np.int64)


def to_json(d: DeltaMatrix, key: str = "delta") -> str:
    return json.dumps({"rows": d.a + 1, "cols": d.b + 1, key: d.tolist()})


def from_json(text: str) -> DeltaMatrix:
    try:
        obj = json.loads(text)
        rows, cols, delta = obj["rows"], obj["cols"], obj["delta"]
    except (ValueError, KeyError, TypeError) as exc:
        raise MatrixParseError(f"not a delta-matrix document: {exc}") from exc
    arr = _as_int_matrix(delta)
    if arr.shape != (rows, cols):
        raise MatrixParseError(f"declared shape {(rows, cols)} but data has shape {arr.shape}")
    d = DeltaMatrix(arr)
    if d.shape != arr.shape:
        raise MatrixParseError("matrix is not trimmed")
    return d

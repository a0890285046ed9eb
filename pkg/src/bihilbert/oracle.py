"""Ground-truth Hilbert matrices of reduced point sets on a grid.

``M_X(i, j)`` is the rank of the evaluation map sending a polynomial in the
span of ``x**s * y**t`` (``s <= i``, ``t <= j``) to its values at the points
of ``X``. Here ``x`` is the affine coordinate of the first factor, so the
(1,0)-lines ``R_0..R_a`` are ``x = row_coords[k]`` and the (0,1)-lines
``C_0..C_b`` are ``y = col_coords[k]``.

For a fixed ``i`` the monomial columns are ordered by ``t`` first, so
``M_X(i, j)`` for every ``j`` is a prefix rank of one matrix and one
elimination per row of the window suffices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy

from .bigraded import DeltaMatrix, Direction, StabilizationNotReached, delta_from_hilbert
from .kernels import MAX_PRIME, prefix_ranks_bareiss, prefix_ranks_modp

DEFAULT_PRIME = 2**61 - 1
DEFAULT_COORD_BOUND = 2**20
_MAX_DRAWS = 64


class CoordinateCollision(ValueError):
    """Two lines of the same ruling ended up with the same coordinate."""


class InfeasibleDensity(ValueError):
    pass


# -- fields -------------------------------------------------------------------


@dataclass(frozen=True)
class Field:
    """Exact scalar field: the rationals (``prime=None``) or ``F_p``."""

    prime: int | None = None

    def __post_init__(self):
        p = self.prime
        if p is not None:
            if not (2**60 < p < MAX_PRIME):
                raise ValueError(f"prime must satisfy 2**60 < p < 2**63, got {p}")
            if not sympy.isprime(p):
                raise ValueError(f"{p} is not prime")

    @classmethod
    def rational(cls) -> "Field":
        return cls(None)

    @property
    def is_rational(self) -> bool:
        return self.prime is None

    def reduce(self, q: Fraction) -> int:
        p = self.prime
        if q.denominator % p == 0:
            raise CoordinateCollision(f"coordinate {q} has no image mod {p}")
        return q.numerator * pow(q.denominator, -1, p) % p

    def __str__(self):
        return "rational" if self.prime is None else f"F_{self.prime}"


RATIONAL = Field.rational()
PRIME = Field(DEFAULT_PRIME)


def parse_field(kind: str, prime: int | None = None) -> Field:
    if kind == "rational":
        return RATIONAL
    if kind == "prime":
        return Field(DEFAULT_PRIME if prime is None else prime)
    raise ValueError(f"unknown field {kind!r}")


# -- configurations -----------------------------------------------------------


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class GridConfig:
    """Reduced points at intersections of a grid of lines.

    ``incidence`` holds ``(row, col)`` pairs; point ``(r, c)`` is
    ``R_r ∩ C_c`` with affine coordinates ``(row_coords[r], col_coords[c])``.
    Every listed line carries at least one point.
    """

    row_coords: tuple
    col_coords: tuple
    incidence: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "row_coords", tuple(_frac(v) for v in self.row_coords))
        object.__setattr__(self, "col_coords", tuple(_frac(v) for v in self.col_coords))
        object.__setattr__(self, "incidence", frozenset((int(r), int(c)) for r, c in self.incidence))
        if not self.row_coords or not self.col_coords:
            raise ValueError("a configuration needs at least one row and one column")
        for name, coords in (("row", self.row_coords), ("column", self.col_coords)):
            if len(set(coords)) != len(coords):
                raise CoordinateCollision(f"duplicate {name} coordinates")
        nr, nc = len(self.row_coords), len(self.col_coords)
        for r, c in self.incidence:
            if not (0 <= r < nr and 0 <= c < nc):
                raise ValueError(f"point ({r},{c}) outside a {nr}x{nc} grid")
        used_r = {r for r, _ in self.incidence}
        used_c = {c for _, c in self.incidence}
        if len(used_r) != nr or len(used_c) != nc:
            empty_r = sorted(set(range(nr)) - used_r)
            empty_c = sorted(set(range(nc)) - used_c)
            raise ValueError(f"unoccupied lines: rows {empty_r}, columns {empty_c}")

    @property
    def n_rows(self) -> int:
        return len(self.row_coords)

    @property
    def n_cols(self) -> int:
        return len(self.col_coords)

    @property
    def degree(self) -> int:
        return len(self.incidence)

    @property
    def row_counts(self) -> list[int]:
        out = [0] * self.n_rows
        for r, _ in self.incidence:
            out[r] += 1
        return out

    @property
    def col_counts(self) -> list[int]:
        out = [0] * self.n_cols
        for _, c in self.incidence:
            out[c] += 1
        return out

    def points(self) -> list[tuple[Fraction, Fraction]]:
        return [(self.row_coords[r], self.col_coords[c]) for r, c in sorted(self.incidence)]

    def swap(self) -> "GridConfig":
        """Exchange the two factors of P^1 x P^1."""
        return GridConfig(self.col_coords, self.row_coords, frozenset((c, r) for r, c in self.incidence))

    def with_coords(self, row_coords, col_coords) -> "GridConfig":
        return GridConfig(tuple(row_coords), tuple(col_coords), self.incidence)

    def grid_lines(self) -> list[str]:
        return [
            "".join("X" if (r, c) in self.incidence else "." for c in range(self.n_cols))
            for r in range(self.n_rows)
        ]

    def incidence_profiles(self) -> tuple[dict, dict]:
        """Histograms ``k -> number of rows (columns) with exactly k points``."""
        rows: dict = {}
        for k in self.row_counts:
            rows[k] = rows.get(k, 0) + 1
        cols: dict = {}
        for k in self.col_counts:
            cols[k] = cols.get(k, 0) + 1
        return dict(sorted(rows.items())), dict(sorted(cols.items()))


def config_from_grid(lines, row_coords=None, col_coords=None, seed: int = 0,
                     coord_bound: int = DEFAULT_COORD_BOUND) -> GridConfig:
    """Build a configuration from rows of ``'.'``/``'X'`` (top row is ``R_0``)."""
    lines = [ln.strip() for ln in lines if ln.strip()]
    if not lines:
        raise ValueError("empty grid")
    if len({len(ln) for ln in lines}) != 1:
        raise ValueError("ragged grid")
    inc = set()
    for r, ln in enumerate(lines):
        for c, ch in enumerate(ln):
            if ch in "Xx":
                inc.add((r, c))
            elif ch != ".":
                raise ValueError(f"unexpected grid character {ch!r}")
    rng = random.Random(seed)
    nr, nc = len(lines), len(lines[0])
    if row_coords is None:
        row_coords = _draw_distinct(rng, nr, coord_bound)
    if col_coords is None:
        col_coords = _draw_distinct(rng, nc, coord_bound)
    if len(row_coords) != nr or len(col_coords) != nc:
        raise ValueError("coordinate count does not match the grid")
    return GridConfig(tuple(row_coords), tuple(col_coords), frozenset(inc))


def config_from_incidence(incidence, n_rows: int, n_cols: int, seed: int = 0,
                          coord_bound: int = DEFAULT_COORD_BOUND) -> GridConfig:
    rng = random.Random(seed)
    return GridConfig(
        tuple(_draw_distinct(rng, n_rows, coord_bound)),
        tuple(_draw_distinct(rng, n_cols, coord_bound)),
        frozenset(incidence),
    )


def reseed(cfg: GridConfig, seed: int, coord_bound: int = DEFAULT_COORD_BOUND) -> GridConfig:
    """Same incidence, fresh random coordinates."""
    return config_from_incidence(cfg.incidence, cfg.n_rows, cfg.n_cols, seed, coord_bound)


def _draw_distinct(rng: random.Random, k: int, bound: int, avoid=()) -> list[Fraction]:
    avoid = set(avoid)
    out: list[Fraction] = []
    draws = 0
    while len(out) < k:
        v = Fraction(rng.randint(1, bound))
        draws += 1
        if v in avoid:
            if draws > k + _MAX_DRAWS:
                raise CoordinateCollision("could not draw distinct coordinates")
            continue
        avoid.add(v)
        out.append(v)
    return out


def random_config(rows: int, cols: int, density: float, seed: int,
                  coord_bound: int = DEFAULT_COORD_BOUND) -> GridConfig:
    """Seeded random configuration with every line occupied.

    ``round(density * rows * cols)`` points are placed: first a random
    covering set of ``max(rows, cols)`` points, then uniform extra cells.
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be positive")
    if not 0 < density <= 1:
        raise InfeasibleDensity(f"density must lie in (0, 1], got {density}")
    target = max(1, round(density * rows * cols))
    need = max(rows, cols)
    if target < need:
        raise InfeasibleDensity(
            f"{target} points cannot occupy all {rows} rows and {cols} columns"
        )
    rng = random.Random(seed)
    rperm = rng.sample(range(rows), rows)
    cperm = rng.sample(range(cols), cols)
    inc = set()
    for k in range(need):
        r = rperm[k] if k < rows else rng.randrange(rows)
        c = cperm[k] if k < cols else rng.randrange(cols)
        inc.add((r, c))
    rest = [(r, c) for r in range(rows) for c in range(cols) if (r, c) not in inc]
    rng.shuffle(rest)
    inc.update(rest[: target - len(inc)])
    return GridConfig(
        tuple(_draw_distinct(rng, rows, coord_bound)),
        tuple(_draw_distinct(rng, cols, coord_bound)),
        frozenset(inc),
    )


def extend_with_line(cfg: GridConfig, direction: Direction, hit, extra_lines: int = 0,
                     seed: int | None = None, coord=None,
                     coord_bound: int = DEFAULT_COORD_BOUND) -> GridConfig:
    """Add points on a new line disjoint from ``cfg``.

    For ``Direction.ROW`` a new (1,0)-line is appended as the last row; it
    meets the existing columns listed in ``hit`` and ``extra_lines`` brand-new
    columns, each of which receives one point. ``Direction.COL`` is the
    transposed construction.
    """
    if direction is Direction.COL:
        return extend_with_line(cfg.swap(), Direction.ROW, hit, extra_lines,
                                seed, coord, coord_bound).swap()
    hit = sorted(set(int(h) for h in hit))
    if any(not 0 <= h < cfg.n_cols for h in hit):
        raise ValueError(f"hit columns {hit} outside 0..{cfg.n_cols - 1}")
    if extra_lines < 0:
        raise ValueError("extra_lines must be non-negative")
    if not hit and not extra_lines:
        raise ValueError("the new line would carry no points")
    rng = random.Random(seed)
    if coord is None:
        new_row = _draw_distinct(rng, 1, coord_bound, cfg.row_coords)[0]
    else:
        new_row = _frac(coord)
        if new_row in cfg.row_coords:
            raise CoordinateCollision(f"row coordinate {new_row} already in use")
    new_cols = _draw_distinct(rng, extra_lines, coord_bound, cfg.col_coords)
    a1 = cfg.n_rows
    b1 = cfg.n_cols
    inc = set(cfg.incidence)
    inc.update((a1, c) for c in hit)
    inc.update((a1, b1 + k) for k in range(extra_lines))
    return GridConfig(cfg.row_coords + (new_row,), cfg.col_coords + tuple(new_cols), frozenset(inc))


# -- ranks --------------------------------------------------------------------


def _rational_rows(cfg: GridConfig, i: int, jmax: int) -> list[list[int]]:
    rows = []
    for x, y in cfg.points():
        nx, dx, ny, dy = x.numerator, x.denominator, y.numerator, y.denominator
        xs = [nx**s * dx ** (i - s) for s in range(i + 1)]
        ys = [ny**t * dy ** (jmax - t) for t in range(jmax + 1)]
        rows.append([xv * yv for yv in ys for xv in xs])
    return rows


def _modp_matrix(cfg: GridConfig, fld: Field, i: int, jmax: int) -> np.ndarray:
    p = fld.prime
    xr = [fld.reduce(v) for v in cfg.row_coords]
    yr = [fld.reduce(v) for v in cfg.col_coords]
    if len(set(xr)) != len(xr) or len(set(yr)) != len(yr):
        raise CoordinateCollision(f"coordinates collide modulo {p}")
    rows = []
    for r, c in sorted(cfg.incidence):
        x, y = xr[r], yr[c]
        xs = [pow(x, s, p) for s in range(i + 1)]
        ys = [pow(y, t, p) for t in range(jmax + 1)]
        rows.append([xv * yv % p for yv in ys for xv in xs])
    return np.array(rows, dtype=np.uint64)


def _prefix_ranks(cfg: GridConfig, fld: Field, i: int, jmax: int):
    if fld.is_rational:
        return prefix_ranks_bareiss(_rational_rows(cfg, i, jmax))
    return prefix_ranks_modp(_modp_matrix(cfg, fld, i, jmax), fld.prime)


def evaluation_rank(cfg: GridConfig, i: int, j: int, fld: Field = PRIME) -> int:
    """``M_X(i, j)``: rank of the bidegree-``(i, j)`` evaluation matrix."""
    if i < 0 or j < 0:
        return 0
    return int(_prefix_ranks(cfg, fld, i, j)[-1])


def hilbert_grid(cfg: GridConfig, rows: int, cols: int, fld: Field = PRIME) -> np.ndarray:
    """``M_X`` on ``[0..rows-1] x [0..cols-1]``."""
    out = np.zeros((rows, cols), np.int64)
    for i in range(rows):
        ranks = _prefix_ranks(cfg, fld, i, cols - 1)
        for j in range(cols):
            out[i, j] = ranks[(j + 1) * (i + 1) - 1]
    return out


def hilbert_matrix(cfg: GridConfig, fld: Field = PRIME) -> DeltaMatrix:
    """First difference of ``M_X``, computed on the window one past the grid."""
    grid = hilbert_grid(cfg, cfg.n_rows + 1, cfg.n_cols + 1, fld)
    try:
        d = delta_from_hilbert(grid)
    except StabilizationNotReached as exc:  # pragma: no cover - would be a rank bug
        raise AssertionError(f"Hilbert window failed to stabilise: {exc}") from exc
    assert d.degree == cfg.degree, "degree of the first difference disagrees with the point count"
    return d

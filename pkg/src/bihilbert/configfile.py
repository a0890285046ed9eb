"""Text formats for configurations and replay scripts.

A configuration file::

    # three points in general position
    seed: 7
    prime: 2305843009213693951
    rowcoords: 1, 5, 7/2
    colcoords: 2, 3, 11
    grid:
    ..X
    .X.
    X..

The top grid row is ``R_0`` and the left column ``C_0``. ``rowcoords`` /
``colcoords`` are optional; missing coordinates are drawn from ``seed``.

A replay script uses the same headers, may replace ``grid:`` with
``acm profile: 5,5,4,3`` (left-justified rows with that many points), and adds
``step:`` lines in the line-spec syntax ``add-row n=<int> hit=<i,j,...>`` (or
``add-col``). An ``expect:`` block after the base or after a step holds the
matrix that stage must produce. Blocks end at a blank line or the next header.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .acm import StaircaseProfile
from .bigraded import DeltaMatrix, Direction, MatrixParseError, parse_int_grid
from .oracle import GridConfig, config_from_grid, config_from_incidence


class ConfigParseError(ValueError):
    pass


@dataclass(frozen=True)
class StepSpec:
    """A parsed ``add-row``/``add-col`` line spec (indices only, no counts)."""

    direction: Direction
    n: int
    hit: tuple

    def __str__(self):
        word = "add-row" if self.direction is Direction.ROW else "add-col"
        return f"{word} n={self.n} hit={','.join(map(str, self.hit))}"


@dataclass
class ScriptStep:
    spec: StepSpec
    expect: DeltaMatrix | None = None


@dataclass
class Script:
    grid: list | None = None
    profile: StaircaseProfile | None = None
    row_coords: list | None = None
    col_coords: list | None = None
    seed: int | None = None
    prime: int | None = None
    base_expect: DeltaMatrix | None = None
    steps: list = field(default_factory=list)

    def base_config(self, seed: int | None = None) -> GridConfig:
        seed = (self.seed or 0) if seed is None else seed
        if self.profile is not None:
            p = self.profile.p
            cfg = config_from_incidence(self.profile.incidence(), len(p), p[0], seed)
            if self.row_coords is not None or self.col_coords is not None:
                cfg = cfg.with_coords(self.row_coords or cfg.row_coords,
                                      self.col_coords or cfg.col_coords)
            return cfg
        return config_from_grid(self.grid, self.row_coords, self.col_coords, seed)

    @property
    def base_label(self) -> str:
        if self.profile is not None:
            return "acm profile " + ",".join(map(str, self.profile.p))
        return "grid"


_STEP_RE = re.compile(r"^(add-row|add-col)\s+n=(\d+)\s+hit=([\d,\s]*)$")


def parse_line_spec(text: str) -> StepSpec:
    m = _STEP_RE.match(text.strip())
    if not m:
        raise ConfigParseError(f"bad line spec {text!r}; expected 'add-row n=<int> hit=<i,j,...>'")
    word, n, hit = m.groups()
    try:
        idx = tuple(int(tok) for tok in hit.replace(" ", "").split(",") if tok)
    except ValueError as exc:
        raise ConfigParseError(f"bad hit list {hit!r}") from exc
    if len(set(idx)) != len(idx):
        raise ConfigParseError(f"repeated hit index in {hit!r}")
    direction = Direction.ROW if word == "add-row" else Direction.COL
    return StepSpec(direction, int(n), tuple(sorted(idx)))


def _parse_coords(text: str) -> list:
    toks = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    try:
        vals = [Fraction(t) for t in toks]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigParseError(f"bad coordinate list {text!r}") from exc
    if len(set(vals)) != len(vals):
        raise ConfigParseError(f"duplicate coordinates in {text!r}")
    return vals


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text.strip())
    except ValueError as exc:
        raise ConfigParseError(f"bad {what} {text!r}") from exc


def parse_script(text: str) -> Script:
    script = Script()
    lines = text.splitlines()
    k = 0

    def block(start):
        out = []
        j = start
        while j < len(lines):
            ln = lines[j].split("#", 1)[0].strip()
            if not ln or ":" in ln:
                break
            out.append(ln)
            j += 1
        return out, j

    while k < len(lines):
        raw = lines[k].split("#", 1)[0].strip()
        k += 1
        if not raw:
            continue
        if ":" not in raw:
            raise ConfigParseError(f"line {k}: expected 'key: value', got {raw!r}")
        key, _, value = raw.partition(":")
        key = key.strip().lower()
        value = value.strip()
        if key == "grid":
            if script.grid is not None or script.profile is not None:
                raise ConfigParseError("more than one base declaration")
            rows, k = block(k)
            if not rows:
                raise ConfigParseError("empty grid block")
            if len({len(r) for r in rows}) != 1:
                raise ConfigParseError("ragged grid")
            if any(set(r) - set(".Xx") for r in rows):
                raise ConfigParseError("grid rows may only contain '.' and 'X'")
            script.grid = rows
        elif key == "acm profile":
            if script.grid is not None or script.profile is not None:
                raise ConfigParseError("more than one base declaration")
            parts = [_parse_int(t, "profile part") for t in value.split(",") if t.strip()]
            try:
                script.profile = StaircaseProfile(tuple(parts))
            except ValueError as exc:
                raise ConfigParseError(str(exc)) from exc
        elif key == "rowcoords":
            script.row_coords = _parse_coords(value)
        elif key == "colcoords":
            script.col_coords = _parse_coords(value)
        elif key == "seed":
            script.seed = _parse_int(value, "seed")
        elif key == "prime":
            script.prime = _parse_int(value, "prime")
        elif key == "step":
            script.steps.append(ScriptStep(parse_line_spec(value)))
        elif key == "expect":
            rows, k = block(k)
            try:
                mat = DeltaMatrix(parse_int_grid(rows))
            except (MatrixParseError, ValueError) as exc:
                raise ConfigParseError(f"bad expect block: {exc}") from exc
            if script.steps:
                if script.steps[-1].expect is not None:
                    raise ConfigParseError("two expect blocks for one step")
                script.steps[-1].expect = mat
            else:
                script.base_expect = mat
        else:
            raise ConfigParseError(f"line {k}: unknown header {key!r}")

    if script.grid is None and script.profile is None:
        raise ConfigParseError("no grid or acm profile declared")
    if script.grid is not None:
        nr, nc = len(script.grid), len(script.grid[0])
        if script.row_coords is not None and len(script.row_coords) != nr:
            raise ConfigParseError(f"{len(script.row_coords)} row coordinates for {nr} rows")
        if script.col_coords is not None and len(script.col_coords) != nc:
            raise ConfigParseError(f"{len(script.col_coords)} column coordinates for {nc} columns")
    return script


def resolve_path(name: str) -> Path:
    """``@name`` refers to a bundled fixture, anything else is a file path."""
    if name.startswith("@"):
        res = resources.files("bihilbert") / "fixtures" / f"{name[1:]}.txt"
        return Path(str(res))
    return Path(name)


def load_script(name: str) -> Script:
    path = resolve_path(name)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigParseError(f"cannot read {path}: {exc}") from exc
    return parse_script(text)


def fixture_names() -> list[str]:
    root = resources.files("bihilbert") / "fixtures"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".txt"))

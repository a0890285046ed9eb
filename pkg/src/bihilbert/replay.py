"""Execute replay scripts: a base scheme followed by line additions.

Each step derives the excluded lines and their point counts from the
configuration built so far, applies the engine (the hypothesis-free ACM
update when the current scheme is ACM, the checked update otherwise) and
extends the configuration so later steps see the new counts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .acm import acm_add_line, delta_acm, is_acm
from .bigraded import DeltaMatrix, Direction
from .configfile import Script, StepSpec
from .engine import LineAdditionSpec, Mode, add_line
from .oracle import PRIME, Field, GridConfig, extend_with_line, hilbert_matrix


@dataclass(frozen=True)
class StageResult:
    label: str
    delta: DeltaMatrix
    config: GridConfig
    basis: str  # what vouches for the matrix: "acm", a verdict name, "oracle" or "predicted"
    expected: DeltaMatrix | None = None
    oracle: DeltaMatrix | None = None

    @property
    def matches_expectation(self) -> bool:
        return self.expected is None or self.expected == self.delta

    @property
    def matches_oracle(self) -> bool:
        return self.oracle is None or self.oracle == self.delta


def line_spec_for(cfg: GridConfig, step: StepSpec) -> LineAdditionSpec:
    counts = cfg.col_counts if step.direction is Direction.ROW else cfg.row_counts
    return LineAdditionSpec.from_counts(step.direction, step.n, counts, step.hit)


def apply_step(cfg: GridConfig, d: DeltaMatrix, step: StepSpec, mode: Mode = Mode.STRICT,
               seed: int = 0):
    """One line addition; returns ``(new_config, new_delta, basis)``.

    Raises :class:`~bihilbert.engine.HypothesisNotMet` in strict mode when the
    scheme is not ACM and no sufficient condition holds.
    """
    spec = line_spec_for(cfg, step)
    existing = cfg.n_cols if step.direction is Direction.ROW else cfg.n_rows
    if is_acm(cfg.incidence, cfg.n_rows, cfg.n_cols):
        new_d = acm_add_line(d, spec)
        basis = "acm"
    else:
        new_d, _, verdict = add_line(d, spec, mode)
        basis = verdict.kind.value if verdict.ok else "predicted"
    old_hits = [h for h in step.hit if h < existing]
    new_cfg = extend_with_line(cfg, step.direction, old_hits, step.n + 1 - existing, seed=seed)
    return new_cfg, new_d, basis


def run_script(script: Script, fld: Field = PRIME, seed: int | None = None,
               mode: Mode = Mode.STRICT, check_oracle: bool = False) -> list[StageResult]:
    seed = (script.seed or 0) if seed is None else seed
    cfg = script.base_config(seed)
    if script.profile is not None:
        d = delta_acm(script.profile)
        basis = "acm"
    else:
        d = hilbert_matrix(cfg, fld)
        basis = "oracle"
    stages = [StageResult(
        f"base: {script.base_label}", d, cfg, basis, script.base_expect,
        hilbert_matrix(cfg, fld) if check_oracle and basis != "oracle" else None,
    )]
    for k, step in enumerate(script.steps, start=1):
        cfg, d, basis = apply_step(cfg, d, step.spec, mode, seed=seed * 1000 + k)
        stages.append(StageResult(
            f"step {k}: {step.spec}", d, cfg, basis, step.expect,
            hilbert_matrix(cfg, fld) if check_oracle else None,
        ))
    return stages

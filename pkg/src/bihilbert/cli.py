"""Command-line entry point.

Exit codes: 0 success, 1 a check or comparison failed, 2 bad input,
3 the engine refused a step in strict mode.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bigraded as bg
from .acm import delta_acm, is_acm
from .bigraded import Direction, HilbertMatrix, gmr_check, line_profiles
from .configfile import ConfigParseError, StepSpec, load_script, parse_line_spec
from .engine import HypothesisNotMet, Mode, add_line
from .oracle import CoordinateCollision, parse_field, hilbert_matrix
from .replay import apply_step, line_spec_for, run_script

EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_REFUSED = 0, 1, 2, 3


class _Ctx:
    def __init__(self, args):
        self.args = args
        self.script = load_script(args.file)
        prime = args.prime if args.prime is not None else self.script.prime
        self.field = parse_field(args.field, prime)
        self.seed = args.seed if args.seed is not None else (self.script.seed or 0)
        self.json = args.format == "json"

    def config(self):
        return self.script.base_config(self.seed)

    def delta(self, cfg=None):
        return hilbert_matrix(cfg if cfg is not None else self.config(), self.field)

    def emit_matrix(self, d, key="delta", title=None, extra=None):
        if self.json:
            obj = {"rows": d.a + 1, "cols": d.b + 1, key: d.tolist()}
            if title is not None:
                obj["label"] = title
            obj.update(extra or {})
            print(json.dumps(obj))
        else:
            if title is not None:
                print(title)
            print(bg.to_ascii(d))

    def emit(self, obj, text):
        print(json.dumps(obj) if self.json else text)


def _profile_text(prof: dict) -> str:
    return ", ".join(f"{k}:{v}" for k, v in sorted(prof.items())) or "-"


def cmd_hilbert(ctx):
    d = ctx.delta()
    m = HilbertMatrix(d).window(d.a + 1, d.b + 1)
    if ctx.json:
        print(json.dumps({"rows": d.a + 1, "cols": d.b + 1, "hilbert": m.tolist()}))
    else:
        print(bg.to_ascii(m))
    return EXIT_OK


def cmd_delta(ctx):
    ctx.emit_matrix(ctx.delta())
    return EXIT_OK


def cmd_check(ctx):
    cfg = ctx.config()
    d = ctx.delta(cfg)
    report = gmr_check(d)
    rows, cols = cfg.incidence_profiles()
    try:
        prof = line_profiles(d)
        prof_ok = prof.row_profile == rows and prof.col_profile == cols
        prof_msg = "profiles match incidence" if prof_ok else (
            f"profile mismatch: delta gives rows {_profile_text(prof.row_profile)}, "
            f"cols {_profile_text(prof.col_profile)}; incidence has rows {_profile_text(rows)}, "
            f"cols {_profile_text(cols)}"
        )
    except bg.NegativeCount as exc:
        prof_ok, prof_msg = False, f"profile failure: {exc}"
    degree_ok = d.degree == cfg.degree
    ok = report.ok and prof_ok and degree_ok
    ctx.emit(
        {"ok": ok, "conditions": report.ok, "failed_condition": report.condition,
         "witness": [list(w) for w in report.witness], "profiles": prof_ok, "degree": d.degree},
        "\n".join([
            "conditions: pass" if report.ok else f"conditions: FAIL (condition {report.condition}: {report.message})",
            prof_msg,
            f"degree {d.degree}" + ("" if degree_ok else f" but {cfg.degree} points"),
        ]),
    )
    return EXIT_OK if ok else EXIT_CHECK


def cmd_profiles(ctx):
    cfg = ctx.config()
    prof = line_profiles(ctx.delta(cfg))
    rows, cols = cfg.incidence_profiles()
    ctx.emit(
        {"row_profile": prof.row_profile, "col_profile": prof.col_profile,
         "incidence_rows": rows, "incidence_cols": cols},
        f"(1,0)-lines: {_profile_text(prof.row_profile)}\n(0,1)-lines: {_profile_text(prof.col_profile)}",
    )
    return EXIT_OK if (prof.row_profile, prof.col_profile) == (rows, cols) else EXIT_CHECK


def cmd_acm(ctx):
    cfg = ctx.config()
    v = is_acm(cfg.incidence, cfg.n_rows, cfg.n_cols)
    if not v.acm:
        ctx.emit(
            {"acm": False, "row_order": v.row_order, "col_order": v.col_order,
             "counterwitness": list(v.counterwitness)},
            f"acm: no (staircase breaks at R_{v.counterwitness[0]} / C_{v.counterwitness[1]})",
        )
        return EXIT_CHECK
    d = delta_acm(v.profile)
    if ctx.json:
        ctx.emit_matrix(d, extra={"acm": True, "row_order": v.row_order, "col_order": v.col_order,
                                  "p": v.profile.p, "q": v.profile.q})
    else:
        print("acm: yes")
        print("row order: " + " ".join(f"R_{r}" for r in v.row_order))
        print("col order: " + " ".join(f"C_{c}" for c in v.col_order))
        print("p = " + ",".join(map(str, v.profile.p)) + "   q = " + ",".join(map(str, v.profile.q)))
        print(bg.to_ascii(d))
    return EXIT_OK


def _step_from_args(ctx, direction=None) -> StepSpec:
    tokens = ctx.args.spec
    if tokens:
        word = {Direction.ROW: "add-row", Direction.COL: "add-col"}.get(direction)
        if word is None:
            word, tokens = tokens[0], tokens[1:]
        return parse_line_spec(" ".join([word, *tokens]))
    if not ctx.script.steps:
        raise ConfigParseError("no line spec given and the file has no step")
    step = ctx.script.steps[0].spec
    if direction is not None and step.direction is not direction:
        raise ConfigParseError(f"file step {step} does not match the command")
    return step


def _cmd_add(ctx, direction):
    step = _step_from_args(ctx, direction)
    cfg = ctx.config()
    d = ctx.delta(cfg)
    mode = Mode.PREDICT if ctx.args.predict else Mode.STRICT
    try:
        _, new_d, basis = apply_step(cfg, d, step, mode, seed=ctx.seed)
    except HypothesisNotMet as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_REFUSED
    ctx.emit_matrix(new_d, title=None if ctx.json else f"# {step} [{basis}]",
                    extra={"basis": basis})
    return EXIT_OK


def cmd_add_row(ctx):
    return _cmd_add(ctx, Direction.ROW)


def cmd_add_col(ctx):
    return _cmd_add(ctx, Direction.COL)


def cmd_compare(ctx):
    """Engine prediction against the oracle for one step."""
    step = _step_from_args(ctx)
    cfg = ctx.config()
    d = ctx.delta(cfg)
    spec = line_spec_for(cfg, step)
    predicted, _, verdict = add_line(d, spec, Mode.PREDICT)
    new_cfg, _, _ = apply_step(cfg, d, step, Mode.PREDICT, seed=ctx.seed)
    actual = ctx.delta(new_cfg)
    rows = max(predicted.a, actual.a) + 1
    cols = max(predicted.b, actual.b) + 1
    diffs = [
        (i, j, predicted[i, j], actual[i, j])
        for i in range(rows) for j in range(cols) if predicted[i, j] != actual[i, j]
    ]
    refused = not ctx.args.predict and not verdict.ok
    if ctx.json:
        print(json.dumps({
            "verdict": verdict.kind.value, "predicted": predicted.tolist(), "oracle": actual.tolist(),
            "differences": [{"pos": [i, j], "predicted": p, "oracle": o} for i, j, p, o in diffs],
        }))
    else:
        print(verdict.describe())
        print("predicted:")
        print(bg.to_ascii(predicted))
        print("oracle:")
        print(bg.to_ascii(actual))
        if diffs:
            for i, j, p, o in diffs:
                print(f"predicted ({i},{j})={p}, oracle ({i},{j})={o}")
        else:
            print("prediction matches oracle")
    if refused:
        return EXIT_REFUSED
    return EXIT_OK if not diffs else EXIT_CHECK


def cmd_replay(ctx):
    mode = Mode.PREDICT if ctx.args.predict else Mode.STRICT
    try:
        stages = run_script(ctx.script, ctx.field, ctx.seed, mode, check_oracle=ctx.args.oracle)
    except HypothesisNotMet as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_REFUSED
    failed = False
    for k, st in enumerate(stages):
        status = []
        if st.expected is not None:
            status.append("expect ok" if st.matches_expectation else "EXPECT MISMATCH")
        if st.oracle is not None:
            status.append("oracle ok" if st.matches_oracle else "ORACLE MISMATCH")
        failed |= not (st.matches_expectation and st.matches_oracle)
        if ctx.json:
            ctx.emit_matrix(st.delta, title=st.label, extra={"basis": st.basis, "status": status})
        else:
            if k:
                print()
            ctx.emit_matrix(st.delta, title=f"# {st.label} [{', '.join([st.basis, *status])}]")
    return EXIT_CHECK if failed else EXIT_OK


COMMANDS = {
    "hilbert": cmd_hilbert,
    "delta": cmd_delta,
    "check": cmd_check,
    "profiles": cmd_profiles,
    "acm": cmd_acm,
    "add-row": cmd_add_row,
    "add-col": cmd_add_col,
    "replay": cmd_replay,
    "compare": cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bihilbert",
        description="Hilbert matrices of reduced point sets on P^1 x P^1.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="configuration or replay script (@name for a bundled fixture)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--prime", type=int, default=None)
    common.add_argument("--field", choices=("rational", "prime"), default="prime")
    common.add_argument("--format", choices=("ascii", "json"), default="ascii")
    common.add_argument("--predict", action="store_true",
                        help="emit the formula even when no sufficient condition holds")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("add-row", "add-col", "compare"):
            p.add_argument("spec", nargs="*", help="line spec, e.g. n=2 hit=0,2")
        if name == "replay":
            p.add_argument("--oracle", action="store_true",
                           help="also run the oracle on every stage and compare")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = _Ctx(args)
        return COMMANDS[args.command](ctx)
    except (ConfigParseError, bg.MatrixParseError, CoordinateCollision, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry points.

    lcp plan FILE [--kmax K] [--timeout S] [--solver CMD] [--emit-smt DIR]
    lcp validate FILE PLAN_JSON
    lcp encode FILE [--kmax K] [--emit-smt DIR]
    lcp stats FILE [--kmax K] [--objects +N]

Exit codes: ``plan`` returns 0 on a solution, 1 when every depth up to
``--kmax`` is unsatisfiable and 2 on errors or timeouts. ``validate``
returns 0 iff the plan is valid, 1 if it is not, 2 on unreadable input.
"""

from __future__ import annotations

import argparse
import json
import logging
import shlex
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .anml import ParseError, parse_file, with_extra_objects
from .bounded import gen_problem
from .encoder import COHERENCE, CONSISTENCY, DOMAIN, SUPPORT, SYMMETRY, EncodeOptions, emit_smtlib, encode
from .plan import PlanFormatError, plan_from_json
from .solver import (
    DEFAULT_SOLVER, SOLVER_ENV, Exhausted, Solution, SolverConfig, SolverError, Timeout,
    default_solver_command, lcp,
)
from .validate import validate_plan

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    input: str
    mode: str
    plan_file: str | None = None
    k_max: int = 10
    timeout: float = 600.0
    deadline: float | None = None
    solver: tuple[str, ...] = ()
    output: str = "text"
    symmetry: bool = True
    pruning: bool = True
    emit_smt: str | None = None
    extra_objects: int = 0

    def __post_init__(self):
        if self.mode == "validate" and not self.plan_file:
            raise ValueError("validate needs a plan file")
        if self.k_max < 0:
            raise ValueError("--kmax must be >= 0")


def _objects_arg(text: str) -> int:
    value = int(text.lstrip("+"))
    if value < 0:
        raise argparse.ArgumentTypeError("--objects takes a non-negative count")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcp", description="Lifted constraint-based temporal planner")
    sub = parser.add_subparsers(dest="mode", required=True)

    def common(p, kmax_default):
        p.add_argument("input", help="ANML-subset problem file")
        p.add_argument("--kmax", type=int, default=kmax_default, help="maximum depth")
        p.add_argument("--no-symmetry", action="store_true", help="omit symmetry-breaking constraints")
        p.add_argument("--no-pruning", action="store_true", help="keep token pairs on distinct fluents")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("plan", help="search for a plan by iterative deepening")
    common(p, 10)
    p.add_argument("--timeout", type=float, default=600.0, help="per-depth solver timeout in seconds")
    p.add_argument("--deadline", type=float, default=None, help="overall time budget in seconds")
    p.add_argument("--solver", default=None,
                   help=f"solver command (default: ${SOLVER_ENV} or {DEFAULT_SOLVER!r})")
    p.add_argument("--emit-smt", metavar="DIR", help="write depth_<k>.smt2 for each depth")
    p.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("validate", help="check a plan against a problem")
    p.add_argument("input", help="ANML-subset problem file")
    p.add_argument("plan", help="plan JSON file")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("encode", help="write the SMT-LIB encoding of depths 0..kmax")
    common(p, 2)
    p.add_argument("--emit-smt", metavar="DIR", help="output directory (default: stdout)")

    p = sub.add_parser("stats", help="encoding size per depth")
    common(p, 4)
    p.add_argument("--objects", type=_objects_arg, default=0, metavar="+N",
                   help="add N unused objects to every object type")
    return parser


def config_from_args(args) -> RunConfig:
    solver = getattr(args, "solver", None)
    return RunConfig(
        input=args.input,
        mode=args.mode,
        plan_file=getattr(args, "plan", None),
        k_max=getattr(args, "kmax", 10),
        timeout=getattr(args, "timeout", 600.0),
        deadline=getattr(args, "deadline", None),
        solver=tuple(shlex.split(solver)) if solver else default_solver_command(),
        output=args.format,
        symmetry=not getattr(args, "no_symmetry", False),
        pruning=not getattr(args, "no_pruning", False),
        emit_smt=getattr(args, "emit_smt", None),
        extra_objects=getattr(args, "objects", 0),
    )


def _emit(out, cfg: RunConfig, data: dict, text: str):
    out.write(json.dumps(data, indent=2) + "\n" if cfg.output == "json" else text + "\n")


def run_plan(cfg: RunConfig, problem, out, err) -> int:
    solver_cfg = SolverConfig(
        command=cfg.solver, timeout=cfg.timeout, deadline=cfg.deadline, k_max=cfg.k_max,
        options=EncodeOptions(symmetry=cfg.symmetry, pruning=cfg.pruning), emit_dir=cfg.emit_smt,
    )
    t0 = time.monotonic()
    outcome = lcp(problem, solver_cfg)
    wall = round(time.monotonic() - t0, 3)
    if isinstance(outcome, Solution):
        data = {"status": "solution", "depth": outcome.k, "time": wall, "plan": outcome.plan.to_dict()}
        _emit(out, cfg, data, f"solution at depth {outcome.k} ({wall}s)\n{outcome.plan.render()}")
        return EXIT_OK
    if isinstance(outcome, Exhausted):
        data = {"status": "exhausted", "depth": outcome.k_max, "time": wall}
        _emit(out, cfg, data, f"no plan up to depth {outcome.k_max} ({wall}s)")
        return EXIT_FAIL
    if isinstance(outcome, Timeout):
        err.write(f"timeout at depth {outcome.k}\n")
        _emit(out, cfg, {"status": "timeout", "depth": outcome.k, "time": wall}, f"timeout at depth {outcome.k}")
        return EXIT_ERROR
    assert isinstance(outcome, SolverError)
    err.write(f"solver failure at depth {outcome.k}: {outcome.details}\n")
    _emit(out, cfg, {"status": "error", "depth": outcome.k, "details": outcome.details, "time": wall},
          f"solver failure at depth {outcome.k}")
    return EXIT_ERROR


def run_validate(cfg: RunConfig, problem, out, err) -> int:
    try:
        plan = plan_from_json(Path(cfg.plan_file).read_text(encoding="utf-8"))
    except (OSError, PlanFormatError) as exc:
        err.write(f"cannot read plan {cfg.plan_file}: {exc}\n")
        return EXIT_ERROR
    report = validate_plan(problem, plan)
    data = {"valid": report.valid, "violations": [{"kind": v.kind, "detail": v.detail} for v in report.violations]}
    _emit(out, cfg, data, report.render())
    return EXIT_OK if report.valid else EXIT_FAIL


def run_encode(cfg: RunConfig, problem, out, err) -> int:
    opts = EncodeOptions(symmetry=cfg.symmetry, pruning=cfg.pruning)
    for k in range(cfg.k_max + 1):
        script = emit_smtlib(encode(gen_problem(problem, k), opts))
        if cfg.emit_smt:
            Path(cfg.emit_smt).mkdir(parents=True, exist_ok=True)
            path = Path(cfg.emit_smt, f"depth_{k}.smt2")
            path.write_text(script)
            out.write(f"{path}\n")
        else:
            out.write(f"; depth {k}\n{script}")
    return EXIT_OK


STATS_TAGS = (COHERENCE, SUPPORT, CONSISTENCY, SYMMETRY, DOMAIN)


def encoding_stats(problem, k_max: int, opts: EncodeOptions = EncodeOptions(), k_min: int = 1) -> list[dict]:
    rows = []
    for k in range(k_min, k_max + 1):
        f = encode(gen_problem(problem, k), opts)
        row = {"k": k, "variables": len(f.variables), "assertions": len(f.assertions)}
        row.update({tag: f.count(tag) for tag in STATS_TAGS})
        rows.append(row)
    return rows


def run_stats(cfg: RunConfig, problem, out, err) -> int:
    if cfg.extra_objects:
        problem = with_extra_objects(problem, cfg.extra_objects)
    rows = encoding_stats(problem, cfg.k_max, EncodeOptions(symmetry=cfg.symmetry, pruning=cfg.pruning))
    cols = ["k", "variables", "assertions", *STATS_TAGS]
    lines = ["  ".join(f"{c:>11}" for c in cols)]
    lines += ["  ".join(f"{r[c]:>11}" for c in cols) for r in rows]
    _emit(out, cfg, {"rows": rows}, "\n".join(lines))
    return EXIT_OK


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        problem = parse_file(cfg.input)
    except OSError as exc:
        err.write(f"cannot read {cfg.input}: {exc}\n")
        return EXIT_ERROR
    except ParseError as exc:
        for d in exc.diagnostics:
            err.write(f"{cfg.input}:{d}\n")
        return EXIT_ERROR
    handler = {"plan": run_plan, "validate": run_validate, "encode": run_encode, "stats": run_stats}[cfg.mode]
    return handler(cfg, problem, out, err)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "verbose", False):
        logging.basicConfig(level=logging.INFO, format="%(message)s")
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        print(f"lcp: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

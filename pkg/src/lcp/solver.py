"""Iterative deepening over bounded problems, solved by an external SMT process.

The solver is any program that reads an SMT-LIB v2 script on stdin and
answers ``sat``/``unsat`` followed by a model. One fresh process is spawned
per depth. The default command is ``z3 -in -smt2``, overridable with the
``LCP_SOLVER`` environment variable.
"""

from __future__ import annotations

import logging
import os
import re
import shlex
import subprocess
import time
from dataclasses import dataclass, field
from pathlib import Path

from .bounded import BoundedProblem, gen_problem
from .encoder import EncodeOptions, Formula, emit_smtlib, encode
from .model import Problem
from .plan import Plan, PlanStep

log = logging.getLogger(__name__)

SOLVER_ENV = "LCP_SOLVER"
DEFAULT_SOLVER = "z3 -in -smt2"


def default_solver_command() -> tuple[str, ...]:
    return tuple(shlex.split(os.environ.get(SOLVER_ENV, DEFAULT_SOLVER)))


@dataclass(frozen=True)
class SolverConfig:
    command: tuple[str, ...] = field(default_factory=default_solver_command)
    timeout: float = 60.0
    deadline: float | None = None
    k_max: int = 10
    options: EncodeOptions = EncodeOptions()
    emit_dir: str | None = None

    def __post_init__(self):
        if self.k_max < 0:
            raise ValueError("k_max must be >= 0")
        if self.timeout <= 0:
            raise ValueError("timeout must be > 0")


class SmtError(RuntimeError):
    """Solver could not be run or produced output we cannot interpret."""


class SmtTimeout(RuntimeError):
    pass


@dataclass(frozen=True)
class Model:
    values: dict

    def __getitem__(self, key):
        return self.values[key]


# ---------------------------------------------------------------- s-expressions

_SEXP_TOKEN = re.compile(r'\s+|;[^\n]*|(\()|(\))|(\|[^|]*\|)|("(?:[^"]|"")*")|([^\s()|";]+)')


def parse_sexps(text: str) -> list:
    stack: list[list] = [[]]
    pos = 0
    while pos < len(text):
        m = _SEXP_TOKEN.match(text, pos)
        if m is None:
            raise SmtError(f"cannot tokenize solver output at {text[pos:pos + 20]!r}")
        pos = m.end()
        lpar, rpar, quoted, string, atom = m.groups()
        if lpar:
            stack.append([])
        elif rpar:
            if len(stack) == 1:
                raise SmtError("unbalanced ')' in solver output")
            done = stack.pop()
            stack[-1].append(done)
        elif quoted:
            stack[-1].append(quoted[1:-1])
        elif string:
            stack[-1].append(string)
        elif atom:
            stack[-1].append(atom)
    if len(stack) != 1:
        raise SmtError("unbalanced '(' in solver output")
    return stack[0]


def _value(expr):
    if expr == "true":
        return True
    if expr == "false":
        return False
    if isinstance(expr, str) and re.fullmatch(r"\d+", expr):
        return int(expr)
    if isinstance(expr, list) and len(expr) == 2 and expr[0] == "-":
        inner = _value(expr[1])
        if isinstance(inner, int) and not isinstance(inner, bool):
            return -inner
    raise SmtError(f"unsupported model value {expr!r}")


def parse_model(exprs: list) -> dict:
    """Accepts ``(model (define-fun ...))``, bare define-fun lists and get-value pairs."""
    values = {}
    for block in exprs:
        if not isinstance(block, list):
            raise SmtError(f"unexpected {block!r} after sat")
        items = block[1:] if block[:1] == ["model"] else block
        for item in items:
            if not isinstance(item, list):
                raise SmtError(f"unexpected model entry {item!r}")
            if item and item[0] == "define-fun":
                if len(item) != 5 or item[2] != []:
                    raise SmtError(f"unsupported definition {item!r}")
                values[item[1]] = _value(item[4])
            elif len(item) == 2 and isinstance(item[0], str):
                values[item[0]] = _value(item[1])
            else:
                raise SmtError(f"unexpected model entry {item!r}")
    return values


def interpret_output(stdout: str, f: Formula) -> Model | None:
    exprs = parse_sexps(stdout)
    if not exprs:
        raise SmtError("solver produced no answer")
    head, rest = exprs[0], exprs[1:]
    if isinstance(head, list) and head[:1] == ["error"]:
        raise SmtError(f"solver error: {' '.join(map(str, head[1:]))}")
    if head == "unsat":
        return None
    if head == "unknown":
        raise SmtError("solver answered unknown")
    if head != "sat":
        raise SmtError(f"unexpected solver answer {head!r}")
    for e in rest:
        if isinstance(e, list) and e[:1] == ["error"]:
            raise SmtError(f"solver error: {' '.join(map(str, e[1:]))}")
    raw = parse_model(rest)
    values = {}
    for v in f.variables:
        if v.id in raw:
            x = raw[v.id]
            if (v.sort == "Bool") != isinstance(x, bool):
                raise SmtError(f"model value {x!r} has the wrong sort for {v.id}")
            if v.sort == "Int" and ((v.lower is not None and x < v.lower) or (v.upper is not None and x > v.upper)):
                raise SmtError(f"model value {x} for {v.id} outside [{v.lower}, {v.upper}]")
            values[v.id] = x
        else:
            # Solvers may omit variables that no assertion constrains.
            values[v.id] = False if v.sort == "Bool" else (v.lower if v.lower is not None else 0)
    return Model(values)


def check_smt(f: Formula, cfg: SolverConfig = SolverConfig(), timeout: float | None = None) -> Model | None:
    """Model if satisfiable, None if unsat; raises SmtTimeout or SmtError."""
    script = emit_smtlib(f)
    budget = cfg.timeout if timeout is None else timeout
    try:
        proc = subprocess.run(list(cfg.command), input=script, capture_output=True, text=True, timeout=budget)
    except subprocess.TimeoutExpired as exc:
        raise SmtTimeout(f"solver exceeded {budget:.1f}s") from exc
    except OSError as exc:
        raise SmtError(f"cannot run solver {' '.join(cfg.command)!r}: {exc}") from exc
    if proc.returncode != 0 and not proc.stdout.strip():
        raise SmtError(f"solver exited with {proc.returncode}: {proc.stderr.strip()}")
    return interpret_output(proc.stdout, f)


# ---------------------------------------------------------------- plans


class ExtractionError(ValueError):
    pass


def extract_solution(m: Model, bp: BoundedProblem) -> Plan:
    def decode(v):
        x = m.values[v.id] if not v.is_constant else v.value
        if not v.type.contains(x):
            raise ExtractionError(f"{v.id} = {x} is outside {v.type.name}")
        return v.type.decode(x)

    steps = []
    for name, instances in bp.instances.items():
        template = bp.problem.template(name)
        positions = [template.body.variables.index(p) for p in template.params]
        for c in instances:
            if not m.values[bp.present(c).id]:
                continue
            params = tuple(decode(c.variables[i]) for i in positions)
            steps.append(PlanStep(name, params, decode(c.start), decode(c.end), c.origin[1]))
    steps.sort(key=lambda s: (s.start, s.action, s.index))
    goal = {v.label: decode(v) for v in bp.initial.variables}
    return Plan(tuple(steps), goal, bp.depth)


# ---------------------------------------------------------------- outcomes


@dataclass(frozen=True)
class Solution:
    plan: Plan
    k: int


@dataclass(frozen=True)
class Exhausted:
    k_max: int


@dataclass(frozen=True)
class Timeout:
    k: int


@dataclass(frozen=True)
class SolverError:
    details: str
    k: int | None = None


SolveOutcome = Solution | Exhausted | Timeout | SolverError


def lcp(p: Problem, cfg: SolverConfig = SolverConfig()) -> SolveOutcome:
    """Solve depth 0, 1, ... up to ``cfg.k_max``; first satisfiable depth wins."""
    from .validate import validate_plan

    started = time.monotonic()
    for k in range(cfg.k_max + 1):
        budget = cfg.timeout
        if cfg.deadline is not None:
            remaining = cfg.deadline - (time.monotonic() - started)
            if remaining <= 0:
                return Timeout(k)
            budget = min(budget, remaining)
        bp = gen_problem(p, k)
        formula = encode(bp, cfg.options)
        if cfg.emit_dir is not None:
            Path(cfg.emit_dir).mkdir(parents=True, exist_ok=True)
            Path(cfg.emit_dir, f"depth_{k}.smt2").write_text(emit_smtlib(formula))
        t0 = time.monotonic()
        try:
            model = check_smt(formula, cfg, timeout=budget)
        except SmtTimeout:
            return Timeout(k)
        except SmtError as exc:
            return SolverError(str(exc), k)
        log.info("depth %d: %s in %.3fs (%d vars, %d assertions)", k, "sat" if model else "unsat",
                 time.monotonic() - t0, len(formula.variables), len(formula.assertions))
        if model is None:
            continue
        try:
            plan = extract_solution(model, bp)
        except (ExtractionError, KeyError) as exc:
            return SolverError(f"cannot extract plan: {exc}", k)
        report = validate_plan(p, plan)
        if not report.valid:
            return SolverError("extracted plan fails validation: " + "; ".join(map(str, report.violations)), k)
        return Solution(plan, k)
    return Exhausted(cfg.k_max)

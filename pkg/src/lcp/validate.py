"""Plan validation and exhaustive satisfiability checking.

Both work on ground tokens and never look at the SMT encoding. A plan is
checked against three requirements:

* every chronicle constraint holds under the plan's bindings,
* every condition is supported by one effect on the same ground state
  variable with the same value, established no later than the condition
  starts,
* no two effects on the same ground state variable overlap on ]s, t].

The persistence ``t`` of an effect is not part of a plan. It is rebuilt as
the latest end of the conditions the effect supports (or the effect's own
end). Each condition is matched to the supporting candidate with the
latest end, ties broken by latest start.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .bounded import gen_problem
from .model import (
    OBJECT, TIME, Chronicle, Cmp, FluentSignature, Problem, TypeDef, Variable, atoms, evaluate, instantiate_template,
)
from .plan import Plan, PlanStep

COHERENCE_OVERLAP = "coherence-overlap"
UNSUPPORTED = "unsupported-condition"
CONSTRAINT = "constraint-violation"
ILL_TYPED = "ill-typed-step"
UNBOUND = "unbound-variable"


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def render(self) -> str:
        if self.valid:
            return "plan is valid"
        return "plan is invalid\n" + "\n".join(f"  {v}" for v in self.violations)


@dataclass(frozen=True, slots=True)
class GroundToken:
    kind: str
    sv: tuple  # (fluent name, argument ordinals)
    value: int
    start: int
    end: int
    owner: str
    fluent: FluentSignature

    def describe(self) -> str:
        """Ground rendering such as ``loc(R1) := L2``."""
        name, args = self.sv
        if args:
            name += "(" + ", ".join(str(t.decode(a)) for t, a in zip(self.fluent.param_types, args)) + ")"
        op = "==" if self.kind == "condition" else ":="
        return f"{name} {op} {self.fluent.value_type.decode(self.value)}"


def ground_tokens(c: Chronicle, value_of) -> tuple[list[GroundToken], list[GroundToken]]:
    def val(v: Variable) -> int:
        return v.value if v.is_constant else value_of(v.id)

    conds = [GroundToken("condition", (x.sv.fluent.name, tuple(map(val, x.sv.params))), val(x.value),
                         val(x.start), val(x.end), c.id, x.sv.fluent) for x in c.conditions]
    effs = [GroundToken("effect", (x.sv.fluent.name, tuple(map(val, x.sv.params))), val(x.value),
                        val(x.start), val(x.end), c.id, x.sv.fluent) for x in c.effects]
    return conds, effs


def check_tokens(conds: list[GroundToken], effs: list[GroundToken], first_only: bool = False) -> list[Violation]:
    """Support and coherence over ground tokens of present chronicles."""
    out = []
    by_sv: dict[tuple, list[int]] = {}
    for i, e in enumerate(effs):
        by_sv.setdefault(e.sv, []).append(i)
    persist = [e.end for e in effs]
    for c in conds:
        best = None
        for i in by_sv.get(c.sv, ()):
            e = effs[i]
            if e.value == c.value and e.end <= c.start:
                if best is None or (e.end, e.start) > (effs[best].end, effs[best].start):
                    best = i
        if best is None:
            out.append(Violation(UNSUPPORTED, f"{c.owner}: [{c.start}, {c.end}] {c.describe()}"))
            if first_only:
                return out
        elif c.end > persist[best]:
            persist[best] = c.end
    for idxs in by_sv.values():
        for a, b in itertools.combinations(idxs, 2):
            if not (persist[a] <= effs[b].start or persist[b] <= effs[a].start):
                ea, eb = effs[a], effs[b]
                out.append(Violation(COHERENCE_OVERLAP,
                                     f"{ea.owner}: {ea.describe()} on ]{ea.start}, {persist[a]}] overlaps "
                                     f"{eb.owner}: {eb.describe()} on ]{eb.start}, {persist[b]}]"))
                if first_only:
                    return out
    return out


def chronicle_constraints(c: Chronicle) -> tuple:
    return tuple(c.constraints) + tuple(c.implicit_constraints())


def check_constraints(c: Chronicle, value_of) -> list[Violation]:
    return [Violation(CONSTRAINT, f"{c.id}: {x}") for x in chronicle_constraints(c) if not evaluate(x, value_of)]


# ---------------------------------------------------------------- enumeration


def _domain(v: Variable, horizon: int) -> range:
    lo, hi = v.type.domain()
    if hi is None:
        hi = horizon
    return range(lo, hi + 1)


def enumerate_local(c: Chronicle, horizon: int, fixed: dict | None = None, limit: int | None = None):
    """Assignments of ``c``'s free variables satisfying its own constraints.

    Time values range over [0, horizon]. ``fixed`` pins some variables.
    Constraints are checked as soon as all their variables are assigned.
    """
    fixed = fixed or {}
    free = [v for v in c.variables if v.id not in fixed]
    position = {v.id: i for i, v in enumerate(free)}
    checks: list[list] = [[] for _ in free]
    pending = []
    for x in chronicle_constraints(c):
        ids = {v.id for v in x.variables() if not v.is_constant}
        idx = [position[i] for i in ids if i in position]
        if idx:
            checks[max(idx)].append(x)
        else:
            pending.append(x)
    values = dict(fixed)
    if any(not evaluate(x, values.__getitem__) for x in pending):
        return
    if not free:
        yield dict(values)
        return
    domains = [_domain(v, horizon) for v in free]
    count = 0

    def rec(i):
        nonlocal count
        v = free[i]
        for x in domains[i]:
            values[v.id] = x
            if all(evaluate(cx, values.__getitem__) for cx in checks[i]):
                if i + 1 == len(free):
                    count += 1
                    yield dict(values)
                    if limit is not None and count >= limit:
                        return
                else:
                    yield from rec(i + 1)
                    if limit is not None and count >= limit:
                        return
        del values[v.id]

    yield from rec(0)


# ---------------------------------------------------------------- plan validation


def _decode_param(t: TypeDef, raw) -> int | None:
    if t.kind == OBJECT:
        return t.ordinal(raw) if isinstance(raw, str) and raw in t.members else None
    if isinstance(raw, bool) or not isinstance(raw, int) or not t.contains(raw):
        return None
    return raw


def _step_key(s: PlanStep):
    return (s.action, s.start, s.end, tuple(map(str, s.params)))


def _propagate(c: Chronicle, values: dict) -> None:
    """Fill variables fixed by equalities ``x = y + c`` with a known side."""
    changed = True
    eqs = [x for x in c.constraints if isinstance(x, Cmp) and x.op == "=" and x.lhs.type.kind == TIME]
    while changed:
        changed = False
        for x in eqs:
            lhs = x.lhs.value if x.lhs.is_constant else values.get(x.lhs.id)
            rhs = x.rhs.value if x.rhs.is_constant else values.get(x.rhs.id)
            if lhs is None and rhs is not None:
                values[x.lhs.id] = rhs + x.offset
                changed = True
            elif rhs is None and lhs is not None:
                values[x.rhs.id] = lhs - x.offset
                changed = True


def _time_window(p: Problem, plan: Plan) -> int:
    times = [0] + [t for s in plan.steps for t in (s.start, s.end)]
    c0 = p.initial
    slack = 0
    for x in c0.constraints:
        for a in atoms(x):
            if isinstance(a, Cmp):
                times += [v.value for v in a.variables() if v.is_constant and v.type.kind == TIME]
                slack += abs(a.offset)
    for item in (*c0.conditions, *c0.effects):
        times += [v.value for v in (item.start, item.end) if v.is_constant]
    return max(times) + slack + 1


def validate_plan(p: Problem, plan: Plan, search_limit: int = 10 ** 6) -> ValidationReport:
    """Check ``plan`` against ``p`` without going through the encoding.

    Goal bindings missing from the plan are searched over their domains,
    with times bounded by a window derived from the plan and the initial
    chronicle; the binding with fewest violations is reported.
    """
    typing = []
    for n, s in enumerate(plan.steps):
        try:
            a = p.template(s.action)
        except KeyError:
            typing.append(Violation(ILL_TYPED, f"step {n}: unknown action {s.action!r}"))
            continue
        if len(s.params) != len(a.params):
            typing.append(Violation(ILL_TYPED, f"step {n}: {s.action} takes {len(a.params)} parameters, "
                                               f"got {len(s.params)}"))
            continue
        for v, raw in zip(a.params, s.params):
            if _decode_param(v.type, raw) is None:
                typing.append(Violation(ILL_TYPED, f"step {n}: {raw!r} is not a {v.type.name} "
                                                   f"for parameter {v.label} of {s.action}"))
        for name, t in (("start", s.start), ("end", s.end)):
            if isinstance(t, bool) or not isinstance(t, int) or t < 0:
                typing.append(Violation(ILL_TYPED, f"step {n}: {name} time {t!r} is not a non-negative integer"))
    c0 = p.initial
    goal_fixed = {}
    labels = {v.label: v for v in c0.variables}
    for label, raw in plan.goal.items():
        v = labels.get(label)
        if v is None:
            typing.append(Violation(ILL_TYPED, f"goal binding for unknown variable {label!r}"))
            continue
        x = _decode_param(v.type, raw)
        if x is None:
            typing.append(Violation(ILL_TYPED, f"goal binding {label}={raw!r} is not a {v.type.name}"))
        else:
            goal_fixed[v.id] = x
    if typing:
        return ValidationReport(tuple(typing))

    violations: list[Violation] = []
    conds: list[GroundToken] = []
    effs: list[GroundToken] = []
    counters: dict[str, int] = {}
    for s in sorted(plan.steps, key=_step_key):
        a = p.template(s.action)
        counters[s.action] = counters.get(s.action, 0) + 1
        c = instantiate_template(a, counters[s.action], p)
        values = {c.start.id: s.start, c.end.id: s.end}
        positions = [a.body.variables.index(v) for v in a.params]
        for i, v, raw in zip(positions, a.params, s.params):
            values[c.variables[i].id] = _decode_param(v.type, raw)
        _propagate(c, values)
        missing = [v.id for v in c.variables if v.id not in values]
        if missing:
            violations.append(Violation(UNBOUND, f"{c.id}: cannot determine {', '.join(missing)}"))
            continue
        violations += check_constraints(c, values.__getitem__)
        cs, es = ground_tokens(c, values.__getitem__)
        conds += cs
        effs += es

    _propagate(c0, goal_fixed)
    free = [v for v in c0.variables if v.id not in goal_fixed]
    if not free:
        best = check_constraints(c0, goal_fixed.__getitem__)
        cs, es = ground_tokens(c0, goal_fixed.__getitem__)
        best += check_tokens(cs + conds, es + effs)
    else:
        window = _time_window(p, plan)
        size = math.prod(len(_domain(v, window)) for v in free)
        if size > search_limit:
            return ValidationReport(tuple(violations) + (
                Violation(UNBOUND, f"init: no binding given for {', '.join(v.label for v in free)}"),))
        best = None
        for values in enumerate_local(c0, window, goal_fixed):
            cs, es = ground_tokens(c0, values.__getitem__)
            found = check_tokens(cs + conds, es + effs)
            if best is None or len(found) < len(best):
                best = found
            if not found:
                break
        if best is None:
            best = [Violation(CONSTRAINT, "init: no binding of the goal variables satisfies "
                                          "the initial chronicle's constraints")]
    violations += best
    return ValidationReport(tuple(violations))


# ---------------------------------------------------------------- oracle


@dataclass(frozen=True)
class OracleConfig:
    horizon: int = 10
    max_assignments: int = 10 ** 7
    max_k: int = 3

    def __post_init__(self):
        if self.horizon < 0:
            raise ValueError("horizon must be >= 0")


@dataclass(frozen=True)
class OracleResult:
    status: str
    witness: Plan | None = None
    assignments: int = 0

    @property
    def sat(self) -> bool:
        return self.status == "sat"


class _Option:
    __slots__ = ("values", "conds", "effs")

    def __init__(self, values, conds, effs):
        self.values, self.conds, self.effs = values, conds, effs


def _transitions_clash(new: list[GroundToken], existing: list[GroundToken]) -> bool:
    for a in new:
        sv, s, e = a.sv, a.start, a.end
        for b in existing:
            if b.sv == sv and not (e <= b.start or b.end <= s):
                return True
    return False


def brute_force_sat(p: Problem, k: int, cfg: OracleConfig = OracleConfig()) -> OracleResult:
    """Exhaustive search over presence, parameters and times in [0, horizon].

    The assignment space counted against the budget is the product, over
    chronicles, of their locally consistent assignments (plus one for
    absence of an action chronicle).
    """
    if k > cfg.max_k:
        return OracleResult("blown-budget")
    bp = gen_problem(p, k)
    options: list[list[_Option]] = []
    for c in bp.chronicles:
        raw = math.prod(len(_domain(v, cfg.horizon)) for v in c.variables)
        if raw > cfg.max_assignments:
            return OracleResult("blown-budget")
        opts = []
        for values in enumerate_local(c, cfg.horizon):
            cs, es = ground_tokens(c, values.__getitem__)
            opts.append(_Option(values, cs, es))
        options.append(opts)
    total = len(options[0]) * math.prod(1 + len(o) for o in options[1:])
    if total > cfg.max_assignments:
        return OracleResult("blown-budget", assignments=total)
    if not options[0]:
        return OracleResult("unsat", assignments=total)

    chronicles = bp.chronicles
    chosen: list[int | None] = [None] * len(chronicles)
    # Instances of one template are interchangeable: enumerate them as a
    # present prefix with non-decreasing option indices.
    previous = [None] + [
        i - 1 if i > 1 and chronicles[i - 1].origin[0] == c.origin[0] else None
        for i, c in enumerate(chronicles[1:], start=1)
    ]

    def dfs(i: int, conds: list, effs: list) -> bool:
        if i == len(chronicles):
            return not check_tokens(conds, effs, first_only=True)
        prev = previous[i]
        if i > 0:
            chosen[i] = None
            if dfs(i + 1, conds, effs):
                return True
            if prev is not None and chosen[prev] is None:
                return False
        first = chosen[prev] if prev is not None else 0
        for j in range(first, len(options[i])):
            opt = options[i][j]
            if _transitions_clash(opt.effs, effs):
                continue
            chosen[i] = j
            if dfs(i + 1, conds + opt.conds, effs + opt.effs):
                return True
        chosen[i] = None
        return False

    if not dfs(0, [], []):
        return OracleResult("unsat", assignments=total)
    return OracleResult("sat", _witness(bp, [None if j is None else options[i][j] for i, j in enumerate(chosen)]), total)


def _witness(bp, chosen) -> Plan:
    steps = []
    for c, opt in zip(bp.chronicles[1:], chosen[1:]):
        if opt is None:
            continue
        name, index = c.origin
        template = bp.problem.template(name)
        positions = [template.body.variables.index(v) for v in template.params]
        params = tuple(c.variables[i].type.decode(opt.values[c.variables[i].id]) for i in positions)
        steps.append(PlanStep(name, params, opt.values[c.start.id], opt.values[c.end.id], index))
    steps.sort(key=lambda s: (s.start, s.action, s.index))
    goal = {v.label: v.type.decode(chosen[0].values[v.id]) for v in bp.initial.variables}
    return Plan(tuple(steps), goal, bp.depth)

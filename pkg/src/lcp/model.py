"""Chronicle data model.

A planning problem is an initial chronicle plus a set of action templates.
Every chronicle is a tuple (V, X, C, E): variables, constraints over them,
conditions and effects on parameterized state variables.

Object values are handled as ordinals into their enumeration so that the
whole model maps onto linear integer arithmetic. Constants are variables
whose ``value`` is already fixed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Union

OBJECT = "object"
INT = "int"
TIME = "time"


@dataclass(frozen=True)
class TypeDef:
    name: str
    kind: str
    members: tuple[str, ...] = ()
    bounds: tuple[int, int] | None = None

    def domain(self) -> tuple[int, int | None]:
        """Inclusive integer bounds; ``None`` upper bound for time."""
        if self.kind == OBJECT:
            return 0, len(self.members) - 1
        if self.kind == INT:
            return self.bounds
        return 0, None

    def size(self) -> int | None:
        lo, hi = self.domain()
        return None if hi is None else hi - lo + 1

    def ordinal(self, name: str) -> int:
        return self.members.index(name)

    def decode(self, value: int) -> str | int:
        return self.members[value] if self.kind == OBJECT else value

    def encode(self, value: str | int) -> int:
        if self.kind == OBJECT:
            return self.ordinal(value)
        return int(value)

    def contains(self, value: int) -> bool:
        lo, hi = self.domain()
        return value >= lo and (hi is None or value <= hi)


TIME_TYPE = TypeDef("time", TIME)
BOOLEAN_TYPE = TypeDef("boolean", OBJECT, ("false", "true"))


@dataclass(frozen=True)
class Variable:
    id: str
    type: TypeDef
    label: str = ""
    origin: str = ""
    value: int | None = None

    @property
    def is_constant(self) -> bool:
        return self.value is not None

    @property
    def is_timepoint(self) -> bool:
        return self.type.kind == TIME

    def __str__(self) -> str:
        if self.is_constant:
            return str(self.type.decode(self.value))
        return self.id


def constant(type_: TypeDef, value: str | int) -> Variable:
    ordinal = type_.encode(value)
    return Variable(f"{type_.name}:{type_.decode(ordinal)}", type_, str(value), "", ordinal)


def time_constant(value: int) -> Variable:
    return constant(TIME_TYPE, value)


@dataclass(frozen=True)
class FluentSignature:
    name: str
    param_types: tuple[TypeDef, ...]
    value_type: TypeDef

    @property
    def arity(self) -> int:
        return len(self.param_types)


@dataclass(frozen=True)
class StateVariableRef:
    fluent: FluentSignature
    params: tuple[Variable, ...]

    def __str__(self) -> str:
        return f"{self.fluent.name}({', '.join(map(str, self.params))})"


# Constraint trees. ``Cmp`` reads ``lhs op rhs + offset``.

@dataclass(frozen=True)
class Cmp:
    op: str
    lhs: Variable
    rhs: Variable
    offset: int = 0

    def variables(self) -> Iterator[Variable]:
        yield self.lhs
        yield self.rhs

    def __str__(self) -> str:
        rhs = str(self.rhs)
        if self.offset:
            rhs += f" {'+' if self.offset > 0 else '-'} {abs(self.offset)}"
        return f"{self.lhs} {self.op} {rhs}"


@dataclass(frozen=True)
class Flag:
    """Boolean decision variable, used for presence."""

    id: str

    def variables(self) -> Iterator[Variable]:
        return iter(())

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True)
class And:
    args: tuple = ()

    def variables(self) -> Iterator[Variable]:
        for a in self.args:
            yield from a.variables()

    def __str__(self) -> str:
        return "(" + " and ".join(map(str, self.args)) + ")" if self.args else "true"


@dataclass(frozen=True)
class Or:
    args: tuple = ()

    def variables(self) -> Iterator[Variable]:
        for a in self.args:
            yield from a.variables()

    def __str__(self) -> str:
        return "(" + " or ".join(map(str, self.args)) + ")" if self.args else "false"


@dataclass(frozen=True)
class Implies:
    lhs: object
    rhs: object

    def variables(self) -> Iterator[Variable]:
        yield from self.lhs.variables()
        yield from self.rhs.variables()

    def __str__(self) -> str:
        return f"({self.lhs} => {self.rhs})"


Constraint = Union[Cmp, Flag, And, Or, Implies]

TRUE = And(())
FALSE = Or(())

_CMP_OPS = {
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
}


def conj(*args: Constraint) -> Constraint:
    flat = []
    for a in args:
        if a == FALSE:
            return FALSE
        if isinstance(a, And):
            flat.extend(a.args)
        else:
            flat.append(a)
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*args: Constraint) -> Constraint:
    flat = []
    for a in args:
        if a == TRUE:
            return TRUE
        if isinstance(a, Or):
            flat.extend(a.args)
        else:
            flat.append(a)
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def implies(lhs: Constraint, rhs: Constraint) -> Constraint:
    if lhs == TRUE:
        return rhs
    if lhs == FALSE or rhs == TRUE:
        return TRUE
    return Implies(lhs, rhs)


def evaluate(c: Constraint, value_of: Callable[[str], int | bool]) -> bool:
    """Truth value of ``c``; ``value_of`` maps non-constant ids to values."""

    def term(v: Variable) -> int:
        return v.value if v.is_constant else value_of(v.id)

    if isinstance(c, Cmp):
        return _CMP_OPS[c.op](term(c.lhs), term(c.rhs) + c.offset)
    if isinstance(c, Flag):
        return bool(value_of(c.id))
    if isinstance(c, And):
        return all(evaluate(a, value_of) for a in c.args)
    if isinstance(c, Or):
        return any(evaluate(a, value_of) for a in c.args)
    if isinstance(c, Implies):
        return not evaluate(c.lhs, value_of) or evaluate(c.rhs, value_of)
    raise TypeError(f"not a constraint: {c!r}")


def atoms(c: Constraint) -> Iterator[Constraint]:
    if isinstance(c, (And, Or)):
        for a in c.args:
            yield from atoms(a)
    elif isinstance(c, Implies):
        yield from atoms(c.lhs)
        yield from atoms(c.rhs)
    else:
        yield c


@dataclass(frozen=True)
class Condition:
    start: Variable
    end: Variable
    sv: StateVariableRef
    value: Variable

    def __str__(self) -> str:
        return f"[{self.start}, {self.end}] {self.sv} == {self.value}"


@dataclass(frozen=True)
class Effect:
    start: Variable
    end: Variable
    sv: StateVariableRef
    value: Variable

    def __str__(self) -> str:
        return f"[{self.start}, {self.end}] {self.sv} := {self.value}"


INITIAL = "initial"


@dataclass(frozen=True)
class Chronicle:
    id: str
    variables: tuple[Variable, ...] = ()
    constraints: tuple[Constraint, ...] = ()
    conditions: tuple[Condition, ...] = ()
    effects: tuple[Effect, ...] = ()
    start: Variable | None = None
    end: Variable | None = None
    origin: tuple[str, int] | str = INITIAL

    def implicit_constraints(self) -> tuple[Constraint, ...]:
        """Interval orderings that every chronicle carries without stating them."""
        out = []
        if self.start is not None and self.end is not None:
            out.append(Cmp("<=", self.start, self.end))
        for a in (*self.conditions, *self.effects):
            if a.start != a.end:
                out.append(Cmp("<=", a.start, a.end))
        return tuple(dict.fromkeys(out))

    def variable(self, label: str) -> Variable:
        for v in self.variables:
            if v.label == label:
                return v
        raise KeyError(label)


@dataclass(frozen=True)
class ActionTemplate:
    name: str
    params: tuple[Variable, ...]
    body: Chronicle

    @property
    def start(self) -> Variable:
        return self.body.start

    @property
    def end(self) -> Variable:
        return self.body.end


@dataclass(frozen=True)
class Problem:
    types: tuple[TypeDef, ...] = ()
    fluents: tuple[FluentSignature, ...] = ()
    initial: Chronicle = field(default_factory=lambda: Chronicle("init"))
    templates: tuple[ActionTemplate, ...] = ()

    def template(self, name: str) -> ActionTemplate:
        for a in self.templates:
            if a.name == name:
                return a
        raise KeyError(name)

    def type(self, name: str) -> TypeDef:
        for t in self.types:
            if t.name == name:
                return t
        if name == TIME_TYPE.name:
            return TIME_TYPE
        raise KeyError(name)

    def fluent(self, name: str) -> FluentSignature:
        for f in self.fluents:
            if f.name == name:
                return f
        raise KeyError(name)


# ---------------------------------------------------------------- validation


@dataclass(frozen=True)
class Diagnostic:
    chronicle: str
    element: str
    message: str

    def __str__(self) -> str:
        return f"{self.chronicle}: {self.message} ({self.element})"


def _check_typedef(t: TypeDef) -> list[str]:
    if t.kind == OBJECT:
        if not t.members:
            return [f"type {t.name} has no members"]
        if len(set(t.members)) != len(t.members):
            return [f"type {t.name} has duplicate members"]
    elif t.kind == INT:
        if t.bounds is None or t.bounds[0] > t.bounds[1]:
            return [f"type {t.name} has empty bounds {t.bounds}"]
    elif t.kind != TIME:
        return [f"type {t.name} has unknown kind {t.kind}"]
    return []


def _check_cmp(c: Cmp) -> str | None:
    a, b = c.lhs.type, c.rhs.type
    if c.op in ("=", "!=") and a != b:
        return f"comparison between {a.name} and {b.name}"
    if c.op in ("<=", "<") or c.offset:
        if a.kind == OBJECT or b.kind == OBJECT:
            return "ordering or offset on object values"
        if a.kind != b.kind:
            return f"comparison between {a.name} and {b.name}"
    return None


def validate_chronicle(c: Chronicle, p: Problem, flags: frozenset[str] = frozenset()) -> list[Diagnostic]:
    """Well-formedness issues of ``c``; empty when every invariant holds.

    ``flags`` lists boolean (presence) ids that constraints may reference.
    """
    issues: list[Diagnostic] = []

    def report(element, message):
        d = Diagnostic(c.id, str(element), message)
        if d not in issues:
            issues.append(d)

    declared = set()
    for v in c.variables:
        if v.id in declared:
            report(v.id, "duplicate variable")
        declared.add(v.id)
        for msg in _check_typedef(v.type):
            report(v.id, msg)
        if v.is_constant and not v.type.contains(v.value):
            report(v.id, "constant out of its type")

    def bound(v: Variable, element) -> bool:
        if v.is_constant:
            if not v.type.contains(v.value):
                report(element, f"constant {v.id} out of its type")
            return True
        if v.id not in declared:
            report(element, f"unbound variable {v.id}")
            return False
        return True

    for x in c.constraints:
        for a in atoms(x):
            if isinstance(a, Flag):
                if a.id not in flags:
                    report(x, f"unbound variable {a.id}")
                continue
            bound(a.lhs, x)
            bound(a.rhs, x)
            msg = _check_cmp(a)
            if msg:
                report(x, msg)

    for kind, items in (("condition", c.conditions), ("effect", c.effects)):
        for item in items:
            for tp in (item.start, item.end):
                if bound(tp, item) and not tp.is_timepoint:
                    report(item, f"{tp.id} used as a timepoint but is {tp.type.name}")
            fluent = item.sv.fluent
            if fluent not in p.fluents:
                report(item, f"unknown fluent {fluent.name}")
            if len(item.sv.params) != fluent.arity:
                report(item, f"{fluent.name} expects {fluent.arity} arguments, got {len(item.sv.params)}")
            else:
                for arg, t in zip(item.sv.params, fluent.param_types):
                    bound(arg, item)
                    if arg.type != t:
                        report(item, f"argument {arg} of {fluent.name} is {arg.type.name}, expected {t.name}")
            bound(item.value, item)
            if item.value.type != fluent.value_type:
                report(item, f"{kind} value {item.value} is {item.value.type.name}, "
                             f"expected {fluent.value_type.name}")

    for tp in (c.start, c.end):
        if tp is not None and bound(tp, tp.id) and not tp.is_timepoint:
            report(tp.id, "start/end must be timepoints")
    return issues


def validate_problem(p: Problem) -> list[Diagnostic]:
    issues = []
    names = [t.name for t in p.types] + [f.name for f in p.fluents] + [a.name for a in p.templates]
    seen = set()
    for n in names:
        if n in seen:
            issues.append(Diagnostic("problem", n, "duplicate name"))
        seen.add(n)
    for t in p.types:
        issues.extend(Diagnostic("problem", t.name, m) for m in _check_typedef(t))
    issues.extend(validate_chronicle(p.initial, p))
    for a in p.templates:
        issues.extend(validate_chronicle(a.body, p))
        if a.start is None or a.end is None:
            issues.append(Diagnostic(a.name, a.name, "action template without start/end"))
    return issues


# ------------------------------------------------------------- instantiation


class IllFormedTemplate(ValueError):
    pass


def _rename_constraint(c: Constraint, sub: Callable[[Variable], Variable]) -> Constraint:
    if isinstance(c, Cmp):
        return Cmp(c.op, sub(c.lhs), sub(c.rhs), c.offset)
    if isinstance(c, And):
        return And(tuple(_rename_constraint(a, sub) for a in c.args))
    if isinstance(c, Or):
        return Or(tuple(_rename_constraint(a, sub) for a in c.args))
    if isinstance(c, Implies):
        return Implies(_rename_constraint(c.lhs, sub), _rename_constraint(c.rhs, sub))
    return c


def instance_id(template: str, index: int) -> str:
    return f"{template}_{index}"


def instantiate_template(a: ActionTemplate, index: int, p: Problem) -> Chronicle:
    """Fresh copy of ``a``'s chronicle; variables are suffixed by ``index``."""
    if index < 1:
        raise ValueError(f"instance index must be >= 1, got {index}")
    issues = validate_chronicle(a.body, p)
    if issues:
        raise IllFormedTemplate("; ".join(map(str, issues)))
    cid = instance_id(a.name, index)
    fresh = {v.id: Variable(f"{cid}.{v.label}", v.type, v.label, cid) for v in a.body.variables}

    def sub(v: Variable) -> Variable:
        return v if v.is_constant else fresh[v.id]

    def sv(ref: StateVariableRef) -> StateVariableRef:
        return StateVariableRef(ref.fluent, tuple(map(sub, ref.params)))

    body = a.body
    return Chronicle(
        id=cid,
        variables=tuple(fresh[v.id] for v in body.variables),
        constraints=tuple(_rename_constraint(x, sub) for x in body.constraints),
        conditions=tuple(Condition(sub(x.start), sub(x.end), sv(x.sv), sub(x.value)) for x in body.conditions),
        effects=tuple(Effect(sub(x.start), sub(x.end), sv(x.sv), sub(x.value)) for x in body.effects),
        start=sub(body.start) if body.start is not None else None,
        end=sub(body.end) if body.end is not None else None,
        origin=(a.name, index),
    )

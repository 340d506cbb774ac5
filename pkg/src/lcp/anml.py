"""Parser for the ANML subset, and canonical JSON for problems.

The accepted grammar is documented in ``docs/anml_subset.md``. Each
``action`` block becomes an action template, top-level ``:=`` facts become
effects of the initial chronicle and ``goal`` blocks contribute conditions,
variables and constraints to it.

Parsing never returns a partial problem: any lexical, syntax or typing
error raises :class:`ParseError` carrying one diagnostic per problem found.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .model import (
    BOOLEAN_TYPE, INT, OBJECT, TIME, TIME_TYPE,
    ActionTemplate, And, Chronicle, Cmp, Condition, Constraint, Effect, Flag,
    FluentSignature, Implies, Or, Problem, StateVariableRef, TypeDef, Variable,
    constant, disj, time_constant,
)


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: str
    message: str
    span: SourceSpan

    def __str__(self) -> str:
        return f"{self.span}: {self.severity}: {self.message}"


class ParseError(Exception):
    def __init__(self, diagnostics: list[ParseDiagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(map(str, diagnostics)))


class _Abort(Exception):
    pass


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|//[^\n]*|/\*.*?\*/)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>:=|==|!=|<=|>=|[<>{}()\[\],;:=+\-])
""", re.VERBOSE | re.DOTALL)

KEYWORDS = {"type", "fluent", "function", "action", "goal", "duration", "in", "timepoint"}
BUILTIN_TYPES = {"boolean": BOOLEAN_TYPE}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            span = SourceSpan(pos, pos + 1, line, pos - line_start + 1)
            raise ParseError([ParseDiagnostic("error", f"unexpected character {text[pos]!r}", span)])
        kind = m.lastgroup
        span = SourceSpan(pos, m.end(), line, pos - line_start + 1)
        if kind != "ws":
            tokens.append(Token(kind, m.group(), span))
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = pos + m.group().rindex("\n") + 1
        pos = m.end()
    end = SourceSpan(len(text), len(text), line, len(text) - line_start + 1)
    tokens.append(Token("eof", "", end))
    return tokens


class _Scope:
    """Names visible inside one chronicle: its variables plus derived timepoints."""

    def __init__(self, prefix: str, origin: str):
        self.prefix = prefix
        self.origin = origin
        self.vars: dict[str, Variable] = {}
        self.order: list[Variable] = []
        self.constraints: list[Constraint] = []
        self.start: Variable | None = None
        self.end: Variable | None = None

    def declare(self, label: str, type_: TypeDef) -> Variable:
        v = Variable(f"{self.prefix}.{label}", type_, label, self.origin)
        self.vars[label] = v
        self.order.append(v)
        return v

    def shifted(self, base: Variable, offset: int) -> Variable:
        if offset == 0:
            return base
        if base.is_constant:
            return time_constant(base.value + offset)
        label = f"{base.label}{offset:+d}"
        if label not in self.vars:
            v = self.declare(label, TIME_TYPE)
            self.constraints.append(Cmp("=", v, base, offset))
        return self.vars[label]


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.errors: list[ParseDiagnostic] = []
        self.types: dict[str, TypeDef] = dict(BUILTIN_TYPES)
        self.declared_types: list[TypeDef] = []
        self.fluents: dict[str, FluentSignature] = {}
        self.templates: list[ActionTemplate] = []
        self.init = _Scope("init", "init")
        self.init_conditions: list[Condition] = []
        self.init_effects: list[Effect] = []
        self.anonymous_goals = 0

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, n: int = 1) -> Token:
        return self.tokens[min(self.i + n, len(self.tokens) - 1)]

    def at(self, *texts: str) -> bool:
        return self.tok.text in texts and self.tok.kind in ("op", "ident")

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def fail(self, message: str, span: SourceSpan | None = None):
        self.errors.append(ParseDiagnostic("error", message, span or self.tok.span))
        raise _Abort

    def error(self, message: str, span: SourceSpan):
        self.errors.append(ParseDiagnostic("error", message, span))

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind not in ("op", "ident"):
            self.fail(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != "ident" or self.tok.text in KEYWORDS:
            self.fail(f"expected {what}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def integer(self) -> int:
        sign = -1 if self.at("-") else 1
        if sign < 0:
            self.advance()
        if self.tok.kind != "int":
            self.fail(f"expected integer, found {self.tok.text or 'end of input'!r}")
        return sign * int(self.advance().text)

    # -- top level

    def parse(self) -> Problem:
        try:
            while self.tok.kind != "eof":
                if self.at(";"):
                    self.advance()
                elif self.at("type"):
                    self.type_decl()
                elif self.at("fluent", "function"):
                    self.fluent_decl()
                elif self.at("action"):
                    self.action_decl()
                elif self.at("goal"):
                    self.goal_decl()
                else:
                    self.fact()
        except _Abort:
            pass
        if self.errors:
            raise ParseError(self.errors)
        initial = Chronicle(
            id="init",
            variables=tuple(self.init.order),
            constraints=tuple(self.init.constraints),
            conditions=tuple(self.init_conditions),
            effects=tuple(self.init_effects),
        )
        return Problem(tuple(self.declared_types), tuple(self.fluents.values()), initial, tuple(self.templates))

    def check_fresh_name(self, tok: Token):
        if tok.text in self.types or tok.text in self.fluents or any(a.name == tok.text for a in self.templates):
            self.error(f"name {tok.text!r} already declared", tok.span)
            return False
        return True

    def type_decl(self):
        self.expect("type")
        name = self.ident("type name")
        self.expect("=")
        if self.at("{"):
            self.advance()
            members = [self.ident("object name")]
            while self.at(","):
                self.advance()
                members.append(self.ident("object name"))
            self.expect("}")
            t = TypeDef(name.text, OBJECT, tuple(m.text for m in members))
            seen = set()
            for m in members:
                if m.text in seen:
                    self.error(f"duplicate member {m.text!r} in type {name.text}", m.span)
                seen.add(m.text)
        elif self.at("["):
            self.advance()
            lo = self.integer()
            self.expect(",")
            hi = self.integer()
            self.expect("]")
            t = TypeDef(name.text, INT, bounds=(lo, hi))
            if lo > hi:
                self.error(f"empty integer range [{lo}, {hi}]", name.span)
        else:
            self.fail("expected '{' or '[' after '='")
        self.expect(";")
        if self.check_fresh_name(name):
            for other in self.declared_types:
                if other.kind == OBJECT and t.kind == OBJECT:
                    clash = set(other.members) & set(t.members)
                    if clash:
                        self.error(f"object {sorted(clash)[0]!r} declared in types {other.name} and {t.name}",
                                   name.span)
            self.types[t.name] = t
            self.declared_types.append(t)

    def type_ref(self) -> TypeDef:
        tok = self.ident("type name")
        if tok.text not in self.types:
            self.fail(f"unknown type {tok.text!r}", tok.span)
        return self.types[tok.text]

    def fluent_decl(self):
        self.advance()
        value_type = self.type_ref()
        name = self.ident("fluent name")
        params = []
        if self.at("("):
            self.advance()
            if not self.at(")"):
                params.append(self.fluent_param())
                while self.at(","):
                    self.advance()
                    params.append(self.fluent_param())
            self.expect(")")
        self.expect(";")
        if self.check_fresh_name(name):
            self.fluents[name.text] = FluentSignature(name.text, tuple(params), value_type)

    def fluent_param(self) -> TypeDef:
        t = self.type_ref()
        if t.kind != OBJECT:
            self.error(f"fluent parameters must be object-typed, {t.name} is not", self.tokens[self.i - 1].span)
        if self.tok.kind == "ident" and self.tok.text not in KEYWORDS:
            self.advance()
        return t

    # -- actions

    def action_decl(self):
        self.expect("action")
        name = self.ident("action name")
        scope = _Scope(name.text, name.text)
        params = []
        self.expect("(")
        if not self.at(")"):
            while True:
                t = self.type_ref()
                p = self.ident("parameter name")
                if p.text in scope.vars or p.text in ("start", "end"):
                    self.error(f"duplicate parameter {p.text!r}", p.span)
                else:
                    params.append(scope.declare(p.text, t))
                if not self.at(","):
                    break
                self.advance()
        self.expect(")")
        scope.start = scope.declare("start", TIME_TYPE)
        scope.end = scope.declare("end", TIME_TYPE)
        conditions, effects = [], []
        has_duration = False
        self.expect("{")
        while not self.at("}"):
            if self.tok.kind == "eof":
                self.fail("unterminated action block")
            if self.at("duration"):
                if has_duration:
                    self.error("duration given twice", self.tok.span)
                has_duration = True
                self.duration(scope)
            elif self.at("["):
                self.assertion(scope, conditions, effects, in_action=True)
            else:
                self.constraint(scope)
                self.expect(";")
        self.expect("}")
        if self.at(";"):
            self.advance()
        body = Chronicle(
            id=name.text,
            variables=tuple(scope.order),
            constraints=tuple(scope.constraints),
            conditions=tuple(conditions),
            effects=tuple(effects),
            start=scope.start,
            end=scope.end,
            origin=name.text,
        )
        if self.check_fresh_name(name):
            self.templates.append(ActionTemplate(name.text, tuple(params), body))

    def duration(self, scope: _Scope):
        self.expect("duration")
        if self.at(":="):
            self.advance()
            d = self.integer()
            if d < 0:
                self.error("negative duration", self.tokens[self.i - 1].span)
            scope.constraints.append(Cmp("=", scope.end, scope.start, d))
        else:
            self.expect(":")
            self.expect("in")
            self.expect("[")
            lo = self.integer()
            self.expect(",")
            hi = self.integer()
            self.expect("]")
            if lo > hi or lo < 0:
                self.error(f"invalid duration range [{lo}, {hi}]", self.tokens[self.i - 1].span)
            scope.constraints.append(And((Cmp("<=", scope.start, scope.end, -lo),
                                          Cmp("<=", scope.end, scope.start, hi))))
        self.expect(";")

    def annotation(self, scope: _Scope, in_action: bool) -> tuple[Variable, Variable]:
        self.expect("[")
        if in_action and self.at("all"):
            self.advance()
            self.expect("]")
            return scope.start, scope.end
        first = self.time_ref(scope, in_action)
        second = first
        if self.at(","):
            self.advance()
            second = self.time_ref(scope, in_action)
        self.expect("]")
        return first, second

    def time_ref(self, scope: _Scope, in_action: bool) -> Variable:
        tok = self.tok
        if tok.kind == "int":
            value = int(self.advance().text)
            base = scope.shifted(scope.start, value) if in_action else time_constant(value)
            return base
        name = self.ident("timepoint")
        base = scope.vars.get(name.text)
        if base is None or not base.is_timepoint:
            self.fail(f"unknown timepoint {name.text!r}", name.span)
        offset = 0
        if self.at("+", "-"):
            sign = 1 if self.advance().text == "+" else -1
            offset = sign * self.integer()
        return scope.shifted(base, offset)

    def assertion(self, scope: _Scope, conditions: list, effects: list, in_action: bool,
                  goal: bool = False, fact: bool = False):
        span = self.tok.span
        if self.at("["):
            s, e = self.annotation(scope, in_action)
        elif goal:
            self.anonymous_goals += 1
            s = e = scope.declare(f"goal{self.anonymous_goals}", TIME_TYPE)
        else:
            s = e = time_constant(0)
        sv = self.sv_expr(scope)
        if self.at("=="):
            op = self.advance()
            if fact:
                self.error("conditions outside goal blocks are not supported", op.span)
        elif self.at(":="):
            op = self.advance()
            if goal:
                self.error("effects are not allowed in goal blocks", op.span)
        else:
            self.fail("expected '==' or ':='")
        value = self.value(scope, sv.fluent.value_type if sv else None)
        self.expect(";")
        if sv is None or value is None:
            return
        if value.type != sv.fluent.value_type:
            self.error(f"{sv.fluent.name} takes values of type {sv.fluent.value_type.name}, "
                       f"got {value.type.name}", span)
            return
        if op.text == "==":
            conditions.append(Condition(s, e, sv, value))
        else:
            effects.append(Effect(s, e, sv, value))

    def sv_expr(self, scope: _Scope) -> StateVariableRef | None:
        name = self.ident("fluent name")
        args: list[tuple[Token, Variable | None]] = []
        if self.at("("):
            self.advance()
            if not self.at(")"):
                while True:
                    tok = self.tok
                    args.append((tok, self.atom(scope)))
                    if not self.at(","):
                        break
                    self.advance()
            self.expect(")")
        fluent = self.fluents.get(name.text)
        if fluent is None:
            self.error(f"unknown fluent {name.text!r}", name.span)
            return None
        if len(args) != fluent.arity:
            self.error(f"{fluent.name} expects {fluent.arity} argument(s), got {len(args)}", name.span)
            return None
        params = []
        for (tok, v), t in zip(args, fluent.param_types):
            if v is None:
                return None
            if v.type != t:
                self.error(f"argument {tok.text!r} of {fluent.name} has type {v.type.name}, expected {t.name}",
                           tok.span)
                return None
            params.append(v)
        return StateVariableRef(fluent, tuple(params))

    def atom(self, scope: _Scope, expected: TypeDef | None = None) -> Variable | None:
        """Identifier or integer; integers take the expected type (default time)."""
        tok = self.tok
        if tok.kind == "int" or (self.at("-") and self.peek().kind == "int"):
            value = self.integer()
            t = expected if expected is not None and expected.kind != OBJECT else TIME_TYPE
            if not t.contains(value):
                self.error(f"{value} is outside type {t.name}", tok.span)
                return None
            return constant(t, value)
        name = self.ident()
        if name.text in scope.vars:
            return scope.vars[name.text]
        for t in (*self.declared_types, BOOLEAN_TYPE):
            if t.kind == OBJECT and name.text in t.members:
                return constant(t, name.text)
        self.error(f"unknown identifier {name.text!r}", name.span)
        return None

    def value(self, scope: _Scope, expected: TypeDef | None) -> Variable | None:
        return self.atom(scope, expected)

    # -- constraints

    _FLIP = {">": "<", ">=": "<="}

    def term(self, scope: _Scope, expected: TypeDef | None = None) -> tuple[Token, Variable | None, int]:
        tok = self.tok
        v = self.atom(scope, expected)
        offset = 0
        if self.at("+", "-") and self.peek().kind == "int":
            sign = 1 if self.advance().text == "+" else -1
            offset = sign * self.integer()
        return tok, v, offset

    def constraint(self, scope: _Scope):
        ltok, lhs, loff = self.term(scope)
        if self.at("in"):
            self.advance()
            self.expect("{")
            options = [self.atom(scope, lhs.type if lhs else None)]
            while self.at(","):
                self.advance()
                options.append(self.atom(scope, lhs.type if lhs else None))
            self.expect("}")
            if lhs is None or any(o is None for o in options):
                return
            if loff:
                self.error("offsets are not allowed with 'in'", ltok.span)
                return
            for o in options:
                if o.type != lhs.type:
                    self.error(f"{o} is not a {lhs.type.name}", ltok.span)
                    return
            scope.constraints.append(disj(*(Cmp("=", lhs, o) for o in options)))
            return
        if not self.at("==", "!=", "<", "<=", ">", ">="):
            self.fail(f"expected comparison operator, found {self.tok.text or 'end of input'!r}")
        op = self.advance().text
        rtok, rhs, roff = self.term(scope, lhs.type if lhs is not None else None)
        if lhs is None or rhs is None:
            return
        if lhs.is_constant and lhs.type.kind != OBJECT and not rhs.is_constant:
            lhs = constant(rhs.type, lhs.value) if rhs.type.kind != OBJECT else lhs
        if op in self._FLIP:
            op = self._FLIP[op]
            lhs, rhs, loff, roff = rhs, lhs, roff, loff
            ltok, rtok = rtok, ltok
        op = {"==": "="}.get(op, op)
        if lhs.is_constant and rhs.is_constant:
            self.error("constraint between two constants", ltok.span)
            return
        if op in ("=", "!=") and lhs.type != rhs.type:
            self.error(f"cannot compare {lhs.type.name} with {rhs.type.name}", ltok.span)
            return
        if op in ("<", "<=") or loff or roff:
            if OBJECT in (lhs.type.kind, rhs.type.kind) or lhs.type.kind != rhs.type.kind:
                self.error(f"ordering/offset needs numeric operands of one kind, got "
                           f"{lhs.type.name} and {rhs.type.name}", ltok.span)
                return
        scope.constraints.append(Cmp(op, lhs, rhs, roff - loff))

    # -- initial chronicle

    def fact(self):
        self.assertion(self.init, self.init_conditions, self.init_effects, in_action=False, fact=True)

    def goal_decl(self):
        self.expect("goal")
        if not self.at("{"):
            self.assertion(self.init, self.init_conditions, self.init_effects, in_action=False, goal=True)
            return
        self.advance()
        while not self.at("}"):
            if self.tok.kind == "eof":
                self.fail("unterminated goal block")
            if self.at("["):
                self.assertion(self.init, self.init_conditions, self.init_effects, in_action=False, goal=True)
            elif self.at("timepoint") or (self.tok.kind == "ident" and self.peek().kind == "ident"
                                          and self.peek().text not in KEYWORDS):
                self.var_decl()
            elif self.tok.kind == "ident" and self.tok.text in self.fluents:
                self.assertion(self.init, self.init_conditions, self.init_effects, in_action=False, goal=True)
            else:
                self.constraint(self.init)
                self.expect(";")
        self.expect("}")
        if self.at(";"):
            self.advance()

    def var_decl(self):
        if self.at("timepoint"):
            self.advance()
            t = TIME_TYPE
        else:
            t = self.type_ref()
        names = [self.ident("variable name")]
        while self.at(","):
            self.advance()
            names.append(self.ident("variable name"))
        self.expect(";")
        for n in names:
            if n.text in self.init.vars:
                self.error(f"goal variable {n.text!r} declared twice", n.span)
            else:
                self.init.declare(n.text, t)


def parse_problem(text: str) -> Problem:
    """Parse ANML-subset source; raises :class:`ParseError` on any error."""
    return _Parser(text).parse()


def parse_file(path) -> Problem:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


# ---------------------------------------------------------------- JSON


def _type_json(t: TypeDef) -> dict:
    out = {"name": t.name, "kind": t.kind}
    if t.kind == OBJECT:
        out["members"] = list(t.members)
    elif t.kind == INT:
        out["bounds"] = list(t.bounds)
    return out


def _term_json(v: Variable):
    if v.is_constant:
        return {"type": v.type.name, "value": v.type.decode(v.value)}
    return v.id


def _constraint_json(c: Constraint) -> dict:
    if isinstance(c, Cmp):
        return {"op": c.op, "lhs": _term_json(c.lhs), "rhs": _term_json(c.rhs), "offset": c.offset}
    if isinstance(c, And):
        return {"and": [_constraint_json(a) for a in c.args]}
    if isinstance(c, Or):
        return {"or": [_constraint_json(a) for a in c.args]}
    if isinstance(c, Implies):
        return {"implies": [_constraint_json(c.lhs), _constraint_json(c.rhs)]}
    if isinstance(c, Flag):
        return {"flag": c.id}
    raise TypeError(c)


def _assertion_json(a) -> dict:
    return {
        "start": _term_json(a.start),
        "end": _term_json(a.end),
        "fluent": a.sv.fluent.name,
        "args": [_term_json(p) for p in a.sv.params],
        "value": _term_json(a.value),
    }


def _chronicle_json(c: Chronicle) -> dict:
    return {
        "id": c.id,
        "origin": c.origin if isinstance(c.origin, str) else list(c.origin),
        "variables": [{"id": v.id, "type": v.type.name, "label": v.label} for v in c.variables],
        "start": c.start.id if c.start is not None else None,
        "end": c.end.id if c.end is not None else None,
        "constraints": [_constraint_json(x) for x in c.constraints],
        "conditions": [_assertion_json(x) for x in c.conditions],
        "effects": [_assertion_json(x) for x in c.effects],
    }


def problem_to_dict(p: Problem) -> dict:
    return {
        "types": [_type_json(t) for t in p.types],
        "fluents": [
            {"name": f.name, "params": [t.name for t in f.param_types], "value": f.value_type.name}
            for f in p.fluents
        ],
        "initial": _chronicle_json(p.initial),
        "templates": [
            {"name": a.name, "params": [v.id for v in a.params], "chronicle": _chronicle_json(a.body)}
            for a in p.templates
        ],
    }


def problem_to_json(p: Problem) -> str:
    """Canonical JSON text; key order and list order are fixed."""
    return json.dumps(problem_to_dict(p), indent=2, ensure_ascii=False) + "\n"


def parse_json(text: str) -> Problem:
    data = json.loads(text)
    types = {"time": TIME_TYPE, "boolean": BOOLEAN_TYPE}
    declared = []
    for t in data["types"]:
        if t["kind"] == OBJECT:
            td = TypeDef(t["name"], OBJECT, tuple(t["members"]))
        elif t["kind"] == INT:
            td = TypeDef(t["name"], INT, bounds=tuple(t["bounds"]))
        else:
            td = TypeDef(t["name"], TIME)
        types[td.name] = td
        declared.append(td)
    fluents = {
        f["name"]: FluentSignature(f["name"], tuple(types[n] for n in f["params"]), types[f["value"]])
        for f in data["fluents"]
    }

    def chronicle(d: dict) -> Chronicle:
        variables = {v["id"]: Variable(v["id"], types[v["type"]], v["label"], d["id"]) for v in d["variables"]}

        def term(x) -> Variable:
            if isinstance(x, str):
                return variables[x]
            return constant(types[x["type"]], x["value"])

        def cons(x: dict) -> Constraint:
            if "op" in x:
                return Cmp(x["op"], term(x["lhs"]), term(x["rhs"]), x["offset"])
            if "and" in x:
                return And(tuple(map(cons, x["and"])))
            if "or" in x:
                return Or(tuple(map(cons, x["or"])))
            if "implies" in x:
                return Implies(cons(x["implies"][0]), cons(x["implies"][1]))
            return Flag(x["flag"])

        def sv(x: dict) -> StateVariableRef:
            return StateVariableRef(fluents[x["fluent"]], tuple(map(term, x["args"])))

        origin = d["origin"] if isinstance(d["origin"], str) else tuple(d["origin"])
        return Chronicle(
            id=d["id"],
            variables=tuple(variables.values()),
            constraints=tuple(map(cons, d["constraints"])),
            conditions=tuple(Condition(term(x["start"]), term(x["end"]), sv(x), term(x["value"]))
                             for x in d["conditions"]),
            effects=tuple(Effect(term(x["start"]), term(x["end"]), sv(x), term(x["value"]))
                          for x in d["effects"]),
            start=variables[d["start"]] if d["start"] else None,
            end=variables[d["end"]] if d["end"] else None,
            origin=origin,
        )

    templates = []
    for a in data["templates"]:
        body = chronicle(a["chronicle"])
        by_id = {v.id: v for v in body.variables}
        templates.append(ActionTemplate(a["name"], tuple(by_id[i] for i in a["params"]), body))
    return Problem(tuple(declared), tuple(fluents.values()), chronicle(data["initial"]), tuple(templates))


def with_extra_objects(p: Problem, n: int | dict[str, int]) -> Problem:
    """Copy of ``p`` where object types gain unused members.

    ``n`` is either one count for every object type or a per-type mapping.
    """
    data = problem_to_dict(p)
    for t in data["types"]:
        extra = n.get(t["name"], 0) if isinstance(n, dict) else n
        if t["kind"] == OBJECT:
            t["members"] += [f"{t['name']}_extra{i}" for i in range(extra)]
    return parse_json(json.dumps(data))

"""Compilation of a bounded problem into a QF_LIA formula.

Assertions come in five families, tagged in the formula metadata:
``coherence`` (pairs of effect tokens), ``support`` (one per condition
token), ``consistency`` (one per chronicle), ``symmetry`` and ``domain``.

With ``pruning`` on, token pairs on different fluent symbols are decided
statically. With it off, the fluent symbol is compared as an extra integer
parameter so that every pair still yields an assertion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounded import BoundedProblem, ConditionToken, EffectToken, condition_tokens, effect_tokens
from .model import (
    FALSE, TIME, TIME_TYPE, TRUE, And, Chronicle, Cmp, Constraint, Flag, Implies, Or, Variable,
    conj, disj, implies, time_constant,
)

COHERENCE = "coherence"
SUPPORT = "support"
CONSISTENCY = "consistency"
SYMMETRY = "symmetry"
DOMAIN = "domain"


@dataclass(frozen=True)
class EncodeOptions:
    symmetry: bool = True
    pruning: bool = True
    horizon: int | None = None


@dataclass(frozen=True)
class SortedVar:
    id: str
    sort: str
    lower: int | None = None
    upper: int | None = None


@dataclass(frozen=True)
class Assertion:
    tag: str
    constraint: Constraint
    sources: tuple[str, ...] = ()


@dataclass(frozen=True)
class Formula:
    variables: tuple[SortedVar, ...] = ()
    assertions: tuple[Assertion, ...] = ()

    def count(self, tag: str | None = None) -> int:
        return sum(1 for a in self.assertions if tag is None or a.tag == tag)

    def declared(self, var_id: str) -> SortedVar:
        for v in self.variables:
            if v.id == var_id:
                return v
        raise KeyError(var_id)

    def extended(self, *assertions: Assertion) -> Formula:
        return Formula(self.variables, self.assertions + assertions)


def _fluent_symbols(fluents) -> dict[str, Variable]:
    return {f.name: time_constant(i) for i, f in enumerate(fluents)}


def _same_fluent(a, b) -> bool:
    return a.sv.fluent.name == b.sv.fluent.name


def coherent(a: EffectToken, b: EffectToken, pruning: bool = True, symbols=None) -> Constraint:
    """(o and o') => t <= s' or t' <= s or some parameter differs."""
    if pruning and not _same_fluent(a, b):
        return TRUE
    separations = [Cmp("<=", a.persistence, b.start), Cmp("<=", b.persistence, a.start)]
    if not _same_fluent(a, b):
        separations.append(Cmp("!=", symbols[a.sv.fluent.name], symbols[b.sv.fluent.name]))
    else:
        separations += [Cmp("!=", p, q) for p, q in zip(a.sv.params, b.sv.params)]
    return implies(conj(a.presence.literal, b.presence.literal), disj(*separations))


def supported_by(c: ConditionToken, e: EffectToken, pruning: bool = True, symbols=None) -> Constraint:
    """o' and e' <= s and e <= t' and same state variable and same value."""
    same = _same_fluent(c, e) and c.value.type == e.value.type
    if pruning and not same:
        return FALSE
    parts = [e.presence.literal, Cmp("<=", e.end, c.start), Cmp("<=", c.end, e.persistence)]
    if not _same_fluent(c, e):
        parts.append(Cmp("=", symbols[c.sv.fluent.name], symbols[e.sv.fluent.name]))
    else:
        parts += [Cmp("=", p, q) for p, q in zip(c.sv.params, e.sv.params)]
    if c.value.type == e.value.type:
        parts.append(Cmp("=", c.value, e.value))
    else:
        parts.append(FALSE)
    return conj(*parts)


def supported(c: ConditionToken, effects, pruning: bool = True, symbols=None) -> Constraint:
    options = [supported_by(c, e, pruning, symbols) for e in effects]
    return implies(c.presence.literal, disj(*(o for o in options if o != FALSE)))


def consistent(bp: BoundedProblem, c: Chronicle, effects=None) -> Constraint:
    """present(c) => its constraints, interval orderings and persistence bounds."""
    if effects is None:
        effects = [e for e in effect_tokens(bp) if e.owner == c.id]
    parts = list(c.constraints) + list(c.implicit_constraints())
    parts += [Cmp("<=", e.end, e.persistence) for e in effects if e.owner == c.id]
    return implies(bp.present(c).literal, conj(*parts))


def symmetry_constraints(bp: BoundedProblem) -> list[Constraint]:
    out = []
    for name, inst in bp.instances.items():
        for prev, nxt in zip(inst, inst[1:]):
            out.append(implies(bp.present(nxt).literal, bp.present(prev).literal))
            out.append(Cmp("<=", prev.start, nxt.start))
    return out


def _sorted_var(v: Variable, horizon: int | None) -> SortedVar:
    lo, hi = v.type.domain()
    if v.type.kind == TIME and horizon is not None:
        hi = horizon
    return SortedVar(v.id, "Int", lo, hi)


def _domain_assertion(v: SortedVar) -> Constraint:
    ref = Variable(v.id, TIME_TYPE)
    parts = []
    if v.lower is not None:
        parts.append(Cmp("<=", _literal(v.lower), ref))
    if v.upper is not None:
        parts.append(Cmp("<=", ref, _literal(v.upper)))
    return conj(*parts)


def _literal(n: int) -> Variable:
    return Variable(f"int:{n}", TIME_TYPE, str(n), "", n)


def encode(bp: BoundedProblem, opts: EncodeOptions = EncodeOptions()) -> Formula:
    conditions = condition_tokens(bp)
    effects = effect_tokens(bp)
    symbols = _fluent_symbols(bp.problem.fluents)

    variables: list[SortedVar] = []
    for c in bp.chronicles:
        pres = bp.present(c)
        if pres.literal != TRUE:
            variables.append(SortedVar(pres.id, "Bool"))
        variables += [_sorted_var(v, opts.horizon) for v in c.variables]
        variables += [_sorted_var(e.persistence, opts.horizon) for e in effects if e.owner == c.id]

    assertions: list[Assertion] = []

    def add(tag, constraint, *sources):
        if constraint != TRUE:
            assertions.append(Assertion(tag, constraint, sources))

    for v in variables:
        if v.sort == "Int":
            add(DOMAIN, _domain_assertion(v), v.id)
    for c in bp.chronicles:
        add(CONSISTENCY, consistent(bp, c, effects), c.id)
    for i, a in enumerate(effects):
        for b in effects[i + 1:]:
            add(COHERENCE, coherent(a, b, opts.pruning, symbols), a.id, b.id)
    for c in conditions:
        add(SUPPORT, supported(c, effects, opts.pruning, symbols), c.id)
    if opts.symmetry:
        for x in symmetry_constraints(bp):
            add(SYMMETRY, x)
    return Formula(tuple(variables), tuple(assertions))


# ---------------------------------------------------------------- SMT-LIB

_SIMPLE_SYMBOL_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789~!@$%^&*_-+=<>.?/")


def smt_symbol(name: str) -> str:
    if name and not name[0].isdigit() and set(name) <= _SIMPLE_SYMBOL_CHARS:
        return name
    return "|" + name.replace("|", "_").replace("\\", "_") + "|"


def _int(n: int) -> str:
    return str(n) if n >= 0 else f"(- {-n})"


def _term(v: Variable, offset: int = 0) -> str:
    if v.is_constant:
        return _int(v.value + offset)
    sym = smt_symbol(v.id)
    if offset > 0:
        return f"(+ {sym} {offset})"
    if offset < 0:
        return f"(- {sym} {-offset})"
    return sym


def to_smt(c: Constraint) -> str:
    if isinstance(c, Cmp):
        lhs, rhs = _term(c.lhs), _term(c.rhs, c.offset)
        if c.op == "!=":
            return f"(not (= {lhs} {rhs}))"
        return f"({c.op} {lhs} {rhs})"
    if isinstance(c, Flag):
        return smt_symbol(c.id)
    if isinstance(c, And):
        if not c.args:
            return "true"
        return to_smt(c.args[0]) if len(c.args) == 1 else f"(and {' '.join(map(to_smt, c.args))})"
    if isinstance(c, Or):
        if not c.args:
            return "false"
        return to_smt(c.args[0]) if len(c.args) == 1 else f"(or {' '.join(map(to_smt, c.args))})"
    if isinstance(c, Implies):
        return f"(=> {to_smt(c.lhs)} {to_smt(c.rhs)})"
    raise TypeError(c)


def emit_smtlib(f: Formula) -> str:
    lines = ["(set-option :produce-models true)", "(set-logic QF_LIA)"]
    for v in f.variables:
        lines.append(f"(declare-const {smt_symbol(v.id)} {v.sort})")
    for a in f.assertions:
        note = f"; tag: {a.tag}"
        if a.sources:
            note += " " + " ".join(a.sources)
        lines.append(note)
        lines.append(f"(assert {to_smt(a.constraint)})")
    lines.append("(check-sat)")
    if f.variables:
        lines.append("(get-model)")
    return "\n".join(lines) + "\n"

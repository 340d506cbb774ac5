"""Bounded planning problems and their condition/effect tokens.

``gen_problem(p, k)`` keeps the initial chronicle and adds ``k`` optional
instances of every action template, each guarded by its own presence flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import (
    TIME_TYPE, Chronicle, Constraint, Flag, Problem, StateVariableRef, TRUE, Variable,
    instance_id, instantiate_template,
)

CONSTANT_TRUE = "constant-true"
DECISION = "boolean-decision"


@dataclass(frozen=True)
class PresenceVar:
    id: str
    owner: str
    kind: str

    @property
    def literal(self) -> Constraint:
        return TRUE if self.kind == CONSTANT_TRUE else Flag(self.id)


@dataclass(frozen=True)
class ConditionToken:
    presence: PresenceVar
    start: Variable
    end: Variable
    sv: StateVariableRef
    value: Variable
    owner: str
    index: int

    @property
    def id(self) -> str:
        return f"{self.owner}.c{self.index}"


@dataclass(frozen=True)
class EffectToken:
    presence: PresenceVar
    start: Variable
    end: Variable
    persistence: Variable
    sv: StateVariableRef
    value: Variable
    owner: str
    index: int

    @property
    def id(self) -> str:
        return f"{self.owner}.e{self.index}"


@dataclass(frozen=True)
class BoundedProblem:
    problem: Problem
    depth: int
    chronicles: tuple[Chronicle, ...]
    presence: dict[str, PresenceVar] = field(hash=False)
    instances: dict[str, tuple[Chronicle, ...]] = field(hash=False)

    @property
    def initial(self) -> Chronicle:
        return self.chronicles[0]

    def present(self, chronicle: Chronicle) -> PresenceVar:
        return self.presence[chronicle.id]


def presence_id(chronicle_id: str) -> str:
    return f"o_{chronicle_id}"


def gen_problem(p: Problem, k: int) -> BoundedProblem:
    if k < 0:
        raise ValueError(f"depth must be >= 0, got {k}")
    chronicles = [p.initial]
    presence = {p.initial.id: PresenceVar(presence_id(p.initial.id), p.initial.id, CONSTANT_TRUE)}
    instances = {}
    for a in p.templates:
        inst = tuple(instantiate_template(a, i, p) for i in range(1, k + 1))
        instances[a.name] = inst
        for c in inst:
            chronicles.append(c)
            presence[c.id] = PresenceVar(presence_id(c.id), c.id, DECISION)
    return BoundedProblem(p, k, tuple(chronicles), presence, instances)


def condition_tokens(bp: BoundedProblem) -> list[ConditionToken]:
    return [
        ConditionToken(bp.present(c), x.start, x.end, x.sv, x.value, c.id, j)
        for c in bp.chronicles
        for j, x in enumerate(c.conditions)
    ]


def persistence_variable(owner: str, index: int) -> Variable:
    return Variable(f"{owner}.e{index}.persist", TIME_TYPE, f"e{index}.persist", owner)


def effect_tokens(bp: BoundedProblem) -> list[EffectToken]:
    """One token per effect; each gets a fresh persistence timepoint."""
    return [
        EffectToken(bp.present(c), x.start, x.end, persistence_variable(c.id, j), x.sv, x.value, c.id, j)
        for c in bp.chronicles
        for j, x in enumerate(c.effects)
    ]


__all__ = [
    "BoundedProblem", "ConditionToken", "EffectToken", "PresenceVar",
    "condition_tokens", "effect_tokens", "gen_problem", "instance_id", "presence_id",
]

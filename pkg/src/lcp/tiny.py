"""Random tiny problems for cross-checking the encoding against the oracle.

Instances stay small enough for exhaustive enumeration: at most two
templates, three objects per type and short durations. Each instance
carries the horizon it should be checked under.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .anml import parse_problem
from .model import Problem


@dataclass(frozen=True)
class TinyInstance:
    seed: int
    source: str
    horizon: int

    @property
    def problem(self) -> Problem:
        return parse_problem(self.source)


def random_source(seed: int) -> tuple[str, int]:
    rng = random.Random(seed)
    lines = []
    types = {"T0": [f"a{i}" for i in range(rng.randint(2, 3))]}
    if rng.random() < 0.5:
        types["T1"] = [f"b{i}" for i in range(rng.randint(2, 3))]
    for name, members in types.items():
        lines.append(f"type {name} = {{{', '.join(members)}}};")
    type_names = list(types)

    fluents = {}
    for i in range(rng.randint(1, 2)):
        value = rng.choice(type_names + ["boolean"])
        params = [rng.choice(type_names)] if rng.random() < 0.6 else []
        fluents[f"f{i}"] = (params, value)
        sig = f"({', '.join(params)})" if params else ""
        lines.append(f"fluent {value} f{i}{sig};")

    def members(t):
        return ["false", "true"] if t == "boolean" else types[t]

    def pick(t, scope):
        local = [n for n, pt in scope if pt == t]
        if local and rng.random() < 0.7:
            return rng.choice(local)
        return rng.choice(members(t))

    def sv_text(name, scope):
        params, _ = fluents[name]
        if not params:
            return name
        return f"{name}({', '.join(pick(t, scope) for t in params)})"

    for a in range(rng.randint(1, 2)):
        scope = [(f"p{j}", rng.choice(type_names)) for j in range(rng.randint(1, 2))]
        head = ", ".join(f"{t} {n}" for n, t in scope)
        body = []
        if rng.random() < 0.8:
            body.append(f"duration := {rng.randint(1, 3)};")
        else:
            lo = rng.randint(1, 2)
            body.append(f"duration :in [{lo}, {lo + 1}];")
        for _ in range(rng.randint(0, 2)):
            f = rng.choice(list(fluents))
            ann = rng.choice(["[start]", "[start]", "[all]", "[end]"])
            body.append(f"{ann} {sv_text(f, scope)} == {pick(fluents[f][1], scope)};")
        for _ in range(rng.randint(1, 2)):
            f = rng.choice(list(fluents))
            ann = rng.choice(["[start, end]", "[end]", "[start, end]"])
            body.append(f"{ann} {sv_text(f, scope)} := {pick(fluents[f][1], scope)};")
        same = [(x, y) for (x, tx) in scope for (y, ty) in scope if x < y and tx == ty]
        if same and rng.random() < 0.5:
            x, y = rng.choice(same)
            body.append(f"{x} != {y};")
        lines.append(f"action A{a}({head}) {{")
        lines += [f"  {b}" for b in body]
        lines.append("};")

    for name, (params, value) in fluents.items():
        grounds = [[]] if not params else [[m] for m in members(params[0])]
        for g in grounds:
            if rng.random() < 0.75:
                sv = f"{name}({', '.join(g)})" if g else name
                lines.append(f"{sv} := {rng.choice(members(value))};")

    horizon = rng.randint(4, 8)
    goal = ["timepoint t;"]
    goal_type = None
    for _ in range(rng.randint(1, 2)):
        f = rng.choice(list(fluents))
        value = fluents[f][1]
        if goal_type is None and rng.random() < 0.4:
            goal_type = value
            options = rng.sample(members(value), k=2)
            goal += [f"{value} g;", f"g in {{{', '.join(options)}}};"]
            target = "g"
        elif goal_type == value and rng.random() < 0.5:
            target = "g"
        else:
            target = rng.choice(members(value))
        goal.append(f"[t] {sv_text(f, [])} == {target};")
    if rng.random() < 0.5:
        goal.append(f"t <= {rng.randint(2, horizon)};")
    lines.append("goal {")
    lines += [f"  {g}" for g in goal]
    lines.append("};")
    return "\n".join(lines) + "\n", horizon


def tiny_instance(seed: int) -> TinyInstance:
    source, horizon = random_source(seed)
    return TinyInstance(seed, source, horizon)

"""Timed plans and their JSON form (shared by the planner and the validator)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class PlanStep:
    action: str
    params: tuple
    start: int
    end: int
    index: int | None = None

    def __str__(self) -> str:
        return f"[{self.start}, {self.end}] {self.action}({', '.join(map(str, self.params))})"


@dataclass(frozen=True)
class Plan:
    steps: tuple[PlanStep, ...] = ()
    goal: dict = field(default_factory=dict, hash=False)
    depth: int | None = None

    def to_dict(self) -> dict:
        out = {
            "steps": [
                {"action": s.action, "params": list(s.params), "start": s.start, "end": s.end}
                | ({"index": s.index} if s.index is not None else {})
                for s in self.steps
            ],
            "goal": dict(self.goal),
        }
        if self.depth is not None:
            out["depth"] = self.depth
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def render(self) -> str:
        lines = [str(s) for s in self.steps] or ["(empty plan)"]
        if self.goal:
            lines.append("goal: " + ", ".join(f"{k}={v}" for k, v in self.goal.items()))
        return "\n".join(lines)


class PlanFormatError(ValueError):
    pass


def plan_from_dict(data) -> Plan:
    if isinstance(data, list):
        data = {"steps": data}
    if not isinstance(data, dict) or not isinstance(data.get("steps", []), list):
        raise PlanFormatError("plan must be an object with a 'steps' array")
    steps = []
    for raw in data.get("steps", []):
        try:
            steps.append(PlanStep(raw["action"], tuple(raw.get("params", [])), raw["start"], raw["end"],
                                  raw.get("index")))
        except (KeyError, TypeError) as exc:
            raise PlanFormatError(f"malformed step {raw!r}") from exc
    goal = data.get("goal", {})
    if not isinstance(goal, dict):
        raise PlanFormatError("'goal' must be an object")
    return Plan(tuple(steps), goal, data.get("depth"))


def plan_from_json(text: str) -> Plan:
    try:
        return plan_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise PlanFormatError(str(exc)) from exc

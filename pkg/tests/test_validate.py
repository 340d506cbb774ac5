import pytest
from hypothesis import given, settings, strategies as st

from lcp.anml import parse_problem
from lcp.bounded import gen_problem
from lcp.encoder import Assertion, EncodeOptions, encode
from lcp.model import FALSE, Cmp, Flag, Implies, time_constant
from lcp.plan import Plan, PlanStep
from lcp.solver import check_smt
from lcp.tiny import tiny_instance
from lcp.validate import (
    COHERENCE_OVERLAP, CONSTRAINT, ILL_TYPED, UNSUPPORTED, OracleConfig, brute_force_sat, validate_plan,
)

from conftest import requires_solver

GO = "Go"
GOOD = Plan((PlanStep(GO, ("R1", "L0", "L2"), 0, 10),), {"t": 10, "l": "L2"})
OVERLAP = Plan((PlanStep(GO, ("R1", "L0", "L2"), 0, 10), PlanStep(GO, ("R1", "L0", "L3"), 5, 15)))

ALREADY_TRUE = """
type Loc = {A, B};
fluent Loc at;
action Move(Loc x) { duration := 1; [end] at := x; };
at := A;
goal at == A;
"""


def test_truck_plan_valid(truck):
    assert validate_plan(truck, GOOD).valid


def test_goal_bindings_are_searched_when_omitted(truck):
    assert validate_plan(truck, Plan(GOOD.steps)).valid


def test_empty_plan_unsupported(truck):
    report = validate_plan(truck, Plan())
    assert report.kinds() == {UNSUPPORTED}
    assert "loc" in report.violations[0].detail


def test_overlapping_transitions(truck):
    assert COHERENCE_OVERLAP in validate_plan(truck, OVERLAP).kinds()


def test_ill_typed_step(truck):
    for step in [PlanStep(GO, ("R1", "L0", "Paris"), 0, 10), PlanStep(GO, ("R1", "L0"), 0, 10),
                 PlanStep("Fly", ("R1",), 0, 10), PlanStep(GO, ("R1", "L0", "L2"), -1, 9)]:
        assert validate_plan(truck, Plan((step,))).kinds() == {ILL_TYPED}
    assert validate_plan(truck, Plan(GOOD.steps, {"l": "Paris"})).kinds() == {ILL_TYPED}


def test_constraint_violations(truck):
    wrong_duration = Plan((PlanStep(GO, ("R1", "L0", "L2"), 0, 7),), {"t": 10, "l": "L2"})
    assert CONSTRAINT in validate_plan(truck, wrong_duration).kinds()
    too_late = Plan((PlanStep(GO, ("R1", "L0", "L2"), 95, 105),), {"t": 105, "l": "L2"})
    assert CONSTRAINT in validate_plan(truck, too_late).kinds()


def test_start_condition_must_hold(truck):
    plan = Plan((PlanStep(GO, ("R1", "L1", "L2"), 0, 10),), {"t": 10, "l": "L2"})
    assert validate_plan(truck, plan).kinds() == {UNSUPPORTED}


def test_chained_moves_valid(truck):
    plan = Plan((PlanStep(GO, ("R1", "L0", "L1"), 0, 10), PlanStep(GO, ("R1", "L1", "L3"), 10, 20)),
                {"t": 30, "l": "L3"})
    assert validate_plan(truck, plan).valid


@given(st.permutations(range(3)))
def test_order_independent(truck, perm):
    steps = [PlanStep(GO, ("R1", "L0", "L1"), 0, 10), PlanStep(GO, ("R1", "L1", "L3"), 10, 20),
             PlanStep(GO, ("R1", "L1", "L2"), 4, 14)]
    shuffled = Plan(tuple(steps[i] for i in perm), {"t": 30, "l": "L3"})
    reference = validate_plan(truck, Plan(tuple(steps), {"t": 30, "l": "L3"}))
    again = validate_plan(truck, shuffled)
    assert again == reference
    assert not again.valid


def test_oracle_truck(truck):
    cfg = OracleConfig(horizon=12)
    assert brute_force_sat(truck, 0, cfg).status == "unsat"
    res = brute_force_sat(truck, 1, cfg)
    assert res.sat
    (step,) = res.witness.steps
    assert step.params[:2] == ("R1", "L0") and step.params[2] in ("L2", "L3")
    assert step.start == 0
    assert validate_plan(truck, res.witness).valid


def test_oracle_goal_already_true():
    res = brute_force_sat(parse_problem(ALREADY_TRUE), 0, OracleConfig(horizon=3))
    assert res.sat and res.witness.steps == ()


def test_oracle_budget(truck):
    assert brute_force_sat(truck, 2, OracleConfig(horizon=12, max_assignments=10)).status == "blown-budget"
    assert brute_force_sat(truck, 4, OracleConfig(max_k=3)).status == "blown-budget"
    with pytest.raises(ValueError):
        OracleConfig(horizon=-1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3000), st.integers(0, 1))
def test_oracle_witnesses_validate(seed, k):
    inst = tiny_instance(seed)
    res = brute_force_sat(inst.problem, k, OracleConfig(horizon=inst.horizon, max_assignments=10 ** 5))
    if res.sat:
        assert validate_plan(inst.problem, res.witness).valid


def pinned(problem, plan, k, horizon=None):
    """Encoding of depth k with every decision fixed to the plan's bindings."""
    bp = gen_problem(problem, k)
    extra = []

    def fix(var, value):
        x = var.type.ordinal(value) if isinstance(value, str) else value
        extra.append(Assertion("pin", Cmp("=", var, time_constant(x))))

    for name, instances in bp.instances.items():
        template = problem.template(name)
        positions = [template.body.variables.index(v) for v in template.params]
        steps = sorted((s for s in plan.steps if s.action == name), key=lambda s: (s.start, s.end, s.params))
        for i, c in enumerate(instances):
            flag = Flag(bp.present(c).id)
            if i >= len(steps):
                extra.append(Assertion("pin", Implies(flag, FALSE)))
                continue
            extra.append(Assertion("pin", flag))
            for pos, raw in zip(positions, steps[i].params):
                fix(c.variables[pos], raw)
            fix(c.start, steps[i].start)
            fix(c.end, steps[i].end)
    for v in bp.initial.variables:
        if v.label in plan.goal:
            fix(v, plan.goal[v.label])
    return encode(bp, EncodeOptions(horizon=horizon)).extended(*extra)


@requires_solver
@pytest.mark.parametrize("plan, k, expected", [
    (GOOD, 1, True),
    (GOOD, 2, True),
    (Plan((PlanStep(GO, ("R1", "L0", "L1"), 0, 10), PlanStep(GO, ("R1", "L1", "L3"), 10, 20)),
          {"t": 30, "l": "L3"}), 2, True),
    (OVERLAP, 2, False),
    (Plan((PlanStep(GO, ("R1", "L1", "L2"), 0, 10),), {"t": 10, "l": "L2"}), 1, False),
    (Plan(goal={"t": 0, "l": "L2"}), 1, False),
])
def test_validator_agrees_with_encoding(truck, plan, k, expected):
    assert validate_plan(truck, plan).valid is expected
    assert (check_smt(pinned(truck, plan, k)) is not None) is expected


@requires_solver
@settings(max_examples=20, deadline=None)
@given(st.integers(0, 3000))
def test_oracle_witness_satisfies_pinned_encoding(seed):
    inst = tiny_instance(seed)
    res = brute_force_sat(inst.problem, 1, OracleConfig(horizon=inst.horizon, max_assignments=10 ** 5))
    if res.sat:
        assert check_smt(pinned(inst.problem, res.witness, 1, inst.horizon)) is not None

import json

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from lcp.anml import ParseError, parse_json, parse_problem, problem_to_json, with_extra_objects
from lcp.model import Cmp, Or, atoms, validate_problem
from lcp.tiny import tiny_instance

from conftest import PROBLEMS


def test_truck_shape(truck):
    assert [a.name for a in truck.templates] == ["Go"]
    assert len(truck.initial.effects) == 1
    assert len(truck.initial.conditions) == 1
    assert [t.name for t in truck.types] == ["Truck", "Loc"]
    assert validate_problem(truck) == []


def test_truck_go_body(truck):
    go = truck.template("Go").body
    assert [v.label for v in go.variables[:3]] == ["r", "ls", "le"]
    assert Cmp("=", go.end, go.start, 10) in go.constraints
    (cond,) = go.conditions
    assert cond.start == cond.end == go.start
    (eff,) = go.effects
    assert (eff.start, eff.end) == (go.start, go.end)


def test_truck_goal_constraints(truck):
    init = truck.initial
    t = init.variable("t")
    l = init.variable("l")
    assert any(isinstance(x, Cmp) and x.op == "<" and x.lhs == t and x.rhs.value == 100 for x in init.constraints)
    (disjunction,) = [x for x in init.constraints if isinstance(x, Or)]
    assert [(a.lhs, a.rhs.value) for a in disjunction.args] == [(l, 2), (l, 3)]
    (eff,) = init.effects
    assert eff.start.value == eff.end.value == 0
    assert eff.value.value == 0


def test_types_only_file():
    p = parse_problem("type A = {x, y};\ntype N = [0, 3];\n")
    assert p.templates == ()
    assert p.initial.conditions == () and p.initial.effects == ()


def test_arity_mismatch_diagnostic():
    src = "type Truck = {R1};\ntype Loc = {L0};\nfluent Loc loc(Truck r);\nloc(R1, R1) := L0;\n"
    with pytest.raises(ParseError) as exc:
        parse_problem(src)
    (d,) = exc.value.diagnostics
    assert "expects 1 argument" in d.message
    assert d.span.line == 4


@pytest.mark.parametrize("src, fragment", [
    ("type A = {x};\nfluent A f;\nf := z;", "unknown"),
    ("action Go() { duration := 1 };", "expected"),
    ("type A = {x};\ntype A = {y};", "already declared"),
    ("type A = {x", "expected"),
])
def test_error_diagnostics(src, fragment):
    with pytest.raises(ParseError) as exc:
        parse_problem(src)
    assert exc.value.diagnostics
    assert any(fragment in d.message for d in exc.value.diagnostics)


def test_every_action_has_one_start_end_and_duration(rovers):
    for a in rovers.templates:
        c = a.body
        assert c.start is not None and c.end is not None
        assert sum(1 for v in c.variables if v.label == "start") == 1
        assert sum(1 for v in c.variables if v.label == "end") == 1
        durations = [x for x in c.constraints if isinstance(x, Cmp) and {x.lhs, x.rhs} == {c.start, c.end}]
        assert len(durations) == 1


def test_all_and_interval_annotations():
    p = parse_problem("""
        type A = {x, y};
        fluent boolean ok(A a);
        action Use(A a) {
          duration :in [2, 4];
          [all] ok(a) == true;
          [start + 1] ok(a) := false;
          [end] ok(a) := true;
        };
    """)
    c = p.template("Use").body
    assert (c.conditions[0].start, c.conditions[0].end) == (c.start, c.end)
    mid = c.effects[0].start
    assert mid.label == "start+1" and Cmp("=", mid, c.start, 1) in c.constraints
    bounds = {a for x in c.constraints for a in atoms(x)}
    assert {Cmp("<=", c.start, c.end, -2), Cmp("<=", c.end, c.start, 4)} <= bounds


def test_truck_json_has_templates(truck):
    data = json.loads(problem_to_json(truck))
    assert list(data) == ["types", "fluents", "initial", "templates"]
    assert data["templates"][0]["name"] == "Go"


def test_empty_problem_json():
    data = json.loads(problem_to_json(parse_problem("")))
    assert data["types"] == [] and data["fluents"] == [] and data["templates"] == []
    assert data["initial"]["conditions"] == [] and data["initial"]["effects"] == []


@pytest.mark.parametrize("name", ["truck.anml", "rovers_like.anml"])
def test_json_round_trip(name):
    p = parse_problem((PROBLEMS / name).read_text())
    text = problem_to_json(p)
    q = parse_json(text)
    assert q == p
    assert problem_to_json(q) == text


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_json_round_trip_random_instances(seed):
    p = tiny_instance(seed).problem
    assert parse_json(problem_to_json(p)) == p


def test_extra_objects_only_grow_types(truck):
    big = with_extra_objects(truck, 3)
    assert big.type("Loc").size() == 7
    assert big.type("Truck").members[:1] == ("R1",)
    assert len(big.templates) == len(truck.templates)
    scaled = with_extra_objects(truck, {"Truck": 9, "Loc": 36})
    assert (scaled.type("Truck").size(), scaled.type("Loc").size()) == (10, 40)


_snippets = st.sampled_from([
    "type", "fluent", "action", "goal", "duration", ":=", "==", "!=", "<", "in", "timepoint",
    "{", "}", "(", ")", "[", "]", ",", ";", "start", "end", "all", "A", "x", "f", "Loc", "7", "-", "+",
    "boolean", "true", " ", "\n", "//c\n", "=", "#",
])


@settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.one_of(st.lists(_snippets, max_size=40).map(" ".join), st.text(max_size=80)))
def test_parser_is_total(src):
    try:
        p = parse_problem(src)
    except ParseError as exc:
        assert exc.diagnostics
    else:
        assert validate_problem(p) == []


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_truncated_sources_fail_cleanly(seed, data):
    src = tiny_instance(seed).source
    cut = data.draw(st.integers(0, len(src)))
    try:
        parse_problem(src[:cut])
    except ParseError as exc:
        assert exc.diagnostics

import pytest
from hypothesis import given, settings, strategies as st

from lcp.anml import parse_problem, with_extra_objects
from lcp.bounded import condition_tokens, effect_tokens, gen_problem
from lcp.encoder import (
    COHERENCE, CONSISTENCY, DOMAIN, SUPPORT, SYMMETRY, EncodeOptions, Formula, coherent, consistent,
    emit_smtlib, encode, supported, supported_by, symmetry_constraints,
)
from lcp.model import FALSE, TRUE, And, Cmp, Flag, Implies, Or, evaluate, time_constant
from lcp.tiny import tiny_instance

TWO_FLUENTS = """
type Truck = {R1};
type Loc = {L0, L1};
type Fuel = [0, 3];
fluent Loc loc(Truck r);
fluent Fuel fuel(Truck r);
action Go(Truck r, Loc a, Loc b) {
  duration := 2;
  [start] fuel(r) == 1;
  [start, end] loc(r) := b;
};
action Refuel(Truck r) {
  duration := 1;
  [end] fuel(r) := 1;
};
loc(R1) := L0;
"""


def evaluator(values):
    return lambda key: values[key]


def test_coherent_initial_vs_go(truck):
    init_eff, go_eff = effect_tokens(gen_problem(truck, 1))
    c = coherent(init_eff, go_eff)
    assert isinstance(c, Implies) and c.lhs == Flag("o_Go_1")
    assert c.rhs == Or((Cmp("<=", init_eff.persistence, go_eff.start),
                        Cmp("<=", go_eff.persistence, init_eff.start),
                        Cmp("!=", init_eff.sv.params[0], go_eff.sv.params[0])))


def test_coherent_distinct_fluents_is_true():
    p = parse_problem(TWO_FLUENTS)
    effs = effect_tokens(gen_problem(p, 1))
    loc = [e for e in effs if e.sv.fluent.name == "loc"][0]
    fuel = [e for e in effs if e.sv.fluent.name == "fuel"][0]
    assert coherent(loc, fuel) == TRUE
    assert coherent(loc, fuel, pruning=False, symbols={"loc": time_constant(0), "fuel": time_constant(1)}) != TRUE


def test_coherent_detects_overlap(truck):
    _, a, b = effect_tokens(gen_problem(truck, 2))
    c = coherent(a, b)
    for t1, t2 in [(10, 15), (12, 20), (6, 15)]:
        values = {"o_Go_1": True, "o_Go_2": True, "Go_1.r": 0, "Go_2.r": 0,
                  "Go_1.start": 0, "Go_1.end": 10, "Go_1.e0.persist": t1,
                  "Go_2.start": 5, "Go_2.end": 15, "Go_2.e0.persist": t2}
        assert not evaluate(c, evaluator(values))
    # disjoint ]0,5] and ]5,15] is fine
    values.update({"Go_1.e0.persist": 5, "Go_1.end": 5})
    assert evaluate(c, evaluator(values))


def test_supported_by_goal_on_initial(truck):
    bp = gen_problem(truck, 1)
    goal = condition_tokens(bp)[0]
    init_eff = effect_tokens(bp)[0]
    c = supported_by(goal, init_eff)
    atoms_ = set(c.args)
    assert Cmp("<=", init_eff.end, goal.start) in atoms_
    assert Cmp("<=", goal.end, init_eff.persistence) in atoms_
    assert Cmp("=", goal.value, init_eff.value) in atoms_
    assert Cmp("=", goal.sv.params[0], init_eff.sv.params[0]) in atoms_


def test_supported_by_distinct_fluents_is_false():
    p = parse_problem(TWO_FLUENTS)
    bp = gen_problem(p, 1)
    cond = condition_tokens(bp)[0]
    loc = [e for e in effect_tokens(bp) if e.sv.fluent.name == "loc"][0]
    assert supported_by(cond, loc) == FALSE


def test_supported_by_ground_check(truck):
    bp = gen_problem(truck, 2)
    goal = condition_tokens(bp)[0]
    eff = effect_tokens(bp)[1]
    c = supported_by(goal, eff)
    values = {"o_Go_1": True, "Go_1.end": 10, "init.t": 12, "Go_1.e0.persist": 20,
              "Go_1.r": 0, "Go_1.le": 2, "init.l": 2}
    assert evaluate(c, evaluator(values))
    values["init.l"] = 3
    assert not evaluate(c, evaluator(values))


def test_supported_disjunct_counts(truck):
    bp = gen_problem(truck, 1)
    goal = condition_tokens(bp)[0]
    s = supported(goal, effect_tokens(bp))
    assert isinstance(s, Or) and len(s.args) == 2
    bp2 = gen_problem(truck, 2)
    assert len(supported(condition_tokens(bp2)[0], effect_tokens(bp2)).args) == 3


def test_supported_without_producer_is_absurd():
    p = parse_problem(TWO_FLUENTS)
    bp = gen_problem(p, 1)
    cond = condition_tokens(bp)[0]
    assert supported(cond, [e for e in effect_tokens(bp) if e.sv.fluent.name == "loc"]) == \
        Implies(Flag("o_Go_1"), FALSE)


def test_consistent_go_and_initial(truck):
    bp = gen_problem(truck, 1)
    go = bp.chronicles[1]
    c = consistent(bp, go)
    assert c.lhs == Flag("o_Go_1")
    assert Cmp("=", go.end, go.start, 10) in c.rhs.args
    assert Cmp("!=", go.variable("ls"), go.variable("le")) in c.rhs.args
    init = consistent(bp, bp.initial)
    # the initial chronicle is always present, so no guard
    assert not isinstance(init, Implies)
    assert any(isinstance(x, Or) for x in init.args)


def test_consistent_empty_constraints_keeps_implicit_only():
    p = parse_problem("type A = {x};\nfluent A f;\naction N() { [start] f := x; };")
    bp = gen_problem(p, 1)
    n = bp.chronicles[1]
    assert n.constraints == ()
    (eff,) = effect_tokens(bp)
    expected = (*n.implicit_constraints(), Cmp("<=", eff.end, eff.persistence))
    assert consistent(bp, n) == Implies(Flag("o_N_1"), And(expected))


def test_symmetry_truck(truck):
    bp = gen_problem(truck, 2)
    g1, g2 = bp.chronicles[1:]
    assert symmetry_constraints(bp) == [Implies(Flag("o_Go_2"), Flag("o_Go_1")), Cmp("<=", g1.start, g2.start)]
    assert symmetry_constraints(gen_problem(bp.problem, 1)) == []
    assert symmetry_constraints(gen_problem(bp.problem, 0)) == []


def test_symmetry_two_templates_depth_three():
    bp = gen_problem(parse_problem(TWO_FLUENTS), 3)
    assert len(symmetry_constraints(bp)) == 8


def test_encode_truck_depth_one(truck):
    f = encode(gen_problem(truck, 1))
    assert f.count(COHERENCE) == 1
    assert f.count(SUPPORT) == 2
    assert f.count(CONSISTENCY) == 2
    assert f.count(SYMMETRY) == 0
    assert f.count(DOMAIN) == sum(1 for v in f.variables if v.sort == "Int")
    assert f.declared("o_Go_1").sort == "Bool"
    assert "o_init" not in {v.id for v in f.variables}


def test_encode_without_effects_or_goal_is_domain_only():
    f = encode(gen_problem(parse_problem("type A = {x};\n"), 0))
    assert f.assertions == ()
    p = parse_problem("type A = {x, y};\nfluent A f;\naction N(A a) { duration := 1; };")
    assert {a.tag for a in encode(gen_problem(p, 0)).assertions} <= {DOMAIN}


@pytest.mark.parametrize("extra", [1, 50])
def test_unused_objects_leave_counts_unchanged(truck, extra):
    for k in range(4):
        base = encode(gen_problem(truck, k))
        big = encode(gen_problem(with_extra_objects(truck, extra), k))
        assert len(big.assertions) == len(base.assertions)
        assert [a.tag for a in big.assertions] == [a.tag for a in base.assertions]
        assert big.declared("init.l").upper == base.declared("init.l").upper + extra


def test_emit_truck_depth_one(truck):
    text = emit_smtlib(encode(gen_problem(truck, 1)))
    assert text.startswith("(set-option :produce-models true)\n(set-logic QF_LIA)\n")
    assert "(declare-const o_Go_1 Bool)" in text
    assert "(=> o_Go_1 (and (= Go_1.end (+ Go_1.start 10))" in text
    assert "; tag: coherence init.e0 Go_1.e0" in text
    assert text.endswith("(check-sat)\n(get-model)\n")


def test_emit_empty_formula():
    assert emit_smtlib(Formula()) == "(set-option :produce-models true)\n(set-logic QF_LIA)\n(check-sat)\n"


def test_horizon_caps_time_domains(truck):
    f = encode(gen_problem(truck, 1), EncodeOptions(horizon=12))
    assert f.declared("Go_1.start").upper == 12
    assert f.declared("init.t").lower == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 5000), st.integers(0, 3))
def test_count_laws(seed, k):
    p = tiny_instance(seed).problem
    bp = gen_problem(p, k)
    n_e, n_c = len(effect_tokens(bp)), len(condition_tokens(bp))
    off = encode(bp, EncodeOptions(pruning=False))
    assert off.count(COHERENCE) == n_e * (n_e - 1) // 2
    assert off.count(SUPPORT) == n_c
    on = encode(bp)
    assert on.count(COHERENCE) <= off.count(COHERENCE)
    bound = n_e * (n_e - 1) // 2 + n_c + len(bp.chronicles) + on.count(SYMMETRY) + on.count(DOMAIN)
    assert len(on.assertions) <= bound
    assert on.count(SYMMETRY) == 2 * len(p.templates) * max(k - 1, 0)
    assert emit_smtlib(on) == emit_smtlib(encode(gen_problem(p, k)))

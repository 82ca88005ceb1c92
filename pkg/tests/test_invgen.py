import pytest
from hypothesis import given, settings, strategies as st

import oracles
from alfsynth import expr as E
from alfsynth.boxes import EMPTY, Interval, Rect, parse_box
from alfsynth.core import ACCEPT, Feedback, Hypothesis, Unrealizable
from alfsynth.invgen import (
    ConjHypothesis, LoopProgram, StateSpaceTooLarge, TransitionSystem, abstract_post_teacher,
    alpha_join_learn, alpha_join_learner, best_abstract_post, enumerate_adequate_fixpoints,
    enumerate_adequate_invariants, fixpoint_teacher, grid_states, houdini_learn, ice_teacher,
    parse_conj,
)
from alfsynth.samples import ICESample, PNSample


def program(hi=15, init="(= x 0)", guard="(< x 10)", body="(+ x 2)", post="(= x 10)"):
    return LoopProgram.from_json({
        "variables": ["x"], "bounds": [[0, hi]], "init": init, "guard": guard, "body": [body], "post": post,
    })


W = program()
PREDS = tuple(E.parse(p, ["x"]) for p in ["(<= x 10)", "(<= x 8)", "(= (mod x 2) 0)"])


def pred(text):
    term = E.parse(text, ["x"])
    return lambda s: E.evaluate(term, s)


def test_ice_teacher_examples():
    # 7 is the least state of x <= 8 whose successor (9) leaves it
    assert ice_teacher(W, pred("(<= x 8)")) == Feedback(ICESample(I=[(7, 9)]))
    assert ice_teacher(W, pred("(<= x 10)")) == Feedback(ICESample(I=[(9, 11)]))
    assert ice_teacher(W, pred("(and (= (mod x 2) 0) (<= x 10))")) == ACCEPT


def test_ice_teacher_positive_and_negative():
    assert ice_teacher(W, frozenset()) == Feedback(ICESample(P=[0]))
    assert ice_teacher(W, frozenset({(0,), (12,)})) == Feedback(ICESample(N=[12]))


def test_body_clamps_to_bounds():
    assert W.step((15,)) == (15,)
    assert W.step((14,)) == (15,)


def test_houdini_examples():
    full = ConjHypothesis((0, 1, 2), PREDS)
    assert houdini_learn(PREDS, ICESample()) == Hypothesis(full)
    assert houdini_learn(PREDS, ICESample(P=[10])) == Hypothesis(ConjHypothesis((0, 2), PREDS))
    assert houdini_learn(PREDS, ICESample(P=[0], I=[(8, 10)])) == Hypothesis(ConjHypothesis((0, 2), PREDS))
    assert houdini_learn(PREDS, ICESample(P=[0], N=[4])) == Unrealizable()


def test_conj_format_roundtrip():
    h = ConjHypothesis((0, 2), PREDS)
    assert h.format(["x"]) == "(and (<= x 10) (= (mod x 2) 0))"
    assert parse_conj(h.format(["x"]), PREDS, ["x"]) == h
    assert parse_conj("true", PREDS, ["x"]) == ConjHypothesis((), PREDS)


def _brute_adequate(prog):
    return set(oracles.adequate_invariants(
        prog.states(), prog.is_init, prog.in_guard, prog.step, prog.satisfies_post))


def test_adequate_invariants_restricted_w():
    prog = program(hi=11)
    fam = enumerate_adequate_invariants(prog)
    evens = frozenset((x,) for x in range(0, 11, 2))
    assert evens in fam
    assert fam == _brute_adequate(prog)
    assert all(evens <= x for x in fam)


def test_adequate_invariants_of_w_is_unique():
    evens = frozenset((x,) for x in range(0, 11, 2))
    assert enumerate_adequate_invariants(W) == {evens}


def test_empty_init_makes_empty_set_adequate():
    assert frozenset() in enumerate_adequate_invariants(program(init="false"))


def test_whole_space_adequate_iff_exits_meet_post():
    prog = program(hi=5, guard="(< x 3)", post="(>= x 3)")
    assert frozenset(prog.states()) in enumerate_adequate_invariants(prog)
    prog = program(hi=5, guard="(< x 3)", post="(= x 4)")
    assert frozenset(prog.states()) not in enumerate_adequate_invariants(prog)


def test_subset_cap_refuses():
    with pytest.raises(StateSpaceTooLarge):
        enumerate_adequate_invariants(program(hi=16))


def test_state_cap_from_environment(monkeypatch):
    monkeypatch.setenv("ALFSYNTH_MAX_STATES", "10")
    with pytest.raises(StateSpaceTooLarge):
        grid_states([(0, 10)])
    assert len(grid_states([(0, 9)])) == 10


random_programs = st.tuples(
    st.integers(3, 9), st.integers(0, 3), st.integers(1, 9), st.integers(-2, 3), st.integers(0, 9),
)


@given(random_programs)
@settings(max_examples=60, deadline=None)
def test_adequate_invariants_match_brute_force(args):
    hi, start, bound, delta, target = args
    prog = program(hi=hi, init=f"(= x {start})", guard=f"(< x {bound})", body=f"(+ x {delta})",
                   post=f"(<= x {target})")
    assert enumerate_adequate_invariants(prog) == _brute_adequate(prog)


TS = TransitionSystem.from_json({
    "variables": ["x"], "bounds": [[0, 15]], "init": "(= x 0)", "bad": "(= x 11)", "successors": [["(+ x 2)"]],
})


def test_fixpoint_teacher_examples():
    assert fixpoint_teacher(TS, frozenset()) == Feedback(ICESample(P=[0]))
    assert fixpoint_teacher(TS, frozenset({(0,)})) == Feedback(ICESample(I=[(0, 2)]))
    good = frozenset((x,) for x in (0, 2, 4, 6, 8, 10, 12, 14, 15))
    assert fixpoint_teacher(TS, good) == ACCEPT
    assert fixpoint_teacher(TS, good | {(11,)}) == Feedback(ICESample(N=[11]))


def test_fixpoints_match_brute_force():
    states = TS.states
    brute = {X for X in oracles.powerset(states)
             if TS.F(X) == X and not X & TS.bad}
    assert enumerate_adequate_fixpoints(TS) == brute


def test_abstract_post_teacher_examples():
    xhat = parse_box("[0, 4]")
    assert abstract_post_teacher(TS, xhat, EMPTY) == Feedback(PNSample(P=[2]))
    assert abstract_post_teacher(TS, xhat, parse_box("[2, 6]")) == ACCEPT
    assert abstract_post_teacher(TS, EMPTY, EMPTY) == ACCEPT
    assert best_abstract_post(TS, xhat) == parse_box("[2, 6]")


def test_alpha_join_examples():
    assert alpha_join_learn(EMPTY, (2,)) == Rect((Interval(2, 2),))
    assert alpha_join_learn(Rect((Interval(2, 2),)), (6,)) == Rect((Interval(2, 6),))
    assert alpha_join_learner(PNSample(P=[6, 2, 4])) == Hypothesis(parse_box("[2, 6]"))
    assert alpha_join_learner(PNSample()) == Hypothesis(EMPTY)

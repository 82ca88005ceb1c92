import json

import pytest
from hypothesis import given, settings, strategies as st

from alfsynth.boxes import Interval, POS_INF, box_consistent, box_teacher, interval_occam_learn, parse_box
from alfsynth.core import (
    ACCEPT, BudgetExhausted, CapExhaustedError, ContractViolation, Converged, Domain, Feedback,
    FiniteUniverse, Hypothesis, Step, TeacherContractError, Trace, Unrealizable, UniverseError,
    config_digest, dumps_trace, kappa, run_instance, trace_from_json, verify_honesty,
    verify_kappa_laws, verify_progress,
)
from alfsynth.instances import build
from alfsynth.samples import ICE_LATTICE, PN_LATTICE, ICESample, PNSample, ice_consistent

INTERVAL = Domain("interval", PN_LATTICE, box_consistent, parse_hypothesis=lambda t: parse_box(t, as_interval=True))
TEACHER = lambda h: box_teacher([-2, 5], [-8], h)


def run_interval(budget=20, **kw):
    return run_instance(INTERVAL, interval_occam_learn, TEACHER, None, budget, **kw)


def test_worked_interval_run():
    outcome, trace = run_interval()
    assert outcome == Converged(Interval(-2, POS_INF), 4)
    assert [str(s.hypothesis) for s in trace.steps] == ["[-inf, inf]", "[0, 0]", "[-2, -2]", "[-2, inf]"]
    assert verify_progress(trace, INTERVAL) == []


def test_budget_zero():
    outcome, trace = run_interval(budget=0)
    assert outcome == BudgetExhausted(0)
    assert trace.verdicts == []


def test_budget_exhausted_midway():
    outcome, trace = run_interval(budget=2)
    assert outcome == BudgetExhausted(2)
    assert len(trace.steps) == 2


def test_unrealizable_outcome():
    teacher = lambda h: box_teacher([0, 6], [3], h)
    outcome, trace = run_instance(INTERVAL, interval_occam_learn, teacher, None, 20)
    assert isinstance(outcome, Unrealizable) and outcome.rounds == len(trace.steps)


def test_samples_nondecreasing_and_hypotheses_distinct():
    _, trace = run_interval()
    for a, b in zip(trace.steps, trace.steps[1:]):
        assert INTERVAL.leq(a.sample, b.sample)
    hyps = [s.hypothesis for s in trace.steps]
    assert len(set(hyps)) == len(hyps)


def test_bottom_feedback_is_a_contract_error():
    with pytest.raises(TeacherContractError):
        run_instance(INTERVAL, interval_occam_learn, lambda h: Feedback(PNSample()), None, 5)


def test_cap_exhausted_raises_with_partial_trace():
    learner = lambda s: interval_occam_learn(s, rank_cap=(0,))
    with pytest.raises(CapExhaustedError) as info:
        run_instance(INTERVAL, learner, lambda h: box_teacher([7], [0], h), None, 10)
    assert len(info.value.trace.steps) == 1


def test_checked_mode_catches_inconsistent_learner():
    learner = lambda s: Hypothesis(Interval(0, 0))
    with pytest.raises(ContractViolation):
        run_instance(INTERVAL, learner, TEACHER, None, 5, checked=True)


def test_progress_violation_on_echoed_sample():
    s = PNSample()
    h = Interval(0, 0)
    trace = Trace((Step(0, s, h, Feedback(PNSample(N=[9]))), Step(1, s, h, ACCEPT)), None)
    problems = verify_progress(trace, INTERVAL)
    assert [(p.round, p.clause) for p in problems] == [(0, "progress")]


def test_single_accept_trace_is_clean():
    trace = Trace((Step(0, PNSample(), Interval(0, 0), ACCEPT),), None)
    assert verify_progress(trace, INTERVAL) == []


STATES = [(x,) for x in range(4)]
SET_UNIVERSE = FiniteUniverse(
    concepts=lambda: [frozenset(s for i, s in enumerate(STATES) if m >> i & 1) for m in range(16)],
    gamma=lambda h: frozenset(h),
    concept_consistent=ice_consistent,
    size=16,
)
SETS = Domain("sets", ICE_LATTICE, ice_consistent, universe=SET_UNIVERSE)


def test_honesty_flags_fabricated_negative():
    target = frozenset({(0,), (1,)})
    trace = Trace((Step(0, ICESample(), frozenset(), Feedback(ICESample(N=[1]))),), None)
    problems = verify_honesty(trace, [target], SETS)
    assert len(problems) == 1 and problems[0].witness == target
    assert verify_honesty(Trace((), None), [target], SETS) == []


def test_honesty_needs_universe():
    with pytest.raises(UniverseError):
        verify_honesty(Trace((), None), [], INTERVAL)


ice_samples = st.builds(
    ICESample,
    st.lists(st.sampled_from(STATES), max_size=2),
    st.lists(st.sampled_from(STATES), max_size=2),
    st.lists(st.tuples(st.sampled_from(STATES), st.sampled_from(STATES)), max_size=3),
)


@given(st.lists(st.tuples(ice_samples, ice_samples), min_size=1, max_size=5))
@settings(max_examples=50)
def test_kappa_laws_hold_for_ice(pairs):
    assert verify_kappa_laws(SETS, pairs) == []


def test_kappa_law_violation_detected():
    broken = Domain("broken", ICE_LATTICE, ice_consistent, universe=FiniteUniverse(
        concepts=SET_UNIVERSE.concepts, gamma=SET_UNIVERSE.gamma, size=16,
        concept_consistent=lambda c, s: ice_consistent(c, s) and len(s.P) < 2,
    ))
    pairs = [(ICESample(P=[0]), ICESample(P=[1]))]
    assert any(v.clause == "join" for v in verify_kappa_laws(broken, pairs))
    assert kappa(SET_UNIVERSE, ICESample()) == frozenset(SET_UNIVERSE.concepts())


def test_trace_json_roundtrip():
    outcome, trace = run_interval()
    text = dumps_trace(trace, INTERVAL, seed=3, digest="abc")
    data = json.loads(text)
    assert set(data) == {"rounds", "outcome", "seed", "config_digest"}
    assert trace_from_json(data, INTERVAL) == trace


def test_config_digest_is_key_order_independent():
    assert config_digest({"a": 1, "b": [1, 2]}) == config_digest({"b": [1, 2], "a": 1})
    assert config_digest({"a": 1}) != config_digest({"a": 2})


def test_instances_build_every_kind(configs_dir):
    for path in sorted(configs_dir.glob("*.json")):
        inst = build(json.loads(path.read_text()))
        outcome, trace = inst.run(checked=True)
        assert len(trace.steps) <= inst.budget

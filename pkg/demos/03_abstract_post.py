"""Computing a best abstract transformer from positive examples only.

For ``x := x + 2`` on [0, 15] and the abstract input [0, 4], the learner
joins the abstraction of each positive example into its current box.
"""

from alfsynth.boxes import parse_box
from alfsynth.core import Domain, run_instance
from alfsynth.invgen import TransitionSystem, abstract_post_teacher, alpha_join_learner, best_abstract_post
from alfsynth.samples import PN_LATTICE

ts = TransitionSystem.from_json({
    "variables": ["x"], "bounds": [[0, 15]], "init": "false", "bad": "false", "successors": [["(+ x 2)"]],
})
xhat = parse_box("[0, 4]")
domain = Domain("abstract-post", PN_LATTICE, lambda h, s: all(h.contains(p) for p in s.P))
outcome, trace = run_instance(domain, alpha_join_learner, lambda h: abstract_post_teacher(ts, xhat, h))
for step in trace.steps:
    print(f"round {step.round}: {step.hypothesis}  ->  {step.verdict}")
print("learned:", outcome.hypothesis, " direct:", best_abstract_post(ts, xhat))

"""Learning an interval from positive and negative points.

Two learners chase the same hidden target (contain -2 and 5, exclude -8):
the Occam learner proposes the simplest consistent interval each round,
the wqo learner proposes a maximal one.
"""

from alfsynth.boxes import box_consistent, box_teacher, interval_occam_learn, rect_wqo_learner
from alfsynth.core import Domain, run_instance
from alfsynth.samples import PN_LATTICE

domain = Domain("interval", PN_LATTICE, box_consistent)


def teacher(h):
    return box_teacher([-2, 5], [-8], h)


for name, learner in [("occam", interval_occam_learn), ("wqo", lambda s: rect_wqo_learner(s, 1))]:
    outcome, trace = run_instance(domain, learner, teacher, budget=20)
    print(f"{name} learner")
    for step in trace.steps:
        print(f"  round {step.round}: propose {step.hypothesis}  ->  {step.verdict}")
    print(f"  outcome: {outcome}\n")

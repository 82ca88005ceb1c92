"""Enumerative synthesis of max(x, y) and |x| against a logical specification.

The teacher checks every input in the box and returns the first failing one.
The learner proposes the smallest expression consistent with all inputs so far.
"""

from alfsynth import expr as E
from alfsynth.core import Domain, run_instance
from alfsynth.samples import GROUNDED_LATTICE
from alfsynth.synth import Spec, cegis_teacher, grounded_consistent, occam_synth_learn

specs = {
    "max": {"inputs": ["x", "y"], "bounds": [[-8, 8], [-8, 8]],
            "formula": "(and (>= (f x y) x) (>= (f x y) y) (or (= (f x y) x) (= (f x y) y)))"},
    "abs": {"inputs": ["x"], "bounds": [[-8, 8]],
            "formula": "(and (>= (f x) x) (>= (f x) (- x)) (or (= (f x) x) (= (f x) (- x))))"},
}

for name, data in specs.items():
    spec = Spec.from_json(data)
    domain = Domain(name, GROUNDED_LATTICE, lambda e, s, spec=spec: grounded_consistent(spec, e, s))
    outcome, trace = run_instance(domain, lambda s: occam_synth_learn(spec, s), lambda e: cegis_teacher(spec, e))
    print(name)
    for step in trace.steps:
        print(f"  round {step.round}: {E.to_sexpr(step.hypothesis, spec.names)}")
    print(f"  result: {E.to_sexpr(outcome.hypothesis, spec.names)} (size {E.size(outcome.hypothesis)})\n")

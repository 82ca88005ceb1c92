"""Why implications matter: learning a loop invariant.

The loop ``x := 0; while x < 10: x := x + 2`` must end with ``x = 10``.
Houdini searches conjunctions of three candidate predicates. The teacher
answers with a positive, a negative, or an implication (s, s') example.
"""

from alfsynth import expr as E
from alfsynth.core import Domain, run_instance
from alfsynth.invgen import LoopProgram, enumerate_adequate_invariants, houdini_learn, ice_teacher
from alfsynth.samples import ICE_LATTICE, ice_consistent_with

prog = LoopProgram.from_json({
    "variables": ["x"], "bounds": [[0, 15]], "init": "(= x 0)", "guard": "(< x 10)",
    "body": ["(+ x 2)"], "post": "(= x 10)",
})
preds = [E.parse(p, ["x"]) for p in ("(<= x 10)", "(<= x 8)", "(= (mod x 2) 0)")]
domain = Domain("houdini", ICE_LATTICE, lambda h, s: ice_consistent_with(h.contains, s))

outcome, trace = run_instance(domain, lambda s: houdini_learn(preds, s), lambda h: ice_teacher(prog, h))
for step in trace.steps:
    print(f"round {step.round}: {step.hypothesis.format(['x'])}  ->  {step.verdict}")
print("outcome:", outcome.hypothesis.format(["x"]), "after", outcome.rounds, "rounds")

invariants = enumerate_adequate_invariants(prog)
print("adequate invariants by exhaustive scan:", [sorted(s[0] for s in inv) for inv in invariants])

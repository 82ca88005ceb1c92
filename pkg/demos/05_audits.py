"""Auditing a run: progress, honesty, and the sample-space laws.

Every shipped configuration is run in checked mode; the trace is then
re-audited against the exhaustive set of target concepts.
"""

import json
import random
from pathlib import Path

from alfsynth.core import verify_honesty, verify_kappa_laws, verify_progress
from alfsynth.instances import build

configs = Path(__file__).resolve().parent.parent / "configs"
for path in sorted(configs.glob("*.json")):
    inst = build(json.loads(path.read_text()))
    outcome, trace = inst.run(checked=True)
    progress = verify_progress(trace, inst.domain)
    honesty = verify_honesty(trace, inst.targets(), inst.domain) if inst.targets else []
    print(f"{path.name:28s} {type(outcome).__name__:16s} progress {len(progress)}  honesty {len(honesty)}")

inst = build(json.loads((configs / "ice_small.json").read_text()))
rng = random.Random(0)
pairs = [(inst.random_sample(rng), inst.random_sample(rng)) for _ in range(200)]
print("law violations on ice_small:", len(verify_kappa_laws(inst.domain, pairs)))

"""Learner/teacher contracts, the iterative learning loop, and trace audits.

A run alternates two pure functions: the learner maps the current sample to
a hypothesis, the teacher maps that hypothesis to a :class:`Verdict`. The
loop joins every feedback sample into the current one until the teacher
accepts, the learner gives up, or the round budget runs out.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Callable, Iterable

from .samples import SampleLattice

MAX_UNIVERSE = 2**20


class ALFError(Exception):
    pass


class TeacherContractError(ALFError):
    """The teacher broke its contract (e.g. returned an empty feedback sample)."""


class ContractViolation(ALFError):
    """Raised in checked mode when an inline audit fails."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class CapExhaustedError(ALFError):
    """The learner hit its rank cap; carries the partial trace."""

    def __init__(self, rank_cap, trace: "Trace"):
        self.rank_cap = rank_cap
        self.trace = trace
        super().__init__(f"learner exhausted rank cap {rank_cap} in round {len(trace.steps)}")


class UniverseError(ALFError):
    pass


# -- verdicts and outcomes ---------------------------------------------------


@dataclass(frozen=True)
class Accept:
    pass


@dataclass(frozen=True)
class Feedback:
    sample: object


ACCEPT = Accept()


@dataclass(frozen=True)
class Hypothesis:
    value: object


@dataclass(frozen=True)
class Unrealizable:
    """No consistent hypothesis exists.

    Learners return it bare; run outcomes carry the number of rounds played.
    """

    rounds: int | None = None


@dataclass(frozen=True)
class CapExhausted:
    rank_cap: tuple


@dataclass(frozen=True)
class Converged:
    hypothesis: object
    rounds: int


@dataclass(frozen=True)
class BudgetExhausted:
    budget: int


@dataclass(frozen=True)
class Step:
    round: int
    sample: object
    hypothesis: object
    verdict: Accept | Feedback


@dataclass(frozen=True)
class Trace:
    steps: tuple
    outcome: object

    @property
    def verdicts(self) -> list:
        return [s.verdict for s in self.steps]


# -- domains -----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteUniverse:
    """Finite concept space used by the audits.

    ``concepts`` enumerates every concept; ``gamma`` maps a hypothesis to its
    concept; ``concept_consistent(c, s)`` decides ``c in kappa(s)``.
    """

    concepts: Callable[[], Iterable]
    gamma: Callable
    concept_consistent: Callable
    size: int


@dataclass(frozen=True)
class Domain:
    name: str
    lattice: SampleLattice
    consistent: Callable  # (hypothesis, sample) -> bool
    format_hypothesis: Callable = str
    parse_hypothesis: Callable | None = None
    universe: FiniteUniverse | None = None

    @property
    def bottom(self):
        return self.lattice.bottom

    def join(self, a, b):
        return self.lattice.join(a, b)

    def leq(self, a, b) -> bool:
        return self.lattice.leq(a, b)

    def is_bottom(self, s) -> bool:
        return self.lattice.leq(s, self.lattice.bottom)


def kappa(universe: FiniteUniverse, sample) -> frozenset:
    return frozenset(c for c in universe.concepts() if universe.concept_consistent(c, sample))


# -- audits --------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    round: int | None
    clause: str
    detail: str = ""
    witness: object = None

    def __str__(self):
        where = f"round {self.round}" if self.round is not None else "global"
        return f"{where}: {self.clause} {self.detail}".rstrip()


def _next_samples(trace: Trace, domain: Domain):
    """Yield (step, next sample) for every step that received feedback."""
    steps = trace.steps
    for i, step in enumerate(steps):
        if not isinstance(step.verdict, Feedback):
            continue
        if i + 1 < len(steps):
            yield step, steps[i + 1].sample
        else:
            yield step, domain.join(step.sample, step.verdict.sample)


def verify_progress(trace: Trace, domain: Domain) -> list[Violation]:
    """Audit the progress half of the loop's metatheory on a finished trace.

    Every refuted hypothesis must be inconsistent with the next sample, and
    samples must grow along the trace.
    """
    out = []
    for i, step in enumerate(trace.steps):
        if step.round != i:
            out.append(Violation(i, "index", f"expected round {i}, found {step.round}"))
    for step, nxt in _next_samples(trace, domain):
        if not domain.leq(step.sample, nxt):
            out.append(Violation(step.round, "monotone", "sample shrank"))
        if domain.consistent(step.hypothesis, nxt):
            out.append(Violation(
                step.round, "progress",
                f"hypothesis {domain.format_hypothesis(step.hypothesis)} still consistent",
                step.hypothesis,
            ))
    return out


def verify_honesty(trace: Trace, targets: Iterable, domain: Domain) -> list[Violation]:
    """Check that no feedback sample excludes a target concept."""
    if domain.universe is None:
        raise UniverseError(f"domain {domain.name!r} has no finite universe")
    targets = list(targets)
    out = []
    for step in trace.steps:
        if not isinstance(step.verdict, Feedback):
            continue
        fb = step.verdict.sample
        for t in targets:
            if not domain.universe.concept_consistent(t, fb):
                out.append(Violation(step.round, "honesty", "feedback excludes a target", t))
                break
    return out


def verify_kappa_laws(domain: Domain, pairs: Iterable, max_concepts: int = MAX_UNIVERSE) -> list[Violation]:
    """Check kappa(bottom) = C, the join law, and monotonicity on ``pairs``."""
    u = domain.universe
    if u is None:
        raise UniverseError(f"domain {domain.name!r} has no finite universe")
    if u.size > max_concepts:
        raise UniverseError(f"universe has {u.size} concepts, cap is {max_concepts}")
    everything = frozenset(u.concepts())
    out = []
    k_bot = kappa(u, domain.bottom)
    if k_bot != everything:
        out.append(Violation(None, "bottom", "kappa(bottom) != C", next(iter(everything - k_bot))))
    for s1, s2 in pairs:
        k1, k2 = kappa(u, s1), kappa(u, s2)
        joined = domain.join(s1, s2)
        kj = kappa(u, joined)
        if kj != k1 & k2:
            w = next(iter(kj ^ (k1 & k2)))
            out.append(Violation(None, "join", "kappa(s1 join s2) != kappa(s1) & kappa(s2)", (s1, s2, w)))
        for lo, hi, klo, khi in ((s1, s2, k1, k2), (s2, s1, k2, k1), (s1, joined, k1, kj), (s2, joined, k2, kj)):
            if domain.leq(lo, hi) and not khi <= klo:
                out.append(Violation(None, "monotone", "leq(a, b) but kappa(b) not within kappa(a)",
                                     (lo, hi, next(iter(khi - klo)))))
    return out


# -- the loop ------------------------------------------------------------------


def _audit_last_step(step: Step, domain: Domain, targets) -> list[Violation]:
    nxt = domain.join(step.sample, step.verdict.sample)
    out = []
    if domain.consistent(step.hypothesis, nxt):
        out.append(Violation(step.round, "progress", "refuted hypothesis still consistent", step.hypothesis))
    if targets is not None and domain.universe is not None:
        out += verify_honesty(Trace((step,), None), targets, domain)
    return out


def run_instance(
    domain: Domain,
    learner: Callable,
    teacher: Callable,
    initial_sample=None,
    budget: int = 100,
    checked: bool = False,
    targets: Iterable | None = None,
):
    """Iterate ``S <- S join teacher(learner(S))`` for at most ``budget`` rounds.

    Returns ``(outcome, trace)``. In checked mode every round is audited
    inline (learner consistency, progress, and honesty when ``targets`` and a
    finite universe are available) and a :class:`ContractViolation` is raised
    on the first failure.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    sample = domain.bottom if initial_sample is None else initial_sample
    targets = list(targets) if targets is not None else None
    steps: list[Step] = []

    def trace(outcome):
        return Trace(tuple(steps), outcome)

    for i in range(budget):
        result = learner(sample)
        if isinstance(result, Unrealizable):
            outcome = Unrealizable(rounds=i)
            return outcome, trace(outcome)
        if isinstance(result, CapExhausted):
            raise CapExhaustedError(result.rank_cap, trace(None))
        h = result.value if isinstance(result, Hypothesis) else result
        if checked and not domain.consistent(h, sample):
            raise ContractViolation([Violation(i, "learner", "proposed an inconsistent hypothesis", h)])
        verdict = teacher(h)
        if isinstance(verdict, Feedback) and domain.is_bottom(verdict.sample):
            raise TeacherContractError(f"round {i}: feedback sample is bottom")
        step = Step(i, sample, h, verdict)
        steps.append(step)
        if isinstance(verdict, Accept):
            outcome = Converged(h, i + 1)
            return outcome, trace(outcome)
        if checked:
            problems = _audit_last_step(step, domain, targets)
            if problems:
                raise ContractViolation(problems)
        sample = domain.join(sample, verdict.sample)
    outcome = BudgetExhausted(budget)
    return outcome, trace(outcome)


# -- serialization -------------------------------------------------------------


def outcome_to_json(outcome, domain: Domain) -> dict:
    match outcome:
        case Converged(hypothesis=h, rounds=r):
            return {"kind": "converged", "hypothesis": domain.format_hypothesis(h), "rounds": r}
        case Unrealizable(rounds=r):
            return {"kind": "unrealizable", "rounds": r}
        case BudgetExhausted(budget=b):
            return {"kind": "budget_exhausted", "budget": b}
    raise TypeError(f"not a run outcome: {outcome!r}")


def outcome_from_json(data: dict, domain: Domain):
    kind = data["kind"]
    if kind == "converged":
        return Converged(domain.parse_hypothesis(data["hypothesis"]), data["rounds"])
    if kind == "unrealizable":
        return Unrealizable(rounds=data["rounds"])
    if kind == "budget_exhausted":
        return BudgetExhausted(data["budget"])
    raise ValueError(f"unknown outcome kind {kind!r}")


def verdict_to_json(verdict, domain: Domain):
    if isinstance(verdict, Accept):
        return "accept"
    return {"feedback": domain.lattice.to_json(verdict.sample)}


def verdict_from_json(data, domain: Domain):
    if data == "accept":
        return ACCEPT
    return Feedback(domain.lattice.from_json(data["feedback"]))


def config_digest(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def trace_to_json(trace: Trace, domain: Domain, seed: int = 0, digest: str = "") -> dict:
    return {
        "rounds": [
            {
                "round": s.round,
                "sample": domain.lattice.to_json(s.sample),
                "hypothesis": domain.format_hypothesis(s.hypothesis),
                "verdict": verdict_to_json(s.verdict, domain),
            }
            for s in trace.steps
        ],
        "outcome": outcome_to_json(trace.outcome, domain),
        "seed": seed,
        "config_digest": digest,
    }


def trace_from_json(data: dict, domain: Domain) -> Trace:
    if domain.parse_hypothesis is None:
        raise ValueError(f"domain {domain.name!r} cannot parse hypotheses")
    steps = tuple(
        Step(
            r["round"],
            domain.lattice.from_json(r["sample"]),
            domain.parse_hypothesis(r["hypothesis"]),
            verdict_from_json(r["verdict"], domain),
        )
        for r in data["rounds"]
    )
    return Trace(steps, outcome_from_json(data["outcome"], domain))


def dumps_trace(trace: Trace, domain: Domain, seed: int = 0, digest: str = "") -> str:
    return json.dumps(trace_to_json(trace, domain, seed, digest), indent=2, sort_keys=True) + "\n"

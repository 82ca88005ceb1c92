"""Build runnable instances (domain, learner, teacher, audit oracles) from
validated configuration dictionaries."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import partial
from itertools import chain, combinations, product
from typing import Callable

from . import expr as E
from .boxes import (
    EMPTY, NEG_INF, POS_INF, Interval, Rect, box_consistent, box_teacher,
    interval_occam_learn, parse_box, rect_wqo_learner,
)
from .core import Domain, FiniteUniverse, run_instance
from .invgen import (
    LoopProgram, TransitionSystem, abstract_post_teacher, alpha_join_learner,
    concretize, enumerate_adequate_fixpoints, enumerate_adequate_invariants,
    fixpoint_teacher, grid_box_ordering, houdini_learn, ice_teacher, member_of,
    parse_conj, MAX_SUBSET_STATES,
)
from .occam import occam_learner
from .samples import (
    GROUNDED_LATTICE, ICE_LATTICE, PN_LATTICE, GroundedSample, ICESample, PNSample,
    ice_consistent_with, pn_consistent_with,
)
from .synth import Spec, cegis_teacher, grounded_consistent, occam_synth_learn, table_universe

KINDS = ("interval", "rectangle", "houdini", "ice-invariant", "adequate-fixpoint", "abstract-post", "sygus-lite")

LEARNERS = {
    "interval": ("occam", "wqo"),
    "rectangle": ("wqo",),
    "houdini": ("houdini",),
    "ice-invariant": ("occam-box",),
    "adequate-fixpoint": ("occam-box",),
    "abstract-post": ("alpha-join",),
    "sygus-lite": ("occam-enum",),
}

BOX_UNIVERSE_CAP = 200_000


@dataclass
class Instance:
    config: dict
    domain: Domain
    learner: Callable
    teacher: Callable
    targets: Callable[[], list] | None
    random_sample: Callable[[random.Random], object]

    @property
    def budget(self) -> int:
        return self.config["budget"]

    def run(self, checked: bool | None = None):
        checked = self.config.get("checked_mode", False) if checked is None else checked
        targets = self.targets() if checked and self.targets is not None else None
        return run_instance(self.domain, self.learner, self.teacher, self.domain.bottom,
                            self.budget, checked=checked, targets=targets)


def build(config: dict) -> Instance:
    return _BUILDERS[config["kind"]](config)


# -- boxes ------------------------------------------------------------------------


def as_rect(h):
    if isinstance(h, Interval):
        return Rect((h,))
    return h


def _box_universe(n: int, window: int):
    ends = [NEG_INF, *range(-window, window + 1), POS_INF]
    ivs = [Interval(a, b) for a in ends[:-1] for b in ends[1:] if a <= b]
    size = 1 + len(ivs) ** n
    if size > BOX_UNIVERSE_CAP:
        return None
    concepts = [EMPTY] + [Rect(c) for c in product(ivs, repeat=n)]
    return FiniteUniverse(
        concepts=lambda: concepts,
        gamma=as_rect,
        concept_consistent=box_consistent,
        size=size,
    )


def _random_pn(rng: random.Random, n: int, window: int) -> PNSample:
    pt = lambda: tuple(rng.randint(-window, window) for _ in range(n))
    return PNSample([pt() for _ in range(rng.randint(0, 3))], [pt() for _ in range(rng.randint(0, 3))])


def _build_box(config: dict) -> Instance:
    kind = config["kind"]
    n = 1 if kind == "interval" else config["dimension"]
    hidden = config["hidden"]
    gpos = [tuple([p]) if isinstance(p, int) else tuple(p) for p in hidden["positive"]]
    gneg = [tuple([p]) if isinstance(p, int) else tuple(p) for p in hidden["negative"]]
    learner_name = config.get("learner", LEARNERS[kind][0])
    coords = [abs(c) for p in gpos + gneg for c in p]
    window = min(max(coords, default=0) + 1, config.get("universe_window", 8))
    if learner_name == "occam":
        cap = tuple(config.get("rank_cap", [1024]))
        learner = partial(interval_occam_learn, rank_cap=cap)
        parse = partial(parse_box, as_interval=True)
    else:
        learner = partial(rect_wqo_learner, n=n)
        parse = parse_box
    universe = _box_universe(n, window)
    domain = Domain(
        name=kind, lattice=PN_LATTICE, consistent=box_consistent,
        format_hypothesis=str, parse_hypothesis=parse, universe=universe,
    )

    def targets():
        if universe is None:
            return None
        return [c for c in universe.concepts()
                if all(c.contains(p) for p in gpos) and not any(c.contains(q) for q in gneg)]

    return Instance(
        config=config, domain=domain, learner=learner,
        teacher=partial(box_teacher, gpos, gneg),
        targets=targets if universe is not None else None,
        random_sample=lambda rng: _random_pn(rng, n, window),
    )


# -- ICE-based kinds ------------------------------------------------------------------


def _powerset(states):
    return [frozenset(c) for c in chain.from_iterable(combinations(states, r) for r in range(len(states) + 1))]


def _subset_universe(states, consistent):
    states = list(states)
    if len(states) > MAX_SUBSET_STATES:
        return None
    cache = []

    def concepts():
        if not cache:
            cache.extend(_powerset(states))
        return cache

    return FiniteUniverse(
        concepts=concepts,
        gamma=lambda h: concretize(h, states),
        concept_consistent=consistent,
        size=2 ** len(states),
    )


def _ice_member_consistent(h, s):
    return ice_consistent_with(member_of(h), s)


def _concept_ice(c, s):
    return ice_consistent_with(c.__contains__, s)


def _random_ice(rng: random.Random, states) -> ICESample:
    states = list(states)
    pick = lambda k: [rng.choice(states) for _ in range(k)]
    return ICESample(
        pick(rng.randint(0, 2)), pick(rng.randint(0, 2)),
        [(rng.choice(states), rng.choice(states)) for _ in range(rng.randint(0, 3))],
    )


def _build_program(config: dict) -> Instance:
    kind = config["kind"]
    prog = LoopProgram.from_json(config["program"])
    states = prog.states()
    if kind == "houdini":
        preds = tuple(E.parse(p, prog.names) for p in config["predicates"])
        learner = partial(houdini_learn, preds)
        fmt = lambda h: h.format(prog.names)
        parse = lambda text: parse_conj(text, preds, prog.names)
    else:
        learner = occam_learner(grid_box_ordering(prog.bounds), _ice_member_consistent, (len(states),))
        fmt, parse = str, parse_box
    universe = _subset_universe(states, _concept_ice)
    domain = Domain(
        name=kind, lattice=ICE_LATTICE, consistent=_ice_member_consistent,
        format_hypothesis=fmt, parse_hypothesis=parse, universe=universe,
    )
    return Instance(
        config=config, domain=domain, learner=learner,
        teacher=partial(ice_teacher, prog),
        targets=(lambda: list(enumerate_adequate_invariants(prog))) if universe else None,
        random_sample=lambda rng: _random_ice(rng, states),
    )


def _build_fixpoint(config: dict) -> Instance:
    ts = TransitionSystem.from_json(config["system"])
    bounds = tuple(tuple(b) for b in config["system"]["bounds"])
    learner = occam_learner(grid_box_ordering(bounds), _ice_member_consistent, (len(ts.states),))
    universe = _subset_universe(ts.states, _concept_ice)
    domain = Domain(
        name="adequate-fixpoint", lattice=ICE_LATTICE, consistent=_ice_member_consistent,
        format_hypothesis=str, parse_hypothesis=parse_box, universe=universe,
    )
    return Instance(
        config=config, domain=domain, learner=learner,
        teacher=partial(fixpoint_teacher, ts),
        targets=(lambda: list(enumerate_adequate_fixpoints(ts))) if universe else None,
        random_sample=lambda rng: _random_ice(rng, ts.states),
    )


def _positive_consistent(h, s):
    return pn_consistent_with(member_of(h), s)


def _build_abstract_post(config: dict) -> Instance:
    ts = TransitionSystem.from_json(config["system"])
    xhat = parse_box(config["abstract_input"])
    image = ts.post_set(concretize(xhat, ts.states))
    universe = _subset_universe(ts.states, lambda c, s: pn_consistent_with(c.__contains__, s))
    domain = Domain(
        name="abstract-post", lattice=PN_LATTICE, consistent=_positive_consistent,
        format_hypothesis=str, parse_hypothesis=parse_box, universe=universe,
    )
    states = list(ts.states)
    return Instance(
        config=config, domain=domain, learner=alpha_join_learner,
        teacher=partial(abstract_post_teacher, ts, xhat),
        targets=(lambda: [c for c in universe.concepts() if image <= c]) if universe else None,
        random_sample=lambda rng: PNSample([rng.choice(states) for _ in range(rng.randint(0, 3))]),
    )


# -- synthesis -------------------------------------------------------------------------


def _build_sygus(config: dict) -> Instance:
    spec = Spec.from_json(config["spec"])
    cap = tuple(config.get("rank_cap", [10]))
    universe_size = config.get("universe_size", 6)
    cache = {}

    def universe_and_targets():
        if not cache:
            cache["u"] = table_universe(spec, universe_size)
        return cache["u"]

    u, _ = universe_and_targets()
    domain = Domain(
        name="sygus-lite", lattice=GROUNDED_LATTICE,
        consistent=lambda e, s: grounded_consistent(spec, e, s),
        format_hypothesis=lambda e: E.to_sexpr(e, spec.names),
        parse_hypothesis=lambda text: E.parse(text, spec.names),
        universe=u,
    )
    inputs = spec.inputs()
    return Instance(
        config=config, domain=domain,
        learner=lambda s: occam_synth_learn(spec, s, cap),
        teacher=partial(cegis_teacher, spec),
        targets=lambda: universe_and_targets()[1],
        random_sample=lambda rng: GroundedSample([rng.choice(inputs) for _ in range(rng.randint(0, 3))]),
    )


_BUILDERS = {
    "interval": _build_box,
    "rectangle": _build_box,
    "houdini": _build_program,
    "ice-invariant": _build_program,
    "adequate-fixpoint": _build_fixpoint,
    "abstract-post": _build_abstract_post,
    "sygus-lite": _build_sygus,
}

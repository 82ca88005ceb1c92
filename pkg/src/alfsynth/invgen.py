"""ICE invariant synthesis over bounded-state loop programs.

States are tuples of ints inside per-variable bounds and are always scanned
in lexicographic order, so every teacher returns the smallest witness.
Loop bodies clamp each updated variable back into its bounds.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Callable, Sequence

import numpy as np

from . import expr as E
from .boxes import EMPTY, Empty, Interval, Rect
from .core import ACCEPT, Feedback, Hypothesis, Unrealizable
from .occam import ComplexityOrdering
from .samples import ICESample, PNSample, as_point

DEFAULT_MAX_STATES = 2**20
MAX_SUBSET_STATES = 16


def max_states() -> int:
    return int(os.environ.get("ALFSYNTH_MAX_STATES", DEFAULT_MAX_STATES))


class StateSpaceTooLarge(ValueError):
    pass


def grid_states(bounds: Sequence[tuple[int, int]]) -> list[tuple]:
    total = 1
    for lo, hi in bounds:
        total *= max(0, hi - lo + 1)
    cap = max_states()
    if total > cap:
        raise StateSpaceTooLarge(f"{total} states exceed the cap of {cap} (ALFSYNTH_MAX_STATES)")
    return list(product(*(range(lo, hi + 1) for lo, hi in bounds)))


def clamp(state: Sequence[int], bounds) -> tuple:
    return tuple(min(max(v, lo), hi) for v, (lo, hi) in zip(state, bounds))


def member_of(h) -> Callable[[tuple], bool]:
    """Membership test for any hypothesis or explicit state set."""
    if isinstance(h, (set, frozenset)):
        pts = {as_point(x) for x in h}
        return pts.__contains__
    if callable(h) and not hasattr(h, "contains"):
        return h
    return h.contains


def concretize(h, states) -> frozenset:
    member = member_of(h)
    return frozenset(s for s in states if member(s))


@dataclass(frozen=True)
class LoopProgram:
    """``assume Init; while Guard: state := Body(state); assert Post``."""

    names: tuple
    bounds: tuple
    init: object
    guard: object
    body: tuple  # one update term per variable
    post: object

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple(tuple(b) for b in self.bounds))
        if len(self.body) != len(self.names):
            raise ValueError("body needs one update per variable")

    def states(self) -> list[tuple]:
        return grid_states(self.bounds)

    def step(self, s: tuple) -> tuple:
        return clamp([E.evaluate(t, s) for t in self.body], self.bounds)

    def is_init(self, s) -> bool:
        return bool(E.evaluate(self.init, s))

    def in_guard(self, s) -> bool:
        return bool(E.evaluate(self.guard, s))

    def satisfies_post(self, s) -> bool:
        return bool(E.evaluate(self.post, s))

    @classmethod
    def from_json(cls, data: dict) -> "LoopProgram":
        names = tuple(data["variables"])
        p = lambda text: E.parse(text, names)
        return cls(
            names=names,
            bounds=tuple(tuple(b) for b in data["bounds"]),
            init=p(data["init"]),
            guard=p(data["guard"]),
            body=tuple(p(t) for t in data["body"]),
            post=p(data["post"]),
        )


@dataclass(frozen=True)
class ConjHypothesis:
    """Conjunction of the predicates at positions ``chosen``."""

    chosen: tuple
    predicates: tuple

    def contains(self, s) -> bool:
        s = as_point(s)
        return all(E.evaluate(self.predicates[i], s) for i in self.chosen)

    def format(self, names=None) -> str:
        parts = [E.to_sexpr(self.predicates[i], names) for i in self.chosen]
        return f"(and {' '.join(parts)})" if parts else "true"

    def __str__(self):
        return self.format()


def parse_conj(text: str, predicates: Sequence, names: Sequence[str]) -> ConjHypothesis:
    predicates = tuple(predicates)
    term = E.parse(text, names)
    if term == E.BoolConst(True):
        return ConjHypothesis((), predicates)
    args = term.args if isinstance(term, E.And) else (term,)
    return ConjHypothesis(tuple(predicates.index(a) for a in args), predicates)


# -- the ICE teacher -------------------------------------------------------------


def ice_teacher(prog: LoopProgram, h):
    """Refute ``h`` as an inductive invariant that proves ``prog``'s postcondition.

    Checks, in order: initial states are included (positive example), no
    included exit state violates the postcondition (negative example), and
    the loop body preserves ``h`` (implication example).
    """
    member = member_of(h)
    states = prog.states()
    for s in states:
        if prog.is_init(s) and not member(s):
            return Feedback(ICESample(P=[s]))
    for s in states:
        if member(s) and not prog.in_guard(s) and not prog.satisfies_post(s):
            return Feedback(ICESample(N=[s]))
    for s in states:
        if member(s) and prog.in_guard(s):
            t = prog.step(s)
            if not member(t):
                return Feedback(ICESample(I=[(s, t)]))
    return ACCEPT


def _mask_table(states: Sequence[tuple], cap: int):
    n = len(states)
    if n > cap:
        raise StateSpaceTooLarge(f"{n} states; subset enumeration is capped at {cap}")
    return np.arange(2**n, dtype=np.int64), {s: i for i, s in enumerate(states)}


def _subsets(masks, ok, states):
    return {frozenset(states[i] for i in range(len(states)) if m >> i & 1) for m in masks[ok].tolist()}


def enumerate_adequate_invariants(prog: LoopProgram, cap: int = MAX_SUBSET_STATES) -> set[frozenset]:
    """Every state set that contains Init, keeps exits inside Post, and is
    closed under the guarded body. Brute force over all subsets."""
    states = prog.states()
    masks, idx = _mask_table(states, cap)
    ok = np.ones_like(masks, dtype=bool)
    for s in states:
        bit = (masks >> idx[s]) & 1
        if prog.is_init(s):
            ok &= bit == 1
        if not prog.in_guard(s):
            if not prog.satisfies_post(s):
                ok &= bit == 0
        else:
            t = idx[prog.step(s)]
            ok &= (bit == 0) | (((masks >> t) & 1) == 1)
    return _subsets(masks, ok, states)


# -- Houdini ---------------------------------------------------------------------


def houdini_learn(predicates: Sequence, s: ICESample):
    """Strongest conjunction over ``predicates`` consistent with ``s``.

    Positives knock out the predicates they falsify. An implication whose
    antecedent satisfies the current conjunction makes its consequent a
    positive. Negatives are only checked at the end.
    """
    predicates = tuple(predicates)
    chosen = list(range(len(predicates)))
    positives = set(s.P)

    def sat(state):
        return all(E.evaluate(predicates[i], state) for i in chosen)

    changed = True
    while changed:
        changed = False
        keep = [i for i in chosen if all(E.evaluate(predicates[i], p) for p in positives)]
        if keep != chosen:
            chosen, changed = keep, True
        for a, b in s.I:
            if b not in positives and sat(a):
                positives.add(b)
                changed = True
    h = ConjHypothesis(tuple(chosen), predicates)
    if any(h.contains(n) for n in s.N):
        return Unrealizable()
    return Hypothesis(h)


# -- adequate fixpoints ------------------------------------------------------------


@dataclass(frozen=True)
class TransitionSystem:
    states: tuple
    init: frozenset
    post: Callable[[tuple], frozenset]
    bad: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(as_point(s) for s in self.states))
        object.__setattr__(self, "init", frozenset(as_point(s) for s in self.init))
        object.__setattr__(self, "bad", frozenset(as_point(s) for s in self.bad))

    def post_set(self, xs) -> frozenset:
        out = set()
        for x in xs:
            out |= {as_point(y) for y in self.post(as_point(x))}
        return frozenset(out)

    def F(self, xs) -> frozenset:
        """Increasing transformer ``X | Init | post(X)``."""
        return frozenset(xs) | self.init | self.post_set(xs)

    @classmethod
    def from_json(cls, data: dict) -> "TransitionSystem":
        names = tuple(data["variables"])
        bounds = tuple(tuple(b) for b in data["bounds"])
        p = lambda text: E.parse(text, names)
        init, bad = p(data["init"]), p(data["bad"])
        updates = [tuple(p(t) for t in u) for u in data["successors"]]
        states = grid_states(bounds)

        def post(s):
            return frozenset(clamp([E.evaluate(t, s) for t in u], bounds) for u in updates)

        return cls(
            states=tuple(states),
            init=frozenset(s for s in states if E.evaluate(init, s)),
            post=post,
            bad=frozenset(s for s in states if E.evaluate(bad, s)),
        )


def enumerate_adequate_fixpoints(ts: TransitionSystem, cap: int = MAX_SUBSET_STATES) -> set[frozenset]:
    """All X with F(X) = X that avoid the bad states."""
    states = list(ts.states)
    masks, idx = _mask_table(states, cap)
    ok = np.ones_like(masks, dtype=bool)
    for s in states:
        bit = (masks >> idx[s]) & 1
        if s in ts.init:
            ok &= bit == 1
        if s in ts.bad:
            ok &= bit == 0
        for t in ts.post(s):
            ok &= (bit == 0) | (((masks >> idx[as_point(t)]) & 1) == 1)
    return _subsets(masks, ok, states)


def fixpoint_teacher(ts: TransitionSystem, h):
    """Teacher for adequate fixpoints with singletons as representatives."""
    X = concretize(h, ts.states)
    bad = sorted(X & ts.bad)
    if bad:
        return Feedback(ICESample(N=[bad[0]]))
    missing = sorted(ts.F(X) - X)
    if not missing:
        return ACCEPT
    x = missing[0]
    if x in ts.init:
        return Feedback(ICESample(P=[x]))
    for y in sorted(X):
        if x in ts.post(y):
            return Feedback(ICESample(I=[(y, x)]))
    raise AssertionError(f"{x} is neither initial nor a successor of the hypothesis")


# -- best abstract transformer ------------------------------------------------------


def alpha(states) -> Rect | Empty:
    """Smallest interval product containing ``states``."""
    pts = [as_point(s) for s in states]
    if not pts:
        return EMPTY
    n = len(pts[0])
    return Rect(tuple(Interval(min(p[d] for p in pts), max(p[d] for p in pts)) for d in range(n)))


def box_join(a, b):
    if isinstance(a, Empty):
        return b
    if isinstance(b, Empty):
        return a
    return Rect(tuple(Interval(min(x.lo, y.lo), max(x.hi, y.hi)) for x, y in zip(a.intervals, b.intervals)))


def alpha_join_learn(current, positive):
    return box_join(current, alpha([positive]))


def alpha_join_learner(s: PNSample):
    """Fold :func:`alpha_join_learn` over the positives, starting from Empty."""
    return Hypothesis(reduce(alpha_join_learn, s.P, EMPTY))


def abstract_post_teacher(ts: TransitionSystem, xhat, h):
    """Accept iff gamma(h) covers post(gamma(xhat)); else the least missing state."""
    image = ts.post_set(concretize(xhat, ts.states))
    member = member_of(h)
    missing = sorted(s for s in image if not member(s))
    if missing:
        return Feedback(PNSample(P=[missing[0]]))
    return ACCEPT


def best_abstract_post(ts: TransitionSystem, xhat):
    return alpha(ts.post_set(concretize(xhat, ts.states)))


# -- enumerative learner over boxes on a bounded grid -----------------------------------


def grid_boxes(bounds: Sequence[tuple[int, int]]) -> list:
    """Empty plus every box with endpoints inside ``bounds``."""
    per_dim = [[Interval(a, b) for a in range(lo, hi + 1) for b in range(a, hi + 1)] for lo, hi in bounds]
    return [EMPTY] + [Rect(ivs) for ivs in product(*per_dim)]


def box_volume(h) -> int:
    if isinstance(h, Empty):
        return 0
    v = 1
    for iv in h.intervals:
        v *= iv.hi - iv.lo + 1
    return v


def grid_box_ordering(bounds: Sequence[tuple[int, int]]) -> ComplexityOrdering:
    """Finite ordering by number of covered states, ties by endpoints."""

    def key(h):
        if isinstance(h, Empty):
            return (0,)
        return (box_volume(h), *[iv.lo for iv in h.intervals], *[iv.hi for iv in h.intervals])

    boxes = sorted(grid_boxes(bounds), key=key)
    return ComplexityOrdering(rank=lambda h: (box_volume(h),), enumerate=lambda: iter(boxes), exhaustive=True)

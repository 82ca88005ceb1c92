"""Enumerative Occam learner.

An ordering supplies a rank (a tuple of naturals compared lexicographically)
and a restartable stream of hypotheses in nondecreasing rank. The learner
returns the first consistent hypothesis in that stream, which is a
rank-minimal consistent hypothesis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .core import CapExhausted, Hypothesis, Unrealizable


@dataclass(frozen=True)
class ComplexityOrdering:
    rank: Callable[[object], tuple]
    enumerate: Callable[[], Iterator]
    # True when the stream is finite and covers the whole hypothesis space.
    exhaustive: bool = False


def occam_learn(ordering: ComplexityOrdering, consistent: Callable, sample, rank_cap: tuple):
    seen: dict = {}
    for h in ordering.enumerate():
        if ordering.rank(h) > tuple(rank_cap):
            return CapExhausted(tuple(rank_cap))
        ok = seen.get(h)
        if ok is None:
            ok = seen[h] = consistent(h, sample)
        if ok:
            return Hypothesis(h)
    if ordering.exhaustive:
        return Unrealizable()
    return CapExhausted(tuple(rank_cap))


def occam_learner(ordering: ComplexityOrdering, consistent: Callable, rank_cap: tuple):
    """Curry :func:`occam_learn` into a ``sample -> outcome`` learner."""
    return lambda sample: occam_learn(ordering, consistent, sample, rank_cap)

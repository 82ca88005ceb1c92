"""Intervals and hyperrectangles over the integers extended with +/-inf.

Two learners live here:

* an Occam learner for 1-D intervals, ranked by the largest absolute value
  of a finite endpoint (``[-inf, inf]`` has complexity 0);
* a well-quasi-order learner for n-dimensional boxes that first proposes the
  empty box and, once a positive point is known, always proposes a
  facewise-maximal box consistent with the sample.

Why one greedy pass over the faces yields a maximal box: expanding a face
only widens the box in that dimension, which can add points to the blocking
sets of faces already visited but never removes any. A face that was
blocked (or already infinite) therefore stays blocked.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from itertools import count
from typing import Sequence

from .core import ACCEPT, Feedback, Hypothesis, Unrealizable
from .occam import ComplexityOrdering, occam_learn
from .samples import PNSample, as_point

NEG_INF = -math.inf
POS_INF = math.inf


@dataclass(frozen=True)
class Empty:
    def contains(self, p) -> bool:
        return False

    def __str__(self):
        return "Empty"


EMPTY = Empty()


def _fmt(v) -> str:
    if v == NEG_INF:
        return "-inf"
    if v == POS_INF:
        return "inf"
    return str(v)


@dataclass(frozen=True)
class Interval:
    lo: float | int
    hi: float | int

    def __post_init__(self):
        if self.lo > self.hi or self.lo == POS_INF or self.hi == NEG_INF:
            raise ValueError(f"malformed interval [{self.lo}, {self.hi}]")
        # keep finite endpoints as ints so printing and hashing are canonical
        for name in ("lo", "hi"):
            v = getattr(self, name)
            if not math.isinf(v):
                object.__setattr__(self, name, int(v))

    dims = 1

    @property
    def intervals(self) -> tuple:
        return (self,)

    def contains(self, p) -> bool:
        x = p if isinstance(p, int) else p[0]
        return self.lo <= x <= self.hi

    def __str__(self):
        return f"[{_fmt(self.lo)}, {_fmt(self.hi)}]"


TOP = Interval(NEG_INF, POS_INF)


@dataclass(frozen=True)
class Rect:
    intervals: tuple

    def __post_init__(self):
        if not self.intervals:
            raise ValueError("a box needs at least one dimension")
        object.__setattr__(self, "intervals", tuple(self.intervals))

    @property
    def dims(self) -> int:
        return len(self.intervals)

    def contains(self, p) -> bool:
        p = as_point(p)
        return all(iv.lo <= x <= iv.hi for iv, x in zip(self.intervals, p))

    def __str__(self):
        return " x ".join(str(iv) for iv in self.intervals)


def make_rect(intervals: Sequence) -> Rect | Empty:
    if any(isinstance(iv, Empty) for iv in intervals):
        return EMPTY
    return Rect(tuple(intervals))


def format_box(h) -> str:
    return str(h)


_IV = re.compile(r"\[\s*(-?inf|-?\d+)\s*,\s*(-?inf|-?\d+)\s*\]")


def _ext(tok: str):
    if tok == "-inf":
        return NEG_INF
    if tok == "inf":
        return POS_INF
    return int(tok)


def parse_box(text: str, as_interval: bool = False):
    """Inverse of :func:`format_box`."""
    text = text.strip()
    if text == "Empty":
        return EMPTY
    parts = [p.strip() for p in text.split(" x ")]
    ivs = []
    for part in parts:
        m = _IV.fullmatch(part)
        if m is None:
            raise ValueError(f"cannot parse box {text!r}")
        ivs.append(Interval(_ext(m.group(1)), _ext(m.group(2))))
    if as_interval and len(ivs) == 1:
        return ivs[0]
    return Rect(tuple(ivs))


# -- complexity ordering on intervals ---------------------------------------------


class Cmp(enum.Enum):
    LESS = "Less"
    EQUIVALENT = "Equivalent"
    GREATER = "Greater"


def interval_complexity(iv) -> int:
    if isinstance(iv, Empty):
        return 0
    finite = [abs(v) for v in (iv.lo, iv.hi) if not math.isinf(v)]
    return max(finite, default=0)


def interval_cmp(a, b) -> Cmp:
    ca, cb = interval_complexity(a), interval_complexity(b)
    if ca < cb:
        return Cmp.LESS
    if ca > cb:
        return Cmp.GREATER
    return Cmp.EQUIVALENT


def intervals_of_complexity(c: int) -> list[Interval]:
    """All intervals of complexity exactly ``c`` in enumeration order.

    ``[-inf, inf]`` comes first; the rest are sorted by ``(lo, hi)`` with
    ``-inf`` least.
    """
    ends = [NEG_INF, *range(-c, c + 1), POS_INF]
    out = []
    for lo in ends[:-1]:
        for hi in ends[1:]:
            if lo <= hi and interval_complexity(Interval(lo, hi)) == c:
                out.append(Interval(lo, hi))
    out.sort(key=lambda iv: (iv != TOP, iv.lo, iv.hi))
    return out


def _interval_stream():
    for c in count():
        yield from intervals_of_complexity(c)


INTERVAL_ORDERING = ComplexityOrdering(
    rank=lambda iv: (interval_complexity(iv),),
    enumerate=_interval_stream,
)


def box_consistent(h, s: PNSample) -> bool:
    return all(h.contains(p) for p in s.P) and not any(h.contains(n) for n in s.N)


def interval_realizable(s: PNSample) -> bool:
    xs = [p[0] for p in s.P]
    if not xs:
        return True
    lo, hi = min(xs), max(xs)
    return not any(lo <= n[0] <= hi for n in s.N)


def minimal_interval_complexity(s: PNSample) -> int | None:
    """Closed-form minimum complexity of an interval consistent with ``s``.

    ``None`` when no interval is consistent.
    """
    if not interval_realizable(s):
        return None
    negs = [n[0] for n in s.N]
    if not s.P:
        # a point interval [x, x] costs |x|; any interval avoiding 0 costs at least
        # the absolute value of one of its finite endpoints, which it contains
        return next(c for c in count() if c not in negs or -c not in negs)
    xs = [p[0] for p in s.P]
    lo, hi = min(xs), max(xs)
    below = [n for n in negs if n < lo]
    above = [n for n in negs if n > hi]
    # each finite endpoint is the point of its allowed range closest to 0
    left = 0 if not below else abs(min(max(0, max(below) + 1), lo))
    right = 0 if not above else abs(max(min(0, min(above) - 1), hi))
    return max(left, right)


def interval_occam_learn(s: PNSample, rank_cap: tuple = (1024,)):
    if not interval_realizable(s):
        return Unrealizable()
    return occam_learn(INTERVAL_ORDERING, box_consistent, s, rank_cap)


# -- maximal boxes and the wqo learner ---------------------------------------


def bounding_box(points) -> Rect:
    pts = [as_point(p) for p in points]
    n = len(pts[0])
    return Rect(tuple(Interval(min(p[d] for p in pts), max(p[d] for p in pts)) for d in range(n)))


def canonical_face_order(n: int) -> list[tuple[int, str]]:
    return [(d, side) for d in range(n) for side in ("lo", "hi")]


def maximal_consistent_rect(s: PNSample, n: int, face_order=None):
    """Grow the bounding box of the positives face by face.

    Each face moves outward as far as it can without swallowing a negative
    point, given the current extent of the other faces. Requires a positive
    point; returns :class:`Unrealizable` when a negative lies inside the
    bounding box of the positives.
    """
    if not s.P:
        raise ValueError("maximal_consistent_rect needs at least one positive point")
    box = bounding_box(s.P)
    if box.dims != n:
        raise ValueError(f"points have dimension {box.dims}, expected {n}")
    if any(box.contains(q) for q in s.N):
        return Unrealizable()
    lo = [iv.lo for iv in box.intervals]
    hi = [iv.hi for iv in box.intervals]
    for d, side in face_order or canonical_face_order(n):
        in_slab = [q for q in s.N if all(lo[e] <= q[e] <= hi[e] for e in range(n) if e != d)]
        if side == "lo":
            blockers = [q[d] for q in in_slab if q[d] < lo[d]]
            lo[d] = max(blockers) + 1 if blockers else NEG_INF
        else:
            blockers = [q[d] for q in in_slab if q[d] > hi[d]]
            hi[d] = min(blockers) - 1 if blockers else POS_INF
    return Rect(tuple(Interval(a, b) for a, b in zip(lo, hi)))


def rect_wqo_learner(s: PNSample, n: int = 1):
    if not s.P:
        return Hypothesis(EMPTY)
    r = maximal_consistent_rect(s, n)
    if isinstance(r, Unrealizable):
        return r
    return Hypothesis(r)


def box_teacher(gpos, gneg, h):
    """Deterministic teacher for the targets "contain gpos, exclude gneg".

    Missing positives are reported before included negatives; within each
    kind the lexicographically smallest point wins.
    """
    for p in sorted(as_point(p) for p in gpos):
        if not h.contains(p):
            return Feedback(PNSample(P=[p]))
    for q in sorted(as_point(q) for q in gneg):
        if h.contains(q):
            return Feedback(PNSample(N=[q]))
    return ACCEPT

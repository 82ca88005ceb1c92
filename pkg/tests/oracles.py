"""Brute-force reference implementations used to check the library.

Nothing here imports the algorithms under test; only plain data types are
shared, so agreement is independent evidence.
"""

from __future__ import annotations

import math
from itertools import chain, combinations, product

INF = math.inf


# -- intervals and boxes ---------------------------------------------------------


def all_intervals(bound: int):
    """Every interval (lo, hi) with endpoints in [-bound, bound] or infinite."""
    ends = [-INF, *range(-bound, bound + 1), INF]
    return [(a, b) for a in ends[:-1] for b in ends[1:] if a <= b]


def complexity(lo, hi) -> int:
    return max((abs(v) for v in (lo, hi) if not math.isinf(v)), default=0)


def interval_order_key(iv):
    lo, hi = iv
    return (complexity(lo, hi), iv != (-INF, INF), lo, hi)


def interval_fits(iv, pos, neg) -> bool:
    lo, hi = iv
    return all(lo <= p <= hi for p in pos) and not any(lo <= q <= hi for q in neg)


def occam_interval(pos, neg, bound: int):
    """First consistent interval under (complexity, [-inf,inf] first, lo, hi)."""
    fits = [iv for iv in all_intervals(bound) if interval_fits(iv, pos, neg)]
    return min(fits, key=interval_order_key) if fits else None


def box_contains(box, p) -> bool:
    return all(lo <= x <= hi for (lo, hi), x in zip(box, p))


def box_fits(box, pos, neg) -> bool:
    return all(box_contains(box, p) for p in pos) and not any(box_contains(box, q) for q in neg)


def is_facewise_maximal(box, pos, neg) -> bool:
    """No single face can move outward by one step and stay consistent."""
    if not box_fits(box, pos, neg):
        return False
    for d, (lo, hi) in enumerate(box):
        moves = []
        if not math.isinf(lo):
            moves.append((lo - 1, hi))
        if not math.isinf(hi):
            moves.append((lo, hi + 1))
        for new in moves:
            grown = list(box)
            grown[d] = new
            if box_fits(grown, pos, neg):
                return False
    return True


# -- state sets ---------------------------------------------------------------------


def powerset(items):
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))]


def grid(bounds):
    return list(product(*(range(lo, hi + 1) for lo, hi in bounds)))


def adequate_invariants(states, init, guard, step, post):
    """All X with Init in X, exits of X inside Post, X closed under guarded steps."""
    out = []
    for X in powerset(states):
        if not all(s in X for s in states if init(s)):
            continue
        if any(not guard(s) and not post(s) for s in X):
            continue
        if any(guard(s) and step(s) not in X for s in X):
            continue
        out.append(X)
    return out


def reachable(states, init, succ):
    frontier = [s for s in states if init(s)]
    seen = set(frontier)
    while frontier:
        s = frontier.pop()
        for t in succ(s):
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    return frozenset(seen)


def strongest_inductive_conjunction(preds, states, init, guard, step):
    """Largest predicate index set whose conjunction holds initially and is
    preserved by guarded steps (the union of all such sets is one too)."""
    best = frozenset()
    for chosen in powerset(range(len(preds))):
        sat = lambda s: all(preds[i](s) for i in chosen)
        if all(sat(s) for s in states if init(s)) and all(sat(step(s)) for s in states if sat(s) and guard(s)):
            best |= chosen
    return best


# -- expression synthesis -------------------------------------------------------------


def min_size_solution(arity, constants, inputs, correct, max_size):
    """Smallest size at which some grammar expression is correct on ``inputs``.

    Expressions are tracked only through their value vectors on ``inputs``
    (observationally equal ones are merged), so this is exact for the
    question asked while staying small. Returns None if none fits.
    """
    vecs: dict[int, set] = {1: set()}
    for i in range(arity):
        vecs[1].add(tuple(v[i] for v in inputs))
    for c in constants:
        vecs[1].add((c,) * len(inputs))
    seen = set(vecs[1])
    conds: dict[int, set] = {}
    for n in range(1, max_size + 1):
        if n > 1:
            level = set()
            for a in range(1, n - 1):
                for x in vecs.get(a, ()):
                    for y in vecs.get(n - 1 - a, ()):
                        level.add(tuple(p + q for p, q in zip(x, y)))
                        level.add(tuple(p - q for p, q in zip(x, y)))
            for c in range(3, n - 2):
                if c not in conds:
                    conds[c] = set()
                    for a in range(1, c - 1):
                        for x in vecs.get(a, ()):
                            for y in vecs.get(c - 1 - a, ()):
                                conds[c].add(tuple(p <= q for p, q in zip(x, y)))
                                conds[c].add(tuple(p >= q for p, q in zip(x, y)))
                for a in range(1, n - 1 - c):
                    b = n - 1 - c - a
                    for cv in conds[c]:
                        for x in vecs.get(a, ()):
                            for y in vecs.get(b, ()):
                                level.add(tuple(p if t else q for t, p, q in zip(cv, x, y)))
            vecs[n] = level - seen
            seen |= level
        if any(correct(v) for v in vecs[n]):
            return n
    return None

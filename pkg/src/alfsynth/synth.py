"""Grounded-sample CEGIS for single-function expression synthesis.

Hypotheses are expressions over the grammar::

    e ::= x_i | c | (+ e e) | (- e e) | (ite cond e e)
    cond ::= (<= e e) | (>= e e)

with constants drawn from a declared finite set. A sample is a set of input
valuations; an expression is consistent with it when the specification holds
at each of them with ``f`` read as the expression.

Enumeration order (the Occam tie-break). Expressions come out by size
(node count, conditions included). Within one size:

1. size 1: input variables by index, then constants in declared order;
2. ``+`` nodes, then ``-`` nodes, each by left-operand size ascending, then
   left operand in enumeration order, then right operand;
3. ``ite`` nodes by condition size, then then-branch size, then condition,
   then-branch, else-branch in enumeration order. Conditions of one size are
   all ``<=`` nodes before all ``>=`` nodes, operands ordered as in 2.

Every tree is built exactly once, so the stream has no structural duplicates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from . import expr as E
from .core import ACCEPT, CapExhausted, Feedback, FiniteUniverse, Hypothesis
from .invgen import grid_states
from .occam import ComplexityOrdering
from .samples import GroundedSample

DEFAULT_CONSTANTS = (-1, 0, 1, 2)


@dataclass(frozen=True)
class Spec:
    names: tuple
    bounds: tuple
    formula: object
    constants: tuple = DEFAULT_CONSTANTS

    @property
    def arity(self) -> int:
        return len(self.names)

    def inputs(self) -> list[tuple]:
        return grid_states(self.bounds)

    @classmethod
    def from_json(cls, data: dict) -> "Spec":
        names = tuple(data["inputs"])
        return cls(
            names=names,
            bounds=tuple(tuple(b) for b in data["bounds"]),
            formula=E.parse(data["formula"], names, allow_app=True, arity=len(names)),
            constants=tuple(data.get("constants", DEFAULT_CONSTANTS)),
        )


def eval_expr(e, v: Sequence[int]) -> int:
    return E.evaluate(e, tuple(v))


def spec_holds(spec: Spec, e, v) -> bool:
    return bool(E.evaluate(spec.formula, tuple(v), lambda *args: E.evaluate(e, args)))


def grounded_consistent(spec: Spec, e, s: GroundedSample) -> bool:
    return all(spec_holds(spec, e, v) for v in s.V)


def cegis_teacher(spec: Spec, e):
    """First input (lexicographic scan) at which the specification fails, else Accept."""
    for v in spec.inputs():
        if not spec_holds(spec, e, v):
            return Feedback(GroundedSample([v]))
    return ACCEPT


# -- enumeration -------------------------------------------------------------------


def _binary(op, n, by_size):
    for sa in range(1, n - 1):
        for a, va in by_size.get(sa, ()):
            for b, vb in by_size.get(n - 1 - sa, ()):
                yield op, a, b, va, vb


def enumerate_valued(arity: int, constants: Sequence[int], points: Sequence[tuple],
                     distinct_values: bool = False) -> Iterator[tuple]:
    """Yield ``(expr, values)`` in enumeration order.

    ``values[k]`` is the expression evaluated at ``points[k]``; values are
    built from the children's, so no tree is ever re-evaluated.

    With ``distinct_values`` an expression (or condition) whose value vector
    was already produced is dropped together with everything built from it.
    The first expression satisfying any property of the value vector is
    unchanged: replacing a dropped subterm by its earlier twin gives a tree
    with the same values that is smaller or comes earlier at the same size.
    """
    points = [tuple(p) for p in points]
    by_size: dict[int, list] = {1: []}
    conds: dict[int, list] = {}
    seen: set = set()
    seen_conds: set = set()

    def fresh(vals, pool) -> bool:
        if not distinct_values:
            return True
        if vals in pool:
            return False
        pool.add(vals)
        return True

    for i in range(arity):
        item = (E.Var(i), tuple(p[i] for p in points))
        if fresh(item[1], seen):
            by_size[1].append(item)
            yield item
    for c in constants:
        item = (E.Const(c), (c,) * len(points))
        if fresh(item[1], seen):
            by_size[1].append(item)
            yield item

    def conds_of(c):
        if c not in conds:
            out = []
            for op, a, b, va, vb in _binary(E.Leq, c, by_size):
                vc = tuple(x <= y for x, y in zip(va, vb))
                if fresh(vc, seen_conds):
                    out.append((op(a, b), vc))
            for op, a, b, va, vb in _binary(E.Geq, c, by_size):
                vc = tuple(x >= y for x, y in zip(va, vb))
                if fresh(vc, seen_conds):
                    out.append((op(a, b), vc))
            conds[c] = out
        return conds[c]

    n = 2
    while True:
        n += 1
        level = by_size.setdefault(n, [])
        for op, a, b, va, vb in _binary(E.Plus, n, by_size):
            item = (op(a, b), tuple(x + y for x, y in zip(va, vb)))
            if fresh(item[1], seen):
                level.append(item)
                yield item
        for op, a, b, va, vb in _binary(E.Minus, n, by_size):
            item = (op(a, b), tuple(x - y for x, y in zip(va, vb)))
            if fresh(item[1], seen):
                level.append(item)
                yield item
        for c in range(3, n - 2):
            for sa in range(1, n - 1 - c):
                sb = n - 1 - c - sa
                for cond, vc in conds_of(c):
                    for a, va in by_size.get(sa, ()):
                        for b, vb in by_size.get(sb, ()):
                            item = (E.Ite(cond, a, b), tuple(x if t else y for t, x, y in zip(vc, va, vb)))
                            if fresh(item[1], seen):
                                level.append(item)
                                yield item


def expr_enumerator(arity: int, constants: Sequence[int] = DEFAULT_CONSTANTS) -> ComplexityOrdering:
    return ComplexityOrdering(
        rank=lambda e: (E.size(e),),
        enumerate=lambda: (e for e, _ in enumerate_valued(arity, constants, ())),
    )


def _argument_points(spec: Spec, valuations) -> list[tuple] | None:
    """Argument tuples at which ``f`` is applied when grounding at ``valuations``.

    ``None`` when an application is nested inside another, since its
    arguments then depend on ``f`` itself.
    """
    apps = E.applications(spec.formula)
    if any(E.applications(a) for app in apps for a in app.args):
        return None
    pts = set()
    for v in valuations:
        for app in apps:
            pts.add(tuple(E.evaluate(a, v) for a in app.args))
    return sorted(pts)


def _holds_with_table(spec: Spec, table: dict, v) -> bool:
    return bool(E.evaluate(spec.formula, tuple(v), lambda *args: table[args]))


def occam_synth_learn(spec: Spec, s: GroundedSample, rank_cap: tuple = (10,)):
    """First expression in enumeration order consistent with ``s``.

    Same contract as :func:`alfsynth.occam.occam_learn` over
    :func:`expr_enumerator`, evaluated incrementally on the grounded points.
    """
    cap = tuple(rank_cap)
    points = _argument_points(spec, s.V)
    if points is None:
        for e, _ in enumerate_valued(spec.arity, spec.constants, ()):
            if (E.size(e),) > cap:
                return CapExhausted(cap)
            if grounded_consistent(spec, e, s):
                return Hypothesis(e)
    for e, vals in enumerate_valued(spec.arity, spec.constants, points, distinct_values=True):
        if (E.size(e),) > cap:
            return CapExhausted(cap)
        table = dict(zip(points, vals))
        if all(_holds_with_table(spec, table, v) for v in s.V):
            return Hypothesis(e)
    raise AssertionError("unreachable: the enumeration is infinite")


def verified_expressions(spec: Spec, max_size: int) -> list:
    """Every expression of size <= ``max_size`` that satisfies the specification on all
    bounded inputs (brute force)."""
    inputs = spec.inputs()
    points = _argument_points(spec, inputs)
    out = []
    for e, vals in enumerate_valued(spec.arity, spec.constants, points or ()):
        if E.size(e) > max_size:
            break
        if points is None:
            ok = all(spec_holds(spec, e, v) for v in inputs)
        else:
            table = dict(zip(points, vals))
            ok = all(_holds_with_table(spec, table, v) for v in inputs)
        if ok:
            out.append(e)
    return out


@lru_cache(maxsize=16)
def table_universe(spec: Spec, max_size: int) -> tuple[FiniteUniverse, list]:
    """Finite concept space of value tables of expressions up to ``max_size``.

    A concept is the tuple of outputs at the argument points of the full
    input space; returns the universe and the target tables.
    """
    inputs = spec.inputs()
    points = _argument_points(spec, inputs)
    if points is None:
        raise ValueError("table universes need specifications without nested applications")
    tables = []
    for e, vals in enumerate_valued(spec.arity, spec.constants, points, distinct_values=True):
        if E.size(e) > max_size:
            break
        tables.append(vals)
    index = {p: k for k, p in enumerate(points)}

    def consistent(table, s: GroundedSample):
        lookup = lambda *args: table[index[args]]
        return all(E.evaluate(spec.formula, tuple(v), lookup) for v in s.V)

    def gamma(e):
        return tuple(E.evaluate(e, p) for p in points)

    targets = [t for t in tables if consistent(t, GroundedSample(inputs))]
    universe = FiniteUniverse(concepts=lambda: tables, gamma=gamma, concept_consistent=consistent, size=len(tables))
    return universe, targets

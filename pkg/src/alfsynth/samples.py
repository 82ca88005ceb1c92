"""Concrete sample lattices: positive/negative, ICE and grounded-input samples.

All samples are frozen dataclasses whose components are stored as sorted
tuples, so equality, hashing and JSON output are canonical. Points and
states are tuples of ints; a bare int is accepted and read as a 1-tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable


def as_point(p) -> tuple:
    if isinstance(p, int):
        return (p,)
    return tuple(int(c) for c in p)


def _points(items: Iterable) -> tuple:
    return tuple(sorted({as_point(p) for p in items}))


def _pairs(items: Iterable) -> tuple:
    return tuple(sorted({(as_point(a), as_point(b)) for a, b in items}))


@dataclass(frozen=True)
class PNSample:
    P: tuple = ()
    N: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "P", _points(self.P))
        object.__setattr__(self, "N", _points(self.N))

    def join(self, other: "PNSample") -> "PNSample":
        return PNSample(self.P + other.P, self.N + other.N)

    def leq(self, other: "PNSample") -> bool:
        return set(self.P) <= set(other.P) and set(self.N) <= set(other.N)

    def is_bottom(self) -> bool:
        return not self.P and not self.N

    def to_ice(self) -> "ICESample":
        return ICESample(self.P, self.N, ())

    def to_json(self) -> dict:
        return {"P": [list(p) for p in self.P], "N": [list(n) for n in self.N]}

    @classmethod
    def from_json(cls, data: dict) -> "PNSample":
        return cls(data.get("P", ()), data.get("N", ()))


@dataclass(frozen=True)
class ICESample:
    P: tuple = ()
    N: tuple = ()
    I: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "P", _points(self.P))
        object.__setattr__(self, "N", _points(self.N))
        object.__setattr__(self, "I", _pairs(self.I))

    def join(self, other: "ICESample") -> "ICESample":
        return ice_join(self, other)

    def leq(self, other: "ICESample") -> bool:
        return ice_leq(self, other)

    def is_bottom(self) -> bool:
        return not (self.P or self.N or self.I)

    def to_json(self) -> dict:
        return {
            "P": [list(p) for p in self.P],
            "N": [list(n) for n in self.N],
            "I": [[list(a), list(b)] for a, b in self.I],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ICESample":
        return cls(data.get("P", ()), data.get("N", ()), data.get("I", ()))


@dataclass(frozen=True)
class GroundedSample:
    """Input valuations at which the specification has been grounded."""

    V: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "V", _points(self.V))

    def join(self, other: "GroundedSample") -> "GroundedSample":
        return GroundedSample(self.V + other.V)

    def leq(self, other: "GroundedSample") -> bool:
        return set(self.V) <= set(other.V)

    def is_bottom(self) -> bool:
        return not self.V

    def to_json(self) -> dict:
        return {"V": [list(v) for v in self.V]}

    @classmethod
    def from_json(cls, data: dict) -> "GroundedSample":
        return cls(data.get("V", ()))


def ice_join(s1: ICESample, s2: ICESample) -> ICESample:
    return ICESample(s1.P + s2.P, s1.N + s2.N, s1.I + s2.I)


def ice_leq(s1: ICESample, s2: ICESample) -> bool:
    return set(s1.P) <= set(s2.P) and set(s1.N) <= set(s2.N) and set(s1.I) <= set(s2.I)


def ice_consistent_with(member: Callable[[tuple], bool], s: ICESample) -> bool:
    """ICE consistency for a concept given by its membership test."""
    if not all(member(p) for p in s.P):
        return False
    if any(member(n) for n in s.N):
        return False
    return all(member(b) or not member(a) for a, b in s.I)


def ice_consistent(concept, s: ICESample) -> bool:
    """``concept`` is a set of states."""
    concept = {as_point(c) for c in concept}
    return ice_consistent_with(concept.__contains__, s)


def pn_consistent_with(member: Callable[[tuple], bool], s: PNSample) -> bool:
    return all(member(p) for p in s.P) and not any(member(n) for n in s.N)


@dataclass(frozen=True)
class SampleLattice:
    """Bottom/join/order bundle for one sample space, plus its JSON codec."""

    bottom: object
    join: Callable
    leq: Callable
    to_json: Callable
    from_json: Callable

    def equal(self, a, b) -> bool:
        return self.leq(a, b) and self.leq(b, a)


def _lattice(cls) -> SampleLattice:
    return SampleLattice(
        bottom=cls(),
        join=cls.join,
        leq=cls.leq,
        to_json=cls.to_json,
        from_json=cls.from_json,
    )


PN_LATTICE = _lattice(PNSample)
ICE_LATTICE = _lattice(ICESample)
GROUNDED_LATTICE = _lattice(GroundedSample)

from hypothesis import given, strategies as st

from alfsynth.samples import (
    GROUNDED_LATTICE, ICE_LATTICE, PN_LATTICE, GroundedSample, ICESample, PNSample,
    as_point, ice_consistent,
)

pts = st.lists(st.integers(-3, 3).map(as_point), max_size=4)
pairs = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), max_size=4)
pn = st.builds(PNSample, pts, pts)
ice = st.builds(ICESample, pts, pts, pairs)
grounded = st.builds(GroundedSample, st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), max_size=4))

LATTICES = [(PN_LATTICE, pn), (ICE_LATTICE, ice), (GROUNDED_LATTICE, grounded)]


def _laws(lat, a, b, c):
    j = lat.join
    assert lat.equal(j(a, b), j(b, a))
    assert lat.equal(j(j(a, b), c), j(a, j(b, c)))
    assert lat.equal(j(a, a), a)
    assert lat.equal(j(lat.bottom, a), a)
    assert lat.leq(lat.bottom, a)
    assert lat.leq(a, j(a, b)) and lat.leq(b, j(a, b))
    # join is the least upper bound
    if lat.leq(a, c) and lat.leq(b, c):
        assert lat.leq(j(a, b), c)
    assert lat.leq(a, b) == lat.equal(j(a, b), b)


@given(pn, pn, pn)
def test_pn_lattice_laws(a, b, c):
    _laws(PN_LATTICE, a, b, c)


@given(ice, ice, ice)
def test_ice_lattice_laws(a, b, c):
    _laws(ICE_LATTICE, a, b, c)


@given(grounded, grounded, grounded)
def test_grounded_lattice_laws(a, b, c):
    _laws(GROUNDED_LATTICE, a, b, c)


@given(pn)
def test_pn_json_roundtrip(s):
    assert PNSample.from_json(s.to_json()) == s


@given(ice)
def test_ice_json_roundtrip(s):
    assert ICESample.from_json(s.to_json()) == s


@given(grounded)
def test_grounded_json_roundtrip(s):
    assert GroundedSample.from_json(s.to_json()) == s


def test_canonical_storage():
    assert PNSample([3, 1, 3], [2]) == PNSample([(1,), (3,)], [(2,)])
    assert PNSample().is_bottom() and ICESample().is_bottom() and GroundedSample().is_bottom()
    assert ICESample(I=[(1, 2)]).I == (((1,), (2,)),)


def test_ice_consistency_semantics():
    s = ICESample(P=[0], N=[5], I=[(2, 4)])
    assert ice_consistent({0, 2, 4}, s)
    assert ice_consistent({0}, s)
    assert not ice_consistent({0, 2}, s)
    assert not ice_consistent({0, 5}, s)
    assert not ice_consistent({2, 4}, s)

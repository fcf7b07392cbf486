import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from monofan import algebra as alg
from monofan import corpus
from monofan import fanspace as fs
from monofan import monoid as mon
from monofan.errors import NoOverlap, NonAffineOverlap, NotAFan

M = corpus.monoids()
F = corpus.fans()


def test_known_presentations():
    assert alg.monoid_algebra(M["cusp"]).relations == (((3, 0), (0, 2)),)
    assert alg.monoid_algebra(M["quadric"]).relations == (((1, 0, 1), (0, 2, 0)),)
    Z = mon.monoid([(1,), (-1,)])
    assert alg.monoid_algebra(Z).relations == (((1, 1), (0, 0)),)
    assert alg.monoid_algebra(M["N2"]).relations == ()


@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_free_monoids_have_no_relations(k):
    P = alg.monoid_algebra(mon.free_monoid(k), D=4)
    assert P.relations == () and P.certified_next_degree and P.variable_count == k


@pytest.mark.parametrize("name", sorted(M))
def test_relations_hold_and_connect_fibres(name):
    P = alg.monoid_algebra(M[name], D=4)
    assert alg.relations_hold(P)
    assert oracles.congruence_connects_fibres(M[name].generators, P.relations, 5)
    assert P.certified_next_degree


@settings(max_examples=25)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(any), min_size=1, max_size=4, unique=True))
def test_relations_generate_the_congruence(gens):
    rels, _ = alg.toric_relations(gens, 4)
    assert all(alg._value(gens, u) == alg._value(gens, v) for u, v in rels)
    assert oracles.congruence_connects_fibres(gens, rels, 4)
    for u, v in rels:
        assert alg._order_key(u) > alg._order_key(v)


def test_degree_bound_rejected():
    with pytest.raises(ValueError):
        alg.monoid_algebra(M["N"], D=0)


def test_certificate_flags_missing_degree():
    # the only relation of 2, 5 has degree 5, beyond D = 3 and D + 1
    P = alg.monoid_algebra(mon.monoid([(2,), (5,)]), D=3)
    assert P.relations == () and P.certified_next_degree
    P = alg.monoid_algebra(mon.monoid([(2,), (5,)]), D=4)
    assert P.relations == () and not P.certified_next_degree
    P = alg.monoid_algebra(mon.monoid([(2,), (5,)]), D=5)
    assert P.relations == (((5, 0), (0, 2)),)


def test_format():
    names = alg.variable_names(3)
    assert names == ["x", "y", "z"]
    assert alg.format_monomial((2, 0, 1), names) == "x^2*z"
    assert alg.format_monomial((0, 0, 0), names) == "1"
    assert alg.variable_names(8)[7] == "t7"


def test_projective_line_atlas():
    X = fs.from_classic_fan(F["projective_line"])
    A = alg.scheme_atlas(X)
    assert len(A.charts) == 2 and A.non_affine == []
    a, b = A.chart_names
    s, images = alg.chart_overlap(A, a, b)
    assert s == (1,) or s == (-1,)
    assert images == ((-1,),)
    s, images = alg.chart_overlap(A, a, a)
    assert s == (0,) and images == ((1,),)
    assert alg.atlas_inconsistencies(A) == []


def test_doubled_line_atlas_is_identity():
    A = alg.scheme_atlas(corpus.doubled_line())
    a, b = A.chart_names
    assert A.non_affine == []
    s, images = alg.chart_overlap(A, a, b)
    assert s == (1,) and images == ((1,),)


def test_blowup_overlap():
    X = fs.from_classic_fan(F["blowup"])
    A = alg.scheme_atlas(X)
    a, b = A.chart_names
    o = A.overlaps[(a, b)]
    # every target variable is a Laurent monomial with the right value
    for l, e in enumerate(o.images):
        assert alg.generic_value(A, a, e) == alg.generic_value(A, b, tuple(int(i == l) for i in range(2)))
    assert alg.atlas_inconsistencies(A) == []


@pytest.mark.parametrize("name", sorted(set(F) - {"cube"}))
def test_atlases_consistent(name):
    A = alg.scheme_atlas(fs.from_classic_fan(F[name]))
    m = len(A.charts)
    assert len(A.overlaps) == m * m
    assert alg.atlas_inconsistencies(A) == []


def test_atlas_errors():
    with pytest.raises(NotAFan):
        alg.scheme_atlas(corpus.projective_plane_minus_ray())
    A = alg.scheme_atlas(fs.from_classic_fan(F["projective_plane"]))
    with pytest.raises(NoOverlap):
        alg.chart_overlap(A, "C[0,1]", "nowhere")
    # two planes glued along both axes (the plane with a doubled origin):
    # the common open of two charts has two maximal points
    N2 = M["N2"]
    X = fs.glue([fs.spec(N2), fs.spec(N2)],
                [fs.Identification((0, "P[]"), (1, "P[]")), fs.Identification((0, "P[0]"), (1, "P[0]")), fs.Identification((0, "P[1]"), (1, "P[1]"))])
    B = alg.scheme_atlas(X)
    assert len(B.non_affine) == 1
    a, b = B.non_affine[0]
    with pytest.raises(NonAffineOverlap):
        alg.chart_overlap(B, a, b)
    with pytest.raises(NonAffineOverlap):
        alg.chart_overlap(B, b, a)


@pytest.mark.parametrize("name", ["Z2", "ZxN", "quadric", "cusp"])
def test_affine_atlas_with_units_is_identity(name):
    A = alg.scheme_atlas(fs.spec(M[name]))
    (o,) = A.overlaps.values()
    n = len(M[name].generators)
    assert o.images == tuple(tuple(int(i == l) for i in range(n)) for l in range(n))
    assert alg.atlas_inconsistencies(A) == []

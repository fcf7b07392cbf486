import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monofan import lattice as lat
from monofan import polyhedral as poly
from monofan import corpus
from monofan.errors import DegeneratePolytope, NotStronglyConvex

import oracles


def rays_strategy(d, max_rays=4, lo=-3, hi=3):
    vec = st.tuples(*[st.integers(lo, hi)] * d).filter(any)
    return st.lists(vec, min_size=1, max_size=max_rays)


def pointed_rays(d, max_rays=4):
    # positive first coordinate keeps the cone pointed
    vec = st.tuples(st.integers(1, 3), *[st.integers(-2, 2)] * (d - 1))
    return st.lists(vec, min_size=1, max_size=max_rays)


def test_dual_examples():
    q = poly.cone([(1, 0), (0, 1)])
    assert poly.dual_cone(q).rays == ((0, 1), (1, 0))
    assert set(poly.dual_cone(poly.Cone(2)).rays) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    d = poly.dual_cone(poly.cone([(1, 0), (1, 2)]))
    assert set(d.rays) == {(0, 1), (2, -1)}
    # pairing signs
    for u in d.rays:
        for r in [(1, 0), (1, 2)]:
            assert lat.dot(u, r) >= 0


@given(rays_strategy(2))
def test_double_dual_2d(rays):
    c = poly.cone(rays).minimal()
    assert poly.same_cone(poly.dual_cone(poly.dual_cone(c)), c)


@given(pointed_rays(3))
def test_double_dual_3d(rays):
    c = poly.cone(rays).minimal()
    assert poly.dual_cone(poly.dual_cone(c)).minimal().rays == c.rays


@settings(max_examples=15)
@given(rays_strategy(3, 3, -2, 2))
def test_membership_matches_caratheodory(rays):
    c = poly.cone(rays)
    for x in itertools.product(range(-2, 3), repeat=3):
        assert c.contains(x) == oracles.in_cone(rays, x)


def test_face_counts():
    assert len(poly.faces(poly.cone([(1, 0), (0, 1)]))) == 4
    assert len(poly.faces(poly.Cone(2))) == 1
    octant = poly.cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert len(poly.faces(octant)) == 8
    assert len(oracles.face_sets(octant.rays, 3)) == 8


small_pointed = st.lists(st.tuples(st.integers(1, 2), st.integers(-1, 1), st.integers(-1, 1)), min_size=1, max_size=5)


@settings(max_examples=25)
@given(small_pointed)
def test_faces_match_functional_oracle(rays):
    # entries bounded by 2 keep every facet normal (a cross product) inside the box
    c = poly.cone(rays).minimal()
    ours = {F for _, F in poly.faces(c)}
    assert ours == oracles.face_sets(c.rays, 3, 8)


def test_strong_convexity():
    assert poly.is_strongly_convex(poly.cone([(1, 0), (0, 1)]))
    assert not poly.is_strongly_convex(poly.cone([(1, 0), (-1, 0)]))
    assert not poly.is_strongly_convex(poly.cone([(1, 0), (-1, 0), (0, 1)]))


def test_hilbert_examples():
    assert poly.hilbert_basis(poly.cone([(1, 0), (0, 1)])) == [(0, 1), (1, 0)]
    assert poly.hilbert_basis(poly.cone([(1, 0), (1, 2)])) == [(1, 0), (1, 1), (1, 2)]
    assert poly.hilbert_basis(poly.Cone(2)) == []
    assert oracles.hilbert_basis([(1, 0), (0, 1)], 2, 4) == [(0, 1), (1, 0)]
    assert oracles.hilbert_basis([(1, 0), (1, 2)], 2, 4) == [(1, 0), (1, 1), (1, 2)]
    with pytest.raises(NotStronglyConvex):
        poly.hilbert_basis(poly.cone([(1, 0), (-1, 0)]))


@settings(max_examples=20)
@given(st.lists(st.tuples(st.integers(1, 3), st.integers(-3, 3)), min_size=1, max_size=3))
def test_hilbert_basis_matches_box_oracle(rays):
    c = poly.cone(rays)
    hb = poly.hilbert_basis(c)
    B = max(abs(x) for r in c.minimal().rays for x in r) * 2 + 1
    assert hb == oracles.hilbert_basis(c.minimal().rays, 2, B)
    # every box point is generated
    from monofan.monoid import AffineMonoid

    S = AffineMonoid(2, tuple(hb))
    for x in oracles.cone_points(c.rays, 2, 4):
        assert S.contains(x)


def test_lattice_points_with_lineality():
    half = poly.cone([(1, 0), (-1, 0), (0, 1)])
    gens = poly.lattice_point_generators(half)
    assert set(gens) == {(1, 0), (-1, 0), (0, 1)}


def test_normal_fans():
    P = corpus.polytopes()
    seg = poly.normal_fan(P["segment"])
    assert len(seg.cones) == 3
    simplex = poly.normal_fan(P["simplex"])
    assert len(simplex.cones) == 7
    assert set(simplex.rays) == {(1, 0), (0, 1), (-1, -1)}
    square = poly.normal_fan(P["square"])
    assert len(square.cones) == 9
    for F in (seg, simplex, square):
        assert F.validate() and poly.is_complete(F)
    with pytest.raises(DegeneratePolytope):
        poly.normal_fan(poly.Polytope(2, ((0, 0), (1, 1))))


def test_normal_fan_of_square_is_p1xp1():
    square = poly.normal_fan(corpus.polytopes()["square"])
    assert set(square.cones) == set(corpus.fans()["p1xp1"].cones)


def test_validate_classic_fan():
    assert corpus.fans()["projective_plane"].validate()
    bad = [poly.cone([(1, 0), (0, 1)]), poly.cone([(1, 1), (1, -1)])]
    cones = {f for c in bad for f, _ in poly.faces(c)}
    rep = poly.validate_classic_fan(list(cones))
    assert not rep and rep.pair is not None
    single = [f for f, _ in poly.faces(poly.cone([(1, 0), (0, 1)]))]
    assert poly.validate_classic_fan(single)
    assert not poly.validate_classic_fan([poly.cone([(1, 0), (0, 1)])])  # faces missing


def test_corpus_fans_valid_and_completeness():
    F = corpus.fans()
    for name, fan in F.items():
        assert fan.validate(), name
    assert poly.is_complete(F["projective_plane"]) and poly.is_complete(F["cube"])
    assert not poly.is_complete(F["affine_plane"]) and not poly.is_complete(F["blowup"])


def test_polytope_faces_count():
    P = corpus.polytopes()
    assert len(poly.polytope_faces(P["square"])) == 9
    assert len(poly.polytope_faces(P["simplex"])) == 7

import pytest

from monofan import classify as cl
from monofan import corpus
from monofan import fanspace as fs
from monofan import monoid as mon
from monofan import polyhedral as poly
from monofan.errors import NotAFan, PreconditionsNotMet

M = corpus.monoids()
F = corpus.fans()


def _same_fan(a, b):
    return {c.minimal() for c in a.cones} == {c.minimal() for c in b.cones}


@pytest.mark.parametrize("name", sorted(corpus.reference_fans()))
def test_classic_fans_round_trip(name):
    fan = corpus.reference_fans()[name]
    v = cl.classify(fs.from_classic_fan(fan))
    assert v and v.failures == []
    assert _same_fan(v.realized, fan)
    assert fs.iso_check(fs.from_classic_fan(v.realized), fs.from_classic_fan(fan))


def test_spectra_of_saturated_monoids_are_classic():
    for name in ("N", "N2", "ZxN", "quadric", "Z2"):
        v = cl.classify(fs.spec(M[name]))
        assert v, name
        assert fs.iso_check(fs.from_classic_fan(v.realized), fs.spec(M[name]))


@pytest.mark.parametrize("name,failed", [
    ("doubled_line", ["separated"]),
    ("cuspidal_projective_line", ["normal"]),
    ("disjoint_union", ["irreducible"]),
    ("projective_plane_minus_ray", ["is_fan"]),
    ("spec_cusp", ["normal"]),
])
def test_counterexamples_fail_one_condition(name, failed):
    v = cl.classify(corpus.spaces()[name])
    assert not v and v.failures == failed and v.realized is None


def test_diagnostics_carry_witnesses():
    v = cl.classify(corpus.spaces()["spec_cusp"])
    (p, w), = v.non_normal
    S = corpus.spaces()["spec_cusp"].stalks[p]
    assert w == (1,) and not S.contains(w) and mon.saturation(S).contains(w)
    v = cl.classify(corpus.doubled_line())
    (a, b, reason), = v.violations
    assert {a, b} == set(corpus.doubled_line().maximal_points)
    v = cl.classify(corpus.disjoint_union())
    assert v.separated is None and any("generic" in n for n in v.notes)
    v = cl.classify(corpus.projective_plane_minus_ray())
    assert v.irreducible is None and any("not a fan" in n for n in v.notes)


def test_repair_doubled_line():
    X = corpus.doubled_line()
    a, b = sorted(X.maximal_points)
    Y = cl.repair_pair(X, a, b)
    assert fs.iso_check(Y, fs.spec(M["N"]))
    assert cl.classify(Y)


def test_repair_requires_identity_maps():
    A = fs.spec(M["N"])
    X = fs.glue([A, A], [fs.Identification((0, "P[]"), (1, "P[]"), ((-1,),))])
    assert any(A != ((1,),) for A in X.gen_maps.values())
    with pytest.raises(NotImplementedError):
        cl.repair_pair(X, *sorted(X.maximal_points))


def test_saturation_repairs_normality():
    for name in ("cuspidal_projective_line", "spec_cusp"):
        X = corpus.spaces()[name]
        Y = cl.saturate_all_stalks(X)
        assert cl.is_normal(Y)[0]
        assert cl.classify(Y)
    Y = cl.saturate_all_stalks(corpus.cuspidal_projective_line())
    assert fs.iso_check(Y, fs.from_classic_fan(F["projective_line"]))


def test_realize_classic_preconditions():
    assert _same_fan(cl.realize_classic(fs.from_classic_fan(F["blowup"])), F["blowup"])
    for name in ("doubled_line", "spec_cusp", "disjoint_union", "projective_plane_minus_ray"):
        with pytest.raises(PreconditionsNotMet):
            cl.realize_classic(corpus.spaces()[name])


def test_checks_require_a_fan():
    X = corpus.projective_plane_minus_ray()
    for check in (cl.is_irreducible, cl.is_normal, cl.is_separated):
        with pytest.raises(NotAFan):
            check(X)


def test_thinned_cube_stalk_is_not_normal():
    X = fs.from_classic_fan(F["cube"])
    top = "C[4,5,6,7]"
    S = X.stalks[top]
    h = mon.irreducible_generators(S)[0]
    Y = fs.replace_stalk(X, top, mon.remove_irreducible(S, h))
    v = cl.classify(Y)
    assert v.is_fan and v.separated and v.failures == ["normal"]
    assert v.non_normal[0][0] == top


def test_classify_presented():
    P = corpus.presented()
    v = cl.classify_presented(P["torsion"])
    assert not v and v.failures == ["integral"] and any("Gilmer" in n for n in v.notes)
    v = cl.classify_presented(P["absorbing"])
    assert not v and v.failures == ["integral"]
    v = cl.classify_presented(P["cusp"])
    assert not v and v.failures == ["normal"]
    v = cl.classify_presented(P["free"])
    assert v and _same_fan(v.realized, poly.ClassicFan.from_maximal(2, [[(1, 0), (0, 1)]]))

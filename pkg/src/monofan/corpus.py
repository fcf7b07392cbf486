"""Small worked examples: monoids, classic fans, glued spaces, presentations."""
from __future__ import annotations

from . import fanspace as fs
from . import monoid as mon
from . import polyhedral as poly

E1, E2 = (1, 0), (0, 1)


def monoids() -> dict[str, mon.AffineMonoid]:
    return {
        "N": mon.monoid([(1,)]),
        "N2": mon.free_monoid(2),
        "ZxN": mon.monoid([(1, 0), (-1, 0), (0, 1)]),
        "cusp": mon.monoid([(2,), (3,)]),
        "quadric": mon.monoid([(1, 0), (1, 1), (1, 2)]),
        "Z2": mon.monoid([(1, 0), (-1, 0), (0, 1), (0, -1)]),
    }


def cube_vertices() -> list[tuple[int, int, int]]:
    """Vertices of ``[-1, 1]^3`` with ``(1, 1, 1)`` pushed out to ``(1, 2, 3)``."""
    out = []
    for x in (-1, 1):
        for y in (-1, 1):
            for z in (-1, 1):
                out.append((1, 2, 3) if (x, y, z) == (1, 1, 1) else (x, y, z))
    return out


def cube_fan() -> poly.ClassicFan:
    """Cones over the faces of the deformed cube: complete and not projective."""
    orig = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    moved = dict(zip(orig, cube_vertices()))
    maximal = []
    for axis in range(3):
        for sign in (-1, 1):
            maximal.append([moved[v] for v in orig if v[axis] == sign])
    return poly.ClassicFan.from_maximal(3, maximal)


def fans() -> dict[str, poly.ClassicFan]:
    F = poly.ClassicFan.from_maximal
    return {
        "affine_plane": F(2, [[E1, E2]]),
        "blowup": F(2, [[E1, (1, 1)], [(1, 1), E2]]),
        "projective_line": F(1, [[(1,)], [(-1,)]]),
        "projective_plane": F(2, [[E1, E2], [E2, (-1, -1)], [(-1, -1), E1]]),
        "p1xp1": F(2, [[E1, E2], [E2, (-1, 0)], [(-1, 0), (0, -1)], [(0, -1), E1]]),
        "hirzebruch1": F(2, [[E1, E2], [E2, (-1, 1)], [(-1, 1), (0, -1)], [(0, -1), E1]]),
        "cube": cube_fan(),
    }


def reference_fans() -> dict[str, poly.ClassicFan]:
    f = fans()
    return {k: f[k] for k in ("affine_plane", "blowup", "projective_plane", "p1xp1", "hirzebruch1")}


def _glue_generic(a: mon.AffineMonoid, b: mon.AffineMonoid) -> fs.MonoidedSpace:
    return fs.glue([fs.spec(a), fs.spec(b)], [fs.Identification((0, "P[]"), (1, "P[]"))])


def doubled_line() -> fs.MonoidedSpace:
    N = mon.monoid([(1,)])
    return _glue_generic(N, N)


def cuspidal_projective_line() -> fs.MonoidedSpace:
    return _glue_generic(mon.monoid([(2,), (3,)]), mon.monoid([(-2,), (-3,)]))


def disjoint_union() -> fs.MonoidedSpace:
    return fs.glue([fs.spec(mon.monoid([(1,)])), fs.spec(mon.free_monoid(2))])


def projective_plane_minus_ray() -> fs.MonoidedSpace:
    """Drop one ray point from the projective plane: not a fan any more."""
    X = fs.from_classic_fan(fans()["projective_plane"])
    return fs.subspace(X, [p for p in X.points if p != "C[0]"])


def spaces() -> dict[str, fs.MonoidedSpace]:
    out = {name: fs.from_classic_fan(F) for name, F in fans().items() if name != "cube"}
    out.update({
        "doubled_line": doubled_line(),
        "cuspidal_projective_line": cuspidal_projective_line(),
        "disjoint_union": disjoint_union(),
        "projective_plane_minus_ray": projective_plane_minus_ray(),
        "spec_cusp": fs.spec(mon.monoid([(2,), (3,)])),
        "spec_quadric": fs.spec(mon.monoid([(1, 0), (1, 1), (1, 2)])),
        "torus": fs.spec(mon.monoid([(1, 0), (-1, 0), (0, 1), (0, -1)])),
    })
    return out


def presented() -> dict[str, mon.PresentedMonoid]:
    return {
        "torsion": mon.PresentedMonoid(2, (((2, 0), (0, 2)),)),
        "cusp": mon.PresentedMonoid(2, (((3, 0), (0, 2)),)),
        "absorbing": mon.PresentedMonoid(2, (((1, 1), (1, 0)),)),
        "free": mon.PresentedMonoid(2, ()),
    }


def polytopes() -> dict[str, poly.Polytope]:
    return {
        "segment": poly.Polytope(1, ((0,), (1,))),
        "simplex": poly.Polytope(2, ((0, 0), (1, 0), (0, 1))),
        "square": poly.Polytope(2, ((0, 0), (1, 0), (0, 1), (1, 1))),
    }

"""Rational polyhedral cones, classic fans and lattice polytopes.

Conversion between generators and inequalities goes through a small exact
double description routine; every ray is kept as a primitive integer vector.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

from . import lattice as lat
from .errors import DegeneratePolytope, NotStronglyConvex
from .lattice import IntVector


def cone_from_inequalities(n: int, normals: Iterable[Sequence[int]]):
    """Double description: ``{x : a.x >= 0 for a in normals}`` as ``(lines, rays)``.

    ``lines`` spans the lineality space and ``rays`` are the extreme rays of
    the pointed part, both as primitive integer vectors.
    """
    return _double_description(n, tuple(tuple(a) for a in normals if any(a)))


@lru_cache(maxsize=4096)
def _double_description(n: int, normals: tuple):
    lines = [lat.unit_vector(n, i) for i in range(n)]
    rays: list[IntVector] = []
    tight: list[frozenset] = []
    for k, a in enumerate(normals):
        vals = [lat.dot(a, l) for l in lines]
        j = next((i for i, v in enumerate(vals) if v), None)
        if j is not None:
            l0, s = lines[j], vals[j]
            if s < 0:
                l0, s = lat.neg(l0), -s
            new_lines = []
            for i, l in enumerate(lines):
                if i != j:
                    new_lines.append(lat.primitive(lat.sub(lat.scale(s, l), lat.scale(lat.dot(a, l), l0))))
            new_rays, new_tight = [], []
            for r, t in zip(rays, tight):
                new_rays.append(lat.primitive(lat.sub(lat.scale(s, r), lat.scale(lat.dot(a, r), l0))))
                new_tight.append(t | {k})
            new_rays.append(l0)
            new_tight.append(frozenset(range(k)))
            lines, rays, tight = new_lines, new_rays, new_tight
            continue
        vals = [lat.dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_tight = [tight[i] for i in pos] + [tight[i] | {k} for i in zer]
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if any(common <= tight[r] for r in range(len(rays)) if r != p and r != q):
                    continue
                r = lat.sub(lat.scale(vals[p], rays[q]), lat.scale(vals[q], rays[p]))
                new_rays.append(lat.primitive(r))
                new_tight.append(common | {k})
        rays, tight = new_rays, new_tight
    return tuple(lines), tuple(sorted(set(rays)))


def _rref(rows: Sequence[Sequence[int]]):
    M = [[Fraction(x) for x in r] for r in rows]
    piv = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        M[r] = [x / M[r][c] for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    return M[:r], piv


def canonical_generators(n: int, lines, rays) -> tuple[IntVector, ...]:
    """Canonical generating set: ``±`` an HNF lineality basis plus reduced extreme rays."""
    if not lines:
        return tuple(sorted({lat.primitive(r) for r in rays}))
    return _canonical(n, tuple(map(tuple, lines)), tuple(map(tuple, rays)))


@lru_cache(maxsize=4096)
def _canonical(n, lines, rays):
    H = lat.saturate_lattice(lines, n)
    out = set()
    for h in H:
        out.add(tuple(h))
        out.add(lat.neg(h))
    R, piv = _rref(H) if H else ([], [])
    for r in rays:
        x = [Fraction(v) for v in r]
        for row, p in zip(R, piv):
            if x[p]:
                f = x[p]
                x = [a - f * b for a, b in zip(x, row)]
        if any(x):
            out.add(lat.primitive(x))
    return tuple(sorted(out))


@dataclass(frozen=True)
class Cone:
    """Cone generated over the nonnegative reals by primitive integer rays."""

    ambient_rank: int
    rays: tuple[IntVector, ...] = ()

    def __post_init__(self):
        rays = {lat.primitive(r) for r in self.rays if any(r)}
        if any(len(r) != self.ambient_rank for r in rays):
            raise ValueError("ray of wrong length")
        object.__setattr__(self, "rays", tuple(sorted(rays)))

    @cached_property
    def _dual_dd(self):
        return cone_from_inequalities(self.ambient_rank, self.rays)

    @cached_property
    def inequalities(self) -> tuple[IntVector, ...]:
        """Generators ``u`` of the dual cone; ``x`` lies in the cone iff every ``u.x >= 0``."""
        return canonical_generators(self.ambient_rank, *self._dual_dd)

    @cached_property
    def lineality(self) -> lat.IntMatrix:
        """HNF basis of the lattice points of ``c ∩ -c``."""
        if not self.rays:
            return ()
        if not self.inequalities:
            return lat.identity(self.ambient_rank)
        return lat.hermite_normal_form(lat.kernel_basis(self.inequalities), self.ambient_rank)

    @cached_property
    def dim(self) -> int:
        return lat.rank(self.rays) if self.rays else 0

    def contains(self, v: Sequence[int]) -> bool:
        return all(lat.dot(u, v) >= 0 for u in self.inequalities)

    @cached_property
    def _minimal(self) -> "Cone":
        lines, rays = cone_from_inequalities(self.ambient_rank, self.inequalities)
        m = Cone(self.ambient_rank, canonical_generators(self.ambient_rank, lines, rays))
        if m == self:
            return self
        m.__dict__["_minimal"] = m
        return m

    def minimal(self) -> "Cone":
        """The same cone with its canonical generating set."""
        return self._minimal

    def __repr__(self):
        return f"Cone({self.ambient_rank}, {list(map(list, self.rays))})"


def cone(rays: Sequence[Sequence[int]], ambient_rank: Optional[int] = None) -> Cone:
    if ambient_rank is None:
        ambient_rank = len(rays[0])
    return Cone(ambient_rank, tuple(tuple(r) for r in rays))


def same_cone(a: Cone, b: Cone) -> bool:
    return a.ambient_rank == b.ambient_rank and a.minimal().rays == b.minimal().rays


def dual_cone(c: Cone) -> Cone:
    return Cone(c.ambient_rank, c.inequalities)


def intersect(a: Cone, b: Cone) -> Cone:
    n = a.ambient_rank
    lines, rays = cone_from_inequalities(n, a.inequalities + b.inequalities)
    return Cone(n, canonical_generators(n, lines, rays))


def is_strongly_convex(c: Cone) -> bool:
    return not c.lineality


def _face_index_sets(c: Cone) -> list[frozenset]:
    full = frozenset(range(len(c.rays)))
    zsets = {frozenset(i for i, r in enumerate(c.rays) if lat.dot(u, r) == 0) for u in c.inequalities}
    seen = {full}
    todo = [full]
    while todo:
        F = todo.pop()
        for Z in zsets:
            G = F & Z
            if G not in seen:
                seen.add(G)
                todo.append(G)
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def faces(c: Cone) -> list[tuple[Cone, frozenset]]:
    """All faces of ``c`` with the indices of the rays of ``c`` they contain."""
    return [(Cone(c.ambient_rank, tuple(c.rays[i] for i in F)), F) for F in _face_index_sets(c)]


def face_of(f: Cone, c: Cone) -> bool:
    """``f`` equals the smallest face of ``c`` containing it (and lies in ``c``)."""
    if not all(c.contains(r) for r in f.rays):
        return False
    tight = [u for u in c.inequalities if all(lat.dot(u, r) == 0 for r in f.rays)]
    rays = tuple(r for r in c.rays if all(lat.dot(u, r) == 0 for u in tight))
    return Cone(c.ambient_rank, rays).minimal() == f.minimal()


# ---------------------------------------------------------------------------
# lattice points


def grading(c: Cone) -> IntVector:
    """Integral functional, nonnegative on ``c`` and positive off its lineality."""
    n = c.ambient_rank
    out = lat.zero(n)
    for u in c.inequalities:
        out = lat.add(out, u)
    return out


def hilbert_basis(c: Cone) -> list[IntVector]:
    """Minimal generating set of the monoid ``c ∩ Z^d`` for a pointed cone."""
    if not is_strongly_convex(c):
        raise NotStronglyConvex(f"{c} contains a line")
    if not c.rays:
        return []
    rays = c.minimal().rays
    n = c.ambient_rank
    lo = [sum(min(0, r[k]) for r in rays) for k in range(n)]
    hi = [sum(max(0, r[k]) for r in rays) for k in range(n)]
    phi = grading(c)
    cand = [x for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))) if any(x) and c.contains(x)]
    cand.sort(key=lambda x: (lat.dot(phi, x), x))
    basis: list[IntVector] = []
    for x in cand:
        if not any(c.contains(lat.sub(x, h)) for h in basis):
            basis.append(tuple(x))
    return sorted(basis)


def lattice_point_generators(c: Cone) -> tuple[IntVector, ...]:
    """Generators of ``c ∩ Z^d`` for any rational cone.

    The lineality lattice is split off by a unimodular change of basis; the
    pointed quotient gets a Hilbert basis whose elements are lifted back and
    reduced to canonical representatives modulo the lineality lattice.
    """
    n = c.ambient_rank
    L = c.lineality
    if not L:
        return tuple(hilbert_basis(c))
    k = len(L)
    P, Pinv = lat.unimodular_completion(L, n)
    proj = Cone(n - k, tuple(lat.mat_vec(P, r)[k:] for r in c.rays))
    out = set()
    for h in L:
        out.add(tuple(h))
        out.add(lat.neg(h))
    for hb in hilbert_basis(proj):
        x = lat.mat_vec(Pinv, lat.zero(k) + tuple(hb))
        out.add(lat.reduce_mod_lattice(x, L))
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# classic fans


@dataclass(frozen=True)
class FanReport:
    ok: bool
    reason: str = ""
    pair: Optional[tuple[int, int]] = None

    def __bool__(self):
        return self.ok


def validate_classic_fan(cones: Sequence[Cone]) -> FanReport:
    """Check strong convexity, closure under faces and the face-intersection property."""
    canon = [c.minimal() for c in cones]
    present = set(canon)
    for i, c in enumerate(canon):
        if not is_strongly_convex(c):
            return FanReport(False, f"cone {i} is not strongly convex", (i, i))
        for f, _ in faces(c):
            if f.minimal() not in present:
                return FanReport(False, f"face {list(map(list, f.rays))} of cone {i} is missing", (i, i))
    for i, j in itertools.combinations(range(len(canon)), 2):
        meet = intersect(canon[i], canon[j])
        if not (face_of(meet, canon[i]) and face_of(meet, canon[j])):
            return FanReport(False, f"cones {i} and {j} meet outside a common face", (i, j))
    return FanReport(True)


@dataclass(frozen=True)
class ClassicFan:
    lattice_rank: int
    cones: tuple[Cone, ...]

    def __post_init__(self):
        canon = {c.minimal() for c in self.cones}
        object.__setattr__(self, "cones", tuple(sorted(canon, key=lambda c: (c.dim, len(c.rays), c.rays))))

    @classmethod
    def from_maximal(cls, lattice_rank: int, maximal: Iterable[Sequence[Sequence[int]]]) -> "ClassicFan":
        out = set()
        for rays in maximal:
            c = Cone(lattice_rank, tuple(tuple(r) for r in rays))
            for f, _ in faces(c):
                out.add(f.minimal())
        if not out:
            out.add(Cone(lattice_rank))
        return cls(lattice_rank, tuple(out))

    @cached_property
    def rays(self) -> tuple[IntVector, ...]:
        return tuple(sorted({r for c in self.cones for r in c.rays}))

    @cached_property
    def maximal_cones(self) -> tuple[Cone, ...]:
        out = []
        for c in self.cones:
            if not any(d != c and set(c.rays) < set(d.rays) for d in self.cones):
                out.append(c)
        return tuple(out)

    def ray_indices(self, c: Cone) -> tuple[int, ...]:
        return tuple(sorted(self.rays.index(r) for r in c.rays))

    def validate(self) -> FanReport:
        return validate_classic_fan(self.cones)


def is_complete(fan: ClassicFan) -> bool:
    """Facet pairing: pure of full dimension, every ridge in exactly two maximal cones."""
    d = fan.lattice_rank
    mx = fan.maximal_cones
    if any(c.dim != d for c in mx):
        return False
    if d == 0:
        return True
    count: dict[Cone, int] = {}
    for c in mx:
        for f, _ in faces(c):
            if f.dim == d - 1:
                count[f.minimal()] = count.get(f.minimal(), 0) + 1
    return bool(count) and all(v == 2 for v in count.values())


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class Polytope:
    ambient_rank: int
    vertices: tuple[IntVector, ...]

    def __post_init__(self):
        verts = tuple(sorted({tuple(v) for v in self.vertices}))
        object.__setattr__(self, "vertices", verts)

    @cached_property
    def homogenized(self) -> Cone:
        return Cone(self.ambient_rank + 1, tuple((1,) + v for v in self.vertices))

    def check(self):
        if not self.vertices:
            raise DegeneratePolytope("empty polytope")
        v0 = self.vertices[0]
        diffs = [lat.sub(v, v0) for v in self.vertices[1:]]
        if (lat.rank(diffs) if diffs else 0) < self.ambient_rank:
            raise DegeneratePolytope("fewer than rank+1 affinely independent vertices")
        extreme = set(self.homogenized.minimal().rays)
        if extreme != set(self.homogenized.rays):
            raise ValueError("vertex list contains non-extreme points")


def _vertex_normal_cone(p: Polytope, v: IntVector) -> Cone:
    tangent = Cone(p.ambient_rank, tuple(lat.sub(w, v) for w in p.vertices if w != v))
    return dual_cone(tangent)


def normal_fan(p: Polytope) -> ClassicFan:
    """Inner normal fan: maximal cones are the vertex normal cones."""
    p.check()
    return ClassicFan.from_maximal(p.ambient_rank, [_vertex_normal_cone(p, v).rays for v in p.vertices])


def polytope_faces(p: Polytope) -> list[frozenset]:
    """Nonempty faces of ``p`` as sets of vertex indices (``p`` itself included)."""
    p.check()
    H = p.homogenized
    idx = {r: i for i, r in enumerate(H.rays)}
    order = [idx[(1,) + v] for v in p.vertices]
    back = {j: i for i, j in enumerate(order)}
    out = []
    for _, F in faces(H):
        if F:
            out.append(frozenset(back[j] for j in F))
    return sorted(out, key=lambda s: (-len(s), sorted(s)))


def face_normal_cones(p: Polytope) -> dict[frozenset, Cone]:
    """Normal cone of every nonempty face: the intersection of its vertex normal cones."""
    normals = [_vertex_normal_cone(p, v) for v in p.vertices]
    out = {}
    for F in polytope_faces(p):
        c = None
        for i in sorted(F):
            c = normals[i] if c is None else intersect(c, normals[i])
        out[F] = c.minimal()
    return out

"""Monoided spaces on finite posets.

A finite space carries the Alexandrov topology of its specialization order:
``p <= q`` means ``p`` is a generization of ``q``, open sets are down-sets and
``down(q)`` is the smallest open neighbourhood of ``q``.  The structure sheaf
is recorded by its stalks together with the restriction (generization) maps
``stalk(q) -> stalk(p)`` for covering pairs ``p < q``; every map is a matrix
between the ambient lattices of the two stalks.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from . import lattice as lat
from . import monoid as mon
from . import polyhedral as poly
from .errors import (
    IllFormedMorphism,
    IncompatibleIdentification,
    InvalidFan,
    NotIrreducible,
)
from .lattice import IntMatrix, IntVector
from .monoid import AffineMonoid


@dataclass(eq=False)
class MonoidedSpace:
    points: tuple[str, ...]
    order: frozenset  # pairs (p, q) with p <= q; closed up by the constructor
    stalks: Mapping[str, AffineMonoid]
    gen_maps: Mapping[tuple[str, str], IntMatrix] = field(default_factory=dict)
    labels: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        self.points = tuple(self.points)
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate point names")
        pts = set(self.points)
        if set(self.stalks) != pts:
            raise ValueError("stalks must be given for exactly the points")
        below = {p: {p} for p in self.points}
        for p, q in self.order:
            if p not in pts or q not in pts:
                raise ValueError(f"order mentions unknown point in {(p, q)}")
            below[q].add(p)
        changed = True
        while changed:
            changed = False
            for q in self.points:
                extra = set().union(*(below[p] for p in below[q])) - below[q]
                if extra:
                    below[q] |= extra
                    changed = True
        for p in self.points:
            for q in below[p]:
                if q != p and p in below[q]:
                    raise ValueError(f"order is not antisymmetric at {p}, {q}")
        self._below = {q: frozenset(s) for q, s in below.items()}
        self.order = frozenset((p, q) for q in self.points for p in self._below[q] if p != q)
        covers = set()
        for q in self.points:
            strict = self._below[q] - {q}
            for p in strict:
                if not any(p in self._below[r] for r in strict if r != p):
                    covers.add((p, q))
        self.covers = frozenset(covers)
        maps = {}
        for p, q in sorted(self.covers):
            A = self.gen_maps.get((q, p))
            dq, dp = self.stalks[q].ambient_rank, self.stalks[p].ambient_rank
            if A is None:
                if dp != dq:
                    raise ValueError(f"missing generization map {q}->{p}")
                A = lat.identity(dp)
            A = lat.mat(A)
            if len(A) != dp or any(len(r) != dq for r in A):
                raise ValueError(f"map {q}->{p} has the wrong shape")
            maps[(q, p)] = A
        given = dict(self.gen_maps)
        self.gen_maps = maps
        self._composite: dict = {}
        for q in self.points:
            for p in self._below[q]:
                self.restriction_map(q, p)
        for (q, p), A in given.items():
            if (p, q) not in self.order:
                raise ValueError(f"map {q}->{p} given for an incomparable pair")
            if lat.mat(A) != self.restriction_map(q, p):
                raise ValueError(f"map {q}->{p} disagrees with the composite along covers")

    # -- order ---------------------------------------------------------------

    def leq(self, p: str, q: str) -> bool:
        return p in self._below[q]

    def down(self, q: str) -> frozenset:
        return self._below[q]

    def up(self, p: str) -> frozenset:
        return frozenset(q for q in self.points if p in self._below[q])

    @cached_property
    def minimal_points(self) -> tuple[str, ...]:
        return tuple(p for p in self.points if self._below[p] == {p})

    @cached_property
    def maximal_points(self) -> tuple[str, ...]:
        return tuple(p for p in self.points if self.up(p) == {p})

    def is_open(self, U: Iterable[str]) -> bool:
        U = set(U)
        return all(self._below[q] <= U for q in U)

    def restriction_map(self, q: str, p: str) -> IntMatrix:
        """Composite generization map ``stalk(q) -> stalk(p)`` for ``p <= q``."""
        key = (q, p)
        if key in self._composite:
            return self._composite[key]
        if p not in self._below[q]:
            raise ValueError(f"{p} is not a generization of {q}")
        if p == q:
            A = lat.identity(self.stalks[q].ambient_rank)
        else:
            A = None
            for r in sorted(r for r, s in self.covers if s == q and p in self._below[r]):
                B = lat.mat_mul(self.restriction_map(r, p), self.gen_maps[(q, r)])
                if A is None:
                    A = B
                elif A != B:
                    raise ValueError(f"generization maps {q}->{p} do not commute")
        self._composite[key] = A
        return A

    def components(self) -> list[frozenset]:
        seen, out = set(), []
        for p in self.points:
            if p in seen:
                continue
            comp, todo = set(), [p]
            while todo:
                x = todo.pop()
                if x in comp:
                    continue
                comp.add(x)
                todo.extend(self._below[x] | self.up(x))
            seen |= comp
            out.append(frozenset(comp))
        return out

    def __repr__(self):
        return f"MonoidedSpace({len(self.points)} points)"


def minimal_open(X: MonoidedSpace, sigma: str) -> frozenset:
    """Smallest open set containing ``sigma``."""
    return X.down(sigma)


def subspace(X: MonoidedSpace, U: Iterable[str]) -> MonoidedSpace:
    """Induced monoided space on a subset of points; covers get composite maps."""
    U = [p for p in X.points if p in set(U)]
    order = {(p, q) for p, q in X.order if p in U and q in U}
    maps = {(q, p): X.restriction_map(q, p) for p, q in order}
    return MonoidedSpace(tuple(U), frozenset(order), {p: X.stalks[p] for p in U}, maps,
                         {p: X.labels[p] for p in U if p in X.labels})


def generic_point(X: MonoidedSpace, U: Optional[Iterable[str]] = None) -> str:
    U = set(X.points if U is None else U)
    mins = [p for p in U if not any(q != p and q in U for q in X.down(p))]
    if len(mins) != 1:
        raise NotIrreducible(f"{len(mins)} minimal points")
    return mins[0]


def embedded_stalks(X: MonoidedSpace, eta: str, U: Optional[Iterable[str]] = None) -> dict[str, AffineMonoid]:
    """Stalks of ``U`` (default: everything above ``eta``) mapped into the stalk lattice at ``eta``."""
    U = X.up(eta) if U is None else U
    return {p: mon.image(X.stalks[p], X.restriction_map(p, eta)) for p in U}


def generic_frame(X: MonoidedSpace, eta: str, U: Optional[Iterable[str]] = None):
    """Embedded stalks rewritten in a basis of the group at ``eta``.

    Returns ``(group, stalks)``; each stalk lives in ``Z^group.rank``.
    """
    G = mon.group_completion(X.stalks[eta])
    return G, {p: mon.in_coordinates(S, G) for p, S in embedded_stalks(X, eta, U).items()}


# ---------------------------------------------------------------------------
# constructions


def _prime_name(S: AffineMonoid, p: mon.PrimeIdeal) -> str:
    inside = [i for i in range(len(S.generators)) if i not in p.complement_face]
    return "P[" + ",".join(map(str, inside)) + "]"


def spec(S: AffineMonoid) -> MonoidedSpace:
    """The spectrum: primes ordered by inclusion with stalks ``S_p``."""
    ps = mon.primes(S)
    names = [_prime_name(S, p) for p in ps]
    stalks, labels = {}, {}
    for name, p in zip(names, ps):
        loc = mon.localize_at_prime(S, p)
        stalks[name] = loc if loc == S else mon.reduced(loc)
        labels[name] = p
    order = set()
    for (a, p), (b, q) in itertools.product(zip(names, ps), repeat=2):
        if a != b and p.complement_face >= q.complement_face:
            order.add((a, b))
    return MonoidedSpace(tuple(names), frozenset(order), stalks, {}, labels)


def basic_open(X: MonoidedSpace, sigma: str, f: Sequence[int]) -> frozenset:
    """``D(f)`` inside ``down(sigma)``: points where ``f`` becomes a unit."""
    S = X.stalks[sigma]
    if not S.contains(f):
        raise ValueError(f"{f} is not a section over {sigma}")
    out = set()
    for tau in X.down(sigma):
        if X.stalks[tau].is_unit(lat.mat_vec(X.restriction_map(sigma, tau), f)):
            out.add(tau)
    return frozenset(out)


def _cone_name(fan: poly.ClassicFan, c: poly.Cone) -> str:
    return "C[" + ",".join(map(str, fan.ray_indices(c))) + "]"


def from_classic_fan(fan: poly.ClassicFan) -> MonoidedSpace:
    """Cones ordered by the face relation with stalks ``dual(sigma) ∩ M``."""
    report = fan.validate()
    if not report:
        raise InvalidFan(report.reason)
    d = fan.lattice_rank
    names = [_cone_name(fan, c) for c in fan.cones]
    stalks, labels = {}, {}
    for name, c in zip(names, fan.cones):
        stalks[name] = AffineMonoid(d, poly.lattice_point_generators(poly.dual_cone(c)))
        labels[name] = c
    order = set()
    for (a, c), (b, e) in itertools.product(zip(names, fan.cones), repeat=2):
        if a != b and set(c.rays) <= set(e.rays):
            order.add((a, b))
    return MonoidedSpace(tuple(names), frozenset(order), stalks, {}, labels)


@dataclass(frozen=True)
class Identification:
    """Identify ``left = (piece, point)`` with ``right`` via a lattice isomorphism.

    ``matrix`` maps the stalk lattice of ``left`` onto that of ``right``;
    ``None`` means the identity.
    """

    left: tuple[int, str]
    right: tuple[int, str]
    matrix: Optional[IntMatrix] = None


def glue(pieces: Sequence[MonoidedSpace], identifications: Sequence[Identification] = ()) -> MonoidedSpace:
    nodes = [(k, p) for k, X in enumerate(pieces) for p in X.points]
    edges: dict = {n: [] for n in nodes}
    for ident in identifications:
        a, b = tuple(ident.left), tuple(ident.right)
        if a not in edges or b not in edges:
            raise IncompatibleIdentification(f"unknown point in {ident}")
        da = pieces[a[0]].stalks[a[1]].ambient_rank
        db = pieces[b[0]].stalks[b[1]].ambient_rank
        M = lat.identity(da) if ident.matrix is None else lat.mat(ident.matrix)
        Minv = lat.integer_inverse(M) if da == db else None
        if Minv is None:
            raise IncompatibleIdentification(f"{ident} is not a lattice isomorphism")
        edges[a].append((b, M))
        edges[b].append((a, Minv))
    # iota[n]: stalk lattice of n -> stalk lattice of its representative
    iota, rep = {}, {}
    for n in nodes:
        if n in iota:
            continue
        iota[n], rep[n] = lat.identity(pieces[n[0]].stalks[n[1]].ambient_rank), n
        todo = [n]
        while todo:
            x = todo.pop()
            for y, M in edges[x]:
                cand = lat.mat_mul(iota[x], lat.integer_inverse(M))
                if y in iota:
                    if iota[y] != cand:
                        raise IncompatibleIdentification(f"identifications around {y} disagree")
                    continue
                iota[y], rep[y] = cand, n
                todo.append(y)
    classes: dict = {}
    for n in nodes:
        classes.setdefault(rep[n], []).append(n)
    for r, members in classes.items():
        if len({k for k, _ in members}) != len(members):
            raise IncompatibleIdentification(f"two points of one piece identified with {r}")
        S = pieces[r[0]].stalks[r[1]]
        for k, p in members:
            if not mon.same_monoid(mon.image(pieces[k].stalks[p], iota[(k, p)]), S):
                raise IncompatibleIdentification(f"stalks at {(k, p)} and {r} do not match")
    for r, members in classes.items():
        downs = {frozenset(rep[(k, x)] for x in pieces[k].down(p)) for k, p in members}
        if len(downs) != 1:
            raise IncompatibleIdentification(f"identification at {r} does not respect the order")

    def name(n):
        r = rep[n]
        return f"{r[0]}.{r[1]}"

    points = [name(r) for r in sorted(classes)]
    stalks = {name(r): pieces[r[0]].stalks[r[1]] for r in classes}
    order = set()
    for k, X in enumerate(pieces):
        for p, q in X.order:
            order.add((name((k, p)), name((k, q))))
    maps: dict = {}
    for k, X in enumerate(pieces):
        for p, q in X.covers:
            key = (name((k, q)), name((k, p)))
            A = lat.mat_mul(lat.mat_mul(iota[(k, p)], X.gen_maps[(q, p)]), lat.integer_inverse(iota[(k, q)]))
            if maps.setdefault(key, A) != A:
                raise IncompatibleIdentification(f"generization maps disagree on {key}")
    labels = {name(r): pieces[r[0]].labels[r[1]] for r in classes if r[1] in pieces[r[0]].labels}
    return MonoidedSpace(tuple(points), frozenset(order), stalks, maps, labels)


def replace_stalk(X: MonoidedSpace, point: str, S: AffineMonoid) -> MonoidedSpace:
    """Same poset and maps with one stalk swapped (ambient ranks must agree)."""
    if S.ambient_rank != X.stalks[point].ambient_rank:
        raise ValueError("replacement stalk lives in a different lattice")
    stalks = dict(X.stalks)
    stalks[point] = S
    return MonoidedSpace(X.points, X.order, stalks, dict(X.gen_maps), dict(X.labels))


# ---------------------------------------------------------------------------
# sections


def sections(X: MonoidedSpace, U: Iterable[str], degree_bound: int = 4) -> AffineMonoid:
    """``Γ(U, M)`` as a submonoid of the stalk lattice at the generic point of ``U``.

    A disconnected ``U`` gives the product of the sections over its
    components (ordered by their smallest point name).

    With injective generization maps this is the intersection of the stalks
    at the maximal points of ``U``.  When those stalks are saturated the
    intersection is exact (a cone intersected with a lattice); otherwise
    candidates are products of at most ``degree_bound`` generators of that
    saturated hull, kept if they lie in every stalk.
    """
    U = frozenset(U)
    if not X.is_open(U):
        raise ValueError("sections are only defined on open sets")
    if not U:
        return AffineMonoid(0)
    comps = subspace(X, U).components()
    if len(comps) > 1:
        # product over connected components, in block coordinates
        return mon.direct_sum(*(sections(X, c, degree_bound) for c in sorted(comps, key=min)))
    eta = generic_point(X, U)
    tops = [p for p in X.points if p in U and not any(q != p and q in U for q in X.up(p))]
    if len(tops) == 1:
        return X.stalks[tops[0]]
    emb = embedded_stalks(X, eta, tops)
    n = X.stalks[eta].ambient_rank
    G = None
    for S in emb.values():
        B = mon.group_completion(S).basis
        G = B if G is None else lat.lattice_intersection(G, B, n)
    if not G:
        return AffineMonoid(n)
    frame = mon.GroupCompletion(len(G), G)
    ineqs = [a for S in emb.values() for a in S.cone.inequalities]
    lines, rays = poly.cone_from_inequalities(n, ineqs)
    local = []
    for r in poly.canonical_generators(n, lines, rays):
        k = 1
        while frame.coordinates(lat.scale(k, r)) is None:
            k += 1
        local.append(frame.coordinates(lat.scale(k, r)))
    hull = poly.Cone(frame.rank, tuple(local))
    gens = [frame.point(y) for y in poly.lattice_point_generators(hull)]
    hull_monoid = AffineMonoid(n, tuple(gens))
    if all(mon.is_saturated(S) for S in emb.values()) and all(
        mon.is_submonoid(hull_monoid, S) for S in emb.values()
    ):
        return hull_monoid
    keep = set()
    for d in range(1, degree_bound + 1):
        for combo in itertools.combinations_with_replacement(gens, d):
            x = lat.zero(n)
            for g in combo:
                x = lat.add(x, g)
            if any(x) and all(S.contains(x) for S in emb.values()):
                keep.add(x)
    return mon.reduced(AffineMonoid(n, tuple(sorted(keep)))) if keep else AffineMonoid(n)


# ---------------------------------------------------------------------------
# fan certificates


@dataclass(frozen=True)
class FanCertificate:
    """For every point ``sigma``: the prime of ``stalk(sigma)`` attached to each ``tau <= sigma``.

    Primes are recorded by their complement face (generator indices).
    """

    primes: Mapping[str, Mapping[str, frozenset]]

    def verify(self, X: MonoidedSpace) -> bool:
        cert, _ = _fan_check(X)
        return cert is not None and dict(cert.primes) == dict(self.primes)


def _fan_check(X: MonoidedSpace):
    if "_fan_check" not in X.__dict__:
        X.__dict__["_fan_check"] = _fan_check_uncached(X)
    return X.__dict__["_fan_check"]


def _fan_check_uncached(X: MonoidedSpace):
    table = {}
    for sigma in X.points:
        S = X.stalks[sigma]
        faces = {p.complement_face: p for p in mon.primes(S)}
        G = mon.group_completion(S)
        assigned = {}
        for tau in sorted(X.down(sigma)):
            A = X.restriction_map(sigma, tau)
            T = X.stalks[tau]
            if G.rank and lat.rank([lat.mat_vec(A, b) for b in G.basis]) < G.rank:
                return None, (sigma, f"generization map to {tau} is not injective")
            imgs = [lat.mat_vec(A, g) for g in S.generators]
            if not all(T.contains(x) for x in imgs):
                return None, (sigma, f"generization map to {tau} does not land in the stalk")
            face = frozenset(i for i, x in enumerate(imgs) if T.is_unit(x))
            if face not in faces:
                return None, (sigma, f"units pulled back from {tau} do not form a face")
            if not mon.same_monoid(T, mon.image(mon.localize_at_prime(S, faces[face]), A)):
                return None, (sigma, f"stalk at {tau} is not the localization of the stalk at {sigma}")
            assigned[tau] = face
        if len(set(assigned.values())) != len(assigned) or set(assigned.values()) != set(faces):
            return None, (sigma, f"down-set has {len(assigned)} points but Spec of the stalk has {len(faces)}")
        for a, b in itertools.product(assigned, repeat=2):
            if X.leq(a, b) != (assigned[a] >= assigned[b]):
                return None, (sigma, f"order between {a} and {b} does not match prime inclusion")
        table[sigma] = assigned
    return FanCertificate(table), None


def is_fan(X: MonoidedSpace) -> Optional[FanCertificate]:
    """Certificate that every minimal open is the spectrum of its stalk, or ``None``."""
    return _fan_check(X)[0]


def fan_obstruction(X: MonoidedSpace) -> Optional[tuple[str, str]]:
    """``(point, reason)`` for the first point where the fan condition fails."""
    return _fan_check(X)[1]


# ---------------------------------------------------------------------------
# isomorphism


def _component_data(X: MonoidedSpace, comp: frozenset):
    eta = generic_point(X, comp)
    G, stalks = generic_frame(X, eta, comp)
    n = G.rank
    tops = [p for p in comp if p in X.maximal_points]
    L = None
    for p in tops:
        B = mon.unit_lattice(stalks[p])
        L = B if L is None else lat.lattice_intersection(L, B, n)
    L = L or ()
    if L and lat.saturate_lattice(L, n) != L:
        raise NotImplementedError("common unit lattice is not saturated")
    P, _ = lat.unimodular_completion(L, n)
    k = len(L)
    quot = {p: AffineMonoid(n - k, tuple(lat.mat_vec(P, g)[k:] for g in S.generators)) for p, S in stalks.items()}
    normals = set()
    for p in tops:
        c = quot[p].cone
        if c.rays and not poly.is_strongly_convex(poly.dual_cone(c)):
            raise NotImplementedError("stalk cone is not full-dimensional in the generic lattice")
        normals.update(c.inequalities)
    return n, k, quot, sorted(normals)


def _order_signature(X: MonoidedSpace, comp) -> list:
    return sorted((len(X.down(p)), len(X.up(p))) for p in comp)


def _match_points(X, Y, compX, compY, allowed):
    ps = sorted(compX, key=lambda p: -len(X.down(p)))
    used, pi = set(), {}

    def bt(i):
        if i == len(ps):
            return True
        p = ps[i]
        for q in sorted(allowed[p]):
            if q in used:
                continue
            if all(X.leq(p, a) == Y.leq(q, pi[a]) and X.leq(a, p) == Y.leq(pi[a], q) for a in pi):
                pi[p] = q
                used.add(q)
                if bt(i + 1):
                    return True
                del pi[p]
                used.discard(q)
        return False

    return dict(pi) if bt(0) else None


def _component_iso(X, Y, cx, cy) -> bool:
    if len(cx) != len(cy) or _order_signature(X, cx) != _order_signature(Y, cy):
        return False
    nX, kX, qX, WX = _component_data(X, cx)
    nY, kY, qY, WY = _component_data(Y, cy)
    if (nX, kX) != (nY, kY) or len(WX) != len(WY):
        return False
    m = nX - kX
    if m and not WX:
        raise NotImplementedError("no dual rays to anchor the isomorphism search")
    for psi in lat.unimodular_maps(WX, WY, m):
        phi = lat.integer_inverse(lat.transpose(psi, m)) if m else ()
        allowed = {}
        for p in cx:
            img = mon.image(qX[p], phi) if m else qX[p]
            allowed[p] = {q for q in cy if mon.same_monoid(img, qY[q])}
            if not allowed[p]:
                break
        else:
            if _match_points(X, Y, cx, cy, allowed) is not None:
                return True
    return False


def iso_check(X: MonoidedSpace, Y: MonoidedSpace) -> bool:
    """Poset isomorphism with compatible stalk isomorphisms.

    Each connected component must have a unique generic point; stalks are then
    compared inside the generic lattice, where a compatible family of stalk
    isomorphisms is a single lattice automorphism.
    """
    if len(X.points) != len(Y.points):
        return False
    cX, cY = X.components(), Y.components()
    if len(cX) != len(cY):
        return False
    used: set = set()

    def bt(i):
        if i == len(cX):
            return True
        for j, c in enumerate(cY):
            if j not in used and _component_iso(X, Y, cX[i], c):
                used.add(j)
                if bt(i + 1):
                    return True
                used.discard(j)
        return False

    return bt(0)


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class MonoidMorphismData:
    source: AffineMonoid
    target: AffineMonoid
    matrix: IntMatrix


def is_local_hom(phi: MonoidMorphismData) -> bool:
    """Whether the homomorphism sends non-units to non-units."""
    S, T, A = phi.source, phi.target, lat.mat(phi.matrix)
    if len(A) != T.ambient_rank or any(len(r) != S.ambient_rank for r in A):
        raise IllFormedMorphism("matrix has the wrong shape")
    imgs = [lat.mat_vec(A, g) for g in S.generators]
    if not all(T.contains(x) for x in imgs):
        raise IllFormedMorphism("a generator is not mapped into the target")
    unit = set(S.unit_indices)
    return all(not T.is_unit(x) for i, x in enumerate(imgs) if i not in unit)


# ---------------------------------------------------------------------------
# polytopes


@dataclass
class PolytopeFaceSpace:
    """Nonempty faces of a polytope ordered by reverse inclusion (stars are the minimal opens)."""

    faces: list[frozenset]
    fan_space: MonoidedSpace
    correspondence: dict  # face -> point of fan_space
    is_isomorphism: bool

    def leq(self, G: frozenset, F: frozenset) -> bool:
        return G >= F

    def star(self, F: frozenset) -> list[frozenset]:
        return [G for G in self.faces if G >= F]


def polytope_face_space(p: poly.Polytope) -> PolytopeFaceSpace:
    fan = poly.normal_fan(p)
    X = from_classic_fan(fan)
    by_cone = {X.labels[name]: name for name in X.points}
    normals = poly.face_normal_cones(p)
    corr = {F: by_cone.get(c) for F, c in normals.items()}
    ok = None not in corr.values() and len(set(corr.values())) == len(X.points) == len(corr)
    if ok:
        for F, G in itertools.product(corr, repeat=2):
            if (G >= F) != X.leq(corr[G], corr[F]):
                ok = False
                break
    return PolytopeFaceSpace(list(normals), X, corr, ok)

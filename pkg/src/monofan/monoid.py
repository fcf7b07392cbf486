"""Commutative monoids: affine monoids in a lattice and finitely presented monoids.

An :class:`AffineMonoid` is a finitely generated submonoid of ``Z^d``.  All
set-level questions (membership, equality, inclusion) are answered exactly by
:func:`monofan.lattice.solve_nonneg`, using a grading read off the dual of
the cone spanned by the generators.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from . import lattice as lat
from . import polyhedral as poly
from .errors import InvalidPrime, NotAMember
from .lattice import IntVector


@dataclass(frozen=True)
class AffineMonoid:
    ambient_rank: int
    generators: tuple[IntVector, ...] = ()

    def __post_init__(self):
        seen, gens = set(), []
        for g in self.generators:
            g = lat.vec(g)
            if len(g) != self.ambient_rank:
                raise ValueError(f"generator {g} not in Z^{self.ambient_rank}")
            if any(g) and g not in seen:
                seen.add(g)
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    @cached_property
    def cone(self) -> poly.Cone:
        return poly.Cone(self.ambient_rank, self.generators)

    @cached_property
    def grading(self) -> IntVector:
        return poly.grading(self.cone)

    @cached_property
    def unit_indices(self) -> tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.generators) if lat.dot(self.grading, g) == 0)

    def is_unit(self, v: Sequence[int]) -> bool:
        return self.contains(v) and lat.dot(self.grading, v) == 0

    def express(self, v: Sequence[int]) -> Optional[IntVector]:
        """Multiplicities of the generators summing to ``v``, or ``None``."""
        if len(v) != self.ambient_rank:
            raise ValueError("wrong ambient rank")
        if not self.cone.contains(v):
            return None
        return lat.solve_nonneg(self.generators, v, self.grading)

    @cached_property
    def _membership(self) -> dict:
        return {g: True for g in self.generators}

    def contains(self, v: Sequence[int]) -> bool:
        v = lat.vec(v)
        memo = self._membership
        if v not in memo:
            memo[v] = not any(v) or self.express(v) is not None
        return memo[v]

    def __contains__(self, v):
        return self.contains(v)

    def is_group(self) -> bool:
        return len(self.unit_indices) == len(self.generators)

    def __repr__(self):
        return f"AffineMonoid({self.ambient_rank}, {[list(g) for g in self.generators]})"


def monoid(generators: Sequence[Sequence[int]], ambient_rank: Optional[int] = None) -> AffineMonoid:
    if ambient_rank is None:
        ambient_rank = len(generators[0])
    return AffineMonoid(ambient_rank, tuple(tuple(g) for g in generators))


def free_monoid(n: int) -> AffineMonoid:
    return AffineMonoid(n, lat.identity(n))


def is_submonoid(S: AffineMonoid, T: AffineMonoid) -> bool:
    """``S ⊆ T`` as subsets of the common ambient lattice."""
    return S.ambient_rank == T.ambient_rank and all(T.contains(g) for g in S.generators)


def same_monoid(S: AffineMonoid, T: AffineMonoid) -> bool:
    return is_submonoid(S, T) and is_submonoid(T, S)


def monoid_sum(*parts: AffineMonoid) -> AffineMonoid:
    """Submonoid generated by the union of ``parts``."""
    n = parts[0].ambient_rank
    return AffineMonoid(n, tuple(g for S in parts for g in S.generators))


def direct_sum(*parts: AffineMonoid) -> AffineMonoid:
    """``S_1 x ... x S_k`` in the block lattice ``Z^(d_1 + ... + d_k)``."""
    n = sum(S.ambient_rank for S in parts)
    gens, offset = [], 0
    for S in parts:
        for g in S.generators:
            gens.append((0,) * offset + tuple(g) + (0,) * (n - offset - S.ambient_rank))
        offset += S.ambient_rank
    return AffineMonoid(n, tuple(gens))


def image(S: AffineMonoid, A: Sequence[Sequence[int]]) -> AffineMonoid:
    """Image of ``S`` under the lattice map with matrix ``A``."""
    return AffineMonoid(len(A), tuple(lat.mat_vec(A, g) for g in S.generators))


# ---------------------------------------------------------------------------
# units, ideals, primes


def units(S: AffineMonoid) -> AffineMonoid:
    """The unit group ``S ∩ -S``, generated by the grade-zero generators."""
    return AffineMonoid(S.ambient_rank, tuple(S.generators[i] for i in S.unit_indices))


def unit_lattice(S: AffineMonoid) -> lat.IntMatrix:
    return lat.hermite_normal_form([S.generators[i] for i in S.unit_indices], S.ambient_rank)


@dataclass(frozen=True)
class MonoidIdeal:
    """Ideal ``generators + S``."""

    monoid: AffineMonoid
    generators: tuple[IntVector, ...]

    def contains(self, v) -> bool:
        return any(self.monoid.contains(lat.sub(v, a)) for a in self.generators)


def maximal_ideal(S: AffineMonoid) -> MonoidIdeal:
    """``S+ = S \\ S*``, generated as an ideal by the non-unit generators."""
    unit = set(S.unit_indices)
    return MonoidIdeal(S, tuple(g for i, g in enumerate(S.generators) if i not in unit))


@dataclass(frozen=True)
class PrimeIdeal:
    """Prime ideal of ``monoid`` recorded by the generators of its complement face."""

    monoid: AffineMonoid
    complement_face: frozenset

    @property
    def face_generators(self) -> tuple[IntVector, ...]:
        return tuple(self.monoid.generators[i] for i in sorted(self.complement_face))

    @property
    def face_element(self) -> IntVector:
        """Sum of the face generators, a relative interior point of the face."""
        out = lat.zero(self.monoid.ambient_rank)
        for g in self.face_generators:
            out = lat.add(out, g)
        return out

    def contains(self, v) -> bool:
        if not self.monoid.contains(v):
            return False
        face = AffineMonoid(self.monoid.ambient_rank, self.face_generators)
        return not face.contains(v)

    def __le__(self, other: "PrimeIdeal") -> bool:
        return self.complement_face >= other.complement_face


def _face_sets(vectors: Sequence[IntVector], normals: Sequence[IntVector]) -> list[frozenset]:
    full = frozenset(range(len(vectors)))
    zsets = {frozenset(i for i, g in enumerate(vectors) if lat.dot(u, g) == 0) for u in normals}
    seen, todo = {full}, [full]
    while todo:
        F = todo.pop()
        for Z in zsets:
            G = F & Z
            if G not in seen:
                seen.add(G)
                todo.append(G)
    return sorted(seen, key=lambda s: (-len(s), sorted(s)))


def primes(S: AffineMonoid) -> list[PrimeIdeal]:
    """All prime ideals, one per face of the cone of ``S``; the empty prime comes first."""
    return [PrimeIdeal(S, F) for F in _face_sets(S.generators, S.cone.inequalities)]


def localize(S: AffineMonoid, f: Sequence[int]) -> AffineMonoid:
    """``S + N(-f)``."""
    f = lat.vec(f)
    if not S.contains(f):
        raise NotAMember(f"{f} is not in {S}")
    if lat.dot(S.grading, f) == 0:
        return S
    return AffineMonoid(S.ambient_rank, S.generators + (lat.neg(f),))


def localize_at_prime(S: AffineMonoid, p: PrimeIdeal) -> AffineMonoid:
    if p.monoid != S or p.complement_face not in {q.complement_face for q in primes(S)}:
        raise InvalidPrime(f"{sorted(p.complement_face)} is not a face of {S}")
    return localize(S, p.face_element)


# ---------------------------------------------------------------------------
# group completion and saturation


@dataclass(frozen=True)
class GroupCompletion:
    rank: int
    basis: lat.IntMatrix  # HNF rows spanning ZS inside Z^d

    def coordinates(self, v) -> Optional[IntVector]:
        return lat.coordinates(self.basis, v)

    def point(self, y) -> IntVector:
        n = len(self.basis[0]) if self.basis else 0
        out = [0] * n
        for c, b in zip(y, self.basis):
            for k in range(n):
                out[k] += c * b[k]
        return tuple(out)


def group_completion(S: AffineMonoid) -> GroupCompletion:
    B = lat.hermite_normal_form(S.generators, S.ambient_rank)
    return GroupCompletion(len(B), B)


def in_coordinates(S: AffineMonoid, G: GroupCompletion) -> AffineMonoid:
    """``S`` rewritten in the basis of a lattice ``G`` containing it."""
    gens = []
    for g in S.generators:
        y = G.coordinates(g)
        if y is None:
            raise ValueError(f"{g} is outside the lattice")
        gens.append(y)
    return AffineMonoid(G.rank, tuple(gens))


def saturation(S: AffineMonoid) -> AffineMonoid:
    """``ZS ∩ R>=0 S``."""
    G = group_completion(S)
    local = in_coordinates(S, G)
    gens = poly.lattice_point_generators(local.cone)
    return AffineMonoid(S.ambient_rank, tuple(G.point(y) for y in gens))


def is_saturated(S: AffineMonoid) -> bool:
    return all(S.contains(g) for g in saturation(S).generators)


def saturation_witness(S: AffineMonoid) -> Optional[IntVector]:
    """An element of ``saturation(S) \\ S``, or ``None`` when ``S`` is saturated."""
    for g in saturation(S).generators:
        if not S.contains(g):
            return g
    return None


# ---------------------------------------------------------------------------
# canonical forms and isomorphism


def irreducible_generators(S: AffineMonoid) -> tuple[IntVector, ...]:
    """Non-unit generators that are not a sum of two non-units."""
    unit = set(S.unit_indices)
    out = []
    for i, g in enumerate(S.generators):
        if i in unit:
            continue
        reducible = False
        for j, h in enumerate(S.generators):
            if j == i or j in unit:
                continue
            d = lat.sub(g, h)
            if lat.dot(S.grading, d) > 0 and S.contains(d):
                reducible = True
                break
        if not reducible:
            out.append(g)
    return tuple(out)


def reduced(S: AffineMonoid) -> AffineMonoid:
    """Same monoid, generated by ``±`` an HNF unit basis and reduced irreducibles."""
    L = unit_lattice(S)
    gens = set()
    for b in L:
        gens.add(tuple(b))
        gens.add(lat.neg(b))
    for g in irreducible_generators(S):
        gens.add(lat.reduce_mod_lattice(g, L))
    return AffineMonoid(S.ambient_rank, tuple(sorted(gens)))


def minimal_generators(S: AffineMonoid) -> tuple[IntVector, ...]:
    return reduced(S).generators


def remove_irreducible(S: AffineMonoid, h: Sequence[int]) -> AffineMonoid:
    """``S \\ {h}`` for an irreducible ``h``; same group and same saturation."""
    h = tuple(h)
    if S.unit_indices:
        raise ValueError("only pointed monoids lose a single element cleanly")
    H = irreducible_generators(S)
    if h not in H:
        raise ValueError(f"{h} is not an irreducible element")
    rest = [g for g in S.generators if g != h]
    gens = rest + [lat.add(h, g) for g in S.generators] + [lat.scale(2, h), lat.scale(3, h)]
    return AffineMonoid(S.ambient_rank, tuple(gens))


def _quotient_by_units(S: AffineMonoid):
    """Rewrite ``S`` in coordinates of ``ZS`` with its units split off.

    Returns ``(unit_rank, positive_part)`` where ``positive_part`` lives in
    ``Z^(rank - unit_rank)``.
    """
    G = group_completion(S)
    local = in_coordinates(S, G)
    L = unit_lattice(local)
    if L and lat.saturate_lattice(L, G.rank) != L:
        raise NotImplementedError("unit group is not saturated in the group completion")
    P, _ = lat.unimodular_completion(L, G.rank)
    k = len(L)
    pos = AffineMonoid(G.rank - k, tuple(lat.mat_vec(P, g)[k:] for g in local.generators))
    return k, pos


def find_isomorphism(S: AffineMonoid, T: AffineMonoid) -> Optional[lat.IntMatrix]:
    """A lattice isomorphism of the positive parts ``S/S* -> T/T*``, or ``None``.

    ``S`` and ``T`` are isomorphic iff one exists and their unit ranks agree.
    """
    kS, PS = _quotient_by_units(S)
    kT, PT = _quotient_by_units(T)
    if kS != kT or PS.ambient_rank != PT.ambient_rank:
        return None
    HS, HT = irreducible_generators(PS), irreducible_generators(PT)
    return next(lat.unimodular_maps(HS, HT, PS.ambient_rank), None)


def is_isomorphic(S: AffineMonoid, T: AffineMonoid) -> bool:
    return find_isomorphism(S, T) is not None


# ---------------------------------------------------------------------------
# presented monoids


@dataclass(frozen=True)
class PresentedMonoid:
    """``<g_1..g_n | sum u_i g_i = sum v_i g_i>`` for each relation ``(u, v)``."""

    generator_count: int
    relations: tuple[tuple[IntVector, IntVector], ...] = ()

    def __post_init__(self):
        rels = []
        for u, v in self.relations:
            u, v = lat.vec(u), lat.vec(v)
            if len(u) != self.generator_count or len(v) != self.generator_count:
                raise ValueError("relation of wrong length")
            if min(u + v, default=0) < 0:
                raise ValueError("relation exponents must be nonnegative")
            rels.append((u, v))
        object.__setattr__(self, "relations", tuple(rels))


@dataclass(frozen=True)
class BoundedCheck:
    """Outcome of a check that only inspects words of degree at most ``degree``."""

    passed: bool
    degree: int
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.passed


def words(n: int, D: int) -> list[IntVector]:
    """All exponent vectors of total degree at most ``D``, by degree then lex."""
    out = []
    for d in range(D + 1):
        for c in itertools.combinations_with_replacement(range(n), d):
            w = [0] * n
            for i in c:
                w[i] += 1
            out.append(tuple(w))
    out.sort(key=lambda w: (sum(w), tuple(-x for x in w)))
    return out


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def close_congruence(uf: _UnionFind, relations, ws, D):
    """Union every translate ``(a+w, b+w)`` of each relation inside degree ``D``."""
    for a, b in relations:
        da, db = sum(a), sum(b)
        for w in ws:
            dw = sum(w)
            if da + dw > D or db + dw > D:
                continue
            uf.union(lat.add(a, w), lat.add(b, w))


def bounded_congruence(P: PresentedMonoid, D: int) -> _UnionFind:
    ws = words(P.generator_count, D)
    uf = _UnionFind(ws)
    close_congruence(uf, P.relations, ws, D)
    return uf


def is_cancellative_bounded(P: PresentedMonoid, D: int) -> BoundedCheck:
    """Search for ``a + c = b + c`` with ``a != b`` among words of degree ``<= D``."""
    if D < 1:
        raise ValueError("degree bound must be at least 1")
    uf = bounded_congruence(P, D)
    ws = words(P.generator_count, D)
    classes: dict = {}
    for w in ws:
        classes.setdefault(uf.find(w), []).append(w)
    for x in ws:
        for y in classes[uf.find(x)]:
            if y <= x:
                continue
            m = tuple(min(a, b) for a, b in zip(x, y))
            for c in itertools.product(*(range(k + 1) for k in m)):
                if not any(c):
                    continue
                a, b = lat.sub(x, c), lat.sub(y, c)
                if uf.find(a) != uf.find(b):
                    a, b = max(a, b), min(a, b)
                    return BoundedCheck(False, D, (a, b, tuple(c)))
    return BoundedCheck(True, D)


def is_torsion_free_bounded(P: PresentedMonoid, D: int) -> BoundedCheck:
    """Search for ``n s = n s'`` with ``s != s'`` among words of degree ``<= D``."""
    if D < 2:
        raise ValueError("degree bound must be at least 2")
    uf = bounded_congruence(P, D)
    for n in range(2, D + 1):
        small = [w for w in words(P.generator_count, D // n)]
        for s, t in itertools.combinations(small, 2):
            if uf.find(lat.scale(n, s)) == uf.find(lat.scale(n, t)) and uf.find(s) != uf.find(t):
                s, t = max(s, t), min(s, t)
                return BoundedCheck(False, D, (n, s, t))
    return BoundedCheck(True, D)


@dataclass(frozen=True)
class Affinization:
    monoid: AffineMonoid
    images: tuple[IntVector, ...]  # image of each presented generator
    degree: int


def _free_images(P: PresentedMonoid):
    """Images of the generators in the free part of ``Z^n / relations``, or ``None`` on torsion."""
    n = P.generator_count
    rows = [lat.sub(u, v) for u, v in P.relations if u != v]
    if not rows:
        return lat.identity(n), True
    U, D, V = lat.smith_normal_form(rows)
    r = sum(1 for i in range(min(len(rows), n)) if D[i][i])
    torsion_free = all(D[i][i] == 1 for i in range(r))
    # x -> V^T x identifies Z^n / rowspace with (+) Z/d_i  (+)  Z^(n-r)
    free = lat.hermite_normal_form(lat.transpose(V)[r:], n) if r < n else ()
    images = lat.transpose(free, n) if free else tuple(() for _ in range(n))
    return images, torsion_free


def affinize(P: PresentedMonoid, D: int) -> Optional[Affinization]:
    """Embed ``P`` into its group completion, certified up to degree ``D``."""
    images, torsion_free = _free_images(P)
    if not torsion_free:
        return None
    if not is_cancellative_bounded(P, max(D, 1)) or not is_torsion_free_bounded(P, max(D, 2)):
        return None
    rank = len(images[0]) if images else 0
    uf = bounded_congruence(P, D)
    by_image: dict = {}
    for w in words(P.generator_count, D):
        img = tuple(sum(w[i] * images[i][k] for i in range(P.generator_count)) for k in range(rank))
        if img in by_image and uf.find(by_image[img]) != uf.find(w):
            return None
        by_image.setdefault(img, w)
    return Affinization(AffineMonoid(rank, images), tuple(images), D)


def gilmer_witness(P: PresentedMonoid, D: int) -> Optional[tuple[str, tuple]]:
    """First failing bounded Gilmer check as ``(check name, witness)``."""
    c = is_cancellative_bounded(P, max(D, 1))
    if not c:
        return "cancellative", c.witness
    t = is_torsion_free_bounded(P, max(D, 2))
    if not t:
        return "torsion_free", t.witness
    return None

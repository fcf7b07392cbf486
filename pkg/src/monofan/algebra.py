"""Monoid algebras as binomial presentations, and the glued atlas of a fan.

Everything happens at the level of exponents.  A chart ``A[S]`` has one
variable ``t^g`` per generator ``g`` of ``S``; a relation ``(u, v)`` stands for
the binomial ``t^u - t^v``.  The base ring is only a tag.
"""
from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import fanspace as fs
from . import lattice as lat
from . import monoid as mon
from .errors import NoOverlap, NonAffineOverlap, NotAFan
from .lattice import IntVector
from .monoid import AffineMonoid


@dataclass(frozen=True)
class AlgebraPresentation:
    monoid: AffineMonoid
    relations: tuple[tuple[IntVector, IntVector], ...]
    base_ring: str = "k"
    completeness_degree: int = 0
    certified_next_degree: bool = False  # degree D+1 fibers already connected

    @property
    def variable_count(self) -> int:
        return len(self.monoid.generators)


def _value(gens, w) -> IntVector:
    d = len(gens[0]) if gens else 0
    out = [0] * d
    for c, g in zip(w, gens):
        if c:
            for k in range(d):
                out[k] += c * g[k]
    return tuple(out)


def _order_key(w):
    return (sum(w), w)  # degree first, then lex


def toric_relations(gens: Sequence[IntVector], D: int):
    """Binomial generators of the congruence of ``gens`` up to exponent degree ``D``.

    Degree by degree, fibres of the evaluation map are joined with the
    translates of the relations chosen so far; every fibre that still falls
    apart contributes one relation per extra component.  Returns the relations
    and whether degree ``D + 1`` needed nothing new.
    """
    n = len(gens)
    # words as base D+2 integers: adding two words of total degree <= D+1 never carries
    powers = [(D + 2) ** i for i in range(n)]
    w0 = (0,) * n
    code = {w0: 0}
    degree = {w0: 0}
    v0 = tuple(0 for _ in gens[0]) if gens else ()
    fibres: dict = {v0: [w0]}
    by_degree: dict = {0: [w0]}
    codes: dict = {0: [0]}
    level = [(w0, v0, 0, 0)]  # word, value, code, first index allowed to grow
    for d in range(1, D + 2):
        nxt = []
        for w, val, c, first in level:
            for i in range(first, n):
                w2 = w[:i] + (w[i] + 1,) + w[i + 1:]
                val2 = tuple(map(operator.add, val, gens[i]))
                code[w2] = c + powers[i]
                degree[w2] = d
                fibres.setdefault(val2, []).append(w2)
                nxt.append((w2, val2, c + powers[i], i))
        by_degree[d] = [t[0] for t in nxt]
        codes[d] = [t[2] for t in nxt]
        level = nxt
    keys = sorted(fibres)
    fid = {code[w]: i for i, key in enumerate(keys) for w in fibres[key]}
    comps = [0] * len(keys)  # components among the words registered so far
    parent = {k: k for k in code.values()}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b, f):
        a, b = find(a), find(b)
        if a != b:
            parent[a] = b
            comps[f] -= 1

    for w in by_degree.get(0, ()):
        comps[fid[code[w]]] += 1
    relations: list = []
    certified = True
    for d in range(1, D + 2):
        touched = set()
        for w in by_degree.get(d, ()):
            f = fid[code[w]]
            comps[f] += 1
            touched.add(f)
        for u, v in relations:
            cu, cv = code[u], code[v]
            for cm in codes.get(d - max(degree[u], degree[v]), ()):
                a = cu + cm
                f = fid[a]
                if comps[f] > 1:
                    union(a, cv + cm, f)
        for f in sorted(touched):
            if comps[f] == 1:
                continue
            best: dict = {}
            for w in fibres[keys[f]]:  # listed by increasing degree
                if degree[w] > d:
                    break
                r = find(code[w])
                if r not in best or _order_key(w) < _order_key(best[r]):
                    best[r] = w
            reps = sorted(best.values(), key=_order_key)
            if d > D:
                certified = False
                continue
            for w in reps[1:]:
                relations.append((w, reps[0]))
                union(code[w], code[reps[0]], f)
    return sorted(relations), certified


def monoid_algebra(S: AffineMonoid, base: str = "k", D: int = 6) -> AlgebraPresentation:
    if D < 1:
        raise ValueError("degree bound must be at least 1")
    rels, certified = toric_relations(S.generators, D)
    return AlgebraPresentation(S, tuple(rels), base, D, certified)


def relations_hold(P: AlgebraPresentation) -> bool:
    g = P.monoid.generators
    return all(_value(g, u) == _value(g, v) for u, v in P.relations)


def format_monomial(w: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for c, x in zip(w, names):
        if c == 1:
            parts.append(x)
        elif c:
            parts.append(f"{x}^{c}")
    return "*".join(parts) or "1"


def variable_names(n: int) -> list[str]:
    base = "xyzwuv"
    return list(base[:n]) if n <= len(base) else [f"t{i}" for i in range(n)]


# ---------------------------------------------------------------------------
# atlas


@dataclass(frozen=True)
class Overlap:
    """Chart ``source`` restricted to the common open ``down(gamma)``.

    ``s`` is the localizing element of the source stalk and ``s_exponent`` a
    monomial of the source chart with that value.  ``images[l]`` is the
    Laurent exponent vector (over source variables) of the ``l``-th variable
    of the target chart.
    """

    source: str
    target: str
    gamma: str
    s: IntVector
    s_exponent: IntVector
    images: tuple[IntVector, ...]


@dataclass
class SchemeAtlas:
    space: fs.MonoidedSpace
    charts: dict  # maximal point -> AlgebraPresentation
    overlaps: dict = field(default_factory=dict)  # (source, target) -> Overlap
    non_affine: list = field(default_factory=list)  # pairs without a unique maximal common point
    generic: str = ""

    @property
    def chart_names(self) -> list[str]:
        return sorted(self.charts)


def _overlap(X: fs.MonoidedSpace, cert: fs.FanCertificate, sigma: str, tau: str, gamma: str) -> Overlap:
    S, T = X.stalks[sigma], X.stalks[tau]
    n = len(S.generators)
    face = cert.primes[sigma][gamma]
    s_exp = tuple(1 if i in face else 0 for i in range(n))
    s = _value(S.generators, s_exp) if n else lat.zero(S.ambient_rank)
    A = X.restriction_map(sigma, gamma)
    explicit = [lat.mat_vec(A, g) for g in S.generators] + [lat.neg(lat.mat_vec(A, s))]
    local = AffineMonoid(X.stalks[gamma].ambient_rank, tuple(explicit))
    # the monoid drops zero and repeated generators; put coefficients back by vector
    slot = [explicit.index(g) for g in local.generators]
    B = X.restriction_map(tau, gamma)
    images = []
    for h in T.generators:
        v = lat.mat_vec(B, h)
        if v in explicit[:n]:
            images.append(tuple(int(i == explicit.index(v)) for i in range(n)))
            continue
        e = local.express(v)
        if e is None:
            raise NotAFan(f"{h} from {tau} is not a section over {gamma}")
        c = [0] * (n + 1)
        for j, k in zip(slot, e):
            c[j] += k
        images.append(tuple(c[i] - (c[n] if i in face else 0) for i in range(n)))
    return Overlap(sigma, tau, gamma, s, s_exp, tuple(images))


def scheme_atlas(X: fs.MonoidedSpace, base: str = "k", D: int = 6) -> SchemeAtlas:
    cert = fs.is_fan(X)
    if cert is None:
        raise NotAFan("space is not a fan: " + str(fs.fan_obstruction(X)))
    eta = fs.generic_point(X)
    tops = sorted(X.maximal_points)
    atlas = SchemeAtlas(X, {p: monoid_algebra(X.stalks[p], base, D) for p in tops}, generic=eta)
    for sigma, tau in itertools.product(tops, repeat=2):
        W = X.down(sigma) & X.down(tau)
        maxima = [p for p in W if not any(q != p and q in W for q in X.up(p))]
        if len(maxima) != 1:
            if sigma < tau:
                atlas.non_affine.append((sigma, tau))
            continue
        atlas.overlaps[(sigma, tau)] = _overlap(X, cert, sigma, tau, maxima[0])
    return atlas


def chart_overlap(atlas: SchemeAtlas, i: str, j: str) -> tuple[IntVector, tuple[IntVector, ...]]:
    """``(s, transition)``: invert ``t^s`` in chart ``i``; ``transition`` writes chart ``j``'s variables."""
    if (i, j) in atlas.overlaps:
        o = atlas.overlaps[(i, j)]
        return o.s, o.images
    if (i, j) in atlas.non_affine or (j, i) in atlas.non_affine:
        raise NonAffineOverlap(f"charts {i} and {j} meet in a non-affine open")
    raise NoOverlap(f"charts {i} and {j} do not overlap")


def generic_value(atlas: SchemeAtlas, chart: str, exponent: Sequence[int]) -> IntVector:
    """Value in the generic stalk lattice of a Laurent monomial of ``chart``."""
    X = atlas.space
    S = X.stalks[chart]
    return lat.mat_vec(X.restriction_map(chart, atlas.generic), _value(S.generators, exponent)) \
        if S.generators else lat.zero(X.stalks[atlas.generic].ambient_rank)


def compose(first: Sequence[IntVector], second: Sequence[IntVector], width: int) -> tuple[IntVector, ...]:
    """Substitute ``first`` (middle variables in source variables) into ``second``."""
    out = []
    for e in second:
        acc = lat.zero(width)
        for c, f in zip(e, first):
            acc = lat.add(acc, lat.scale(c, f))
        out.append(acc)
    return tuple(out)


def atlas_inconsistencies(atlas: SchemeAtlas) -> list[str]:
    """Round trips and triple overlaps, compared on values in the generic lattice."""
    X, bad = atlas.space, []

    def val(chart, e):
        return generic_value(atlas, chart, e)

    def var_val(chart, l):
        return lat.mat_vec(X.restriction_map(chart, atlas.generic), X.stalks[chart].generators[l])

    for (i, j), o in sorted(atlas.overlaps.items()):
        for l, e in enumerate(o.images):
            if val(i, e) != var_val(j, l):
                bad.append(f"{i}->{j}: variable {l} has the wrong value")
        back = atlas.overlaps.get((j, i))
        if back is not None:
            n = len(X.stalks[i].generators)
            for l, e in enumerate(compose(o.images, back.images, n)):
                if val(i, e) != var_val(i, l):
                    bad.append(f"{i}->{j}->{i}: round trip moves variable {l}")
    for i, j, k in itertools.permutations(atlas.chart_names, 3):
        if (i, j) in atlas.overlaps and (j, k) in atlas.overlaps and (i, k) in atlas.overlaps:
            n = len(X.stalks[i].generators)
            via = compose(atlas.overlaps[(i, j)].images, atlas.overlaps[(j, k)].images, n)
            for l, (e, f) in enumerate(zip(via, atlas.overlaps[(i, k)].images)):
                if val(i, e) != val(i, f):
                    bad.append(f"cocycle fails on {i},{j},{k} at variable {l}")
    return bad

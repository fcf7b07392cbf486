"""Deciding whether a fan-shaped monoided space comes from a classic fan.

A space is classic toric when it is a fan, irreducible, of finite type,
integral, normal and separated; in that case the classic fan is rebuilt in
the lattice dual to the generic stalk.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from . import fanspace as fs
from . import lattice as lat
from . import monoid as mon
from . import polyhedral as poly
from .errors import NotAFan, NotIrreducible, PreconditionsNotMet
from .fanspace import MonoidedSpace


@dataclass
class Verdict:
    """Outcome of :func:`classify`.  ``None`` marks a check that was not run."""

    is_fan: Optional[bool] = None
    irreducible: Optional[bool] = None
    finite_type: Optional[bool] = None
    integral: Optional[bool] = None
    normal: Optional[bool] = None
    non_normal: list = field(default_factory=list)  # (point, element of saturation minus stalk)
    separated: Optional[bool] = None
    violations: list = field(default_factory=list)  # (sigma, tau, reason)
    classic_toric: bool = False
    realized: Optional[poly.ClassicFan] = None
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.classic_toric


def _require_fan(X: MonoidedSpace):
    cert = fs.is_fan(X)
    if cert is None:
        raise NotAFan(str(fs.fan_obstruction(X)))
    return cert


def is_irreducible(X: MonoidedSpace) -> bool:
    """Unique generic point whose stalk is a group."""
    _require_fan(X)
    mins = X.minimal_points
    return len(mins) == 1 and X.stalks[mins[0]].is_group()


def is_finite_type(X: MonoidedSpace) -> bool:
    # stalks are AffineMonoid, finitely generated by construction
    return all(isinstance(S, mon.AffineMonoid) for S in X.stalks.values())


def is_integral(X: MonoidedSpace) -> bool:
    """Irreducible with cancellative torsion-free stalks (automatic inside a lattice)."""
    return is_irreducible(X) and is_finite_type(X)


def is_normal(X: MonoidedSpace) -> tuple[bool, list]:
    _require_fan(X)
    bad = []
    for p in sorted(X.points):
        w = mon.saturation_witness(X.stalks[p])
        if w is not None:
            bad.append((p, w))
    return not bad, bad


def _embedded(X: MonoidedSpace, p: str, eta: str) -> mon.AffineMonoid:
    return mon.image(X.stalks[p], X.restriction_map(p, eta))


def is_separated(X: MonoidedSpace) -> tuple[bool, list]:
    """For maximal ``sigma, tau``: ``down(sigma) ∩ down(tau)`` must be ``down(gamma)`` with ``S_gamma = S_sigma + S_tau``."""
    _require_fan(X)
    if not is_irreducible(X):
        raise NotIrreducible("separatedness needs a unique generic point")
    eta = X.minimal_points[0]
    bad = []
    for sigma, tau in itertools.combinations(sorted(X.maximal_points), 2):
        W = X.down(sigma) & X.down(tau)
        maxima = sorted(p for p in W if not any(q != p and q in W for q in X.up(p)))
        if len(maxima) != 1:
            bad.append((sigma, tau, f"common open has maximal points {maxima}"))
            continue
        gamma = maxima[0]
        joint = mon.monoid_sum(_embedded(X, sigma, eta), _embedded(X, tau, eta))
        if not mon.same_monoid(_embedded(X, gamma, eta), joint):
            bad.append((sigma, tau, f"stalk at {gamma} is not generated by the two charts"))
    return not bad, bad


def realize_classic(X: MonoidedSpace) -> poly.ClassicFan:
    """Cones in ``N = Hom(M, Z)`` dual to the stalk cones, ``M`` the generic stalk."""
    try:
        ok = is_irreducible(X) and is_normal(X)[0] and is_separated(X)[0]
    except (NotAFan, NotIrreducible) as e:
        raise PreconditionsNotMet(str(e)) from e
    if not ok:
        raise PreconditionsNotMet("space is not irreducible, normal and separated")
    return _realize(X)


def _realize(X: MonoidedSpace) -> poly.ClassicFan:
    eta = X.minimal_points[0]
    G, stalks = fs.generic_frame(X, eta)
    cones = [poly.dual_cone(S.cone) for S in stalks.values()]
    fan = poly.ClassicFan(G.rank, tuple(cones))
    report = fan.validate()
    if not report:
        raise PreconditionsNotMet(f"dual cones do not form a fan: {report.reason}")
    return fan


def classify(X: MonoidedSpace) -> Verdict:
    v = Verdict()
    v.notes.append("base ring assumed to be an integral domain")
    if fs.is_fan(X) is None:
        v.is_fan = False
        v.failures.append("is_fan")
        point, reason = fs.fan_obstruction(X)
        v.notes.append(f"not a fan at {point}: {reason}")
        return v
    v.is_fan = True
    v.irreducible = is_irreducible(X)
    if not v.irreducible:
        v.failures.append("irreducible")
        v.notes.append(f"{len(X.minimal_points)} generic points")
    v.finite_type = is_finite_type(X)
    v.integral = v.irreducible and v.finite_type
    if not v.integral and v.irreducible:
        v.failures.append("integral")
    v.normal, v.non_normal = is_normal(X)
    if not v.normal:
        v.failures.append("normal")
    if v.irreducible:
        v.separated, v.violations = is_separated(X)
        if not v.separated:
            v.failures.append("separated")
    else:
        v.notes.append("separatedness not evaluated without a unique generic point")
    v.classic_toric = bool(v.is_fan and v.irreducible and v.finite_type and v.integral and v.normal and v.separated)
    if v.classic_toric:
        v.realized = _realize(X)
    return v


def classify_presented(P: mon.PresentedMonoid, D: int = 4) -> Verdict:
    """Classify ``spec`` of a presented monoid, gated by the bounded Gilmer checks."""
    aff = mon.affinize(P, D)
    if aff is None:
        v = Verdict(is_fan=None, integral=False)
        v.failures.append("integral")
        v.notes.append(f"Gilmer check failed up to degree {D}: {mon.gilmer_witness(P, D)}")
        return v
    v = classify(fs.spec(aff.monoid))
    v.notes.append(f"affinized up to degree {D}")
    return v


# ---------------------------------------------------------------------------
# repairs


def saturate_all_stalks(X: MonoidedSpace) -> MonoidedSpace:
    """Normalization: every stalk replaced by its saturation, maps extended."""
    stalks = {p: mon.saturation(X.stalks[p]) for p in X.points}
    maps = {k: A for k, A in X.gen_maps.items()}
    return MonoidedSpace(X.points, X.order, stalks, maps, dict(X.labels))


def _merge(X: MonoidedSpace, keep: str, drop: str) -> MonoidedSpace:
    pts = tuple(p for p in X.points if p != drop)
    ren = lambda p: keep if p == drop else p
    order = {(ren(a), ren(b)) for a, b in X.order} - {(keep, keep)}
    return MonoidedSpace(pts, frozenset(order), {p: X.stalks[p] for p in pts}, {},
                         {p: X.labels[p] for p in pts if p in X.labels})


def repair_pair(X: MonoidedSpace, sigma: str, tau: str) -> MonoidedSpace:
    """Insert the missing common face of ``sigma`` and ``tau`` with stalk ``S_sigma + S_tau``.

    The new point sits above ``down(sigma) ∩ down(tau)`` and below both
    charts; afterwards comparable points with equal stalks are merged.
    Only spaces whose generization maps are identities are handled.
    """
    if any(A != lat.identity(len(A)) for A in X.gen_maps.values()):
        raise NotImplementedError("repair needs identity generization maps")
    W = X.down(sigma) & X.down(tau)
    g = f"{sigma}+{tau}"
    stalks = dict(X.stalks)
    stalks[g] = mon.reduced(mon.monoid_sum(X.stalks[sigma], X.stalks[tau]))
    order = set(X.order) | {(p, g) for p in W} | {(g, sigma), (g, tau)}
    Y = MonoidedSpace(X.points + (g,), frozenset(order), stalks, {}, dict(X.labels))
    changed = True
    while changed:
        changed = False
        for p, q in sorted(Y.covers):
            if g in (p, q) or {p, q} <= {sigma, tau}:
                if mon.same_monoid(Y.stalks[p], Y.stalks[q]):
                    keep, drop = (q, p) if p == g else (p, q) if q == g else (min(p, q), max(p, q))
                    Y = _merge(Y, keep, drop)
                    if drop == g:
                        g = keep
                    changed = True
                    break
    return Y

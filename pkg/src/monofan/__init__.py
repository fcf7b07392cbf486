"""Exact computations with monoid spectra, abstract fans and toric classification.

The submodules ``monoid`` and ``classify`` share names with their main
functions; use ``monofan.classify.classify`` and ``monofan.monoid.monoid``.
"""
from .algebra import AlgebraPresentation, SchemeAtlas, chart_overlap, monoid_algebra, scheme_atlas
from .classify import Verdict, is_normal, is_separated, realize_classic, saturate_all_stalks
from .fanspace import (
    Identification,
    MonoidedSpace,
    basic_open,
    from_classic_fan,
    glue,
    is_fan,
    iso_check,
    minimal_open,
    polytope_face_space,
    sections,
    spec,
)
from .monoid import AffineMonoid, PresentedMonoid, affinize, localize, primes, saturation
from .polyhedral import ClassicFan, Cone, Polytope, dual_cone, hilbert_basis, normal_fan

__all__ = [
    "AffineMonoid", "AlgebraPresentation", "ClassicFan", "Cone", "Identification", "MonoidedSpace",
    "Polytope", "PresentedMonoid", "SchemeAtlas", "Verdict", "affinize", "basic_open", "chart_overlap",
    "dual_cone", "from_classic_fan", "glue", "hilbert_basis", "is_fan", "is_normal",
    "is_separated", "iso_check", "localize", "minimal_open", "monoid_algebra", "normal_fan",
    "polytope_face_space", "primes", "realize_classic", "saturate_all_stalks", "saturation",
    "scheme_atlas", "sections", "spec",
]

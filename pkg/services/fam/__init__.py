"""
Fam Package - Objekte, Morphismen, (Ko-)Limiten und Extensivität in Fam(C).
"""

from .objects import (
    FamMorphism,
    FamObject,
    compose_fam,
    fam_morphism,
    fam_object,
    identity_fam,
    sigma_embed,
    validate_fam,
)
from .hom import enumerate_fam_morphisms, fam_hom
from .coproduct import CoproductResult, decompose_connected, fam_coproduct
from .colimit import ColimitResult, FamDiagram, fam_colimit, verify_colimit_universality
from .limit import LimitResult, fam_limit, sigma_left_exactness_check, verify_limit_universality
from .extensivity import ExtensivityReport, extensivity_check

__all__ = [
    "FamMorphism",
    "FamObject",
    "compose_fam",
    "fam_morphism",
    "fam_object",
    "identity_fam",
    "sigma_embed",
    "validate_fam",
    "enumerate_fam_morphisms",
    "fam_hom",
    "CoproductResult",
    "decompose_connected",
    "fam_coproduct",
    "ColimitResult",
    "FamDiagram",
    "fam_colimit",
    "verify_colimit_universality",
    "LimitResult",
    "fam_limit",
    "sigma_left_exactness_check",
    "verify_limit_universality",
    "ExtensivityReport",
    "extensivity_check",
]

"""
Kernel Package - endliche Kategorien, Gruppoide, Gruppen und die
Brute-Force-Konstruktionen darauf.
"""

from .category import FiniteCategory, build_category, find_terminal, validate_category
from .functor import (
    FunctorData,
    NatTransData,
    compose_functors,
    enumerate_functors,
    enumerate_nat_trans,
    find_equivalence,
    identity_functor,
    validate_functor,
    validate_nat_trans,
)
from .group import FiniteGroup, GroupHom, GroupIso, cyclic_group, direct_product, find_group_isomorphism
from .groupoid import (
    FiniteGroupoid,
    aut_group,
    chaotic_groupoid,
    connected_groupoid,
    delooping,
    discrete_groupoid,
    disjoint_union,
    groupoid_from_category,
    pi0,
    point_groupoid,
    validate_groupoid,
)
from .effective import EpiVerdict, is_effective_epi, jointly_effective
from .limits import Cone, Diagram, brute_force_limit
from .pullback import IsoCommaPullback, iso_comma_pullback
from .grothendieck import GroupoidDiagram, action_groupoid, grothendieck_construction
from .cech import cech_nerve, check_simplicial_identities
from .edge_path import edge_path_pi1

__all__ = [
    "FiniteCategory",
    "build_category",
    "find_terminal",
    "validate_category",
    "FunctorData",
    "NatTransData",
    "compose_functors",
    "enumerate_functors",
    "enumerate_nat_trans",
    "find_equivalence",
    "identity_functor",
    "validate_functor",
    "validate_nat_trans",
    "FiniteGroup",
    "GroupHom",
    "GroupIso",
    "cyclic_group",
    "direct_product",
    "find_group_isomorphism",
    "FiniteGroupoid",
    "aut_group",
    "chaotic_groupoid",
    "connected_groupoid",
    "delooping",
    "discrete_groupoid",
    "disjoint_union",
    "groupoid_from_category",
    "pi0",
    "point_groupoid",
    "validate_groupoid",
    "EpiVerdict",
    "is_effective_epi",
    "jointly_effective",
    "Cone",
    "Diagram",
    "brute_force_limit",
    "IsoCommaPullback",
    "iso_comma_pullback",
    "GroupoidDiagram",
    "action_groupoid",
    "grothendieck_construction",
    "cech_nerve",
    "check_simplicial_identities",
    "edge_path_pi1",
]

"""
Objekte und Morphismen von Fam(C).

Ein Objekt ist ein Paar (X, F) aus einer Form X (endliches Gruppoid) und
einem Pfeil F: X → C. Ein Morphismus (φ, φ★): (X₁, F₁) → (X₂, F₂) besteht
aus einem Funktor φ: X₁ → X₂ und einer natürlichen Transformation
φ★: F₁ ⇒ F₂∘φ. Fam(C) wird als 1-Kategorie modelliert; Gleichheit von
Morphismen ist komponentenweise.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping

from schemas.reports import ValidationReport
from services.errors import PreconditionError
from services.kernel.category import FiniteCategory, validate_category
from services.kernel.functor import (
    FunctorData,
    NatTransData,
    compose_functors,
    identity_functor,
    validate_functor,
    validate_nat_trans,
)
from services.kernel.group import FiniteGroup
from services.kernel.groupoid import (
    FiniteGroupoid,
    delooping,
    is_discrete_up_to_equivalence,
    pi0,
    point_groupoid,
    validate_groupoid,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FamObject:
    """Familie (X, F) über C."""

    shape: FiniteGroupoid
    target: FiniteCategory
    arrow: FunctorData
    name: str = field(default="", compare=False)

    def at(self, x: str) -> str:
        return self.arrow.ob(x)

    def __repr__(self) -> str:
        return f"<FamObject {self.name or ''} shape={self.shape.name} |X|={len(self.shape.objects)}>"


@dataclass(frozen=True)
class FamMorphism:
    """Morphismus (φ, φ★) zwischen Familien mit gemeinsamer Zielkategorie."""

    source: FamObject
    target: FamObject
    phi: FunctorData
    phi_star: NatTransData
    name: str = field(default="", compare=False)

    @property
    def components(self) -> Dict[str, str]:
        return self.phi_star.components

    def component(self, x: str) -> str:
        return self.phi_star.components[x]

    def key(self) -> tuple:
        """Hashbarer Schlüssel (φ-Daten und Komponenten) für Vergleiche in Aufzählungen."""
        return self.phi.key() + (self.phi_star.key(),)

    def __repr__(self) -> str:
        return f"<FamMorphism {self.name or ''} {self.source.name}→{self.target.name}>"


def fam_object(shape: FiniteGroupoid, target: FiniteCategory, object_map: Mapping[str, str], morphism_map: Mapping[str, str], name: str = "") -> FamObject:
    arrow = FunctorData(shape, target, dict(object_map), dict(morphism_map), name=f"F_{name}" if name else "F")
    return FamObject(shape=shape, target=target, arrow=arrow, name=name)


def fam_morphism(source: FamObject, target: FamObject, phi: FunctorData, components: Mapping[str, str], name: str = "") -> FamMorphism:
    """Baut (φ, φ★) mit φ★: F₁ ⇒ F₂∘φ aus den Komponenten."""
    phi_star = NatTransData(
        source_functor=source.arrow,
        target_functor=compose_functors(target.arrow, phi),
        components=dict(components),
    )
    return FamMorphism(source=source, target=target, phi=phi, phi_star=phi_star, name=name)


# ============================================================================
# Validierung
# ============================================================================

def validate_fam_object(f: FamObject, check_target: bool = True) -> ValidationReport:
    report = ValidationReport(subject=f.name or "fam object")
    report.extend(validate_groupoid(f.shape), prefix="shape.")
    if check_target:
        report.extend(validate_category(f.target), prefix="target.")
    if not (f.arrow.source.same_as(f.shape) and f.arrow.target.same_as(f.target)):
        report.reference("arrow_endpoints", [], "Pfeil passt nicht zu Form und Zielkategorie")
        return report.normalized()
    report.extend(validate_functor(f.arrow), prefix="arrow.")
    return report.normalized()


def validate_fam_morphism(m: FamMorphism) -> ValidationReport:
    report = ValidationReport(subject=m.name or "fam morphism")
    if not m.source.target.same_as(m.target.target):
        report.reference("target_mismatch", [], "Quelle und Ziel haben verschiedene Zielkategorien")
        return report
    if not (m.phi.source.same_as(m.source.shape) and m.phi.target.same_as(m.target.shape)):
        report.reference("phi_endpoints", [], "φ ist kein Funktor X₁ → X₂")
        return report
    report.extend(validate_functor(m.phi), prefix="phi.")
    if not report.ok:
        return report.normalized()
    if not m.phi_star.source_functor.same_maps(m.source.arrow):
        report.reference("phi_star_source", [], "φ★ beginnt nicht bei F₁")
    if not m.phi_star.target_functor.same_maps(compose_functors(m.target.arrow, m.phi)):
        report.reference("phi_star_target", [], "φ★ endet nicht bei F₂∘φ")
    if not report.ok:
        return report.normalized()
    report.extend(validate_nat_trans(m.phi_star), prefix="phi_star.")
    return report.normalized()


def validate_fam(item) -> ValidationReport:
    """Validiert ein FamObject oder einen FamMorphism."""
    if isinstance(item, FamMorphism):
        return validate_fam_morphism(item)
    if isinstance(item, FamObject):
        return validate_fam_object(item)
    raise PreconditionError(f"validate_fam: unerwarteter Typ {type(item).__name__}")


# ============================================================================
# Komposition, Identität, σ
# ============================================================================

def compose_fam(m2: FamMorphism, m1: FamMorphism) -> FamMorphism:
    """m2∘m1: φ = φ₂∘φ₁, Komponente bei x = (φ₂★ bei φ₁(x)) ∘ (φ₁★ bei x)."""
    if not m1.phi.target.same_as(m2.phi.source):
        raise PreconditionError("compose_fam: Ziel von m1 ist nicht Quelle von m2")
    c = m1.source.target
    phi = compose_functors(m2.phi, m1.phi)
    components = {x: c.compose(m2.component(m1.phi.ob(x)), m1.component(x)) for x in m1.source.shape.objects}
    return fam_morphism(m1.source, m2.target, phi, components)


def identity_fam(f: FamObject) -> FamMorphism:
    return fam_morphism(f, f, identity_functor(f.shape), {x: f.target.identity(f.at(x)) for x in f.shape.objects}, name=f"id_{f.name}")


def fam_morphisms_equal(a: FamMorphism, b: FamMorphism) -> bool:
    return a.phi.same_maps(b.phi) and a.components == b.components


def sigma_embed(c: FiniteCategory, obj: str) -> FamObject:
    """σ(c): punktförmige Familie bei obj."""
    if obj not in c.objects:
        raise PreconditionError(f"{obj} ist kein Objekt von {c.name}")
    shape = point_groupoid()
    return fam_object(shape, c, {"*": obj}, {shape.identity("*"): c.identity(obj)}, name=f"σ({obj})")


def sigma_on_morphism(c: FiniteCategory, f: str) -> FamMorphism:
    """σ(f): σ(a) → σ(b) mit der einzigen Komponente f."""
    a, b = c.morphisms[f]
    source, target = sigma_embed(c, a), sigma_embed(c, b)
    return fam_morphism(source, target, identity_functor(source.shape), {"*": f})


def is_zero_truncated(f: FamObject) -> bool:
    """Alle Automorphismengruppen der Form trivial."""
    return is_discrete_up_to_equivalence(f.shape)


def is_connected_fam(f: FamObject) -> bool:
    """Genau ein nicht-initialer Summand: Form nichtleer und zusammenhängend."""
    return len(pi0(f.shape)) == 1


def with_arrow_into(f: FamObject, target: FiniteCategory, object_map: Mapping[str, str], morphism_map: Mapping[str, str]) -> FamObject:
    """Gleiche Form, anderer Pfeil (z.B. in die terminale Kategorie)."""
    return FamObject(shape=f.shape, target=target, arrow=FunctorData(f.shape, target, dict(object_map), dict(morphism_map)), name=f.name)


def g_object_family(group: FiniteGroup, c: FiniteCategory, obj: str, action: Mapping[str, str], name: str = "") -> FamObject:
    """
    B(G)-förmige Familie: ein Objekt von C mit G-Wirkung.

    Args:
        group: endliche Gruppe G
        c: Zielkategorie
        obj: Objekt, auf dem G wirkt
        action: Gruppenelement → Endomorphismus von obj

    Ob die Wirkung ein Funktor ist, prüft validate_fam_object.
    """
    if obj not in c.objects:
        raise PreconditionError(f"{obj} ist kein Objekt von {c.name}")
    missing = [g for g in group.elements if g not in action]
    if missing:
        raise PreconditionError(f"Wirkung fehlt für {missing}")
    shape = delooping(group)
    return fam_object(shape, c, {"*": obj}, {g: action[g] for g in group.elements}, name=name or f"B({group.name})·{obj}")

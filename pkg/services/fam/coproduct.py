"""
Koprodukte in Fam(C) und Zerlegung in zusammenhängende Komponenten.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from schemas.reports import ValidationReport
from services.errors import PreconditionError
from services.kernel.category import FiniteCategory
from services.kernel.functor import FunctorData
from services.kernel.groupoid import DisjointUnion, component_index, disjoint_union, full_subgroupoid, pi0
from services.kernel.ids import compound_id

from .objects import (
    FamMorphism,
    FamObject,
    compose_fam,
    fam_morphism,
    fam_morphisms_equal,
    identity_fam,
    is_connected_fam,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoproductResult:
    """Koprodukt ∐ fᵢ mit Injektionen."""

    obj: FamObject
    injections: Tuple[FamMorphism, ...]
    labels: Tuple[str, ...]
    union: DisjointUnion


def fam_coproduct(
    fs: Sequence[FamObject],
    target: Optional[FiniteCategory] = None,
    labels: Optional[Sequence[str]] = None,
) -> CoproductResult:
    """
    Koprodukt von Familien: disjunkte Vereinigung der Formen, kopaarter Pfeil.

    Args:
        fs: Familien mit gemeinsamer Zielkategorie
        target: Zielkategorie (nur für das leere Koprodukt nötig)
        labels: Optionale Markierungen der Summanden (Standard: "0", "1", …)

    Raises:
        PreconditionError: verschiedene Zielkategorien oder leeres Koprodukt ohne target
    """
    if not fs and target is None:
        raise PreconditionError("Leeres Koprodukt braucht eine Zielkategorie")
    c = target if target is not None else fs[0].target
    for f in fs:
        if not f.target.same_as(c):
            raise PreconditionError(f"fam_coproduct: {f.name or 'Familie'} hat eine andere Zielkategorie")
    union = disjoint_union([f.shape for f in fs], labels=labels)
    position = {label: i for i, label in enumerate(union.labels)}
    object_map = {new: fs[position[label]].at(old) for new, (label, old) in union.origin.items()}
    morphism_map = {new: fs[position[label]].arrow.mor(old) for new, (label, old) in union.morphism_origin.items()}
    obj = FamObject(
        shape=union.groupoid,
        target=c,
        arrow=FunctorData(union.groupoid, c, object_map, morphism_map, name="F_⊔"),
        name="⊔".join(f.name or "?" for f in fs) if fs else "∅",
    )
    injections = tuple(
        fam_morphism(f, obj, inj, {x: c.identity(f.at(x)) for x in f.shape.objects}, name=f"ι_{label}")
        for f, inj, label in zip(fs, union.injections, union.labels)
    )
    return CoproductResult(obj=obj, injections=injections, labels=union.labels, union=union)


def copair(coproduct: CoproductResult, legs: Sequence[FamMorphism], codomain: Optional[FamObject] = None) -> FamMorphism:
    """[m₁, …, mₙ]: ∐ fᵢ → Z für mᵢ: fᵢ → Z."""
    if len(legs) != len(coproduct.labels):
        raise PreconditionError("copair: Anzahl der Beine passt nicht")
    if not legs and codomain is None:
        raise PreconditionError("copair: leeres Koprodukt braucht ein Ziel")
    z = codomain if codomain is not None else legs[0].target
    position = {label: i for i, label in enumerate(coproduct.labels)}
    union = coproduct.union
    object_map = {new: legs[position[label]].phi.ob(old) for new, (label, old) in union.origin.items()}
    morphism_map = {new: legs[position[label]].phi.mor(old) for new, (label, old) in union.morphism_origin.items()}
    components = {new: legs[position[label]].component(old) for new, (label, old) in union.origin.items()}
    phi = FunctorData(union.groupoid, z.shape, object_map, morphism_map)
    return fam_morphism(coproduct.obj, z, phi, components)


def coproduct_of_morphisms(
    source: CoproductResult,
    target: CoproductResult,
    parts: Sequence[FamMorphism],
) -> FamMorphism:
    """m₁ ⊔ … ⊔ mₙ: ∐ Yᵢ → ∐ Zᵢ (gleiche Labels vorausgesetzt)."""
    legs = [compose_fam(inj, m) for inj, m in zip(target.injections, parts)]
    return copair(source, legs, codomain=target.obj)


# ============================================================================
# Zerlegung in zusammenhängende Komponenten
# ============================================================================

@dataclass(frozen=True)
class DecompositionCertificate:
    """Komponenten, Blockzuordnung und Zusammensetzungs-Isomorphismus."""

    original: FamObject
    components: Tuple[FamObject, ...]
    block_assignment: Dict[str, int]
    inclusions: Tuple[FamMorphism, ...]
    coproduct: CoproductResult
    reassembly: FamMorphism          # ∐ Komponenten → original
    reassembly_inverse: FamMorphism  # original → ∐ Komponenten

    def check(self) -> ValidationReport:
        """Komponenten zusammenhängend, Blöcke partitionieren, Isomorphismus-Paar komponiert zu Identitäten."""
        report = ValidationReport(subject="decomposition")
        for i, comp in enumerate(self.components):
            if not is_connected_fam(comp):
                report.axiom("component_connected", [str(i)], f"Komponente {i} ist nicht zusammenhängend")
        if sorted(self.block_assignment) != sorted(self.original.shape.objects):
            report.axiom("blocks_partition", [], "Blöcke partitionieren die Objekte nicht")
        there = compose_fam(self.reassembly_inverse, self.reassembly)
        back = compose_fam(self.reassembly, self.reassembly_inverse)
        if not fam_morphisms_equal(there, identity_fam(self.coproduct.obj)):
            report.axiom("reassembly_left", [], "inverse∘reassembly ≠ id")
        if not fam_morphisms_equal(back, identity_fam(self.original)):
            report.axiom("reassembly_right", [], "reassembly∘inverse ≠ id")
        return report


def restrict_fam(f: FamObject, objects: Sequence[str], name: str = "") -> Tuple[FamObject, FamMorphism]:
    """Einschränkung auf das volle Teilgruppoid über objects samt Inklusion."""
    sub, inclusion = full_subgroupoid(f.shape, objects, name=name)
    restricted = FamObject(
        shape=sub,
        target=f.target,
        arrow=FunctorData(sub, f.target, {x: f.at(x) for x in sub.objects}, {m: f.arrow.mor(m) for m in sub.morphisms}),
        name=name,
    )
    incl = fam_morphism(restricted, f, inclusion, {x: f.target.identity(f.at(x)) for x in sub.objects})
    return restricted, incl


def decompose_connected(f: FamObject) -> DecompositionCertificate:
    """Zerlegt f in die Einschränkungen auf die π₀-Blöcke."""
    blocks = pi0(f.shape)
    components: List[FamObject] = []
    inclusions: List[FamMorphism] = []
    for i, block in enumerate(blocks):
        comp, incl = restrict_fam(f, block, name=f"{f.name or 'f'}[{i}]")
        components.append(comp)
        inclusions.append(incl)
    coproduct = fam_coproduct(components, target=f.target)
    reassembly = copair(coproduct, inclusions, codomain=f)
    assignment = component_index(blocks)
    labels = coproduct.labels
    object_map = {x: compound_id(labels[assignment[x]], x) for x in f.shape.objects}
    morphism_map = {m: compound_id(labels[assignment[s]], m) for m, (s, _) in f.shape.morphisms.items()}
    inverse = fam_morphism(
        f,
        coproduct.obj,
        FunctorData(f.shape, coproduct.obj.shape, object_map, morphism_map),
        {x: f.target.identity(f.at(x)) for x in f.shape.objects},
    )
    logger.debug("Zerlegung von %s: %d Komponenten", f.name, len(components))
    return DecompositionCertificate(
        original=f,
        components=tuple(components),
        block_assignment=assignment,
        inclusions=tuple(inclusions),
        coproduct=coproduct,
        reassembly=reassembly,
        reassembly_inverse=inverse,
    )

"""
Extensivität von Fam(C): der Koprodukt-Funktor
∐: Fam(C)/c₁ × Fam(C)/c₂ → Fam(C)/(c₁⊔c₂) ist eine Äquivalenz.

Die Slice-Kategorien werden über einem endlichen Universum kleiner
Familien aufgebaut (Objekte: Fam-Morphismen aus Universumsfamilien,
Morphismen: kommutierende Dreiecke mit komponentenweiser Gleichheit).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from services.budget import BudgetCounter, unlimited
from services.errors import PreconditionError
from services.kernel.category import FiniteCategory
from services.kernel.functor import FunctorData, enumerate_functors
from services.kernel.group import cyclic_group
from services.kernel.groupoid import (
    FiniteGroupoid,
    chaotic_groupoid,
    delooping,
    discrete_groupoid,
    empty_groupoid,
    point_groupoid,
)
from services.kernel.ids import compound_id

from .coproduct import CoproductResult, copair, coproduct_of_morphisms, fam_coproduct, restrict_fam
from .hom import enumerate_fam_morphisms, slice_hom
from .objects import FamMorphism, FamObject, compose_fam, fam_morphism, fam_morphisms_equal, identity_fam

logger = logging.getLogger(__name__)

SUMMAND_LABELS = ("1", "2")


def small_shapes(max_objects: int = 2) -> List[FiniteGroupoid]:
    """Formen mit höchstens max_objects Objekten (bis auf Isomorphie, ohne Anspruch auf Vollständigkeit ab 3)."""
    shapes: List[FiniteGroupoid] = [empty_groupoid()]
    if max_objects >= 1:
        shapes += [point_groupoid(), delooping(cyclic_group(2))]
    if max_objects >= 2:
        shapes += [discrete_groupoid(["x", "y"], name="2"), chaotic_groupoid(["x", "y"])]
    return shapes


def small_families(
    c: FiniteCategory,
    max_objects: int = 2,
    counter: Optional[BudgetCounter] = None,
) -> List[FamObject]:
    """Alle Familien über C mit Formen aus small_shapes (jeder Funktor in C)."""
    counter = counter or unlimited()
    families = []
    for shape in small_shapes(max_objects):
        for i, arrow in enumerate(enumerate_functors(shape, c, counter)):
            families.append(FamObject(shape=shape, target=c, arrow=arrow, name=f"{shape.name}#{i}"))
    return families


def slice_objects(base: FamObject, universe: Sequence[FamObject], counter: Optional[BudgetCounter] = None) -> List[FamMorphism]:
    """Objekte von Fam(C)/base: alle Morphismen Y → base mit Y im Universum."""
    return [m for y in universe for m in enumerate_fam_morphisms(y, base, counter)]


# ============================================================================
# Koprodukt-Funktor
# ============================================================================

def coproduct_in_slice(
    base: CoproductResult,
    first: FamMorphism,
    second: FamMorphism,
) -> Tuple[CoproductResult, FamMorphism]:
    """(h₁, h₂) ↦ h₁ ⊔ h₂: Y₁ ⊔ Y₂ → c₁ ⊔ c₂."""
    source = fam_coproduct([first.source, second.source], target=base.obj.target, labels=SUMMAND_LABELS)
    return source, coproduct_of_morphisms(source, base, [first, second])


def coproduct_on_morphisms(
    source: CoproductResult,
    target: CoproductResult,
    first: FamMorphism,
    second: FamMorphism,
) -> FamMorphism:
    """(u₁, u₂) ↦ u₁ ⊔ u₂ zwischen den Quellen zweier Slice-Objekte."""
    return coproduct_of_morphisms(source, target, [first, second])


@dataclass(frozen=True)
class PreimageSplit:
    """Zerlegung eines Slice-Objekts h: Y → c₁⊔c₂ entlang der Summanden."""

    parts: Tuple[FamMorphism, FamMorphism]
    reassembly: FamMorphism
    reassembly_inverse: FamMorphism
    coproduct: CoproductResult
    combined: FamMorphism


def preimage_split(h: FamMorphism, base: CoproductResult, members: Sequence[FamObject]) -> PreimageSplit:
    """
    Zerlegt h in hᵢ: Yᵢ → cᵢ mit Yᵢ = h⁻¹(cᵢ) und liefert den Slice-Isomorphismus
    ∐ hᵢ ≅ h (Morphismuspaar, das zu Identitäten komponiert).
    """
    y = h.source
    union = base.union
    position = {label: i for i, label in enumerate(base.labels)}
    buckets: List[List[str]] = [[] for _ in base.labels]
    for x in y.shape.objects:
        label, _ = union.origin[h.phi.ob(x)]
        buckets[position[label]].append(x)

    parts: List[FamMorphism] = []
    inclusions: List[FamMorphism] = []
    for label, member, objects in zip(base.labels, members, buckets):
        sub, incl = restrict_fam(y, objects, name=f"{y.name}|{label}")
        phi = FunctorData(
            sub.shape,
            member.shape,
            {x: union.origin[h.phi.ob(x)][1] for x in sub.shape.objects},
            {m: union.morphism_origin[h.phi.mor(m)][1] for m in sub.shape.morphisms},
        )
        parts.append(fam_morphism(sub, member, phi, {x: h.component(x) for x in sub.shape.objects}))
        inclusions.append(incl)

    coproduct, combined = coproduct_in_slice(base, parts[0], parts[1])
    reassembly = copair(coproduct, inclusions, codomain=y)
    bucket_of = {x: i for i, objects in enumerate(buckets) for x in objects}
    labels = coproduct.labels
    inverse_phi = FunctorData(
        y.shape,
        coproduct.obj.shape,
        {x: compound_id(labels[bucket_of[x]], x) for x in y.shape.objects},
        {m: compound_id(labels[bucket_of[s]], m) for m, (s, _) in y.shape.morphisms.items()},
    )
    inverse = fam_morphism(y, coproduct.obj, inverse_phi, {x: y.target.identity(y.at(x)) for x in y.shape.objects})
    return PreimageSplit(
        parts=(parts[0], parts[1]),
        reassembly=reassembly,
        reassembly_inverse=inverse,
        coproduct=coproduct,
        combined=combined,
    )


# ============================================================================
# Prüfung
# ============================================================================

@dataclass
class ExtensivityReport:
    """Ergebnis der Slice-Äquivalenzprüfung."""

    slice_sizes: Dict[str, int] = field(default_factory=dict)
    pairs_checked: int = 0
    hom_mismatches: List[str] = field(default_factory=list)
    objects_checked: int = 0
    unsplit: List[str] = field(default_factory=list)

    @property
    def fully_faithful(self) -> bool:
        return not self.hom_mismatches

    @property
    def essentially_surjective(self) -> bool:
        return not self.unsplit

    @property
    def holds(self) -> bool:
        return self.fully_faithful and self.essentially_surjective


def extensivity_check(
    c1: FamObject,
    c2: FamObject,
    universe: Optional[Sequence[FamObject]] = None,
    counter: Optional[BudgetCounter] = None,
) -> ExtensivityReport:
    """
    Prüft, dass der Koprodukt-Funktor volltreu und wesentlich surjektiv ist.

    Args:
        c1, c2: Familien mit gemeinsamer Zielkategorie
        universe: Quellen der Slice-Objekte (Standard: small_families mit ≤ 2 Objekten)
        counter: Budget-Zähler; BudgetExceeded bedeutet "unentschieden"
    """
    if not c1.target.same_as(c2.target):
        raise PreconditionError("extensivity_check: verschiedene Zielkategorien")
    counter = counter or unlimited()
    universe = list(universe) if universe is not None else small_families(c1.target, 2, counter)
    base = fam_coproduct([c1, c2], labels=SUMMAND_LABELS)
    report = ExtensivityReport()

    over_first = slice_objects(c1, universe, counter)
    over_second = slice_objects(c2, universe, counter)
    over_sum = slice_objects(base.obj, universe, counter)
    report.slice_sizes = {"c1": len(over_first), "c2": len(over_second), "c1⊔c2": len(over_sum)}

    pairs = [(h1, h2) for h1 in over_first for h2 in over_second]
    images = [coproduct_in_slice(base, h1, h2) for h1, h2 in pairs]
    for (h1, h2), (src_a, a) in zip(pairs, images):
        for (k1, k2), (src_b, b) in zip(pairs, images):
            counter.tick()
            first = slice_hom(h1, k1, counter)
            second = slice_hom(h2, k2, counter)
            mapped = {coproduct_on_morphisms(src_a, src_b, u1, u2).key() for u1 in first for u2 in second}
            target_hom = slice_hom(a, b, counter)
            report.pairs_checked += 1
            if len(mapped) != len(first) * len(second) or len(target_hom) != len(mapped):
                report.hom_mismatches.append(f"({h1.source.name},{h2.source.name})→({k1.source.name},{k2.source.name})")

    for h in over_sum:
        counter.tick()
        split = preimage_split(h, base, [c1, c2])
        report.objects_checked += 1
        over = fam_morphisms_equal(compose_fam(h, split.reassembly), split.combined)
        there = fam_morphisms_equal(compose_fam(split.reassembly_inverse, split.reassembly), identity_fam(split.coproduct.obj))
        back = fam_morphisms_equal(compose_fam(split.reassembly, split.reassembly_inverse), identity_fam(h.source))
        if not (over and there and back):
            report.unsplit.append(h.source.name or "?")
    logger.debug("Extensivität: %d Paare, %d Objekte", report.pairs_checked, report.objects_checked)
    return report

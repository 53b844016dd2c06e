"""
Gruppoid-indizierte Kolimiten in Fam(C).

Die Form des Kolimes ist die Grothendieck-Konstruktion der Formen; der
Pfeil ist auf (j, x) gleich F_j(x) und auf (u, v): (j, x) → (j′, x′)
gleich F_{j′}(v) ∘ (φ★ von d(u) bei x).

Die universelle Eigenschaft wird für Pseudo-Kokegel geprüft: Morphismen
c_j: d(j) → Z zusammen mit invertierbaren 2-Zellen θ_u: c_{j′}∘d(u) ⇒ c_j,
die die Kozykelbedingung erfüllen.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence

from schemas.reports import ValidationReport
from services.budget import BudgetCounter, unlimited
from services.errors import PreconditionError, UnsupportedIndexError
from services.kernel.category import FiniteCategory
from services.kernel.functor import FunctorData, NatTransData, validate_functor
from services.kernel.grothendieck import (
    GroupoidDiagram,
    GrothendieckResult,
    grothendieck_construction,
    total_morphism_id,
    total_object_id,
)
from services.kernel.groupoid import FiniteGroupoid, validate_groupoid

from .hom import enumerate_fam_morphisms, enumerate_two_cells
from .objects import FamMorphism, FamObject, compose_fam, fam_morphism, fam_morphisms_equal, identity_fam

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FamDiagram:
    """Funktor k → Fam(C): Werte pro Objekt, Fam-Morphismen pro Morphismus."""

    index: FiniteCategory
    values: Dict[str, FamObject]
    maps: Dict[str, FamMorphism]
    name: str = field(default="", compare=False)


def validate_fam_diagram(d: FamDiagram) -> ValidationReport:
    report = ValidationReport(subject=d.name or "fam diagram")
    k = d.index
    for j in k.objects:
        if j not in d.values:
            report.reference("missing_value", [j], f"Kein Wert für {j}")
    for u in k.morphisms:
        if u not in d.maps:
            report.reference("missing_map", [u], f"Kein Fam-Morphismus für {u}")
    if not report.ok:
        return report.normalized()
    first = next(iter(d.values.values()), None)
    if first is not None and not all(v.target.same_as(first.target) for v in d.values.values()):
        report.reference("target_mismatch", [], "Werte haben verschiedene Zielkategorien")
        return report.normalized()
    for u, (s, t) in sorted(k.morphisms.items()):
        m = d.maps[u]
        if not (m.phi.source.same_as(d.values[s].shape) and m.phi.target.same_as(d.values[t].shape)):
            report.axiom("map_endpoints", [u], f"d({u}) ist kein Morphismus d({s}) → d({t})")
    if not report.ok:
        return report.normalized()
    for j in k.objects:
        if not fam_morphisms_equal(d.maps[k.identity(j)], identity_fam(d.values[j])):
            report.axiom("functor_identity", [j], f"d(id_{j}) ist nicht die Identität")
    for (v, u), vu in sorted(k.composition.items()):
        if not fam_morphisms_equal(d.maps[vu], compose_fam(d.maps[v], d.maps[u])):
            report.axiom("functor_composition", [v, u], f"d({v}∘{u}) ≠ d({v})∘d({u})")
    return report.normalized()


def shape_diagram(d: FamDiagram) -> GroupoidDiagram:
    """Π∞∘d: die Formen und Transportfunktoren des Diagramms."""
    return GroupoidDiagram(
        index=d.index,
        fibers={j: v.shape for j, v in d.values.items()},
        transports={u: m.phi for u, m in d.maps.items()},
    )


@dataclass(frozen=True)
class ColimitResult:
    obj: FamObject
    injections: Dict[str, FamMorphism]
    diagram: FamDiagram
    total: GrothendieckResult

    def structure_cell(self, u: str, x: str) -> str:
        """Komponente von λ_u: ι_{j′}∘d(u) ⇒ ι_j bei x, d.h. (u⁻¹, id): (j′, d(u)x) → (j, x)."""
        k = self.diagram.index
        j2 = k.target(u)
        moved = self.diagram.maps[u].phi.ob(x)
        return total_morphism_id(total_object_id(j2, moved), k.inverses[u], self.diagram.values[k.source(u)].shape.identity(x))


def fam_colimit(k: FiniteCategory, d: FamDiagram) -> ColimitResult:
    """
    Kolimes eines gruppoid-indizierten Diagramms in Fam(C).

    Raises:
        UnsupportedIndexError: Index ist kein (gültiges) endliches Gruppoid
        PreconditionError: Diagramm nicht funktoriell oder Zielkategorien verschieden
    """
    if not isinstance(k, FiniteGroupoid) or not validate_groupoid(k).ok:
        raise UnsupportedIndexError("fam_colimit unterstützt nur endliche Gruppoide als Index")
    if not d.index.same_as(k):
        raise PreconditionError("Diagramm ist nicht über dem angegebenen Index")
    report = validate_fam_diagram(d)
    if not report.ok:
        first = report.violations[0]
        raise PreconditionError(f"Diagramm ungültig: {first.rule} {first.instance}")
    if not d.values:
        raise PreconditionError("Leerer Index: verwende fam_coproduct mit Zielkategorie")
    c = next(iter(d.values.values())).target

    total = grothendieck_construction(k, shape_diagram(d))
    object_map = {obj: d.values[j].at(x) for obj, (j, x) in total.pairs.items()}
    morphism_map = {}
    for mid, (src, u, v) in total.morphism_pairs.items():
        _, x = total.pairs[src]
        target_value = d.values[k.target(u)]
        morphism_map[mid] = c.compose(target_value.arrow.mor(v), d.maps[u].component(x))
    arrow = FunctorData(total.groupoid, c, object_map, morphism_map, name="F_colim")
    arrow_report = validate_functor(arrow)
    if not arrow_report.ok:
        raise PreconditionError(f"Kolimes-Pfeil ist kein Funktor: {arrow_report.violations[0].rule}")
    obj = FamObject(shape=total.groupoid, target=c, arrow=arrow, name=f"colim({d.name})" if d.name else "colim")

    injections = {}
    for j, value in d.values.items():
        injections[j] = fam_morphism(
            value,
            obj,
            total.inclusions[j],
            {x: c.identity(value.at(x)) for x in value.shape.objects},
            name=f"ι_{j}",
        )
    logger.debug("Kolimes über %s: %d Objekte", k.name, len(total.groupoid.objects))
    return ColimitResult(obj=obj, injections=injections, diagram=d, total=total)


# ============================================================================
# Universelle Eigenschaft
# ============================================================================

@dataclass(frozen=True)
class PseudoCocone:
    legs: Dict[str, FamMorphism]
    cells: Dict[str, NatTransData]


def enumerate_pseudo_cocones(d: FamDiagram, z: FamObject, counter: Optional[BudgetCounter] = None) -> Iterator[PseudoCocone]:
    """Alle Pseudo-Kokegel von d nach z (Beine und Kozykel-verträgliche 2-Zellen)."""
    counter = counter or unlimited()
    k = d.index
    index_objects = list(k.objects)
    leg_options = [list(enumerate_fam_morphisms(d.values[j], z, counter)) for j in index_objects]
    moving = [u for u in sorted(k.morphisms) if not k.is_identity(u)]
    for legs_tuple in itertools.product(*leg_options):
        legs = dict(zip(index_objects, legs_tuple))
        cell_options = []
        for u in moving:
            s, t = k.morphisms[u]
            cell_options.append(list(enumerate_two_cells(compose_fam(legs[t], d.maps[u]), legs[s], counter)))
        for cells_tuple in itertools.product(*cell_options):
            counter.tick()
            cells = dict(zip(moving, cells_tuple))
            for j in index_objects:
                ident = k.identity(j)
                cells[ident] = NatTransData(
                    source_functor=legs[j].phi,
                    target_functor=legs[j].phi,
                    components={x: z.shape.identity(legs[j].phi.ob(x)) for x in d.values[j].shape.objects},
                )
            if _cocycle_holds(d, z, cells):
                yield PseudoCocone(legs=legs, cells=cells)


def _cocycle_holds(d: FamDiagram, z: FamObject, cells: Dict[str, NatTransData]) -> bool:
    """θ_{v∘u, x} = θ_{u, x} ∘ θ_{v, d(u)x}."""
    k = d.index
    for (v, u), vu in k.composition.items():
        du = d.maps[u].phi
        for x in d.values[k.source(u)].shape.objects:
            expected = z.shape.compose(cells[u].at(x), cells[v].at(du.ob(x)))
            if cells[vu].at(x) != expected:
                return False
    return True


def count_colimit_factorizations(result: ColimitResult, cocone: PseudoCocone, counter: Optional[BudgetCounter] = None) -> int:
    """Anzahl der m: colim → Z mit m∘ι_j = c_j und m(λ_{u,x}) = θ_{u,x}."""
    d = result.diagram
    k = d.index
    z = next(iter(cocone.legs.values())).target
    count = 0
    for m in enumerate_fam_morphisms(result.obj, z, counter):
        if not all(fam_morphisms_equal(compose_fam(m, result.injections[j]), cocone.legs[j]) for j in k.objects):
            continue
        if all(
            m.phi.mor(result.structure_cell(u, x)) == cocone.cells[u].at(x)
            for u in k.morphisms
            if not k.is_identity(u)
            for x in d.values[k.source(u)].shape.objects
        ):
            count += 1
    return count


@dataclass
class UniversalityReport:
    """Zusammenfassung einer Prüfung der universellen Eigenschaft."""

    competitors: int = 0
    unique: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures and self.unique == self.competitors


def verify_colimit_universality(
    result: ColimitResult,
    test_objects: Sequence[FamObject],
    counter: Optional[BudgetCounter] = None,
) -> UniversalityReport:
    """Jeder Pseudo-Kokegel in ein Testobjekt faktorisiert eindeutig durch den Kolimes."""
    report = UniversalityReport()
    for z in test_objects:
        for i, cocone in enumerate(enumerate_pseudo_cocones(result.diagram, z, counter)):
            report.competitors += 1
            n = count_colimit_factorizations(result, cocone, counter)
            if n == 1:
                report.unique += 1
            else:
                report.failures.append(f"{z.name or 'Z'}#{i}: {n} Faktorisierungen")
    return report

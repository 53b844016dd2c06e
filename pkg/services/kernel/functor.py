"""
Funktoren, natürliche Transformationen und deren Aufzählung.

Die Aufzählungen arbeiten per Backtracking: Objektbilder zuerst, danach
die Nicht-Identitäten in Bezeichner-Reihenfolge. Jede Kompositionsbedingung
wird geprüft, sobald alle beteiligten Morphismen zugewiesen sind.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from schemas.reports import ValidationReport
from services.budget import BudgetCounter, unlimited
from services.errors import PreconditionError

from .category import FiniteCategory

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FunctorData:
    """Objekt- und Morphismenabbildung zwischen zwei endlichen Kategorien."""

    source: FiniteCategory
    target: FiniteCategory
    object_map: Dict[str, str]
    morphism_map: Dict[str, str]
    name: str = field(default="", compare=False)

    def ob(self, x: str) -> str:
        return self.object_map[x]

    def mor(self, f: str) -> str:
        return self.morphism_map[f]

    def same_maps(self, other: "FunctorData") -> bool:
        return self.object_map == other.object_map and self.morphism_map == other.morphism_map

    def key(self) -> tuple:
        """Hashbarer Schlüssel der Abbildungsdaten."""
        return (tuple(sorted(self.object_map.items())), tuple(sorted(self.morphism_map.items())))

    def __repr__(self) -> str:
        return f"<Functor {self.name or ''} {self.source.name}→{self.target.name}>"


@dataclass(frozen=True)
class NatTransData:
    """Natürliche Transformation F₁ ⇒ F₂ mit Komponenten pro Objekt."""

    source_functor: FunctorData
    target_functor: FunctorData
    components: Dict[str, str]

    def at(self, x: str) -> str:
        return self.components[x]

    def key(self) -> tuple:
        return tuple(sorted(self.components.items()))


def identity_functor(c: FiniteCategory) -> FunctorData:
    return FunctorData(
        source=c,
        target=c,
        object_map={x: x for x in c.objects},
        morphism_map={f: f for f in c.morphisms},
        name=f"id_{c.name}",
    )


def compose_functors(g: FunctorData, f: FunctorData) -> FunctorData:
    """g∘f; Ziel von f muss Quelle von g sein."""
    if not f.target.same_as(g.source):
        raise PreconditionError(f"Funktoren nicht komponierbar: {f.target.name} ≠ {g.source.name}")
    return FunctorData(
        source=f.source,
        target=g.target,
        object_map={x: g.object_map[y] for x, y in f.object_map.items()},
        morphism_map={m: g.morphism_map[n] for m, n in f.morphism_map.items()},
        name=f"{g.name}∘{f.name}" if g.name and f.name else "",
    )


# ============================================================================
# Validierung
# ============================================================================

def validate_functor(f: FunctorData) -> ValidationReport:
    """Prüft Vollständigkeit, Endpunkte, Identitäten und alle Kompositionen."""
    report = ValidationReport(subject=f.name or "functor")
    a, b = f.source, f.target

    for x in a.objects:
        if x not in f.object_map:
            report.reference("unmapped_object", [x], f"Objekt {x} hat kein Bild")
        elif f.object_map[x] not in b.objects:
            report.reference("unknown_object", [x, f.object_map[x]], f"Bild {f.object_map[x]} unbekannt")
    for m in a.morphisms:
        if m not in f.morphism_map:
            report.reference("unmapped_morphism", [m], f"Morphismus {m} hat kein Bild")
        elif f.morphism_map[m] not in b.morphisms:
            report.reference("unknown_morphism", [m, f.morphism_map[m]], f"Bild {f.morphism_map[m]} unbekannt")
    if not report.ok:
        return report.normalized()

    for m, (s, t) in sorted(a.morphisms.items()):
        image = f.morphism_map[m]
        if b.morphisms[image] != (f.object_map[s], f.object_map[t]):
            report.axiom("endpoints", [m, image], f"F({m}) = {image} hat falsche Endpunkte")
    for x in a.objects:
        if f.morphism_map[a.identity(x)] != b.identity(f.object_map[x]):
            report.axiom("identity", [x], f"F(id_{x}) ist keine Identität")
    if not report.ok:
        return report.normalized()

    for (g, h), gh in sorted(a.composition.items()):
        expected = b.composition.get((f.morphism_map[g], f.morphism_map[h]))
        if expected != f.morphism_map[gh]:
            report.axiom("composition", [g, h], f"F({g}∘{h}) ≠ F({g})∘F({h})")
    return report.normalized()


def validate_nat_trans(theta: NatTransData) -> ValidationReport:
    """Prüft Endpunkte der Komponenten und alle Natürlichkeitsquadrate."""
    report = ValidationReport(subject="natural transformation")
    f1, f2 = theta.source_functor, theta.target_functor
    if not (f1.source.same_as(f2.source) and f1.target.same_as(f2.target)):
        report.reference("functor_mismatch", [], "Quell- und Zielfunktor haben verschiedene Kategorien")
        return report
    c = f1.target
    for x in f1.source.objects:
        comp = theta.components.get(x)
        if comp is None:
            report.reference("missing_component", [x], f"Keine Komponente bei {x}")
        elif comp not in c.morphisms:
            report.reference("unknown_morphism", [x, comp], f"Komponente {comp} unbekannt")
        elif c.morphisms[comp] != (f1.ob(x), f2.ob(x)):
            report.axiom("component_endpoints", [x, comp], f"Komponente bei {x} ist kein Morphismus F₁({x}) → F₂({x})")
    if not report.ok:
        return report.normalized()

    for m, (s, t) in sorted(f1.source.morphisms.items()):
        left = c.composition.get((f2.mor(m), theta.components[s]))
        right = c.composition.get((theta.components[t], f1.mor(m)))
        if left is None or left != right:
            report.axiom("naturality", [m, s, t], f"Natürlichkeitsquadrat für {m}: {s} → {t} kommutiert nicht")
    return report.normalized()


# ============================================================================
# Aufzählung
# ============================================================================

def _composition_constraints(a: FiniteCategory, order: List[str]) -> Dict[int, List[Tuple[str, str, str]]]:
    """Ordnet jede Kompositionsbedingung dem Schritt zu, ab dem sie prüfbar ist."""
    position = {m: i for i, m in enumerate(order)}
    constraints: Dict[int, List[Tuple[str, str, str]]] = {}
    for (g, f), gf in a.composition.items():
        involved = [position[m] for m in (g, f, gf) if m in position]
        if not involved:
            continue
        constraints.setdefault(max(involved), []).append((g, f, gf))
    return constraints


def enumerate_functors(
    a: FiniteCategory,
    b: FiniteCategory,
    counter: Optional[BudgetCounter] = None,
    object_maps: Optional[List[Dict[str, str]]] = None,
) -> Iterator[FunctorData]:
    """
    Zählt alle Funktoren a → b auf (deterministische Reihenfolge).

    Args:
        a: Quellkategorie
        b: Zielkategorie
        counter: Budget-Zähler (eine Einheit pro Teilzuweisung)
        object_maps: Optional vorgegebene Objektabbildungen (sonst alle)
    """
    counter = counter or unlimited()
    order = sorted(m for m in a.morphisms if not a.is_identity(m))
    constraints = _composition_constraints(a, order)

    if object_maps is None:
        candidates = (dict(zip(a.objects, images)) for images in itertools.product(b.objects, repeat=len(a.objects)))
    else:
        candidates = iter(object_maps)

    for obj_map in candidates:
        counter.tick()
        base = {a.identity(x): b.identity(obj_map[x]) for x in a.objects}
        options = [b.hom(obj_map[a.source(m)], obj_map[a.target(m)]) for m in order]
        if any(not opt for opt in options):
            continue
        assignment = dict(base)

        def extend(i: int) -> Iterator[Dict[str, str]]:
            if i == len(order):
                yield dict(assignment)
                return
            m = order[i]
            for image in options[i]:
                counter.tick()
                assignment[m] = image
                if all(b.composition.get((assignment[g], assignment[f])) == assignment[gf]
                       for g, f, gf in constraints.get(i, ())):
                    yield from extend(i + 1)
            assignment.pop(m, None)

        for mor_map in extend(0):
            yield FunctorData(source=a, target=b, object_map=dict(obj_map), morphism_map=mor_map)


def enumerate_nat_trans(
    f1: FunctorData,
    f2: FunctorData,
    counter: Optional[BudgetCounter] = None,
) -> Iterator[NatTransData]:
    """Zählt alle natürlichen Transformationen F₁ ⇒ F₂ auf."""
    counter = counter or unlimited()
    a, c = f1.source, f1.target
    objects = list(a.objects)
    position = {x: i for i, x in enumerate(objects)}
    squares: Dict[int, List[Tuple[str, str, str]]] = {}
    for m, (s, t) in a.morphisms.items():
        if a.is_identity(m):
            continue
        squares.setdefault(max(position[s], position[t]), []).append((m, s, t))
    options = [c.hom(f1.ob(x), f2.ob(x)) for x in objects]
    if any(not opt for opt in options):
        return
    comps: Dict[str, str] = {}

    def extend(i: int) -> Iterator[Dict[str, str]]:
        if i == len(objects):
            yield dict(comps)
            return
        x = objects[i]
        for comp in options[i]:
            counter.tick()
            comps[x] = comp
            if all(c.composition.get((f2.mor(m), comps[s])) == c.composition.get((comps[t], f1.mor(m)))
                   for m, s, t in squares.get(i, ())):
                yield from extend(i + 1)
        comps.pop(x, None)

    for components in extend(0):
        yield NatTransData(source_functor=f1, target_functor=f2, components=components)


# ============================================================================
# Äquivalenzen
# ============================================================================

def is_fully_faithful(f: FunctorData) -> bool:
    a = f.source
    for x in a.objects:
        for y in a.objects:
            images = [f.mor(m) for m in a.hom(x, y)]
            if len(set(images)) != len(images) or len(images) != len(f.target.hom(f.ob(x), f.ob(y))):
                return False
    return True


def is_essentially_surjective(f: FunctorData) -> bool:
    b = f.target
    image = set(f.object_map.values())
    for y in b.objects:
        if y in image:
            continue
        if not any(b.is_isomorphism(m) for x in image for m in b.hom(x, y)):
            return False
    return True


def is_equivalence(f: FunctorData) -> bool:
    return is_fully_faithful(f) and is_essentially_surjective(f)


def find_equivalence(
    a: FiniteCategory,
    b: FiniteCategory,
    counter: Optional[BudgetCounter] = None,
) -> Optional[FunctorData]:
    """Erschöpfende Suche nach einer Äquivalenz a → b; None wenn keine existiert."""
    if bool(a.objects) != bool(b.objects):
        return None
    for candidate in enumerate_functors(a, b, counter):
        if is_equivalence(candidate):
            return candidate
    return None

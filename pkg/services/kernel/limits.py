"""
Brute-Force-Limiten in einer endlichen Kategorie.

Ein Diagramm ist ein endlicher gerichteter Graph mit Werten in C
(Knoten → Objekt, Pfeil → Morphismus). Ein Kegel ist ein Apex mit Beinen
zu allen Knoten, die mit jedem Pfeil kommutieren.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from services.budget import BudgetCounter, unlimited
from services.errors import PreconditionError

from .category import FiniteCategory

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Diagram:
    """Endliches Diagramm in C."""

    category: FiniteCategory
    nodes: Tuple[str, ...]
    arrows: Dict[str, Tuple[str, str]] = field(default_factory=dict)   # arrow -> (source node, target node)
    objects: Dict[str, str] = field(default_factory=dict)              # node -> object of C
    morphisms: Dict[str, str] = field(default_factory=dict)            # arrow -> morphism of C

    @classmethod
    def discrete(cls, c: FiniteCategory, objects: Mapping[str, str]) -> "Diagram":
        return cls(category=c, nodes=tuple(objects), objects=dict(objects))

    @classmethod
    def cospan(cls, c: FiniteCategory, f: str, g: str) -> "Diagram":
        """Kospan a --f--> x <--g-- b mit Knoten 'left', 'apex', 'right'."""
        if c.target(f) != c.target(g):
            raise PreconditionError(f"{f} und {g} haben verschiedene Ziele")
        return cls(
            category=c,
            nodes=("left", "apex", "right"),
            arrows={"f": ("left", "apex"), "g": ("right", "apex")},
            objects={"left": c.source(f), "apex": c.target(f), "right": c.source(g)},
            morphisms={"f": f, "g": g},
        )

    def describe(self) -> str:
        parts = [f"{n}={self.objects[n]}" for n in self.nodes]
        arrows = [f"{a}:{s}→{t}={self.morphisms[a]}" for a, (s, t) in sorted(self.arrows.items())]
        return "Diagramm(" + ", ".join(parts + arrows) + ")"


@dataclass(frozen=True)
class Cone:
    """Kegel über einem Diagramm: Apex und ein Bein pro Knoten."""

    apex: str
    legs: Dict[str, str]
    diagram: Diagram = field(compare=False, repr=False)

    def leg(self, node: str) -> str:
        return self.legs[node]


def is_cone(d: Diagram, apex: str, legs: Mapping[str, str]) -> bool:
    c = d.category
    for node in d.nodes:
        leg = legs.get(node)
        if leg is None or c.morphisms.get(leg) != (apex, d.objects[node]):
            return False
    for arrow, (s, t) in d.arrows.items():
        if c.composition.get((d.morphisms[arrow], legs[s])) != legs[t]:
            return False
    return True


def enumerate_cones(d: Diagram, counter: Optional[BudgetCounter] = None) -> Iterator[Cone]:
    """Alle Kegel über d, sortiert nach Apex und Beinen."""
    counter = counter or unlimited()
    c = d.category
    for apex in c.objects:
        options = [c.hom(apex, d.objects[n]) for n in d.nodes]
        for legs in itertools.product(*options):
            counter.tick()
            leg_map = dict(zip(d.nodes, legs))
            if is_cone(d, apex, leg_map):
                yield Cone(apex=apex, legs=leg_map, diagram=d)


def mediating_morphisms(
    competitor: Cone,
    limit: Cone,
    transition: Optional[Mapping[str, str]] = None,
) -> List[str]:
    """
    Alle u: competitor.apex → limit.apex mit limit.leg(n)∘u = t_n∘competitor.leg(n).

    Args:
        competitor: Quellkegel
        limit: Zielkegel
        transition: Optionale Morphismen t_n zwischen den Knotenwerten
            (für Kegel über verschiedenen, knotenweise verbundenen Diagrammen)
    """
    c = limit.diagram.category
    result = []
    for u in c.hom(competitor.apex, limit.apex):
        ok = True
        for node in limit.diagram.nodes:
            leg = competitor.legs[node]
            if transition is not None:
                leg = c.composition.get((transition[node], leg))
            if c.composition.get((limit.legs[node], u)) != leg:
                ok = False
                break
        if ok:
            result.append(u)
    return result


def brute_force_limit(
    c: FiniteCategory,
    d: Diagram,
    counter: Optional[BudgetCounter] = None,
) -> Optional[Cone]:
    """
    Sucht einen terminalen Kegel über d durch vollständige Aufzählung.

    Returns:
        Den ersten terminalen Kegel in kanonischer Reihenfolge oder None.

    Raises:
        BudgetExceeded: Aufzählungs-Obergrenze erreicht (unentschieden, nicht 'kein Limes')
    """
    if not d.category.same_as(c):
        raise PreconditionError("Diagramm liegt nicht in der angegebenen Kategorie")
    cones = list(enumerate_cones(d, counter))
    for candidate in cones:
        if all(len(mediating_morphisms(other, candidate)) == 1 for other in cones):
            logger.debug("Limes gefunden: Apex %s für %s", candidate.apex, d.describe())
            return candidate
    logger.debug("Kein Limes für %s (%d Kegel)", d.describe(), len(cones))
    return None


def induced_morphism(source: Cone, target: Cone, transition: Mapping[str, str]) -> str:
    """Eindeutiger Morphismus zwischen Limeskegeln, induziert von knotenweisen Übergängen."""
    candidates = mediating_morphisms(source, target, transition)
    if len(candidates) != 1:
        raise PreconditionError(
            f"Kein eindeutig induzierter Morphismus {source.apex} → {target.apex} ({len(candidates)} Kandidaten)"
        )
    return candidates[0]

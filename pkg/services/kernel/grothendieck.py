"""
Grothendieck-Konstruktion für gruppoidwertige Diagramme über einem Gruppoid.

Objekte (j, x) mit x ∈ d(j); Morphismen (u, v): (j, x) → (j′, x′) mit
u: j → j′ und v: d(u)(x) → x′. Komposition:
(u′, v′)∘(u, v) = (u′∘u, v′∘d(u′)(v)).
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Sequence, Tuple

from schemas.reports import ValidationReport
from services.errors import PreconditionError

from .functor import FunctorData, validate_functor
from .group import FiniteGroup
from .groupoid import FiniteGroupoid, delooping, discrete_groupoid
from .ids import compound_id

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupoidDiagram:
    """Funktor k → Grpd: Faser pro Objekt, Transportfunktor pro Morphismus."""

    index: FiniteGroupoid
    fibers: Dict[str, FiniteGroupoid]
    transports: Dict[str, FunctorData]


def validate_groupoid_diagram(d: GroupoidDiagram) -> ValidationReport:
    """Prüft Vollständigkeit, Endpunkte und strikte Funktorialität (Identitäten, Kompositionen)."""
    report = ValidationReport(subject="groupoid diagram")
    k = d.index
    for j in k.objects:
        if j not in d.fibers:
            report.reference("missing_fiber", [j], f"Keine Faser für {j}")
    for u in k.morphisms:
        if u not in d.transports:
            report.reference("missing_transport", [u], f"Kein Transport für {u}")
    if not report.ok:
        return report.normalized()

    for u, (s, t) in sorted(k.morphisms.items()):
        functor = d.transports[u]
        if not (functor.source.same_as(d.fibers[s]) and functor.target.same_as(d.fibers[t])):
            report.axiom("transport_endpoints", [u], f"d({u}) ist kein Funktor d({s}) → d({t})")
            continue
        sub = validate_functor(functor)
        if not sub.ok:
            report.extend(sub, prefix=f"transport[{u}].")
    if not report.ok:
        return report.normalized()

    for j in k.objects:
        functor = d.transports[k.identity(j)]
        if any(x != y for x, y in functor.object_map.items()) or any(m != n for m, n in functor.morphism_map.items()):
            report.axiom("functor_identity", [j], f"d(id_{j}) ist nicht die Identität")
    for (v, u), vu in sorted(k.composition.items()):
        dv, du, dvu = d.transports[v], d.transports[u], d.transports[vu]
        if any(dv.ob(du.ob(x)) != dvu.ob(x) for x in du.source.objects) or any(
            dv.mor(du.mor(m)) != dvu.mor(m) for m in du.source.morphisms
        ):
            report.axiom("functor_composition", [v, u], f"d({v}∘{u}) ≠ d({v})∘d({u})")
    return report.normalized()


@dataclass(frozen=True)
class GrothendieckResult:
    """Totalgruppoid mit Projektion auf k, Faser-Inklusionen und Dekodiertabellen."""

    groupoid: FiniteGroupoid
    projection: FunctorData
    inclusions: Dict[str, FunctorData]
    pairs: Dict[str, Tuple[str, str]]              # Objekt -> (j, x)
    morphism_pairs: Dict[str, Tuple[str, str, str]]  # Morphismus -> (Quellobjekt, u, v)


def total_object_id(j: str, x: str) -> str:
    return compound_id(j, x)


def total_morphism_id(source: str, u: str, v: str) -> str:
    return compound_id(source, u, v)


def grothendieck_construction(k: FiniteGroupoid, d: GroupoidDiagram) -> GrothendieckResult:
    """
    Totalgruppoid ∫d über dem Indexgruppoid k.

    Raises:
        PreconditionError: d ist nicht (strikt) funktoriell
    """
    report = validate_groupoid_diagram(d)
    if not report.ok:
        first = report.violations[0]
        raise PreconditionError(f"Diagramm nicht funktoriell: {first.rule} {first.instance}")

    pairs: Dict[str, Tuple[str, str]] = {}
    for j in k.objects:
        for x in d.fibers[j].objects:
            pairs[total_object_id(j, x)] = (j, x)

    morphisms: Dict[str, Tuple[str, str]] = {}
    morphism_pairs: Dict[str, Tuple[str, str, str]] = {}
    for obj, (j, x) in pairs.items():
        for u in k.out_of(j):
            j2 = k.target(u)
            fiber = d.fibers[j2]
            for v in fiber.out_of(d.transports[u].ob(x)):
                mid = total_morphism_id(obj, u, v)
                morphisms[mid] = (obj, total_object_id(j2, fiber.target(v)))
                morphism_pairs[mid] = (obj, u, v)

    outgoing: Dict[str, list] = {}
    for mid, (src, _) in morphisms.items():
        outgoing.setdefault(src, []).append(mid)

    composition: Dict[Tuple[str, str], str] = {}
    inverses: Dict[str, str] = {}
    for m1, (src, u, v) in morphism_pairs.items():
        tgt = morphisms[m1][1]
        for m2 in outgoing.get(tgt, ()):
            _, u2, v2 = morphism_pairs[m2]
            fiber = d.fibers[k.target(u2)]
            composition[(m2, m1)] = total_morphism_id(
                src, k.compose(u2, u), fiber.compose(v2, d.transports[u2].mor(v))
            )
        u_inv = k.inverses[u]
        inverses[m1] = total_morphism_id(tgt, u_inv, d.transports[u_inv].mor(d.fibers[k.target(u)].inverses[v]))

    identities = {
        obj: total_morphism_id(obj, k.identity(j), d.fibers[j].identity(x)) for obj, (j, x) in pairs.items()
    }
    total = FiniteGroupoid(
        objects=tuple(sorted(pairs)),
        morphisms=morphisms,
        identities=identities,
        composition=composition,
        name=f"∫{k.name}",
        inverses=inverses,
    )
    projection = FunctorData(
        source=total,
        target=k,
        object_map={o: p[0] for o, p in pairs.items()},
        morphism_map={m: p[1] for m, p in morphism_pairs.items()},
        name="π",
    )
    inclusions = {}
    for j in k.objects:
        fiber = d.fibers[j]
        id_j = k.identity(j)
        inclusions[j] = FunctorData(
            source=fiber,
            target=total,
            object_map={x: total_object_id(j, x) for x in fiber.objects},
            morphism_map={v: total_morphism_id(total_object_id(j, fiber.source(v)), id_j, v) for v in fiber.morphisms},
            name=f"ι_{j}",
        )
    logger.debug("Grothendieck-Konstruktion: %d Objekte, %d Morphismen", len(pairs), len(morphisms))
    return GrothendieckResult(total, projection, inclusions, pairs, morphism_pairs)


# ============================================================================
# Gruppenwirkungen
# ============================================================================

def action_diagram(
    group: FiniteGroup,
    points: Sequence[str],
    act: Callable[[str, str], str],
) -> GroupoidDiagram:
    """B(G) wirkt auf einer endlichen Menge (diskrete Faser) über act(g, s)."""
    index = delooping(group)
    fiber = discrete_groupoid(points, name="S")
    transports = {}
    for g in group.elements:
        image = {s: act(g, s) for s in fiber.objects}
        transports[g] = FunctorData(
            source=fiber,
            target=fiber,
            object_map=image,
            morphism_map={fiber.identity(s): fiber.identity(image[s]) for s in fiber.objects},
            name=f"d({g})",
        )
    return GroupoidDiagram(index=index, fibers={index.objects[0]: fiber}, transports=transports)


def action_groupoid(group: FiniteGroup, points: Sequence[str], act: Callable[[str, str], str]) -> GrothendieckResult:
    d = action_diagram(group, points, act)
    return grothendieck_construction(d.index, d)

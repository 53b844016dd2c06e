"""
Endliche Gruppoide als 1-truncierte Formen.

Enthält π₀ (über networkx), Automorphismengruppen und die Standard-
Konstruktionen: diskret, Delooping B(G), zusammenhängend, disjunkte
Vereinigung, volle Teilgruppoide und Produkte.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from schemas.reports import ValidationReport
from services.errors import PreconditionError

from .category import FiniteCategory, validate_category
from .functor import FunctorData
from .group import FiniteGroup, group_from_operation, trivial_group
from .ids import compound_id

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteGroupoid(FiniteCategory):
    """Endliche Kategorie, in der jeder Morphismus ein angegebenes Inverses hat."""

    inverses: Dict[str, str] = field(default_factory=dict)

    def inverse(self, f: str) -> str:
        return self.inverses[f]

    def __repr__(self) -> str:
        return f"<{self.name or 'FiniteGroupoid'}: {len(self.objects)} Objekte, {len(self.morphisms)} Morphismen>"


def groupoid_from_category(c: FiniteCategory, name: Optional[str] = None) -> FiniteGroupoid:
    """Ergänzt eine Kategorie um ihre Inversen; wirft, wenn ein Morphismus nicht invertierbar ist."""
    inverses = {}
    for f in sorted(c.morphisms):
        g = c.inverse_of(f)
        if g is None:
            raise PreconditionError(f"Morphismus {f} ist nicht invertierbar")
        inverses[f] = g
    return FiniteGroupoid(
        objects=c.objects,
        morphisms=c.morphisms,
        identities=c.identities,
        composition=c.composition,
        name=c.name if name is None else name,
        inverses=inverses,
    )


def validate_groupoid(g: FiniteGroupoid) -> ValidationReport:
    """Kategorienaxiome plus Referenzen und Gesetze der Inversen."""
    report = validate_category(g)
    report.subject = g.name or "groupoid"
    if any(v.kind == "reference" for v in report.violations):
        return report
    for f in sorted(g.morphisms):
        inv = g.inverses.get(f)
        if inv is None:
            report.reference("missing_inverse", [f], f"Kein Inverses für {f} angegeben")
            continue
        if inv not in g.morphisms:
            report.reference("unknown_morphism", [f, inv], f"Inverses {inv} von {f} unbekannt")
            continue
        s, t = g.morphisms[f]
        if g.composition.get((inv, f)) != g.identities.get(s):
            report.axiom("left_inverse", [f, inv], f"{inv}∘{f} ≠ id_{s}")
        if g.composition.get((f, inv)) != g.identities.get(t):
            report.axiom("right_inverse", [f, inv], f"{f}∘{inv} ≠ id_{t}")
    for f in sorted(g.inverses):
        if f not in g.morphisms:
            report.reference("unknown_morphism", [f], f"Inversen-Eintrag für unbekannten Morphismus {f}")
    return report.normalized()


# ============================================================================
# π₀ und Automorphismengruppen
# ============================================================================

Blocks = Tuple[Tuple[str, ...], ...]


def pi0(g: FiniteCategory) -> Blocks:
    """Zusammenhangskomponenten, jeder Block sortiert, Blöcke nach kleinstem Element."""
    graph = nx.Graph()
    graph.add_nodes_from(g.objects)
    graph.add_edges_from(g.morphisms.values())
    blocks = [tuple(sorted(component)) for component in nx.connected_components(graph)]
    return tuple(sorted(blocks, key=lambda b: b[0]))


def component_index(blocks: Blocks) -> Dict[str, int]:
    return {x: i for i, block in enumerate(blocks) for x in block}


def is_connected(g: FiniteCategory) -> bool:
    return len(pi0(g)) == 1


def aut_group(g: FiniteCategory, x: str) -> FiniteGroup:
    """Aut(x) = hom(x, x) mit Komposition als Multiplikation."""
    if x not in g.objects:
        raise PreconditionError(f"Unbekanntes Objekt {x}")
    group = group_from_operation(g.hom(x, x), lambda a, b: g.compose(a, b), name=f"Aut({x})")
    return group


def is_discrete_up_to_equivalence(g: FiniteCategory) -> bool:
    """Alle Automorphismengruppen trivial (Form äquivalent zu einer Menge)."""
    return all(len(g.hom(x, x)) == 1 for x in g.objects)


# ============================================================================
# Konstruktionen
# ============================================================================

def empty_groupoid(name: str = "∅") -> FiniteGroupoid:
    return FiniteGroupoid(objects=(), morphisms={}, identities={}, composition={}, name=name, inverses={})


def discrete_groupoid(objects: Sequence[str], name: str = "") -> FiniteGroupoid:
    objs = tuple(sorted(set(objects)))
    ids = {x: f"id_{x}" for x in objs}
    return FiniteGroupoid(
        objects=objs,
        morphisms={ids[x]: (x, x) for x in objs},
        identities=ids,
        composition={(ids[x], ids[x]): ids[x] for x in objs},
        name=name or f"Disc({len(objs)})",
        inverses={ids[x]: ids[x] for x in objs},
    )


def point_groupoid(obj: str = "*") -> FiniteGroupoid:
    return discrete_groupoid([obj], name="pt")


def delooping(group: FiniteGroup, obj: str = "*") -> FiniteGroupoid:
    """B(G): ein Objekt, Morphismen = Gruppenelemente, g∘h = g·h."""
    elems = group.elements
    composition = {
        (elems[i], elems[j]): elems[int(group.table[i, j])]
        for i in range(group.order)
        for j in range(group.order)
    }
    return FiniteGroupoid(
        objects=(obj,),
        morphisms={e: (obj, obj) for e in elems},
        identities={obj: elems[group.identity]},
        composition=composition,
        name=f"B({group.name})",
        inverses={elems[i]: elems[int(group.inverses[i])] for i in range(group.order)},
    )


def connected_groupoid(objects: Sequence[str], group: FiniteGroup, name: str = "") -> FiniteGroupoid:
    """
    Zusammenhängendes Gruppoid mit hom(a, b) ≅ G für alle a, b.

    Morphismus 'g:a->b'; (h: b→c)∘(g: a→b) = (h·g: a→c).
    """
    objs = tuple(sorted(set(objects)))
    elems = group.elements

    def mid(k: int, a: str, b: str) -> str:
        return f"{elems[k]}:{a}->{b}"

    morphisms = {mid(k, a, b): (a, b) for a in objs for b in objs for k in range(group.order)}
    composition = {}
    for a, b, c in itertools.product(objs, repeat=3):
        for i in range(group.order):
            for j in range(group.order):
                composition[(mid(j, b, c), mid(i, a, b))] = mid(int(group.table[j, i]), a, c)
    inverses = {mid(k, a, b): mid(int(group.inverses[k]), b, a) for a in objs for b in objs for k in range(group.order)}
    return FiniteGroupoid(
        objects=objs,
        morphisms=morphisms,
        identities={a: mid(group.identity, a, a) for a in objs},
        composition=composition,
        name=name or f"Conn({len(objs)},{group.name})",
        inverses=inverses,
    )


def chaotic_groupoid(objects: Sequence[str], name: str = "") -> FiniteGroupoid:
    """Genau ein Morphismus zwischen je zwei Objekten."""
    return connected_groupoid(objects, trivial_group(), name=name or f"Chaos({len(set(objects))})")


@dataclass(frozen=True)
class DisjointUnion:
    """Disjunkte Vereinigung mit Injektionen und Herkunftstabelle."""

    groupoid: FiniteGroupoid
    injections: Tuple[FunctorData, ...]
    labels: Tuple[str, ...]
    origin: Dict[str, Tuple[str, str]]          # neues Objekt -> (label, altes Objekt)
    morphism_origin: Dict[str, Tuple[str, str]]  # neuer Morphismus -> (label, alter Morphismus)


def disjoint_union(parts: Sequence[FiniteGroupoid], labels: Optional[Sequence[str]] = None, name: str = "") -> DisjointUnion:
    """Koprodukt von Gruppoiden; Bezeichner werden mit dem Label markiert."""
    labels = tuple(str(i) for i in range(len(parts))) if labels is None else tuple(labels)
    if len(labels) != len(parts) or len(set(labels)) != len(labels):
        raise PreconditionError("Labels müssen eindeutig sein und zu den Teilen passen")
    objects: List[str] = []
    morphisms: Dict[str, Tuple[str, str]] = {}
    identities: Dict[str, str] = {}
    composition: Dict[Tuple[str, str], str] = {}
    inverses: Dict[str, str] = {}
    origin: Dict[str, Tuple[str, str]] = {}
    morphism_origin: Dict[str, Tuple[str, str]] = {}
    for label, part in zip(labels, parts):
        for x in part.objects:
            new = compound_id(label, x)
            objects.append(new)
            origin[new] = (label, x)
            identities[new] = compound_id(label, part.identity(x))
        for m, (s, t) in part.morphisms.items():
            new = compound_id(label, m)
            morphisms[new] = (compound_id(label, s), compound_id(label, t))
            morphism_origin[new] = (label, m)
            inverses[new] = compound_id(label, part.inverses[m])
        for (g, f), gf in part.composition.items():
            composition[(compound_id(label, g), compound_id(label, f))] = compound_id(label, gf)
    union = FiniteGroupoid(
        objects=tuple(sorted(objects)),
        morphisms=morphisms,
        identities=identities,
        composition=composition,
        name=name or "⊔".join(p.name or "?" for p in parts),
        inverses=inverses,
    )
    injections = tuple(
        FunctorData(
            source=part,
            target=union,
            object_map={x: compound_id(label, x) for x in part.objects},
            morphism_map={m: compound_id(label, m) for m in part.morphisms},
            name=f"ι_{label}",
        )
        for label, part in zip(labels, parts)
    )
    return DisjointUnion(union, injections, labels, origin, morphism_origin)


def coproduct_functor(union_a: DisjointUnion, union_b: DisjointUnion, parts: Sequence[FunctorData]) -> FunctorData:
    """f₁ ⊔ … ⊔ fₙ zwischen zwei disjunkten Vereinigungen mit gleichen Labels."""
    object_map: Dict[str, str] = {}
    morphism_map: Dict[str, str] = {}
    for label, f in zip(union_a.labels, parts):
        for x, y in f.object_map.items():
            object_map[compound_id(label, x)] = compound_id(label, y)
        for m, n in f.morphism_map.items():
            morphism_map[compound_id(label, m)] = compound_id(label, n)
    return FunctorData(union_a.groupoid, union_b.groupoid, object_map, morphism_map)


def full_subgroupoid(g: FiniteGroupoid, objects: Sequence[str], name: str = "") -> Tuple[FiniteGroupoid, FunctorData]:
    """Volles Teilgruppoid auf den gegebenen Objekten samt Inklusion."""
    keep = set(objects)
    unknown = keep - set(g.objects)
    if unknown:
        raise PreconditionError(f"Unbekannte Objekte: {sorted(unknown)}")
    morphisms = {m: st for m, st in g.morphisms.items() if st[0] in keep and st[1] in keep}
    sub = FiniteGroupoid(
        objects=tuple(sorted(keep)),
        morphisms=morphisms,
        identities={x: g.identity(x) for x in keep},
        composition={k: v for k, v in g.composition.items() if k[0] in morphisms and k[1] in morphisms},
        name=name or f"{g.name}|{len(keep)}",
        inverses={m: g.inverses[m] for m in morphisms},
    )
    inclusion = FunctorData(sub, g, {x: x for x in sub.objects}, {m: m for m in morphisms}, name="incl")
    return sub, inclusion


def product_groupoid(parts: Sequence[FiniteGroupoid], name: str = "") -> Tuple[FiniteGroupoid, Tuple[FunctorData, ...]]:
    """Striktes Produkt von Gruppoiden (Komponenten als zusammengesetzte IDs) mit Projektionen."""
    obj_tuples = list(itertools.product(*(p.objects for p in parts)))
    objects = {compound_id(*xs): xs for xs in obj_tuples}
    morphisms: Dict[str, Tuple[str, str]] = {}
    mor_tuples: Dict[str, Tuple[str, ...]] = {}
    for ms in itertools.product(*(sorted(p.morphisms) for p in parts)):
        mid = compound_id(*ms)
        src = compound_id(*(p.source(m) for p, m in zip(parts, ms)))
        tgt = compound_id(*(p.target(m) for p, m in zip(parts, ms)))
        morphisms[mid] = (src, tgt)
        mor_tuples[mid] = ms
    composition = {}
    for gid, gs in mor_tuples.items():
        for fid, fs in mor_tuples.items():
            if morphisms[fid][1] != morphisms[gid][0]:
                continue
            composition[(gid, fid)] = compound_id(*(p.compose(g, f) for p, g, f in zip(parts, gs, fs)))
    product = FiniteGroupoid(
        objects=tuple(sorted(objects)),
        morphisms=morphisms,
        identities={oid: compound_id(*(p.identity(x) for p, x in zip(parts, xs))) for oid, xs in objects.items()},
        composition=composition,
        name=name or "×".join(p.name or "?" for p in parts),
        inverses={mid: compound_id(*(p.inverses[m] for p, m in zip(parts, ms))) for mid, ms in mor_tuples.items()},
    )
    projections = tuple(
        FunctorData(
            source=product,
            target=part,
            object_map={oid: xs[i] for oid, xs in objects.items()},
            morphism_map={mid: ms[i] for mid, ms in mor_tuples.items()},
            name=f"pr_{i}",
        )
        for i, part in enumerate(parts)
    )
    return product, projections


def core_groupoid(c: FiniteCategory) -> Tuple[FiniteGroupoid, FunctorData]:
    """Maximales Teilgruppoid (alle Isomorphismen) mit Inklusion in c."""
    isos = {f for f in c.morphisms if c.is_isomorphism(f)}
    core = FiniteGroupoid(
        objects=c.objects,
        morphisms={f: c.morphisms[f] for f in isos},
        identities=dict(c.identities),
        composition={k: v for k, v in c.composition.items() if k[0] in isos and k[1] in isos},
        name=f"core({c.name})",
        inverses={f: c.inverse_of(f) for f in isos},
    )
    inclusion = FunctorData(core, c, {x: x for x in c.objects}, {f: f for f in isos}, name="core")
    return core, inclusion


def relabel_groupoid(g: FiniteGroupoid, suffix: str = "'") -> Tuple[FiniteGroupoid, FunctorData, FunctorData]:
    """Isomorphe Kopie mit umbenannten Bezeichnern, samt Isomorphismus und Inversem."""
    ob = {x: f"{x}{suffix}" for x in g.objects}
    mo = {m: f"{m}{suffix}" for m in g.morphisms}
    copy = FiniteGroupoid(
        objects=tuple(sorted(ob.values())),
        morphisms={mo[m]: (ob[s], ob[t]) for m, (s, t) in g.morphisms.items()},
        identities={ob[x]: mo[i] for x, i in g.identities.items()},
        composition={(mo[a], mo[b]): mo[c] for (a, b), c in g.composition.items()},
        name=f"{g.name}{suffix}",
        inverses={mo[m]: mo[i] for m, i in g.inverses.items()},
    )
    forward = FunctorData(copy, g, {v: k for k, v in ob.items()}, {v: k for k, v in mo.items()})
    backward = FunctorData(g, copy, ob, mo)
    return copy, forward, backward

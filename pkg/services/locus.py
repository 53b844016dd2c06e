"""
Die Äquivalenz Fam(Set*) ≃ [Δ̂[1], Set].

Ein Retraktionsdiagramm (X[0], X[1], s, r) mit r∘s = id entspricht der
Familie punktierter Mengen ⟨(r⁻¹(p), s(p))⟩_{p ∈ X[0]}. Umgekehrt wird
eine Familie ⟨(Xᵢ, bᵢ)⟩ zum Diagramm mit Totalmenge ∐ Xᵢ (Paare
(Index, Element)), r als Index-Projektion und s als Basispunktwahl.
"""

import functools
import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, Iterator, Optional, Sequence, Tuple

from schemas.reports import RoundtripReport, ValidationReport
from services.errors import PreconditionError
from services.fam.coproduct import decompose_connected
from services.fam.objects import FamObject, fam_object
from services.kernel.builders import pointed_set_name, pointed_set_skeleton
from services.kernel.category import FiniteCategory
from services.kernel.groupoid import discrete_groupoid
from services.kernel.ids import compound_id, split_id

logger = logging.getLogger(__name__)


def tag(index: str, element: str) -> str:
    """Element (index, element) der disjunkten Vereinigung."""
    return compound_id(index, element)


def untag(tagged: str) -> Tuple[str, str]:
    index, element = split_id(tagged)
    return index, element


# ============================================================================
# Objekte
# ============================================================================

@dataclass(frozen=True)
class RetractionDiagram:
    """Funktor Δ̂[1] → Set: base = X[0], total = X[1], s: base → total, r: total → base."""

    base: Tuple[str, ...]
    total: Tuple[str, ...]
    s: Dict[str, str]
    r: Dict[str, str]
    name: str = field(default="", compare=False)

    def validate(self) -> ValidationReport:
        report = ValidationReport(subject=self.name or "retraction diagram")
        base, total = set(self.base), set(self.total)
        for p in self.base:
            if self.s.get(p) not in total:
                report.reference("s_undefined", [p], f"s({p}) fehlt oder liegt nicht in X[1]")
        for e in self.total:
            if self.r.get(e) not in base:
                report.reference("r_undefined", [e], f"r({e}) fehlt oder liegt nicht in X[0]")
        if not report.ok:
            return report.normalized()
        for p in self.base:
            if self.r[self.s[p]] != p:
                report.axiom("retraction", [p], f"r(s({p})) = {self.r[self.s[p]]} ≠ {p}")
        return report.normalized()

    def fiber(self, p: str) -> Tuple[str, ...]:
        return tuple(sorted(e for e in self.total if self.r[e] == p))


@dataclass(frozen=True)
class PointedSetFamily:
    """Familie ⟨(Xᵢ, bᵢ)⟩_{i ∈ I} punktierter Mengen."""

    indices: Tuple[str, ...]
    carriers: Dict[str, Tuple[str, ...]]
    basepoints: Dict[str, str]
    name: str = field(default="", compare=False)

    def validate(self) -> ValidationReport:
        report = ValidationReport(subject=self.name or "pointed family")
        for i in self.indices:
            carrier = self.carriers.get(i)
            if carrier is None:
                report.reference("missing_carrier", [i], f"Kein Träger für {i}")
                continue
            if len(set(carrier)) != len(carrier):
                report.axiom("carrier_duplicates", [i], f"Träger von {i} enthält Duplikate")
            if self.basepoints.get(i) not in carrier:
                report.axiom("basepoint_in_carrier", [i], f"Basispunkt von {i} liegt nicht im Träger")
        return report.normalized()


# ============================================================================
# Morphismen
# ============================================================================

@dataclass(frozen=True)
class DiagramMorphism:
    """Natürliche Transformation (f0, f1) zwischen Retraktionsdiagrammen."""

    source: RetractionDiagram
    target: RetractionDiagram
    f0: Dict[str, str]
    f1: Dict[str, str]

    def validate(self) -> ValidationReport:
        report = ValidationReport(subject="diagram morphism")
        x, y = self.source, self.target
        for p in x.base:
            if self.f0.get(p) not in y.base:
                report.reference("f0_undefined", [p], f"f0({p}) fehlt")
            elif self.f1.get(x.s[p]) != y.s[self.f0[p]]:
                report.axiom("square_s", [p], f"f1(s({p})) ≠ s′(f0({p}))")
        for e in x.total:
            if self.f1.get(e) not in y.total:
                report.reference("f1_undefined", [e], f"f1({e}) fehlt")
            elif self.f0.get(x.r[e]) != y.r[self.f1[e]]:
                report.axiom("square_r", [e], f"f0(r({e})) ≠ r′(f1({e}))")
        return report.normalized()

    def same_as(self, other: "DiagramMorphism") -> bool:
        return self.f0 == other.f0 and self.f1 == other.f1


@dataclass(frozen=True)
class FamilyMorphism:
    """Indexabbildung α: I → J und punktierte Abbildungen Xᵢ → Y_{α(i)}."""

    source: PointedSetFamily
    target: PointedSetFamily
    index_map: Dict[str, str]
    maps: Dict[str, Dict[str, str]]

    def validate(self) -> ValidationReport:
        report = ValidationReport(subject="family morphism")
        x, y = self.source, self.target
        for i in x.indices:
            j = self.index_map.get(i)
            if j not in y.indices:
                report.reference("index_undefined", [i], f"α({i}) fehlt")
                continue
            component = self.maps.get(i, {})
            for e in x.carriers[i]:
                if component.get(e) not in y.carriers[j]:
                    report.reference("component_undefined", [i, e], f"Bild von {e} liegt nicht in Y_{j}")
            if component.get(x.basepoints[i]) != y.basepoints[j]:
                report.axiom("pointed", [i], f"Komponente bei {i} erhält den Basispunkt nicht")
        return report.normalized()

    def same_as(self, other: "FamilyMorphism") -> bool:
        return self.index_map == other.index_map and self.maps == other.maps


def identity_diagram_morphism(x: RetractionDiagram) -> DiagramMorphism:
    return DiagramMorphism(x, x, {p: p for p in x.base}, {e: e for e in x.total})


def compose_diagram_morphisms(second: DiagramMorphism, first: DiagramMorphism) -> DiagramMorphism:
    return DiagramMorphism(
        first.source,
        second.target,
        {p: second.f0[q] for p, q in first.f0.items()},
        {e: second.f1[d] for e, d in first.f1.items()},
    )


def identity_family_morphism(fam: PointedSetFamily) -> FamilyMorphism:
    return FamilyMorphism(
        fam, fam, {i: i for i in fam.indices}, {i: {e: e for e in fam.carriers[i]} for i in fam.indices}
    )


def compose_family_morphisms(second: FamilyMorphism, first: FamilyMorphism) -> FamilyMorphism:
    maps = {}
    for i, j in first.index_map.items():
        maps[i] = {e: second.maps[j][d] for e, d in first.maps[i].items()}
    return FamilyMorphism(first.source, second.target, {i: second.index_map[j] for i, j in first.index_map.items()}, maps)


# ============================================================================
# Die Funktoren F und G
# ============================================================================

def functor_F(x: RetractionDiagram) -> PointedSetFamily:
    """X ↦ ⟨(r⁻¹(p), s(p))⟩_{p ∈ X[0]}."""
    return PointedSetFamily(
        indices=tuple(x.base),
        carriers={p: x.fiber(p) for p in x.base},
        basepoints={p: x.s[p] for p in x.base},
        name=f"F({x.name})" if x.name else "",
    )


def functor_F_on_morphism(m: DiagramMorphism) -> FamilyMorphism:
    """(f0, f1) ↦ (f0, f1 eingeschränkt auf die Fasern)."""
    x = m.source
    return FamilyMorphism(
        functor_F(x),
        functor_F(m.target),
        dict(m.f0),
        {p: {e: m.f1[e] for e in x.fiber(p)} for p in x.base},
    )


def functor_G(fam: PointedSetFamily) -> RetractionDiagram:
    """⟨(Xᵢ, bᵢ)⟩ ↦ (I, ∐ Xᵢ, γ₂, γ₁)."""
    total = tuple(sorted(tag(i, e) for i in fam.indices for e in fam.carriers[i]))
    r = {t: untag(t)[0] for t in total}
    s = {i: tag(i, fam.basepoints[i]) for i in fam.indices}
    x = RetractionDiagram(base=tuple(fam.indices), total=total, s=s, r=r, name=f"G({fam.name})" if fam.name else "")
    if any(r[s[i]] != i for i in fam.indices):
        raise PreconditionError("γ₁∘γ₂ ≠ id")
    return x


def functor_G_on_morphism(u: FamilyMorphism) -> DiagramMorphism:
    fam = u.source
    f1 = {tag(i, e): tag(u.index_map[i], u.maps[i][e]) for i in fam.indices for e in fam.carriers[i]}
    return DiagramMorphism(functor_G(fam), functor_G(u.target), dict(u.index_map), f1)


# ============================================================================
# Einheit, Koeinheit, Rundreise
# ============================================================================

def unit_iso(x: RetractionDiagram) -> DiagramMorphism:
    """η_x: G(F(x)) → x, (p, e) ↦ e."""
    gf = functor_G(functor_F(x))
    return DiagramMorphism(gf, x, {p: p for p in x.base}, {t: untag(t)[1] for t in gf.total})


def unit_iso_inverse(x: RetractionDiagram) -> DiagramMorphism:
    gf = functor_G(functor_F(x))
    return DiagramMorphism(x, gf, {p: p for p in x.base}, {e: tag(x.r[e], e) for e in x.total})


def counit_iso(fam: PointedSetFamily) -> FamilyMorphism:
    """ε_fam: F(G(fam)) → fam, (i, e) ↦ e."""
    fg = functor_F(functor_G(fam))
    return FamilyMorphism(
        fg,
        fam,
        {i: i for i in fam.indices},
        {i: {t: untag(t)[1] for t in fg.carriers[i]} for i in fam.indices},
    )


def counit_iso_inverse(fam: PointedSetFamily) -> FamilyMorphism:
    fg = functor_F(functor_G(fam))
    return FamilyMorphism(
        fam,
        fg,
        {i: i for i in fam.indices},
        {i: {e: tag(i, e) for e in fam.carriers[i]} for i in fam.indices},
    )


def _unit_is_iso(x: RetractionDiagram) -> bool:
    eta, eta_inv = unit_iso(x), unit_iso_inverse(x)
    return (
        eta.validate().ok
        and eta_inv.validate().ok
        and compose_diagram_morphisms(eta, eta_inv).same_as(identity_diagram_morphism(x))
        and compose_diagram_morphisms(eta_inv, eta).same_as(identity_diagram_morphism(eta.source))
    )


def _counit_is_iso(fam: PointedSetFamily) -> bool:
    eps, eps_inv = counit_iso(fam), counit_iso_inverse(fam)
    return (
        eps.validate().ok
        and eps_inv.validate().ok
        and compose_family_morphisms(eps, eps_inv).same_as(identity_family_morphism(fam))
        and compose_family_morphisms(eps_inv, eps).same_as(identity_family_morphism(eps.source))
    )


def roundtrip_check(
    diagrams: Sequence[RetractionDiagram],
    families: Sequence[PointedSetFamily],
    seed: int = 0,
    morphism_samples: int = 50,
) -> RoundtripReport:
    """
    Prüft G∘F ≅ id und F∘G ≅ id auf allen Eingaben und die Natürlichkeit
    der Isomorphismen auf gesampelten Morphismen.
    """
    rng = random.Random(seed)
    report = RoundtripReport(diagrams=len(diagrams), families=len(families))
    for x in diagrams:
        if not _unit_is_iso(x):
            report.failures.append(f"unit:{x.name or x.base}")
    for fam in families:
        if not _counit_is_iso(fam):
            report.failures.append(f"counit:{fam.name or fam.indices}")

    for _ in range(morphism_samples if diagrams else 0):
        x, y = rng.choice(diagrams), rng.choice(diagrams)
        options = list(itertools.islice(enumerate_diagram_morphisms(x, y), 256))
        if not options:
            continue
        m = rng.choice(options)
        left = compose_diagram_morphisms(unit_iso(y), functor_G_on_morphism(functor_F_on_morphism(m)))
        right = compose_diagram_morphisms(m, unit_iso(x))
        report.naturality_checked += 1
        if not left.same_as(right):
            report.failures.append(f"unit naturality:{x.base}->{y.base}")

    for _ in range(morphism_samples if families else 0):
        a, b = rng.choice(families), rng.choice(families)
        options = list(itertools.islice(enumerate_family_morphisms(a, b), 256))
        if not options:
            continue
        u = rng.choice(options)
        left = compose_family_morphisms(counit_iso(b), functor_F_on_morphism(functor_G_on_morphism(u)))
        right = compose_family_morphisms(u, counit_iso(a))
        report.naturality_checked += 1
        if not left.same_as(right):
            report.failures.append(f"counit naturality:{a.indices}->{b.indices}")
    logger.info("Locus-Rundreise: %d Diagramme, %d Familien, ok=%s", len(diagrams), len(families), report.holds)
    return report


# ============================================================================
# Aufzählung
# ============================================================================

def _compositions(n: int) -> Iterator[Tuple[int, ...]]:
    """Geordnete Zerlegungen von n in positive Teile."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def enumerate_retraction_diagrams(max_total: int = 4) -> Iterator[RetractionDiagram]:
    """Alle Diagramme mit |X[1]| ≤ max_total (Fasern als Blöcke von e0, e1, …, jede Schnittwahl)."""
    for n in range(max_total + 1):
        for sizes in _compositions(n):
            base = tuple(f"p{k}" for k in range(len(sizes)))
            total = tuple(f"e{k}" for k in range(n))
            fibers, start = [], 0
            for size in sizes:
                fibers.append(total[start:start + size])
                start += size
            r = {e: p for p, fiber in zip(base, fibers) for e in fiber}
            for sections in itertools.product(*fibers):
                yield RetractionDiagram(base=base, total=total, s=dict(zip(base, sections)), r=r, name=f"D{n}:{sizes}:{sections}")


def enumerate_pointed_families(max_indices: int = 3, max_carrier: int = 3) -> Iterator[PointedSetFamily]:
    """Alle Familien mit ≤ max_indices Indizes und Trägern der Größe 1..max_carrier (Basispunkt a0)."""
    for n in range(max_indices + 1):
        indices = tuple(f"i{k}" for k in range(n))
        for sizes in itertools.product(range(1, max_carrier + 1), repeat=n):
            carriers = {i: tuple(f"a{k}" for k in range(size)) for i, size in zip(indices, sizes)}
            yield PointedSetFamily(indices=indices, carriers=carriers, basepoints={i: "a0" for i in indices}, name=f"P{sizes}")


def enumerate_diagram_morphisms(x: RetractionDiagram, y: RetractionDiagram) -> Iterator[DiagramMorphism]:
    for images in itertools.product(y.base, repeat=len(x.base)):
        f0 = dict(zip(x.base, images))
        options = []
        for e in x.total:
            p = x.r[e]
            if x.s[p] == e:
                options.append([y.s[f0[p]]])
            else:
                options.append(list(y.fiber(f0[p])))
        for choice in itertools.product(*options):
            yield DiagramMorphism(x, y, f0, dict(zip(x.total, choice)))


def enumerate_family_morphisms(a: PointedSetFamily, b: PointedSetFamily) -> Iterator[FamilyMorphism]:
    for images in itertools.product(b.indices, repeat=len(a.indices)):
        index_map = dict(zip(a.indices, images))
        per_index = []
        for i in a.indices:
            j = index_map[i]
            rest = [e for e in a.carriers[i] if e != a.basepoints[i]]
            per_index.append(
                [
                    {a.basepoints[i]: b.basepoints[j], **dict(zip(rest, choice))}
                    for choice in itertools.product(b.carriers[j], repeat=len(rest))
                ]
            )
        for maps in itertools.product(*per_index):
            yield FamilyMorphism(a, b, index_map, dict(zip(a.indices, maps)))


# ============================================================================
# π₀-Korollar
# ============================================================================

@functools.lru_cache(maxsize=8)
def _skeleton(max_size: int) -> FiniteCategory:
    return pointed_set_skeleton(max_size)


def encode_family(fam: PointedSetFamily, max_size: Optional[int] = None) -> FamObject:
    """Familie punktierter Mengen als Fam-Objekt mit diskreter Form über dem Skelett."""
    largest = max((len(c) for c in fam.carriers.values()), default=1)
    c = _skeleton(max(max_size or 1, largest))
    shape = discrete_groupoid(fam.indices, name="I")
    object_map = {i: pointed_set_name(len(fam.carriers[i])) for i in shape.objects}
    morphism_map = {shape.identity(i): c.identity(object_map[i]) for i in shape.objects}
    return fam_object(shape, c, object_map, morphism_map, name=fam.name)


@dataclass(frozen=True)
class Pi0Corollary:
    base_size: int
    index_size: int
    components: int

    @property
    def holds(self) -> bool:
        return self.base_size == self.index_size == self.components


def pi0_corollary_check(x: RetractionDiagram) -> Pi0Corollary:
    """π₀ des entsprechenden Fam(Set*)-Objekts hat |X[0]| Elemente."""
    fam = functor_F(x)
    encoded = encode_family(fam)
    components = len(decompose_connected(encoded).components)
    return Pi0Corollary(base_size=len(x.base), index_size=len(fam.indices), components=components)

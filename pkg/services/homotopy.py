"""
Homotopie-Invarianten von Familien: Form (Π∞), Trunkierungen, die
Adjunktion Π∞|₀ ⊣ Δ, Fundamentalgruppen und Basispunktwechsel.

Formen sind bereits 1-trunkiert; τ≤1 ist daher die Identität und
Π₁ = Π∞. τ≤0 wird als π₀ (diskretes Gruppoid) realisiert.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from schemas.reports import AdjunctionReport, ColimitPreservationReport, ValidationReport
from services.budget import BudgetCounter, unlimited
from services.errors import PreconditionError, UnsupportedIndexError
from services.fam.colimit import FamDiagram, fam_colimit, shape_diagram
from services.fam.coproduct import CoproductResult, copair, decompose_connected, fam_coproduct
from services.fam.hom import enumerate_fam_morphisms
from services.fam.objects import (
    FamMorphism,
    FamObject,
    compose_fam,
    fam_morphism,
    is_zero_truncated,
    sigma_embed,
    validate_fam_morphism,
)
from services.kernel.category import FiniteCategory, find_terminal
from services.kernel.functor import FunctorData, find_equivalence
from services.kernel.group import FiniteGroup, GroupHom, GroupIso, find_conjugator, find_group_isomorphism, from_dict
from services.kernel.groupoid import (
    Blocks,
    FiniteGroupoid,
    aut_group,
    component_index,
    discrete_groupoid,
    disjoint_union,
    is_connected,
    pi0,
)

logger = logging.getLogger(__name__)


# ============================================================================
# Form und Trunkierungen
# ============================================================================

def shape_of(f: FamObject) -> FiniteGroupoid:
    """Π∞(X, F) = X."""
    return f.shape


def tau0(f: FamObject) -> Blocks:
    return pi0(f.shape)


def tau_le_1(f: FamObject) -> FiniteGroupoid:
    """τ≤1 ist auf 1-trunkierten Formen die Identität."""
    return f.shape


def tau0_groupoid(f: FamObject) -> Tuple[FiniteGroupoid, FunctorData]:
    """
    π₀ als diskretes Gruppoid samt Quotientenfunktor X → π₀(X).

    Objekte von π₀(X) sind die kleinsten Elemente der Blöcke.
    """
    blocks = pi0(f.shape)
    reps = [block[0] for block in blocks]
    quotient = discrete_groupoid(reps, name=f"π₀({f.shape.name})")
    index = component_index(blocks)
    functor = FunctorData(
        f.shape,
        quotient,
        {x: reps[index[x]] for x in f.shape.objects},
        {m: quotient.identity(reps[index[s]]) for m, (s, _) in f.shape.morphisms.items()},
        name="τ₀",
    )
    return quotient, functor


# ============================================================================
# Δ: Set → Fam(C)
# ============================================================================

def delta(index: Sequence[str], c: FiniteCategory) -> CoproductResult:
    """Δ(I) = ∐_{i∈I} σ(t) für ein terminales Objekt t von C."""
    t = find_terminal(c)
    if t is None:
        raise PreconditionError(f"{c.name or 'C'} hat kein terminales Objekt – Δ ist nicht definiert")
    point = sigma_embed(c, t)
    return fam_coproduct([point] * len(index), target=c, labels=list(index))


def delta_on_map(source: CoproductResult, target: CoproductResult, mapping: Dict[str, str]) -> FamMorphism:
    """Δ(s): Δ(I) → Δ(J) für eine Abbildung s: I → J."""
    position = {label: i for i, label in enumerate(target.labels)}
    legs = [target.injections[position[mapping[label]]] for label in source.labels]
    return copair(source, legs, codomain=target.obj)


def transpose(m: FamMorphism, delta_index: CoproductResult) -> Dict[str, str]:
    """Adjungierte Abbildung π₀(X) → I: Block ↦ Summand, in dem sein Bild liegt."""
    blocks = pi0(m.source.shape)
    return {block[0]: delta_index.union.origin[m.phi.ob(block[0])][0] for block in blocks}


def _set_maps(domain: Sequence[str], codomain: Sequence[str]) -> List[Dict[str, str]]:
    return [dict(zip(domain, images)) for images in itertools.product(codomain, repeat=len(domain))]


def adjunction_check(
    f: FamObject,
    index: Sequence[str],
    seed: int = 0,
    samples: int = 50,
    counter: Optional[BudgetCounter] = None,
) -> AdjunctionReport:
    """
    Prüft die Bijektion Hom_Fam(f, ΔI) ≅ Hom_Set(π₀(X), I) und deren Natürlichkeit.

    Natürlichkeit in I wird für gesampelte Abbildungen s: I → J
    (|J| ≤ |I| + 1) geprüft, Natürlichkeit in f für die Inklusionen der
    Zusammenhangskomponenten.

    Raises:
        PreconditionError: f nicht 0-trunkiert oder kein terminales Objekt
        BudgetExceeded: Aufzählung zu groß
    """
    if not is_zero_truncated(f):
        raise PreconditionError("adjunction_check verlangt eine 0-trunkierte Familie")
    counter = counter or unlimited()
    rng = random.Random(seed)
    index = list(index)
    target = delta(index, f.target)
    blocks = pi0(f.shape)
    reps = [block[0] for block in blocks]

    homs = list(enumerate_fam_morphisms(f, target.obj, counter))
    transposes = [transpose(m, target) for m in homs]
    set_side = _set_maps(reps, index)
    distinct = {tuple(sorted(t.items())) for t in transposes}
    report = AdjunctionReport(
        components=len(blocks),
        index_size=len(index),
        fam_side=len(homs),
        set_side=len(set_side),
        expected=len(index) ** len(blocks),
        bijective=len(distinct) == len(homs) == len(set_side),
    )

    # Natürlichkeit in I
    codomains = [[f"j{k}" for k in range(n)] for n in range(1, len(index) + 2)]
    grid = [(m, t, j) for (m, t) in zip(homs, transposes) for j in codomains]
    rng.shuffle(grid)
    for m, t, labels in grid[:samples]:
        s = {i: rng.choice(labels) for i in index}
        other = delta(labels, f.target)
        moved = compose_fam(delta_on_map(target, other, s), m)
        report.naturality_checked += 1
        if transpose(moved, other) != {b: s[i] for b, i in t.items()}:
            report.naturality_failures.append(f"I: {sorted(s.items())}")

    # Natürlichkeit in f
    decomposition = decompose_connected(f)
    for incl in decomposition.inclusions:
        for m, t in list(zip(homs, transposes))[:samples]:
            restricted = compose_fam(m, incl)
            report.naturality_checked += 1
            expected = {block[0]: t[block[0]] for block in pi0(incl.source.shape)}
            if transpose(restricted, target) != expected:
                report.naturality_failures.append(f"f: {incl.source.name}")
    logger.info("Adjunktion |π₀|=%d, |I|=%d: %s", report.components, report.index_size, report.holds)
    return report


# ============================================================================
# Punktierte Familien und π₁
# ============================================================================

@dataclass(frozen=True)
class PointedFam:
    """Familie mit Basispunkt σ(t) → (X, F)."""

    fam: FamObject
    basepoint: FamMorphism

    @property
    def point(self) -> str:
        return self.basepoint.phi.ob("*")

    def validate(self) -> ValidationReport:
        report = ValidationReport(subject=f"pointed {self.fam.name}")
        source = self.basepoint.source.shape
        if len(source.objects) != 1 or len(source.morphisms) != 1:
            report.axiom("point_shaped_source", [], "Quelle des Basispunkts ist nicht punktförmig")
        report.extend(validate_fam_morphism(self.basepoint), prefix="basepoint.")
        return report.normalized()


def pointed_at(f: FamObject, x: str, component: Optional[str] = None) -> PointedFam:
    """
    Punktiert f bei x über einen Morphismus t → F(x) aus dem terminalen Objekt.

    Raises:
        PreconditionError: x unbekannt, C ohne terminales Objekt oder kein globales Element von F(x)
    """
    if x not in f.shape.objects:
        raise PreconditionError(f"{x} ist kein Objekt der Form")
    c = f.target
    t = find_terminal(c)
    if t is None:
        raise PreconditionError(f"{c.name or 'C'} hat kein terminales Objekt")
    options = c.hom(t, f.at(x))
    if component is None:
        if not options:
            raise PreconditionError(f"Kein Morphismus {t} → {f.at(x)}")
        component = options[0]
    elif component not in options:
        raise PreconditionError(f"{component} ist kein Morphismus {t} → {f.at(x)}")
    point = sigma_embed(c, t)
    phi = FunctorData(point.shape, f.shape, {"*": x}, {point.shape.identity("*"): f.shape.identity(x)})
    return PointedFam(fam=f, basepoint=fam_morphism(point, f, phi, {"*": component}, name=f"pt@{x}"))


def pi1(p: PointedFam) -> FiniteGroup:
    """π₁((X, F), x) = Aut_X(x)."""
    return aut_group(p.fam.shape, p.point)


def pi1_homomorphism(m: FamMorphism, p: PointedFam) -> GroupHom:
    """π₁(m): π₁(f, x) → π₁(g, φ(x)) über φ auf Schleifen."""
    x = p.point
    source = aut_group(m.source.shape, x)
    target = aut_group(m.target.shape, m.phi.ob(x))
    return from_dict(source, target, {loop: m.phi.mor(loop) for loop in source.elements}, iso=False)


def connecting_morphism(shape: FiniteGroupoid, x0: str, x1: str) -> str:
    """Kanonischer Verbindungsmorphismus: Identität für x0 = x1, sonst kleinste ID in hom(x0, x1)."""
    if x0 == x1:
        return shape.identity(x0)
    options = shape.hom(x0, x1)
    if not options:
        raise PreconditionError(f"Kein Morphismus {x0} → {x1}")
    return options[0]


def basepoint_change_iso(f: FamObject, x0: str, x1: str, path: Optional[str] = None) -> GroupIso:
    """
    Isomorphismus π₁(f, x0) → π₁(f, x1), g ↦ p∘g∘p⁻¹.

    Args:
        f: Familie mit zusammenhängender Form
        x0, x1: Basispunkte
        path: Optionaler Verbindungsmorphismus x0 → x1 (Standard: connecting_morphism)

    Raises:
        PreconditionError: Form nicht zusammenhängend oder path ungeeignet
    """
    shape = f.shape
    for x in (x0, x1):
        if x not in shape.objects:
            raise PreconditionError(f"{x} ist kein Objekt der Form")
    if not is_connected(shape):
        raise PreconditionError(
            "Basispunktwechsel verlangt eine zusammenhängende Form (genau ein nicht-initialer Summand)"
        )
    p = path if path is not None else connecting_morphism(shape, x0, x1)
    if shape.morphisms.get(p) != (x0, x1):
        raise PreconditionError(f"{p} ist kein Morphismus {x0} → {x1}")
    p_inv = shape.inverses[p]
    source = aut_group(shape, x0)
    target = aut_group(shape, x1)
    mapping = {g: shape.compose(p, shape.compose(g, p_inv)) for g in source.elements}
    iso = from_dict(source, target, mapping)
    logger.debug("Basispunktwechsel %s → %s über %s", x0, x1, p)
    return iso


def path_variance_conjugator(f: FamObject, x0: str, x1: str, x2: str) -> Optional[str]:
    """
    Vergleicht den direkten Wechsel x0 → x2 mit dem Umweg über x1.

    Returns:
        Ein Element ℓ von Aut(x2) mit direkt = Konjugation(ℓ)∘Umweg, sonst None.
    """
    direct = basepoint_change_iso(f, x0, x2)
    detour = basepoint_change_iso(f, x1, x2).compose(basepoint_change_iso(f, x0, x1))
    ell = find_conjugator(direct, detour)
    return None if ell is None else direct.target.elements[ell]


# ============================================================================
# Π₁ und Kolimiten
# ============================================================================

def _supported_index(k: FiniteGroupoid) -> bool:
    discrete = all(k.is_identity(m) for m in k.morphisms)
    return discrete or len(k.objects) == 1


@dataclass(frozen=True)
class _OrbitData:
    """Bahnen von Aut_k(j) auf π₀(d(j)) und die Stabilisatorordnung pro Block."""

    orbits: int
    stabilizer: Dict[str, int]      # Objekt der Faser -> |Stab| seines Blocks


def _orbit_data(k: FiniteGroupoid, j: str, fiber: FiniteGroupoid, transports: Dict[str, FunctorData]) -> _OrbitData:
    blocks = pi0(fiber)
    block_of = {x: block for block in blocks for x in block}
    loops = k.hom(j, j)
    orbits = set()
    stabilizer: Dict[str, int] = {}
    for block in blocks:
        images = [block_of[transports[u].ob(block[0])] for u in loops]
        orbits.add(frozenset(images))
        fixed = sum(1 for image in images if image == block)
        stabilizer.update({x: fixed for x in block})
    return _OrbitData(orbits=len(orbits), stabilizer=stabilizer)


def pi1_colimit_preservation_check(
    k: FiniteGroupoid,
    d: FamDiagram,
    basepoint: Optional[str] = None,
    group_order_cap: int = 24,
    counter: Optional[BudgetCounter] = None,
) -> ColimitPreservationReport:
    """
    Vergleicht Π₁(colim d) mit Invarianten, die direkt aus den Formen des Diagramms folgen.

    Diskrete Indizes werden gegen die disjunkte Vereinigung der Formen geprüft
    (Äquivalenz und π₁ am Basispunkt). Für B(G) gilt für den Homotopiequotienten
    X//G: π₀ = Bahnen von G auf π₀(X) und |π₁(X//G, x)| = |Aut_X(x)|·|Stab_G([x])|;
    beides wird für jedes Objekt des Kolimes nachgerechnet.

    Raises:
        UnsupportedIndexError: Index weder diskret noch B(G)
    """
    if not _supported_index(k):
        raise UnsupportedIndexError("Π₁-Kolimesprüfung nur für diskrete Indizes und B(G)")
    counter = counter or unlimited()
    colimit = fam_colimit(k, d)
    total = colimit.obj.shape
    shapes = shape_diagram(d)
    discrete = all(k.is_identity(m) for m in k.morphisms)

    orbit_data = {j: _orbit_data(k, j, shapes.fibers[j], shapes.transports) for j in k.objects}
    expected_order = {}
    for obj in total.objects:
        j, x = colimit.total.pairs[obj]
        expected_order[obj] = aut_group(shapes.fibers[j], x).order * orbit_data[j].stabilizer[x]
    mismatches = sorted(obj for obj in total.objects if aut_group(total, obj).order != expected_order[obj])

    report = ColimitPreservationReport(
        index=k.name or "K",
        oracle="disjoint_union" if discrete else "orbit_stabilizer",
        colimit_objects=len(total.objects),
        shape_objects=sum(len(shapes.fibers[j].objects) for j in k.objects),
        colimit_pi0=len(pi0(total)),
        shape_pi0=sum(data.orbits for data in orbit_data.values()),
        pi1_mismatches=mismatches,
    )

    union = None
    witness = None
    if discrete:
        union = disjoint_union([shapes.fibers[j] for j in k.objects], labels=k.objects).groupoid
        witness = find_equivalence(total, union, counter)
        report.equivalent = witness is not None
        report.witness = dict(witness.object_map) if witness is not None else {}

    if basepoint is not None:
        if basepoint not in total.objects:
            raise PreconditionError(f"{basepoint} ist kein Objekt des Kolimes")
        g1 = aut_group(total, basepoint)
        report.basepoint = basepoint
        report.pi1_order = g1.order
        report.expected_pi1_order = expected_order[basepoint]
        if witness is not None:
            g2 = aut_group(union, witness.ob(basepoint))
            report.pi1_isomorphic = find_group_isomorphism(g1, g2, cap=group_order_cap, counter=counter) is not None
    logger.info("Π₁-Kolimes über %s (%s): %s", report.index, report.oracle, report.holds)
    return report

"""
Endliche Limiten in Fam(C): terminales Objekt, Produkte und Pullbacks.

Die Form ist der (Homotopie-)Limes der Formen, der Pfeil wird punktweise
als Limes in C berechnet (brute_force_limit). Fehlt in C ein benötigter
Limes, wird MissingLimitError mit der Diagrammbeschreibung geworfen.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Literal, Optional, Sequence, Tuple

from services.budget import BudgetCounter, unlimited
from services.errors import MissingLimitError, PreconditionError
from services.kernel.category import FiniteCategory, find_terminal
from services.kernel.functor import FunctorData, NatTransData
from services.kernel.groupoid import product_groupoid
from services.kernel.ids import compound_id
from services.kernel.limits import Cone, Diagram, brute_force_limit, induced_morphism, mediating_morphisms
from services.kernel.pullback import IsoCommaPullback, iso_comma_pullback

from .hom import enumerate_fam_morphisms, enumerate_two_cells
from .objects import (
    FamMorphism,
    FamObject,
    compose_fam,
    fam_morphism,
    fam_morphisms_equal,
    sigma_embed,
    sigma_on_morphism,
)

logger = logging.getLogger(__name__)

LimitKind = Literal["terminal", "product", "pullback"]


@dataclass(frozen=True)
class LimitResult:
    """Limesobjekt mit Projektionen; bei Pullbacks zusätzlich die Iso-Komma-Daten."""

    kind: str
    obj: FamObject
    projections: Tuple[FamMorphism, ...]
    cones: Dict[str, Cone] = field(default_factory=dict, repr=False)
    members: Tuple[FamObject, ...] = ()
    legs: Tuple[FamMorphism, ...] = ()
    shape_pullback: Optional[IsoCommaPullback] = field(default=None, repr=False)


def _pointwise_limit(c: FiniteCategory, d: Diagram, counter: BudgetCounter) -> Cone:
    cone = brute_force_limit(c, d, counter)
    if cone is None:
        raise MissingLimitError(d.describe())
    return cone


# ============================================================================
# Terminales Objekt
# ============================================================================

def fam_terminal(c: FiniteCategory) -> LimitResult:
    """σ(t) für ein terminales Objekt t von C."""
    t = find_terminal(c)
    if t is None:
        raise MissingLimitError(f"terminales Objekt von {c.name or 'C'}")
    obj = sigma_embed(c, t)
    return LimitResult(kind="terminal", obj=obj, projections=())


def terminal_morphism(f: FamObject, terminal: LimitResult) -> FamMorphism:
    """Der eindeutige Morphismus f → σ(t)."""
    c = f.target
    t = terminal.obj.at("*")
    shape = terminal.obj.shape
    phi = FunctorData(
        f.shape,
        shape,
        {x: "*" for x in f.shape.objects},
        {m: shape.identity("*") for m in f.shape.morphisms},
    )
    return fam_morphism(f, terminal.obj, phi, {x: c.hom(f.at(x), t)[0] for x in f.shape.objects})


# ============================================================================
# Produkte
# ============================================================================

def fam_product(fs: Sequence[FamObject], counter: Optional[BudgetCounter] = None) -> LimitResult:
    """
    Endliches Produkt von Familien.

    Die Form ist das strikte Produkt der Formen; der Pfeil an (x₁, …, xₙ)
    ist das Produkt F₁(x₁) × … × Fₙ(xₙ) in C.

    Raises:
        MissingLimitError: ein benötigtes Produkt existiert in C nicht
    """
    if not fs:
        raise PreconditionError("Leeres Produkt: verwende fam_terminal")
    counter = counter or unlimited()
    c = fs[0].target
    if any(not f.target.same_as(c) for f in fs):
        raise PreconditionError("fam_product: verschiedene Zielkategorien")
    nodes = [str(i) for i in range(len(fs))]
    shape, projections = product_groupoid([f.shape for f in fs])

    cache: Dict[Tuple[str, ...], Cone] = {}
    cones: Dict[str, Cone] = {}
    for p in shape.objects:
        values = tuple(f.at(pr.ob(p)) for f, pr in zip(fs, projections))
        if values not in cache:
            cache[values] = _pointwise_limit(c, Diagram.discrete(c, dict(zip(nodes, values))), counter)
        cones[p] = cache[values]

    morphism_map = {}
    for m, (s, t) in shape.morphisms.items():
        transition = {n: f.arrow.mor(pr.mor(m)) for n, f, pr in zip(nodes, fs, projections)}
        morphism_map[m] = induced_morphism(cones[s], cones[t], transition)
    arrow = FunctorData(shape, c, {p: cone.apex for p, cone in cones.items()}, morphism_map, name="F_×")
    obj = FamObject(shape=shape, target=c, arrow=arrow, name="×".join(f.name or "?" for f in fs))
    legs = tuple(
        fam_morphism(obj, f, pr, {p: cones[p].legs[n] for p in shape.objects}, name=f"π_{n}")
        for n, f, pr in zip(nodes, fs, projections)
    )
    logger.debug("Produkt: %d Objekte in der Form", len(shape.objects))
    return LimitResult(kind="product", obj=obj, projections=legs, cones=cones, members=tuple(fs))


def product_pairing(result: LimitResult, legs: Sequence[FamMorphism]) -> FamMorphism:
    """⟨c₁, …, cₙ⟩: Z → ∏ fᵢ für cᵢ: Z → fᵢ."""
    z = legs[0].source
    c = z.target
    nodes = [str(i) for i in range(len(legs))]
    shape = result.obj.shape
    object_map = {x: compound_id(*(leg.phi.ob(x) for leg in legs)) for x in z.shape.objects}
    morphism_map = {m: compound_id(*(leg.phi.mor(m) for leg in legs)) for m in z.shape.morphisms}
    components = {}
    for x in z.shape.objects:
        competitor = Cone(apex=z.at(x), legs={n: leg.component(x) for n, leg in zip(nodes, legs)}, diagram=result.cones[object_map[x]].diagram)
        candidates = mediating_morphisms(competitor, result.cones[object_map[x]])
        if len(candidates) != 1:
            raise PreconditionError(f"Kein eindeutiger vermittelnder Morphismus bei {x}")
        components[x] = candidates[0]
    return fam_morphism(z, result.obj, FunctorData(z.shape, shape, object_map, morphism_map), components)


# ============================================================================
# Pullbacks
# ============================================================================

def fam_pullback(left: FamMorphism, right: FamMorphism, counter: Optional[BudgetCounter] = None) -> LimitResult:
    """
    Pullback A ×_X B zweier Fam-Morphismen mit gemeinsamem Ziel.

    Form: Iso-Komma-Pullback von φ_A und φ_B. Pfeil am Tripel (a, b, φ):
    Pullback in C von F_A(a) → F_X(φ_B b) ← F_B(b), wobei der linke Pfeil
    F_X(φ)∘m_A★ und der rechte m_B★ ist.

    Raises:
        PreconditionError: verschiedene Ziele
        MissingLimitError: ein punktweiser Pullback fehlt in C
    """
    if not (left.target.shape.same_as(right.target.shape) and left.target.arrow.same_maps(right.target.arrow)):
        raise PreconditionError("fam_pullback: die Morphismen haben verschiedene Ziele")
    counter = counter or unlimited()
    a, b, x = left.source, right.source, left.target
    c = x.target
    square = iso_comma_pullback(left.phi, right.phi)
    shape = square.groupoid

    cones: Dict[str, Cone] = {}
    for z, (oa, ob, phi) in square.triples.items():
        d = Diagram(
            category=c,
            nodes=("left", "apex", "right"),
            arrows={"f": ("left", "apex"), "g": ("right", "apex")},
            objects={"left": a.at(oa), "apex": x.at(right.phi.ob(ob)), "right": b.at(ob)},
            morphisms={
                "f": c.compose(x.arrow.mor(phi), left.component(oa)),
                "g": right.component(ob),
            },
        )
        cones[z] = _pointwise_limit(c, d, counter)

    morphism_map = {}
    for m, (src, alpha, beta) in square.pairs.items():
        tgt = shape.target(m)
        transition = {
            "left": a.arrow.mor(alpha),
            "apex": x.arrow.mor(right.phi.mor(beta)),
            "right": b.arrow.mor(beta),
        }
        morphism_map[m] = induced_morphism(cones[src], cones[tgt], transition)
    arrow = FunctorData(shape, c, {z: cone.apex for z, cone in cones.items()}, morphism_map, name="F_×_X")
    obj = FamObject(shape=shape, target=c, arrow=arrow, name=f"{a.name or 'A'}×_{x.name or 'X'}{b.name or 'B'}")
    p_left = fam_morphism(obj, a, square.left, {z: cones[z].legs["left"] for z in shape.objects}, name="p_A")
    p_right = fam_morphism(obj, b, square.right, {z: cones[z].legs["right"] for z in shape.objects}, name="p_B")
    logger.debug("Pullback: %d Tripel", len(square.triples))
    return LimitResult(
        kind="pullback",
        obj=obj,
        projections=(p_left, p_right),
        cones=cones,
        members=(a, b),
        legs=(left, right),
        shape_pullback=square,
    )


def fam_limit(
    kind: LimitKind,
    c: Optional[FiniteCategory] = None,
    members: Sequence[FamObject] = (),
    legs: Sequence[FamMorphism] = (),
    counter: Optional[BudgetCounter] = None,
) -> LimitResult:
    """
    Einheitlicher Einstieg für die unterstützten Limesformen.

    Args:
        kind: "terminal", "product" oder "pullback"
        c: Zielkategorie (für terminal)
        members: Faktoren (für product)
        legs: zwei Morphismen mit gemeinsamem Ziel (für pullback)
    """
    match kind:
        case "terminal":
            if c is None:
                raise PreconditionError("terminal braucht die Zielkategorie")
            return fam_terminal(c)
        case "product":
            return fam_product(members, counter)
        case "pullback":
            if len(legs) != 2:
                raise PreconditionError("pullback braucht genau zwei Morphismen")
            return fam_pullback(legs[0], legs[1], counter)
        case _:
            raise PreconditionError(f"Nicht unterstützte Limesform: {kind}")


# ============================================================================
# Universelle Eigenschaft
# ============================================================================

@dataclass(frozen=True)
class PseudoCone:
    """Kegel über einem Kospan: Beine c_A, c_B und 2-Zelle θ: m_A∘c_A ⇒ m_B∘c_B."""

    left: FamMorphism
    right: FamMorphism
    cell: NatTransData


def enumerate_pullback_cones(result: LimitResult, z: FamObject, counter: Optional[BudgetCounter] = None) -> Iterator[PseudoCone]:
    counter = counter or unlimited()
    m_left, m_right = result.legs
    a, b = result.members
    for c_left in enumerate_fam_morphisms(z, a, counter):
        first = compose_fam(m_left, c_left)
        for c_right in enumerate_fam_morphisms(z, b, counter):
            second = compose_fam(m_right, c_right)
            for theta in enumerate_two_cells(first, second, counter):
                yield PseudoCone(left=c_left, right=c_right, cell=theta)


def count_pullback_factorizations(result: LimitResult, cone: PseudoCone, counter: Optional[BudgetCounter] = None) -> int:
    """Anzahl der m mit p_A∘m = c_A, p_B∘m = c_B und φ-Eintrag von m(z) gleich θ_z."""
    p_left, p_right = result.projections
    square = result.shape_pullback
    count = 0
    for m in enumerate_fam_morphisms(cone.left.source, result.obj, counter):
        if not fam_morphisms_equal(compose_fam(p_left, m), cone.left):
            continue
        if not fam_morphisms_equal(compose_fam(p_right, m), cone.right):
            continue
        if all(square.triples[m.phi.ob(z)][2] == cone.cell.at(z) for z in cone.left.source.shape.objects):
            count += 1
    return count


def count_product_factorizations(result: LimitResult, legs: Sequence[FamMorphism], counter: Optional[BudgetCounter] = None) -> int:
    z = legs[0].source
    return sum(
        1
        for m in enumerate_fam_morphisms(z, result.obj, counter)
        if all(fam_morphisms_equal(compose_fam(p, m), leg) for p, leg in zip(result.projections, legs))
    )


@dataclass
class LimitUniversality:
    competitors: int = 0
    unique: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures and self.unique == self.competitors

    def record(self, label: str, n: int) -> None:
        self.competitors += 1
        if n == 1:
            self.unique += 1
        else:
            self.failures.append(f"{label}: {n} Faktorisierungen")


def verify_limit_universality(
    result: LimitResult,
    test_objects: Sequence[FamObject],
    counter: Optional[BudgetCounter] = None,
) -> LimitUniversality:
    """Jeder konkurrierende Kegel aus einem Testobjekt faktorisiert eindeutig."""
    counter = counter or unlimited()
    report = LimitUniversality()
    for z in test_objects:
        label = z.name or "Z"
        match result.kind:
            case "terminal":
                report.record(label, sum(1 for _ in enumerate_fam_morphisms(z, result.obj, counter)))
            case "product":
                options = [list(enumerate_fam_morphisms(z, f, counter)) for f in result.members]
                for legs in itertools.product(*options):
                    report.record(label, count_product_factorizations(result, legs, counter))
            case "pullback":
                for cone in enumerate_pullback_cones(result, z, counter):
                    report.record(label, count_pullback_factorizations(result, cone, counter))
    return report


# ============================================================================
# Linksexaktheit von σ
# ============================================================================

@dataclass
class LeftExactnessReport:
    terminal: Optional[bool] = None
    products: Dict[str, bool] = field(default_factory=dict)
    pullbacks: Dict[str, bool] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        checks = list(self.products.values()) + list(self.pullbacks.values())
        if self.terminal is not None:
            checks.append(self.terminal)
        return all(checks)


def _is_point_family_at(f: FamObject, obj: str) -> bool:
    return len(f.shape.objects) == 1 and len(f.shape.morphisms) == 1 and f.at(f.shape.objects[0]) == obj


def sigma_left_exactness_check(c: FiniteCategory, counter: Optional[BudgetCounter] = None) -> LeftExactnessReport:
    """
    σ erhält vorhandene Limiten: σ(t) ist terminal, σ(a)×σ(b) ist σ(a×b),
    σ(a)×_{σ(x)}σ(b) ist σ(a×_x b). Geprüft für alle Paare bzw. Kospane
    von C, deren Limes in C existiert.
    """
    counter = counter or unlimited()
    report = LeftExactnessReport()
    t = find_terminal(c)
    if t is not None:
        terminal = fam_terminal(c)
        report.terminal = _is_point_family_at(terminal.obj, t)
    for a, b in itertools.combinations_with_replacement(c.objects, 2):
        cone = brute_force_limit(c, Diagram.discrete(c, {"0": a, "1": b}), counter)
        if cone is None:
            continue
        product = fam_product([sigma_embed(c, a), sigma_embed(c, b)], counter)
        report.products[f"{a}×{b}"] = _is_point_family_at(product.obj, cone.apex)
    for f in sorted(c.morphisms):
        for g in sorted(c.morphisms):
            if c.target(f) != c.target(g) or g < f:
                continue
            cone = brute_force_limit(c, Diagram.cospan(c, f, g), counter)
            if cone is None:
                continue
            pullback = fam_pullback(sigma_on_morphism(c, f), sigma_on_morphism(c, g), counter)
            report.pullbacks[f"{f},{g}"] = _is_point_family_at(pullback.obj, cone.apex)
    logger.debug("Linksexaktheit von σ über %s: %s", c.name, report.holds)
    return report

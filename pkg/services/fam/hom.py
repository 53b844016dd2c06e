"""
Aufzählung von Hom-Mengen in Fam(C), 2-Zellen zwischen Fam-Morphismen
und Hom-Mengen in Slice-Kategorien.
"""

import logging
from typing import Iterator, List, Optional

from services.budget import BudgetCounter, unlimited
from services.errors import PreconditionError
from services.kernel.functor import NatTransData, compose_functors, enumerate_functors, enumerate_nat_trans

from .objects import FamMorphism, FamObject, compose_fam, fam_morphisms_equal

logger = logging.getLogger(__name__)


def enumerate_fam_morphisms(
    source: FamObject,
    target: FamObject,
    counter: Optional[BudgetCounter] = None,
) -> Iterator[FamMorphism]:
    """Alle (φ, φ★): source → target, deterministisch sortiert."""
    if not source.target.same_as(target.target):
        raise PreconditionError("Hom in Fam(C): verschiedene Zielkategorien")
    counter = counter or unlimited()
    for phi in enumerate_functors(source.shape, target.shape, counter):
        pulled = compose_functors(target.arrow, phi)
        for theta in enumerate_nat_trans(source.arrow, pulled, counter):
            yield FamMorphism(source=source, target=target, phi=phi, phi_star=theta)


def fam_hom(source: FamObject, target: FamObject, counter: Optional[BudgetCounter] = None) -> List[FamMorphism]:
    return list(enumerate_fam_morphisms(source, target, counter))


def count_fam_morphisms(source: FamObject, target: FamObject, counter: Optional[BudgetCounter] = None) -> int:
    return sum(1 for _ in enumerate_fam_morphisms(source, target, counter))


def enumerate_two_cells(
    first: FamMorphism,
    second: FamMorphism,
    counter: Optional[BudgetCounter] = None,
) -> Iterator[NatTransData]:
    """
    2-Zellen θ: first ⇒ second zwischen parallelen Fam-Morphismen Y → X.

    θ ist eine natürliche Transformation φ₁ ⇒ φ₂ in der Form von X mit
    second★_y = F_X(θ_y)∘first★_y.
    """
    c = first.source.target
    arrow = first.target.arrow
    for theta in enumerate_nat_trans(first.phi, second.phi, counter):
        if all(
            c.composition.get((arrow.mor(theta.at(y)), first.component(y))) == second.component(y)
            for y in first.source.shape.objects
        ):
            yield theta


def slice_hom(
    a: FamMorphism,
    b: FamMorphism,
    counter: Optional[BudgetCounter] = None,
) -> List[FamMorphism]:
    """Hom in Fam(C)/c: alle h mit b∘h = a (kommutierende Dreiecke, komponentenweise)."""
    counter = counter or unlimited()
    result = []
    for h in enumerate_fam_morphisms(a.source, b.source, counter):
        if fam_morphisms_equal(compose_fam(b, h), a):
            result.append(h)
    return result

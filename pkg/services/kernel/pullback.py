"""
Homotopie-Pullback von Gruppoiden als Iso-Komma-Konstruktion.

Objekte sind Tripel (a, b, φ) mit φ: f(a) → g(b); ein Morphismus ist durch
sein Quellobjekt und das Paar (α, β) eindeutig bestimmt, das Ziel ergibt
sich als φ′ = g(β)∘φ∘f(α)⁻¹.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from services.errors import BudgetExceeded, PreconditionError

from .functor import FunctorData, NatTransData, compose_functors
from .groupoid import FiniteGroupoid
from .ids import compound_id

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IsoCommaPullback:
    """Ergebnis: Gruppoid, beide Projektionen und die tautologische Transformation f∘p_A ⇒ g∘p_B."""

    groupoid: FiniteGroupoid
    left: FunctorData
    right: FunctorData
    witness: NatTransData
    triples: Dict[str, Tuple[str, str, str]]         # Objekt -> (a, b, φ)
    pairs: Dict[str, Tuple[str, str, str]]           # Morphismus -> (Quellobjekt, α, β)


def iso_comma_pullback(
    f: FunctorData,
    g: FunctorData,
    max_objects: Optional[int] = None,
) -> IsoCommaPullback:
    """
    Berechnet A ×_C B als Iso-Komma-Gruppoid.

    Args:
        f: Funktor A → C
        g: Funktor B → C
        max_objects: Optionale Obergrenze für die Objektzahl

    Raises:
        PreconditionError: Zielkategorien verschieden oder keine Gruppoide
        BudgetExceeded: Objektzahl über max_objects
    """
    if not f.target.same_as(g.target):
        raise PreconditionError("iso_comma_pullback: verschiedene Zielkategorien")
    a_cat, b_cat, c_cat = f.source, g.source, f.target
    for cat in (a_cat, b_cat, c_cat):
        if not isinstance(cat, FiniteGroupoid):
            raise PreconditionError(f"{cat.name or 'Kategorie'} ist kein Gruppoid")

    triples: Dict[str, Tuple[str, str, str]] = {}
    for a in a_cat.objects:
        for b in b_cat.objects:
            for phi in c_cat.hom(f.ob(a), g.ob(b)):
                triples[compound_id(a, b, phi)] = (a, b, phi)
    if max_objects is not None and len(triples) > max_objects:
        raise BudgetExceeded("iso_comma objects", max_objects)

    morphisms: Dict[str, Tuple[str, str]] = {}
    pairs: Dict[str, Tuple[str, str, str]] = {}
    for obj, (a, b, phi) in triples.items():
        for alpha in a_cat.out_of(a):
            f_alpha_inv = c_cat.inverses[f.mor(alpha)]
            for beta in b_cat.out_of(b):
                phi_new = c_cat.compose(g.mor(beta), c_cat.compose(phi, f_alpha_inv))
                tgt = compound_id(a_cat.target(alpha), b_cat.target(beta), phi_new)
                mid = compound_id(obj, alpha, beta)
                morphisms[mid] = (obj, tgt)
                pairs[mid] = (obj, alpha, beta)

    outgoing: Dict[str, list] = {}
    for mid, (src, _) in morphisms.items():
        outgoing.setdefault(src, []).append(mid)

    composition: Dict[Tuple[str, str], str] = {}
    inverses: Dict[str, str] = {}
    for m1, (src, alpha, beta) in pairs.items():
        tgt = morphisms[m1][1]
        for m2 in outgoing.get(tgt, ()):
            _, alpha2, beta2 = pairs[m2]
            composition[(m2, m1)] = compound_id(src, a_cat.compose(alpha2, alpha), b_cat.compose(beta2, beta))
        inverses[m1] = compound_id(tgt, a_cat.inverses[alpha], b_cat.inverses[beta])

    identities = {
        obj: compound_id(obj, a_cat.identity(a), b_cat.identity(b)) for obj, (a, b, _) in triples.items()
    }
    pullback = FiniteGroupoid(
        objects=tuple(sorted(triples)),
        morphisms=morphisms,
        identities=identities,
        composition=composition,
        name=f"{a_cat.name}×_{c_cat.name}{b_cat.name}",
        inverses=inverses,
    )
    left = FunctorData(
        source=pullback,
        target=a_cat,
        object_map={o: t[0] for o, t in triples.items()},
        morphism_map={m: p[1] for m, p in pairs.items()},
        name="p_A",
    )
    right = FunctorData(
        source=pullback,
        target=b_cat,
        object_map={o: t[1] for o, t in triples.items()},
        morphism_map={m: p[2] for m, p in pairs.items()},
        name="p_B",
    )
    witness = NatTransData(
        source_functor=compose_functors(f, left),
        target_functor=compose_functors(g, right),
        components={o: t[2] for o, t in triples.items()},
    )
    logger.debug("Iso-Komma: %d Objekte, %d Morphismen", len(triples), len(morphisms))
    return IsoCommaPullback(pullback, left, right, witness, triples, pairs)

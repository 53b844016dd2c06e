"""
Effektive Epimorphismen von Gruppoiden über das π₀-Kriterium.

f: X → Y ist genau dann effektiv epimorph, wenn π₀(f) surjektiv ist.
Blöcke werden im Zeugnis durch ihren kleinsten Bezeichner repräsentiert.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

from services.errors import PreconditionError

from .functor import FunctorData, identity_functor
from .groupoid import FiniteGroupoid, coproduct_functor, disjoint_union, pi0

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EpiVerdict:
    """Urteil mit Zeugnis: Blockabbildung (wahr) oder nicht getroffene Blöcke (falsch)."""

    holds: bool
    block_map: Dict[str, str] = field(default_factory=dict)
    unhit_blocks: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.holds

    def witness(self) -> dict:
        if self.holds:
            return {"block_map": dict(sorted(self.block_map.items()))}
        return {"unhit_block": self.unhit_blocks[0], "unhit_blocks": list(self.unhit_blocks)}


def is_effective_epi(f: FunctorData) -> EpiVerdict:
    """π₀(f) surjektiv?"""
    return jointly_effective([f])


def jointly_effective(members: Sequence[FunctorData], codomain=None) -> EpiVerdict:
    """
    Gemeinsame π₀-Surjektivität einer Familie fᵢ: Xᵢ → Y.

    Äquivalent zur Surjektivität von π₀(∐ fᵢ) und ohne Koproduktbildung berechnet.

    Raises:
        PreconditionError: leere Familie ohne angegebenes Ziel
    """
    if codomain is None and not members:
        raise PreconditionError("Leere Familie: das Ziel muss angegeben werden")
    target = codomain if codomain is not None else members[0].target
    target_blocks = pi0(target)
    representative = {x: block[0] for block in target_blocks for x in block}
    block_map: Dict[str, str] = {}
    hit = set()
    for i, f in enumerate(members):
        for block in pi0(f.source):
            image = representative[f.ob(block[0])]
            key = block[0] if len(members) == 1 else f"{i}:{block[0]}"
            block_map[key] = image
            hit.add(image)
    unhit = tuple(block[0] for block in target_blocks if block[0] not in hit)
    verdict = EpiVerdict(holds=not unhit, block_map=block_map, unhit_blocks=unhit)
    logger.debug("π₀-Surjektivität: %s (nicht getroffen: %s)", verdict.holds, list(unhit))
    return verdict


def coproduct_with(f: FunctorData, z: FiniteGroupoid) -> FunctorData:
    """Bild von f unter dem kostetigen Endofunktor W ↦ W ⊔ Z."""
    source = disjoint_union([f.source, z], labels=("W", "Z"))
    target = disjoint_union([f.target, z], labels=("W", "Z"))
    return coproduct_functor(source, target, [f, identity_functor(z)])


def effective_epi_stable_under_coproduct(f: FunctorData, z: FiniteGroupoid) -> bool:
    """Ist f effektiv epimorph, so auch f ⊔ id_Z (Implikation, nicht Äquivalenz)."""
    if not is_effective_epi(f):
        return True
    return bool(is_effective_epi(coproduct_with(f, z)))

"""
Dokumente für Kategorien, Gruppoide und Funktoren.

Kompositionstabellen sind Tripel [f, g, g∘f], Inverse Paare [f, f⁻¹].
"""

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from services.kernel.category import FiniteCategory, build_category, collect_table
from services.kernel.functor import FunctorData
from services.kernel.groupoid import FiniteGroupoid

from .base import BaseDocument, MapData, Resolver

CATEGORY_KINDS = ("category", "groupoid")


class MorphismEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    source: str
    target: str


class CategoryDocument(BaseDocument):
    """Endliche Kategorie mit expliziter Kompositionstabelle."""

    kind: Literal["category"] = "category"
    objects: List[str]
    morphisms: List[MorphismEntry]
    identities: Dict[str, str]
    composition: List[Tuple[str, str, str]] = Field(default_factory=list, description="Tripel [f, g, g∘f]")

    def _tables(self):
        morphisms, endpoint_clash = collect_table((m.id, (m.source, m.target)) for m in self.morphisms)
        composition, composite_clash = collect_table(((g, f), gf) for f, g, gf in self.composition)
        conflicts = [
            ("morphism_conflict", (m,), f"{m} mit mehreren Endpunkten: {ends}")
            for m, ends in endpoint_clash.items()
        ]
        conflicts += [
            ("composition_conflict", (f, g), f"{g}∘{f} mehrdeutig eingetragen: {', '.join(values)}")
            for (g, f), values in composite_clash.items()
        ]
        return morphisms, composition, conflicts

    def to_kernel(self, resolve: Resolver) -> FiniteCategory:
        morphisms, composition, conflicts = self._tables()
        return build_category(self.objects, morphisms, self.identities, composition, name=self.name, conflicts=conflicts)

    @classmethod
    def from_kernel(cls, c: FiniteCategory, name: Optional[str] = None) -> "CategoryDocument":
        return cls(name=name or c.name or "category", **_dump_tables(c))


class GroupoidDocument(CategoryDocument):
    """Gruppoid; fehlen die Inversen, werden sie aus der Kompositionstabelle bestimmt."""

    kind: Literal["groupoid"] = "groupoid"
    inverses: Optional[List[Tuple[str, str]]] = Field(None, description="Paare [f, f⁻¹]")

    def to_kernel(self, resolve: Resolver) -> FiniteGroupoid:
        c = super().to_kernel(resolve)
        conflicts = list(c.conflicts)
        if self.inverses is None:
            # nicht invertierbare Morphismen meldet validate_groupoid als missing_inverse
            inverses = {f: g for f in sorted(c.morphisms) if (g := c.inverse_of(f)) is not None}
        else:
            inverses, clash = collect_table(self.inverses)
            conflicts += [
                ("inverse_conflict", (f,), f"{f} mit mehreren Inversen: {', '.join(values)}")
                for f, values in clash.items()
            ]
        return FiniteGroupoid(
            objects=c.objects,
            morphisms=c.morphisms,
            identities=c.identities,
            composition=c.composition,
            name=c.name,
            inverses=inverses,
            conflicts=tuple(sorted(conflicts)),
        )

    @classmethod
    def from_kernel(cls, g: FiniteGroupoid, name: Optional[str] = None) -> "GroupoidDocument":
        return cls(
            name=name or g.name or "groupoid",
            inverses=sorted(g.inverses.items()),
            **_dump_tables(g),
        )


def _dump_tables(c: FiniteCategory) -> dict:
    return {
        "objects": list(c.objects),
        "morphisms": [MorphismEntry(id=m, source=s, target=t) for m, (s, t) in sorted(c.morphisms.items())],
        "identities": dict(sorted(c.identities.items())),
        "composition": sorted((f, g, gf) for (g, f), gf in c.composition.items()),
    }


class FunctorDocument(BaseDocument):
    """Funktor zwischen zwei benannten Kategorien oder Gruppoiden."""

    kind: Literal["functor"] = "functor"
    source: str
    target: str
    maps: MapData

    def references(self) -> List[str]:
        return [self.source, self.target]

    def to_kernel(self, resolve: Resolver) -> FunctorData:
        return FunctorData(
            source=resolve(self.source, CATEGORY_KINDS),
            target=resolve(self.target, CATEGORY_KINDS),
            object_map=dict(self.maps.object_map),
            morphism_map=dict(self.maps.morphism_map),
            name=self.name,
        )

    @classmethod
    def from_kernel(cls, f: FunctorData, source: str, target: str, name: Optional[str] = None) -> "FunctorDocument":
        return cls(
            name=name or f.name or "functor",
            source=source,
            target=target,
            maps=MapData(object_map=dict(sorted(f.object_map.items())), morphism_map=dict(sorted(f.morphism_map.items()))),
        )

"""
Dokumente für Fam(C): Familien, Fam-Morphismen, Diagramme und Überdeckungen.
"""

from typing import Dict, List, Literal, Optional

from pydantic import Field

from services.fam.colimit import FamDiagram
from services.fam.objects import FamMorphism, FamObject, fam_morphism, fam_object
from services.kernel.functor import FunctorData
from services.site import CoveringFamily

from .base import BaseDocument, MapData, Resolver
from .structures import CATEGORY_KINDS


class FamDocument(BaseDocument):
    """Familie (X, F): Form X (Gruppoid) und Pfeil F: X → C."""

    kind: Literal["fam"] = "fam"
    shape: str = Field(..., description="Name eines groupoid-Dokuments")
    target: str = Field(..., description="Name der Zielkategorie C")
    arrow: MapData

    def references(self) -> List[str]:
        return [self.shape, self.target]

    def to_kernel(self, resolve: Resolver) -> FamObject:
        return fam_object(
            resolve(self.shape, ("groupoid",)),
            resolve(self.target, CATEGORY_KINDS),
            self.arrow.object_map,
            self.arrow.morphism_map,
            name=self.name,
        )

    @classmethod
    def from_kernel(cls, f: FamObject, shape: str, target: str, name: Optional[str] = None) -> "FamDocument":
        return cls(
            name=name or f.name or "fam",
            shape=shape,
            target=target,
            arrow=MapData(
                object_map=dict(sorted(f.arrow.object_map.items())),
                morphism_map=dict(sorted(f.arrow.morphism_map.items())),
            ),
        )


class FamMorphismDocument(BaseDocument):
    """(φ, φ★): Formabbildung plus Komponenten F₁(x) → F₂(φx)."""

    kind: Literal["fam_morphism"] = "fam_morphism"
    source: str
    target: str
    phi: MapData
    components: Dict[str, str] = Field(default_factory=dict)

    def references(self) -> List[str]:
        return [self.source, self.target]

    def to_kernel(self, resolve: Resolver) -> FamMorphism:
        source: FamObject = resolve(self.source, ("fam",))
        target: FamObject = resolve(self.target, ("fam",))
        phi = FunctorData(
            source=source.shape,
            target=target.shape,
            object_map=dict(self.phi.object_map),
            morphism_map=dict(self.phi.morphism_map),
            name=f"φ_{self.name}",
        )
        return fam_morphism(source, target, phi, self.components, name=self.name)


class FamDiagramDocument(BaseDocument):
    """Diagramm K → Fam(C) über einem Indexgruppoid K."""

    kind: Literal["fam_diagram"] = "fam_diagram"
    index: str
    values: Dict[str, str] = Field(..., description="Objekt von K -> Name eines fam-Dokuments")
    maps: Dict[str, str] = Field(..., description="Morphismus von K -> Name eines fam_morphism-Dokuments")

    def references(self) -> List[str]:
        return [self.index, *self.values.values(), *self.maps.values()]

    def to_kernel(self, resolve: Resolver) -> FamDiagram:
        return FamDiagram(
            index=resolve(self.index, CATEGORY_KINDS),
            values={j: resolve(ref, ("fam",)) for j, ref in self.values.items()},
            maps={u: resolve(ref, ("fam_morphism",)) for u, ref in self.maps.items()},
            name=self.name,
        )


class CoverDocument(BaseDocument):
    """Kandidat für eine Überdeckungsfamilie {Uᵢ → X}."""

    kind: Literal["cover"] = "cover"
    codomain: str
    members: List[str] = Field(default_factory=list)

    def references(self) -> List[str]:
        return [self.codomain, *self.members]

    def to_kernel(self, resolve: Resolver) -> CoveringFamily:
        return CoveringFamily(
            codomain=resolve(self.codomain, ("fam",)),
            members=tuple(resolve(ref, ("fam_morphism",)) for ref in self.members),
            name=self.name,
        )

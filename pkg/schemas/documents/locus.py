"""Dokumente für Retraktionsdiagramme und Familien punktierter Mengen."""

from typing import Dict, List, Literal

from pydantic import Field

from services.locus import PointedSetFamily, RetractionDiagram

from .base import BaseDocument, Resolver


class RetractionDocument(BaseDocument):
    """X[0] ⇄ X[1] mit r∘s = id."""

    kind: Literal["retraction"] = "retraction"
    base: List[str]
    total: List[str]
    s: Dict[str, str]
    r: Dict[str, str]

    def to_kernel(self, resolve: Resolver) -> RetractionDiagram:
        return RetractionDiagram(
            base=tuple(self.base),
            total=tuple(self.total),
            s=dict(self.s),
            r=dict(self.r),
            name=self.name,
        )

    @classmethod
    def from_kernel(cls, x: RetractionDiagram, name: str = "") -> "RetractionDocument":
        return cls(
            name=name or x.name or "retraction",
            base=list(x.base),
            total=list(x.total),
            s=dict(sorted(x.s.items())),
            r=dict(sorted(x.r.items())),
        )


class PointedFamilyDocument(BaseDocument):
    kind: Literal["pointed_family"] = "pointed_family"
    indices: List[str]
    carriers: Dict[str, List[str]]
    basepoints: Dict[str, str] = Field(default_factory=dict)

    def to_kernel(self, resolve: Resolver) -> PointedSetFamily:
        return PointedSetFamily(
            indices=tuple(self.indices),
            carriers={i: tuple(c) for i, c in self.carriers.items()},
            basepoints=dict(self.basepoints),
            name=self.name,
        )

    @classmethod
    def from_kernel(cls, fam: PointedSetFamily, name: str = "") -> "PointedFamilyDocument":
        return cls(
            name=name or fam.name or "pointed_family",
            indices=list(fam.indices),
            carriers={i: list(c) for i, c in fam.carriers.items()},
            basepoints=dict(fam.basepoints),
        )

"""
Austauschformat: ein JSON-Dokument oder ein Bündel von Dokumenten.

Die Art wird über das Feld `kind` unterschieden.
"""

from typing import Annotated, List, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter

from .base import SCHEMA_VERSION, BaseDocument, MapData, Resolver
from .fam import CoverDocument, FamDiagramDocument, FamDocument, FamMorphismDocument
from .locus import PointedFamilyDocument, RetractionDocument
from .structures import CATEGORY_KINDS, CategoryDocument, FunctorDocument, GroupoidDocument, MorphismEntry

Document = Annotated[
    Union[
        CategoryDocument,
        GroupoidDocument,
        FunctorDocument,
        FamDocument,
        FamMorphismDocument,
        FamDiagramDocument,
        CoverDocument,
        RetractionDocument,
        PointedFamilyDocument,
    ],
    Field(discriminator="kind"),
]

DOCUMENT_ADAPTER: TypeAdapter = TypeAdapter(Document)


class DocumentBundle(BaseModel):
    """Mehrere Dokumente in einer Datei; Verweise dürfen in beliebiger Reihenfolge stehen."""

    model_config = ConfigDict(extra="forbid")

    schema_version: int = SCHEMA_VERSION
    documents: List[Document] = Field(default_factory=list)


__all__ = [
    "SCHEMA_VERSION",
    "BaseDocument",
    "MapData",
    "Resolver",
    "MorphismEntry",
    "CATEGORY_KINDS",
    "CategoryDocument",
    "GroupoidDocument",
    "FunctorDocument",
    "FamDocument",
    "FamMorphismDocument",
    "FamDiagramDocument",
    "CoverDocument",
    "RetractionDocument",
    "PointedFamilyDocument",
    "Document",
    "DOCUMENT_ADAPTER",
    "DocumentBundle",
]

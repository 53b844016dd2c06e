"""
Basis für alle Austauschdokumente.

Jedes Dokument trägt `kind` (Diskriminator), einen eindeutigen `name`
und optional `schema_version`. Querverweise erfolgen über Namen und werden
beim Laden im Workspace aufgelöst.
"""

from abc import ABC, abstractmethod
from typing import Any, Callable, ClassVar, List, Optional

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = 1

# resolve(name, erwartete Arten) -> bereits gebautes Kernel-Objekt
Resolver = Callable[[str, tuple], Any]


class BaseDocument(BaseModel, ABC):
    """Gemeinsame Felder aller Dokumente."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    name: str = Field(..., min_length=1, description="Eindeutiger Name im Workspace")
    schema_version: int = Field(SCHEMA_VERSION, description="Version des Austauschformats")
    description: Optional[str] = Field(None, description="Freitext")

    KIND_LABEL: ClassVar[str] = ""

    def references(self) -> List[str]:
        """Namen anderer Dokumente, die vor diesem gebaut sein müssen."""
        return []

    @abstractmethod
    def to_kernel(self, resolve: Resolver) -> Any:
        """Baut das Kernel-Objekt; Verweise werden über resolve aufgelöst."""


class MapData(BaseModel):
    """Objekt- und Morphismenabbildung eines Funktors."""

    model_config = ConfigDict(extra="forbid")

    object_map: dict[str, str] = Field(default_factory=dict)
    morphism_map: dict[str, str] = Field(default_factory=dict)

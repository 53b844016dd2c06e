"""
Workspace - Zentraler Speicher aller geladenen Dokumente.

Dieses Modul bietet:
- Workspace: benannte Einträge (Kategorien, Gruppoide, Funktoren, Familien, ...)
- load_and_validate: liest eine JSON-Datei, baut die Kernel-Objekte, validiert
- load_workspace: lädt mehrere Dateien in einen gemeinsamen Workspace

Querverweise zwischen Dokumenten werden über Namen aufgelöst; die
Reihenfolge in den Dateien spielt keine Rolle. Nach dem Laden wird der
Workspace nicht mehr verändert.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Type, Union

from pydantic import ValidationError

from schemas.documents import (
    DOCUMENT_ADAPTER,
    BaseDocument,
    CategoryDocument,
    CoverDocument,
    DocumentBundle,
    FamDiagramDocument,
    FamDocument,
    FamMorphismDocument,
    FunctorDocument,
    GroupoidDocument,
    PointedFamilyDocument,
    RetractionDocument,
)
from schemas.reports import ValidationReport
from services.errors import DocumentError, FamCatError
from services.fam.colimit import validate_fam_diagram
from services.fam.objects import validate_fam_morphism, validate_fam_object
from services.kernel.category import validate_category
from services.kernel.functor import validate_functor
from services.kernel.groupoid import validate_groupoid

logger = logging.getLogger(__name__)


# Registry: kind -> Dokumentklasse
# Neue Arten brauchen nur einen Eintrag hier und einen Validator
DOCUMENT_REGISTRY: Dict[str, Type[BaseDocument]] = {
    "category": CategoryDocument,
    "groupoid": GroupoidDocument,
    "functor": FunctorDocument,
    "fam": FamDocument,
    "fam_morphism": FamMorphismDocument,
    "fam_diagram": FamDiagramDocument,
    "cover": CoverDocument,
    "retraction": RetractionDocument,
    "pointed_family": PointedFamilyDocument,
}

VALIDATORS: Dict[str, Callable[[Any], ValidationReport]] = {
    "category": validate_category,
    "groupoid": validate_groupoid,
    "functor": validate_functor,
    "fam": validate_fam_object,
    "fam_morphism": validate_fam_morphism,
    "fam_diagram": validate_fam_diagram,
    "cover": lambda c: c.validate(),
    "retraction": lambda x: x.validate(),
    "pointed_family": lambda p: p.validate(),
}


@dataclass(frozen=True)
class WorkspaceEntry:
    """Ein geladenes Dokument samt Kernel-Objekt und Validierungsbericht."""

    name: str
    kind: str
    document: BaseDocument
    value: Any
    report: ValidationReport
    path: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.report.ok


@dataclass
class Workspace:
    """Benannter Speicher; alle Querverweise sind aufgelöst."""

    entries: Dict[str, WorkspaceEntry] = field(default_factory=dict)

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def entry(self, name: str, kinds: Optional[Sequence[str]] = None) -> WorkspaceEntry:
        """
        Holt einen Eintrag; prüft optional die Art.

        Raises:
            DocumentError: Name unbekannt oder falsche Art
        """
        found = self.entries.get(name)
        if found is None:
            raise DocumentError(f"Unaufgelöste Referenz: {name!r}", location=name)
        if kinds and found.kind not in kinds:
            raise DocumentError(f"{name!r} ist vom Typ {found.kind}, erwartet: {', '.join(kinds)}", location=name)
        return found

    def get(self, name: str, kinds: Optional[Sequence[str]] = None) -> Any:
        return self.entry(name, kinds).value

    def names(self, kind: Optional[str] = None) -> List[str]:
        return sorted(n for n, e in self.entries.items() if kind is None or e.kind == kind)

    def invalid(self) -> List[WorkspaceEntry]:
        return [e for _, e in sorted(self.entries.items()) if not e.ok]

    def add_documents(
        self,
        documents: Iterable[Tuple[BaseDocument, Optional[str]]],
        strict: bool = True,
    ) -> List[WorkspaceEntry]:
        """
        Registriert Dokumente in Abhängigkeitsreihenfolge.

        Args:
            documents: Paare (Dokument, Quellpfad)
            strict: Bei True führt jede Validierungsverletzung zu DocumentError

        Returns:
            Die neu registrierten Einträge in Bau-Reihenfolge

        Raises:
            DocumentError: doppelte Namen, unaufgelöste oder zyklische Referenzen,
                Validierungsfehler (nur strict)
        """
        pending: Dict[str, Tuple[BaseDocument, Optional[str]]] = {}
        for doc, path in documents:
            if doc.name in self.entries or doc.name in pending:
                raise DocumentError(f"Doppelter Name {doc.name!r}", location=path)
            pending[doc.name] = (doc, path)

        for name, (doc, path) in pending.items():
            for ref in doc.references():
                if ref not in pending and ref not in self.entries:
                    raise DocumentError(f"Unaufgelöste Referenz {ref!r} in {name!r}", location=path)

        added: List[WorkspaceEntry] = []
        for name in _build_order(pending):
            doc, path = pending[name]
            entry = self._build(doc, path)
            if strict and not entry.ok:
                first = entry.report.violations[0]
                raise DocumentError(
                    f"{name!r} verletzt {first.rule} bei [{', '.join(first.instance)}]: {first.message}",
                    location=path,
                )
            self.entries[name] = entry
            added.append(entry)
            logger.debug("Registriert: %s (%s), %d Verletzungen", name, doc.kind, len(entry.report.violations))
        return added

    def _build(self, doc: BaseDocument, path: Optional[str]) -> WorkspaceEntry:
        def resolve(ref: str, kinds: tuple) -> Any:
            return self.get(ref, kinds)

        try:
            value = doc.to_kernel(resolve)
        except DocumentError:
            raise
        except (FamCatError, KeyError) as exc:
            raise DocumentError(f"{doc.name!r} lässt sich nicht bauen: {exc}", location=path) from exc
        report = VALIDATORS[doc.kind](value)
        return WorkspaceEntry(name=doc.name, kind=doc.kind, document=doc, value=value, report=report, path=path)


def _build_order(pending: Dict[str, Tuple[BaseDocument, Optional[str]]]) -> List[str]:
    """Topologische Sortierung nach Referenzen; bei Gleichstand alphabetisch."""
    order: List[str] = []
    state: Dict[str, int] = {}

    def visit(name: str) -> None:
        mark = state.get(name)
        if mark == 2:
            return
        if mark == 1:
            raise DocumentError(f"Zyklische Referenz über {name!r}", location=pending[name][1])
        state[name] = 1
        for ref in sorted(set(pending[name][0].references())):
            if ref in pending:
                visit(ref)
        state[name] = 2
        order.append(name)

    for name in sorted(pending):
        visit(name)
    return order


# ============================================================================
# Dateien lesen
# ============================================================================

class DuplicateKeyError(ValueError):
    def __init__(self, key: str):
        super().__init__(key)
        self.key = key


def _unique_keys(pairs: List[Tuple[str, Any]]) -> Dict[str, Any]:
    # Objekt- und Morphismenabbildungen dürfen keinen Schlüssel doppelt belegen
    result: Dict[str, Any] = {}
    for key, value in pairs:
        if key in result:
            raise DuplicateKeyError(key)
        result[key] = value
    return result


def parse_documents(raw: Union[str, bytes], location: str = "<input>") -> List[BaseDocument]:
    """
    Parst ein Einzeldokument oder ein Bündel {"documents": [...]}.

    Raises:
        DocumentError: JSON- oder Schemafehler, mit Ort (Zeile:Spalte bzw. Feldpfad)
    """
    try:
        data = json.loads(raw, object_pairs_hook=_unique_keys)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"Ungültiges JSON: {exc.msg}", location=f"{location}:{exc.lineno}:{exc.colno}") from exc
    except DuplicateKeyError as exc:
        raise DocumentError(f"Schlüssel {exc.key!r} mehrfach angegeben", location=f"{location}:{exc.key}") from exc

    try:
        if isinstance(data, dict) and "documents" in data:
            return list(DocumentBundle.model_validate(data).documents)
        return [DOCUMENT_ADAPTER.validate_python(data)]
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise DocumentError(f"Schemafehler: {first['msg']}", location=f"{location}:{where}") from exc


def load_and_validate(
    path: Union[str, Path],
    kind: Optional[str] = None,
    strict: bool = True,
    workspace: Optional[Workspace] = None,
) -> Workspace:
    """
    Lädt eine Datei in einen (neuen oder bestehenden) Workspace.

    Args:
        path: JSON-Datei mit einem Dokument oder einem Bündel
        kind: Optional erwartete Art aller Dokumente der Datei
        strict: Validierungsfehler als DocumentError melden
        workspace: Bestehender Workspace für Querverweise

    Returns:
        Workspace mit den neuen Einträgen (Bericht pro Eintrag)
    """
    path = Path(path)
    workspace = workspace if workspace is not None else Workspace()
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"Datei nicht lesbar: {exc.strerror}", location=str(path)) from exc

    documents = parse_documents(raw, location=str(path))
    if kind is not None:
        for doc in documents:
            if doc.kind != kind:
                raise DocumentError(f"{doc.name!r} ist vom Typ {doc.kind}, erwartet: {kind}", location=str(path))
    workspace.add_documents(((doc, str(path)) for doc in documents), strict=strict)
    logger.info("%s: %d Dokumente geladen", path, len(documents))
    return workspace


def load_workspace(paths: Sequence[Union[str, Path]], strict: bool = True) -> Workspace:
    """Lädt mehrere Dateien; Verweise über Dateigrenzen hinweg sind erlaubt."""
    collected: List[Tuple[BaseDocument, Optional[str]]] = []
    for path in paths:
        path = Path(path)
        try:
            raw = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise DocumentError(f"Datei nicht lesbar: {exc.strerror}", location=str(path)) from exc
        collected.extend((doc, str(path)) for doc in parse_documents(raw, location=str(path)))
    workspace = Workspace()
    workspace.add_documents(collected, strict=strict)
    return workspace


def export_document(entry: WorkspaceEntry) -> dict:
    """Normalisierte Serialisierung eines Eintrags (sortierte Tabellen)."""
    doc = entry.document
    match entry.kind:
        case "category":
            normalized = CategoryDocument.from_kernel(entry.value, name=doc.name)
        case "groupoid":
            normalized = GroupoidDocument.from_kernel(entry.value, name=doc.name)
        case "functor":
            normalized = FunctorDocument.from_kernel(entry.value, doc.source, doc.target, name=doc.name)
        case "fam":
            normalized = FamDocument.from_kernel(entry.value, doc.shape, doc.target, name=doc.name)
        case "retraction":
            normalized = RetractionDocument.from_kernel(entry.value, name=doc.name)
        case "pointed_family":
            normalized = PointedFamilyDocument.from_kernel(entry.value, name=doc.name)
        case _:
            normalized = doc
    return normalized.model_dump(mode="json", exclude_none=True)

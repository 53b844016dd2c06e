"""
Fehlerhierarchie für famcat.

Alle fachlichen Fehler erben von FamCatError. Die CLI ordnet die Klassen
den Exit-Codes zu:
- PreconditionError / DocumentError → 3 (Fehlbedienung)
- BudgetExceeded → 2 (unentschieden)

Axiom-Verletzungen werden NICHT als Exception gemeldet, sondern als
ValidationReport zurückgegeben (siehe schemas/reports.py).
"""

from typing import Optional, Sequence


class FamCatError(Exception):
    """Basisklasse für alle famcat-Fehler."""


class MalformedReferenceError(FamCatError):
    """Unbekannte Objekt- oder Morphismus-ID in einer Tabelle."""

    def __init__(self, message: str, ids: Sequence[str] = ()):
        super().__init__(message)
        self.ids = tuple(ids)


class PreconditionError(FamCatError):
    """Vorbedingung einer Operation verletzt."""


class MissingLimitError(PreconditionError):
    """Die Zielkategorie besitzt einen benötigten punktweisen Limes nicht."""

    def __init__(self, description: str):
        super().__init__(f"Kein Limes in der Zielkategorie für: {description}")
        self.description = description


class UnsupportedIndexError(PreconditionError):
    """Index-Form außerhalb der unterstützten Klasse (z.B. kein Gruppoid)."""


class BudgetExceeded(FamCatError):
    """Aufzählungs-Budget erschöpft – Ergebnis ist unentschieden, nicht 'nicht vorhanden'."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"Budget erschöpft bei '{what}' (Obergrenze {cap})")
        self.what = what
        self.cap = cap


class DocumentError(FamCatError):
    """Parse-Fehler, doppelte Namen oder unaufgelöste Referenzen im Workspace."""

    def __init__(self, message: str, location: Optional[str] = None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location

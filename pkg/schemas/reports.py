"""
Validierungsberichte – maschinenlesbare Listen von Verletzungen.

Referenzfehler (unbekannte IDs) und Axiomverletzungen werden getrennt
über das Feld `kind` ausgewiesen.
"""

from typing import Dict, List, Literal, Optional, Sequence

import pandas as pd
from pydantic import BaseModel, Field


class Violation(BaseModel):
    """Eine einzelne verletzte Axiom-Instanz oder fehlerhafte Referenz."""

    kind: Literal["reference", "axiom"] = Field(..., description="Referenzfehler oder Axiomverletzung")
    rule: str = Field(..., description="Name der verletzten Regel, z.B. 'closure'")
    instance: List[str] = Field(default_factory=list, description="Beteiligte IDs")
    message: str = Field("", description="Lesbare Beschreibung")

    def sort_key(self) -> tuple:
        return (self.kind, self.rule, tuple(self.instance), self.message)


class ValidationReport(BaseModel):
    """Liste aller Verletzungen; leerer Bericht = gültig."""

    subject: str = Field("", description="Name des geprüften Objekts")
    violations: List[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, rule: str, instance: Sequence[str], message: str = "") -> None:
        self.violations.append(
            Violation(kind=kind, rule=rule, instance=[str(i) for i in instance], message=message)
        )

    def reference(self, rule: str, instance: Sequence[str], message: str = "") -> None:
        self.add("reference", rule, instance, message)

    def axiom(self, rule: str, instance: Sequence[str], message: str = "") -> None:
        self.add("axiom", rule, instance, message)

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for v in other.violations:
            rule = f"{prefix}{v.rule}" if prefix else v.rule
            self.violations.append(v.model_copy(update={"rule": rule}))

    def normalized(self) -> "ValidationReport":
        """Sortiert und dedupliziert – unabhängig von der Eingabereihenfolge."""
        seen = {}
        for v in self.violations:
            seen.setdefault(v.sort_key(), v)
        return ValidationReport(subject=self.subject, violations=[seen[k] for k in sorted(seen)])

    def rules(self) -> List[str]:
        return sorted({v.rule for v in self.violations})

    def has(self, rule: str, kind: str = "") -> bool:
        return any(v.rule == rule and (not kind or v.kind == kind) for v in self.violations)

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {"kind": v.kind, "rule": v.rule, "instance": ",".join(v.instance), "message": v.message}
            for v in self.violations
        ]
        return pd.DataFrame(rows, columns=["kind", "rule", "instance", "message"])


class AdjunctionReport(BaseModel):
    """Ergebnis der Prüfung Hom_Fam(f, ΔI) ≅ Hom_Set(π₀(Form), I)."""

    components: int = Field(..., description="|π₀| der Form")
    index_size: int = Field(..., description="|I|")
    fam_side: int = Field(..., description="|Hom_Fam(f, ΔI)|")
    set_side: int = Field(..., description="|Hom_Set(π₀, I)|")
    expected: int = Field(..., description="|I|^|π₀|")
    bijective: bool = False
    naturality_checked: int = 0
    naturality_failures: List[str] = Field(default_factory=list)

    @property
    def holds(self) -> bool:
        return (
            self.bijective
            and self.fam_side == self.set_side == self.expected
            and not self.naturality_failures
        )


class ColimitPreservationReport(BaseModel):
    """Vergleich von Π₁(colim d) mit unabhängig aus den Formen berechneten Invarianten."""

    index: str
    oracle: Literal["disjoint_union", "orbit_stabilizer"]
    colimit_objects: int
    shape_objects: int = Field(..., description="Summe der Objektzahlen aller Formen")
    colimit_pi0: int
    shape_pi0: int = Field(..., description="Erwartete Komponentenzahl (Bahnen auf π₀ der Formen)")
    equivalent: Optional[bool] = Field(None, description="Äquivalenz zur disjunkten Vereinigung (nur diskrete Indizes)")
    witness: Dict[str, str] = Field(default_factory=dict, description="Objektabbildung der gefundenen Äquivalenz")
    pi1_mismatches: List[str] = Field(default_factory=list, description="Objekte mit |π₁| ≠ |Aut|·|Stab|")
    basepoint: Optional[str] = None
    pi1_order: Optional[int] = None
    expected_pi1_order: Optional[int] = None
    pi1_isomorphic: Optional[bool] = None

    @property
    def holds(self) -> bool:
        return (
            self.colimit_objects == self.shape_objects
            and self.colimit_pi0 == self.shape_pi0
            and not self.pi1_mismatches
            and self.equivalent is not False
            and self.pi1_isomorphic is not False
        )


class RoundtripReport(BaseModel):
    """Natürliche Isomorphismen G∘F ≅ id und F∘G ≅ id, komponentenweise geprüft."""

    diagrams: int = 0
    families: int = 0
    naturality_checked: int = 0
    failures: List[str] = Field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures

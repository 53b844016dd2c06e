"""
Zertifikate – maschinenlesbare Ausgabe jedes CLI-Verbs.

Jedes Zertifikat enthält das Urteil, die Zeugen und den Anker der
Aussage, die es instanziiert. Der Exit-Code ergibt sich aus dem Urteil.
"""

from typing import Any, ClassVar, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

Verdict = Literal["verified", "refuted", "indeterminate", "misuse"]


class Certificate(BaseModel):
    """Ergebnis eines Verbs."""

    model_config = ConfigDict(populate_by_name=True)

    EXIT_CODES: ClassVar[Dict[str, int]] = {
        "verified": 0,
        "refuted": 1,
        "indeterminate": 2,
        "misuse": 3,
    }

    verb: str = Field(..., description="CLI-Verb")
    verdict: Verdict
    anchor: str = Field("", description="Aussage, die dieses Zertifikat instanziiert")
    subject: List[str] = Field(default_factory=list, description="Namen der Eingabedokumente")
    result: Dict[str, Any] = Field(default_factory=dict, description="Berechnete Daten")
    witness: Dict[str, Any] = Field(default_factory=dict, description="Zeugen für das Urteil")
    message: str = ""
    seed: Optional[int] = None
    budget: Optional[Dict[str, int]] = None

    @property
    def exit_code(self) -> int:
        return self.EXIT_CODES[self.verdict]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    @classmethod
    def misuse(cls, verb: str, message: str, **extra: Any) -> "Certificate":
        return cls(verb=verb, verdict="misuse", message=message, **extra)

    @classmethod
    def indeterminate(cls, verb: str, message: str, **extra: Any) -> "Certificate":
        return cls(verb=verb, verdict="indeterminate", message=message, **extra)

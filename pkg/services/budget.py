"""
Budget-Konfiguration für alle Brute-Force-Aufzählungen.

Die Obergrenzen sind Parameter pro Aufruf, kein globaler Zustand.
Die Umgebungsvariable FAMCAT_BUDGET überschreibt die Aufzählungs-Grenzen.
"""

import logging
import os
from typing import Optional

from pydantic import BaseModel, Field

from .errors import BudgetExceeded

logger = logging.getLogger(__name__)

BUDGET_ENV_VAR = "FAMCAT_BUDGET"


class Budget(BaseModel):
    """Obergrenzen für die verschiedenen Aufzählungen."""

    cones: int = Field(10**6, ge=1, description="Maximal untersuchte Kegel in brute_force_limit")
    enumeration: int = Field(10**5, ge=1, description="Maximale Teilzuweisungen bei Funktor-/Hom-Aufzählung")
    group_order_cap: int = Field(24, ge=1, description="Maximale Gruppenordnung für Isomorphie-Suche")
    coset_cap: int = Field(2048, ge=1, description="Maximale Nebenklassen bei der Nebenklassen-Aufzählung")
    cech_objects: int = Field(10**4, ge=1, description="Maximale Objektzahl pro Čech-Level")

    class Config:
        frozen = True

    @classmethod
    def from_env(cls, override: Optional[int] = None) -> "Budget":
        """
        Erzeugt ein Budget aus den Defaults, FAMCAT_BUDGET und einem expliziten Override.

        Args:
            override: Expliziter Wert (z.B. aus --budget); hat Vorrang vor der Umgebung

        Returns:
            Budget mit überschriebenen Aufzählungs-Grenzen
        """
        raw = os.environ.get(BUDGET_ENV_VAR)
        value = override
        if value is None and raw:
            try:
                value = int(raw)
            except ValueError:
                logger.warning("%s=%r ist keine Ganzzahl – Defaults bleiben aktiv", BUDGET_ENV_VAR, raw)
        if value is None:
            return cls()
        logger.debug("Budget-Override: %d", value)
        return cls(cones=value, enumeration=value)

    def counter(self, what: str, cap: Optional[int] = None) -> "BudgetCounter":
        return BudgetCounter(what, cap if cap is not None else self.enumeration)


class BudgetCounter:
    """Zählt Aufzählungsschritte und bricht bei Überschreitung ab."""

    def __init__(self, what: str, cap: int):
        self.what = what
        self.cap = cap
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.cap:
            logger.warning("Budget für '%s' erschöpft (%d)", self.what, self.cap)
            raise BudgetExceeded(self.what, self.cap)


def unlimited(what: str = "unbegrenzt") -> BudgetCounter:
    """Zähler mit sehr hoher Grenze für interne Hilfsaufrufe auf bekannten Kleinstfällen."""
    return BudgetCounter(what, 10**9)

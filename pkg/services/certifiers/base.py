"""
Base Certifier - Abstrakte Basisklasse für alle CLI-Verben.

Jeder Certifier ist verantwortlich für:
1. Seine Argumente am Subparser zu registrieren (add_arguments)
2. Die Eingaben aus dem Workspace zu holen und zu rechnen (certify)
3. Ein Certificate mit Urteil, Zeugen und Anker zu erzeugen (create_certificate)

Fehlerzuordnung in create_certificate:
- BudgetExceeded → indeterminate (Exit 2)
- PreconditionError, DocumentError, MalformedReferenceError → misuse (Exit 3)
"""

import argparse
import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

from schemas.certificates import Certificate, Verdict
from services.budget import Budget
from services.errors import BudgetExceeded, DocumentError, MalformedReferenceError, PreconditionError
from services.fam.objects import FamObject
from services.kernel.groupoid import pi0
from state import Workspace

logger = logging.getLogger(__name__)


def fam_summary(f: FamObject) -> Dict[str, Any]:
    """Kompakte Beschreibung einer Familie für Zertifikate."""
    return {
        "name": f.name,
        "target": f.target.name,
        "objects": list(f.shape.objects),
        "morphisms": len(f.shape.morphisms),
        "pi0": [list(block) for block in pi0(f.shape)],
        "arrow": dict(sorted(f.arrow.object_map.items())),
    }


class BaseCertifier(ABC):
    """
    Abstrakte Basis-Klasse für alle Verben.

    Subklassen setzen VERB, ANCHOR und HELP und implementieren certify().
    """

    # Zu überschreiben in Subklassen
    VERB: str = ""
    ANCHOR: str = ""
    HELP: str = ""
    RANDOMIZED: bool = False

    def __init__(self, workspace: Workspace, budget: Optional[Budget] = None):
        self.workspace = workspace
        self.budget = budget or Budget()

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        """Registriert die verbspezifischen Argumente (Standard: keine)."""

    @classmethod
    def register(cls, subparsers) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(cls.VERB, help=cls.HELP)
        if cls.RANDOMIZED:
            parser.add_argument("--seed", type=int, required=True, help="Pflicht für randomisierte Verben")
        cls.add_arguments(parser)
        parser.set_defaults(certifier=cls)
        return parser

    @abstractmethod
    def certify(self, args: argparse.Namespace) -> Certificate:
        """Rechnet und liefert das Zertifikat (ohne Fehlerbehandlung)."""

    def certificate(
        self,
        verdict: Verdict,
        subject: Optional[List[str]] = None,
        result: Optional[Dict[str, Any]] = None,
        witness: Optional[Dict[str, Any]] = None,
        message: str = "",
    ) -> Certificate:
        return Certificate(
            verb=self.VERB,
            verdict=verdict,
            anchor=self.ANCHOR,
            subject=subject or [],
            result=result or {},
            witness=witness or {},
            message=message,
        )

    def create_certificate(self, args: argparse.Namespace) -> Certificate:
        """Führt certify() aus und ordnet Fehler den Urteilen zu."""
        seed = getattr(args, "seed", None) if self.RANDOMIZED else None
        try:
            cert = self.certify(args)
        except BudgetExceeded as exc:
            logger.warning("%s: unentschieden (%s)", self.VERB, exc)
            cert = Certificate.indeterminate(self.VERB, str(exc), anchor=self.ANCHOR, witness={"budget": exc.what, "cap": exc.cap})
        except (PreconditionError, DocumentError, MalformedReferenceError) as exc:
            logger.warning("%s: Fehlbedienung (%s)", self.VERB, exc)
            cert = Certificate.misuse(self.VERB, str(exc), anchor=self.ANCHOR)
        cert.seed = seed
        cert.budget = self.budget.model_dump()
        logger.info("%s: %s", self.VERB, cert.verdict)
        return cert

    def fam(self, name: str) -> FamObject:
        return self.workspace.get(name, ("fam",))

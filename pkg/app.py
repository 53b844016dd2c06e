"""
famcat - Kommandozeile

Rechnet in Fam(C) auf endlichen Kategorien und Gruppoiden und schreibt
für jedes Verb ein JSON-Zertifikat.

Architektur:
- state.py: Workspace (geladene und validierte Dokumente)
- services/certifiers/: ein Certifier pro Verb
- services/: Kernel, Fam-Konstruktionen, Homotopie, Situs, Lokus
- schemas/: Pydantic-Models für Dokumente, Berichte und Zertifikate

Exit-Codes: 0 verifiziert, 1 widerlegt (mit Zeuge), 2 unentschieden (Budget),
3 Fehlbedienung.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from schemas.certificates import Certificate
from services.budget import Budget
from services.certifiers import CERTIFIER_REGISTRY
from services.errors import DocumentError
from state import Workspace, load_workspace

logger = logging.getLogger("famcat")

MISUSE_EXIT = Certificate.EXIT_CODES["misuse"]


class FamcatArgumentParser(argparse.ArgumentParser):
    """argparse meldet Bedienfehler mit Exit 3 statt 2 (2 heißt hier: unentschieden)."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(MISUSE_EXIT, f"{self.prog}: Fehler: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = FamcatArgumentParser(prog="famcat", description="Fam(C)-Engine für endliche Kategorien und Gruppoide")
    parser.add_argument(
        "-w", "--workspace",
        action="append",
        default=[],
        metavar="FILE",
        help="JSON-Datei mit Dokumenten (mehrfach möglich)",
    )
    parser.add_argument("--out", default=None, help="Zertifikat in diese Datei statt auf stdout")
    parser.add_argument("--budget", type=int, default=None, help="Obergrenze für Aufzählungen (überschreibt FAMCAT_BUDGET)")
    parser.add_argument("-v", "--verbose", action="store_true", help="DEBUG-Logging auf stderr")

    subparsers = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for certifier in CERTIFIER_REGISTRY.values():
        certifier.register(subparsers)
    return parser


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def run_command(argv: Optional[List[str]] = None) -> int:
    """
    Parst die Argumente, lädt den Workspace und führt das Verb aus.

    Returns:
        Exit-Code des Zertifikats
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    budget = Budget.from_env(args.budget)

    try:
        workspace = load_workspace(args.workspace, strict=args.verb != "validate") if args.workspace else Workspace()
    except DocumentError as exc:
        logger.warning("Workspace nicht ladbar: %s", exc)
        cert = Certificate.misuse(args.verb, str(exc), witness={"location": exc.location})
    else:
        cert = args.certifier(workspace, budget).create_certificate(args)

    emit(cert, args.out)
    return cert.exit_code


def emit(cert: Certificate, out: Optional[str]) -> None:
    payload = cert.to_json()
    if out is None:
        print(payload)
        return
    Path(out).write_text(payload + "\n", encoding="utf-8")
    logger.info("Zertifikat geschrieben: %s", out)


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()

"""
Verben für Validierung, π₀, Zerlegung und Koprodukte.
"""

import argparse
import logging

from schemas.certificates import Certificate
from services.fam.coproduct import decompose_connected, fam_coproduct
from services.fam.objects import validate_fam_object
from services.kernel.groupoid import pi0
from services.site import pi0_surjective

from .base import BaseCertifier, fam_summary

logger = logging.getLogger(__name__)


class ValidateCertifier(BaseCertifier):
    """Validiert alle (oder die genannten) Einträge des Workspace."""

    VERB = "validate"
    ANCHOR = "axioms of finite categories, groupoids, functors and families"
    HELP = "Axiome und Referenzen aller Dokumente prüfen"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("names", nargs="*", help="Dokumentnamen (Standard: alle)")

    def certify(self, args: argparse.Namespace) -> Certificate:
        names = args.names or self.workspace.names()
        reports = {name: self.workspace.entry(name).report for name in names}
        violations = {
            name: [v.model_dump() for v in report.violations]
            for name, report in reports.items()
            if not report.ok
        }
        verdict = "refuted" if violations else "verified"
        return self.certificate(
            verdict,
            subject=list(names),
            result={"checked": len(reports)},
            witness={"violations": violations} if violations else {},
        )


class Pi0Certifier(BaseCertifier):
    VERB = "pi0"
    ANCHOR = "π₀ of a groupoid; τ≤0 of a family"
    HELP = "Zusammenhangskomponenten einer Form"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name", help="groupoid, category oder fam")

    def certify(self, args: argparse.Namespace) -> Certificate:
        entry = self.workspace.entry(args.name, ("groupoid", "category", "fam"))
        shape = entry.value.shape if entry.kind == "fam" else entry.value
        blocks = pi0(shape)
        return self.certificate(
            "verified",
            subject=[args.name],
            result={"count": len(blocks), "blocks": [list(b) for b in blocks]},
        )


class DecomposeCertifier(BaseCertifier):
    VERB = "decompose"
    ANCHOR = "every family is the coproduct of its connected components"
    HELP = "Familie in zusammenhängende Summanden zerlegen"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name", help="fam-Dokument")

    def certify(self, args: argparse.Namespace) -> Certificate:
        f = self.fam(args.name)
        decomposition = decompose_connected(f)
        report = decomposition.check()
        # Inklusionen müssen gemeinsam π₀-surjektiv sein
        covering = pi0_surjective([m.phi for m in decomposition.inclusions], f.shape)
        verdict = "verified" if report.ok and covering else "refuted"
        return self.certificate(
            verdict,
            subject=[args.name],
            result={
                "components": [fam_summary(c) for c in decomposition.components],
                "block_assignment": dict(sorted(decomposition.block_assignment.items())),
            },
            witness={"violations": [v.model_dump() for v in report.violations]} if not report.ok else {},
        )


class CoproductCertifier(BaseCertifier):
    VERB = "coproduct"
    ANCHOR = "coproducts in Fam(C) are disjoint unions of shapes"
    HELP = "Koprodukt mehrerer Familien"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("names", nargs="+", help="fam-Dokumente mit gemeinsamer Zielkategorie")

    def certify(self, args: argparse.Namespace) -> Certificate:
        result = fam_coproduct([self.fam(n) for n in args.names])
        report = validate_fam_object(result.obj)
        return self.certificate(
            "verified" if report.ok else "refuted",
            subject=list(args.names),
            result={"object": fam_summary(result.obj), "labels": list(result.labels)},
            witness={"violations": [v.model_dump() for v in report.violations]} if not report.ok else {},
        )

"""
Verben der Lokus-Äquivalenz Fam(Set*) ≃ [Δ̂[1], Set].
"""

import argparse
import logging

from schemas.certificates import Certificate
from schemas.documents import PointedFamilyDocument, RetractionDocument
from services.locus import (
    enumerate_pointed_families,
    enumerate_retraction_diagrams,
    functor_F,
    functor_G,
    pi0_corollary_check,
    roundtrip_check,
)

from .base import BaseCertifier

logger = logging.getLogger(__name__)


class LocusFCertifier(BaseCertifier):
    VERB = "locus-f"
    ANCHOR = "F: [Δ̂[1], Set] → Fam(Set*), fibers of r pointed by s"
    HELP = "Retraktionsdiagramm → Familie punktierter Mengen"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name", help="retraction-Dokument")

    def certify(self, args: argparse.Namespace) -> Certificate:
        x = self.workspace.get(args.name, ("retraction",))
        fam = functor_F(x)
        corollary = pi0_corollary_check(x)
        return self.certificate(
            "verified" if corollary.holds else "refuted",
            subject=[args.name],
            result={
                "family": PointedFamilyDocument.from_kernel(fam, name=f"F({args.name})").model_dump(mode="json"),
                "components": corollary.components,
                "base_size": corollary.base_size,
            },
        )


class LocusGCertifier(BaseCertifier):
    VERB = "locus-g"
    ANCHOR = "G: Fam(Set*) → [Δ̂[1], Set], disjoint union with basepoint section"
    HELP = "Familie punktierter Mengen → Retraktionsdiagramm"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name", help="pointed_family-Dokument")

    def certify(self, args: argparse.Namespace) -> Certificate:
        fam = self.workspace.get(args.name, ("pointed_family",))
        x = functor_G(fam)
        report = x.validate()
        return self.certificate(
            "verified" if report.ok else "refuted",
            subject=[args.name],
            result={"diagram": RetractionDocument.from_kernel(x, name=f"G({args.name})").model_dump(mode="json")},
            witness={"violations": [v.model_dump() for v in report.violations]} if not report.ok else {},
        )


class LocusRoundtripCertifier(BaseCertifier):
    """
    Prüft G∘F ≅ id und F∘G ≅ id. Ohne Namen werden alle kleinen Eingaben
    erschöpfend aufgezählt.
    """

    VERB = "locus-roundtrip"
    ANCHOR = "Fam(Set*) ≃ [Δ̂[1], Set]"
    HELP = "Rundreise-Isomorphismen der Lokus-Äquivalenz"
    RANDOMIZED = True

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("names", nargs="*", help="retraction- und pointed_family-Dokumente")
        parser.add_argument("--max-total", type=int, default=4, help="|X[1]| bei erschöpfender Aufzählung")
        parser.add_argument("--max-indices", type=int, default=3)
        parser.add_argument("--max-carrier", type=int, default=3)
        parser.add_argument("--samples", type=int, default=50, help="Stichproben für die Natürlichkeit")

    def certify(self, args: argparse.Namespace) -> Certificate:
        if args.names:
            entries = [self.workspace.entry(n, ("retraction", "pointed_family")) for n in args.names]
            diagrams = [e.value for e in entries if e.kind == "retraction"]
            families = [e.value for e in entries if e.kind == "pointed_family"]
        else:
            diagrams = list(enumerate_retraction_diagrams(args.max_total))
            families = list(enumerate_pointed_families(args.max_indices, args.max_carrier))
        report = roundtrip_check(diagrams, families, seed=args.seed, morphism_samples=args.samples)
        corollary_failures = [x.name or str(x.base) for x in diagrams if not pi0_corollary_check(x).holds]
        holds = report.holds and not corollary_failures
        witness = {}
        if not holds:
            witness = {"failures": report.failures, "pi0_corollary": corollary_failures}
        return self.certificate(
            "verified" if holds else "refuted",
            subject=list(args.names),
            result=report.model_dump(),
            witness=witness,
        )

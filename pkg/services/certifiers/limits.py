"""
Verben für Kolimiten, Limiten und Extensivität in Fam(C).

Die universelle Eigenschaft wird optional gegen Testfamilien geprüft
(--test); ohne Testfamilien beschränkt sich das Urteil auf die
Wohldefiniertheit des Ergebnisses.
"""

import argparse
import logging
from typing import List

from schemas.certificates import Certificate
from services.errors import PreconditionError
from services.fam.colimit import fam_colimit, verify_colimit_universality
from services.fam.extensivity import extensivity_check
from services.fam.limit import fam_limit, verify_limit_universality
from services.fam.objects import FamObject, validate_fam_object

from .base import BaseCertifier, fam_summary

logger = logging.getLogger(__name__)


class _UniversalityMixin:
    @classmethod
    def add_test_argument(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--test", nargs="*", default=[], help="fam-Dokumente für die Universalitätsprüfung")

    def test_objects(self, args: argparse.Namespace) -> List[FamObject]:
        return [self.fam(n) for n in args.test]


class ColimitCertifier(_UniversalityMixin, BaseCertifier):
    """Kolimes eines gruppoid-indizierten Diagramms über die Grothendieck-Konstruktion."""

    VERB = "colimit"
    ANCHOR = "groupoid-indexed colimits in Fam(C) via the Grothendieck construction"
    HELP = "Kolimes eines fam_diagram"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name", help="fam_diagram-Dokument")
        parser.add_argument("--index", default=None, help="Indexgruppoid (Standard: Index des Diagramms)")
        cls.add_test_argument(parser)

    def certify(self, args: argparse.Namespace) -> Certificate:
        d = self.workspace.get(args.name, ("fam_diagram",))
        k = self.workspace.get(args.index, ("groupoid", "category")) if args.index else d.index
        result = fam_colimit(k, d)
        report = validate_fam_object(result.obj)
        universality = verify_colimit_universality(result, self.test_objects(args), self.budget.counter("colimit"))
        holds = report.ok and universality.holds
        witness = {}
        if not holds:
            witness = {
                "violations": [v.model_dump() for v in report.violations],
                "universality_failures": universality.failures,
            }
        return self.certificate(
            "verified" if holds else "refuted",
            subject=[args.name],
            result={
                "object": fam_summary(result.obj),
                "injections": sorted(result.injections),
                "competitors": universality.competitors,
                "unique_factorizations": universality.unique,
            },
            witness=witness,
        )


class LimitCertifier(_UniversalityMixin, BaseCertifier):
    """
    Terminales Objekt, Produkt oder Pullback in Fam(C).

    Fehlt in C der nötige punktweise Limes, endet das Verb mit Exit 3 und
    benennt den fehlenden Kegel.
    """

    VERB = "limit"
    ANCHOR = "limits in Fam(C) exist when C has the pointwise limits"
    HELP = "Limes (terminal, product, pullback)"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--kind", required=True, choices=["terminal", "product", "pullback"])
        parser.add_argument("names", nargs="+", help="terminal: Kategorie; product: Familien; pullback: zwei fam_morphisms")
        cls.add_test_argument(parser)

    def certify(self, args: argparse.Namespace) -> Certificate:
        counter = self.budget.counter("limit", cap=self.budget.cones)
        match args.kind:
            case "terminal":
                if len(args.names) != 1:
                    raise PreconditionError("limit --kind terminal erwartet genau eine Kategorie")
                c = self.workspace.get(args.names[0], ("category", "groupoid"))
                result = fam_limit("terminal", c=c, counter=counter)
            case "product":
                result = fam_limit("product", members=[self.fam(n) for n in args.names], counter=counter)
            case "pullback":
                legs = [self.workspace.get(n, ("fam_morphism",)) for n in args.names]
                result = fam_limit("pullback", legs=legs, counter=counter)
            case _:
                raise PreconditionError(f"Unbekannte Limesform {args.kind}")

        report = validate_fam_object(result.obj)
        universality = verify_limit_universality(result, self.test_objects(args), self.budget.counter("limit universality"))
        holds = report.ok and universality.holds
        witness = {}
        if not holds:
            witness = {
                "violations": [v.model_dump() for v in report.violations],
                "universality_failures": universality.failures,
            }
        return self.certificate(
            "verified" if holds else "refuted",
            subject=list(args.names),
            result={
                "kind": result.kind,
                "object": fam_summary(result.obj),
                "projections": [p.name for p in result.projections],
                "competitors": universality.competitors,
                "unique_factorizations": universality.unique,
            },
            witness=witness,
        )


class ExtensivityCertifier(BaseCertifier):
    VERB = "extensivity"
    ANCHOR = "Fam(C)/c₁ × Fam(C)/c₂ ≃ Fam(C)/(c₁ ⊔ c₂)"
    HELP = "Slice-Äquivalenz für ein Paar von Familien"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("first", help="fam-Dokument")
        parser.add_argument("second", help="fam-Dokument")

    def certify(self, args: argparse.Namespace) -> Certificate:
        report = extensivity_check(self.fam(args.first), self.fam(args.second), counter=self.budget.counter("extensivity"))
        witness = {}
        if not report.holds:
            witness = {"hom_mismatches": report.hom_mismatches, "unsplit": report.unsplit}
        return self.certificate(
            "verified" if report.holds else "refuted",
            subject=[args.first, args.second],
            result={
                "slice_sizes": report.slice_sizes,
                "pairs_checked": report.pairs_checked,
                "objects_checked": report.objects_checked,
                "fully_faithful": report.fully_faithful,
                "essentially_surjective": report.essentially_surjective,
            },
            witness=witness,
        )

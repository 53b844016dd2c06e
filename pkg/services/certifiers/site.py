"""
Verben der effektiven Topologie: Überdeckungen, Pullbacks von Überdeckungen,
Čech-Nerv und die gesampelte Axiom-Suite.
"""

import argparse
import logging

from schemas.certificates import Certificate
from services.kernel.cech import cech_nerve, cech_pi0_coequalizer, check_simplicial_identities
from services.kernel.groupoid import pi0
from services.site import is_covering_family, pretopology_axiom_suite, pullback_cover

from .base import BaseCertifier, fam_summary

logger = logging.getLogger(__name__)


class CoverCheckCertifier(BaseCertifier):
    VERB = "cover-check"
    ANCHOR = "covers of the effective topology are families that are jointly surjective on π₀ of shapes"
    HELP = "Ist die Familie eine Überdeckung?"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name", help="cover-Dokument")

    def certify(self, args: argparse.Namespace) -> Certificate:
        cover = self.workspace.get(args.name, ("cover",))
        verdict = is_covering_family(cover)
        return self.certificate(
            "verified" if verdict.holds else "refuted",
            subject=[args.name],
            result={"covering": verdict.holds, "members": len(cover.members)},
            witness=verdict.witness(),
        )


class CoverPullbackCertifier(BaseCertifier):
    """Zieht eine Überdeckung zurück und prüft die zurückgezogene Familie erneut."""

    VERB = "cover-pullback"
    ANCHOR = "covers of the effective topology are stable under pullback"
    HELP = "Überdeckung entlang eines Fam-Morphismus zurückziehen"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name", help="cover-Dokument")
        parser.add_argument("--along", required=True, help="fam_morphism in das Ziel der Überdeckung")

    def certify(self, args: argparse.Namespace) -> Certificate:
        cover = self.workspace.get(args.name, ("cover",))
        along = self.workspace.get(args.along, ("fam_morphism",))
        original = is_covering_family(cover)
        pulled, verdict = pullback_cover(cover, along)
        return self.certificate(
            "verified" if verdict.holds else "refuted",
            subject=[args.name, args.along],
            result={
                "original_covering": original.holds,
                "covering": verdict.holds,
                "members": [fam_summary(m.source) for m in pulled.members],
            },
            witness=verdict.witness(),
        )


class CechCertifier(BaseCertifier):
    VERB = "cech"
    ANCHOR = "Čech nerve of a map of groupoids by iterated homotopy pullbacks"
    HELP = "Čech-Nerv bis zu einem Level"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name", help="functor-Dokument zwischen Gruppoiden")
        parser.add_argument("--levels", type=int, default=2, help="Höchstes Level")

    def certify(self, args: argparse.Namespace) -> Certificate:
        f = self.workspace.get(args.name, ("functor",))
        levels = cech_nerve(f, args.levels, self.budget)
        report = check_simplicial_identities(levels)
        consistency = cech_pi0_coequalizer(f, self.budget)
        summary = [
            {
                "level": level.level,
                "objects": len(level.groupoid.objects),
                "morphisms": len(level.groupoid.morphisms),
                "pi0": len(pi0(level.groupoid)),
            }
            for level in levels
        ]
        holds = report.ok and consistency.consistent
        witness = {}
        if not holds:
            witness = {"violations": [v.model_dump() for v in report.violations]}
        return self.certificate(
            "verified" if holds else "refuted",
            subject=[args.name],
            result={
                "levels": summary,
                "coequalizer_classes": consistency.coequalizer_classes,
                "effective": consistency.effective,
            },
            witness=witness,
        )


class AxiomsCertifier(BaseCertifier):
    """Gesampelte Prätopologie-Axiome über einer Zielkategorie."""

    VERB = "axioms"
    ANCHOR = "effective epimorphic families form a Grothendieck pretopology on Fam(C)"
    HELP = "Topologie-Axiome auf Zufallsfamilien prüfen"
    RANDOMIZED = True

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name", help="Zielkategorie")
        parser.add_argument("--samples", type=int, default=100)

    def certify(self, args: argparse.Namespace) -> Certificate:
        c = self.workspace.get(args.name, ("category", "groupoid"))
        suite = pretopology_axiom_suite(c, seed=args.seed, samples=args.samples, budget=self.budget)
        failures = suite.failures()
        if not failures.empty:
            verdict = "refuted"
        elif suite.indeterminate:
            verdict = "indeterminate"
        else:
            verdict = "verified"
        return self.certificate(
            verdict,
            subject=[args.name],
            result={"samples": args.samples, "summary": suite.summary.to_dict(orient="records")},
            witness={"failures": failures.to_dict(orient="records")} if not failures.empty else {},
        )

"""
Verben für π₁ und die Adjunktion Π∞ ⊣ Δ.
"""

import argparse
import logging

from schemas.certificates import Certificate
from services.homotopy import adjunction_check, pi1, pointed_at
from services.kernel.edge_path import edge_path_pi1
from services.kernel.group import find_group_isomorphism
from services.kernel.groupoid import full_subgroupoid, pi0

from .base import BaseCertifier

logger = logging.getLogger(__name__)


class Pi1Certifier(BaseCertifier):
    """
    π₁ einer punktierten Familie als Automorphismengruppe, abgeglichen mit der
    Kanten-Weg-Gruppe des Nervs der Basiskomponente.
    """

    VERB = "pi1"
    ANCHOR = "π₁((X,F),x) = Aut_X(x) ≅ edge-path group of N(X) at x"
    HELP = "Fundamentalgruppe am Basispunkt"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name", help="fam-Dokument")
        parser.add_argument("--basepoint", required=True, help="Objekt der Form")
        parser.add_argument("--component", default=None, help="Globales Element t → F(x) (Standard: kleinstes)")

    def certify(self, args: argparse.Namespace) -> Certificate:
        f = self.fam(args.name)
        pointed = pointed_at(f, args.basepoint, args.component)
        group = pi1(pointed)

        block = next(b for b in pi0(f.shape) if args.basepoint in b)
        component, _ = full_subgroupoid(f.shape, block)
        nerve_group = edge_path_pi1(component, args.basepoint, coset_cap=self.budget.coset_cap)
        iso = find_group_isomorphism(
            group,
            nerve_group,
            cap=self.budget.group_order_cap,
            counter=self.budget.counter("pi1 isomorphism"),
        )
        result = {
            "basepoint": args.basepoint,
            "component": pointed.basepoint.component("*"),
            "order": group.order,
            "elements": list(group.elements),
            "table": group.table_rows(),
            "abelian": group.is_abelian(),
        }
        if iso is None:
            return self.certificate(
                "refuted",
                subject=[args.name],
                result=result,
                witness={"edge_path_order": nerve_group.order},
                message="Automorphismengruppe und Kanten-Weg-Gruppe sind nicht isomorph",
            )
        return self.certificate("verified", subject=[args.name], result=result, witness={"isomorphism": iso.as_dict()})


class AdjunctionCertifier(BaseCertifier):
    VERB = "adjunction-check"
    ANCHOR = "Hom_Fam(C)(f, ΔI) ≅ Hom_Set(π₀(Π∞ f), I), natural in f and I"
    HELP = "Adjunktion Π∞ ⊣ Δ für |I| Elemente prüfen"
    RANDOMIZED = True

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name", help="0-trunkiertes fam-Dokument")
        parser.add_argument("--index-size", type=int, required=True, help="|I|")
        parser.add_argument("--samples", type=int, default=50, help="Stichproben für die Natürlichkeit")

    def certify(self, args: argparse.Namespace) -> Certificate:
        f = self.fam(args.name)
        index = [f"i{k}" for k in range(args.index_size)]
        report = adjunction_check(
            f,
            index,
            seed=args.seed,
            samples=args.samples,
            counter=self.budget.counter("adjunction"),
        )
        witness = {}
        if not report.holds:
            witness = {"naturality_failures": report.naturality_failures}
        return self.certificate(
            "verified" if report.holds else "refuted",
            subject=[args.name],
            result=report.model_dump(),
            witness=witness,
        )

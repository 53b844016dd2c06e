"""
Die effektive Grothendieck-Topologie auf Fam(C).

Eine Familie {(Xᵢ, Fᵢ) → (X, F)} überdeckt genau dann, wenn die
Formabbildungen gemeinsam π₀-surjektiv sind; die Pfeile spielen keine
Rolle. Die Prätopologie-Axiome werden stichprobenartig über
seed-deterministischen Zufallsfamilien geprüft.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from schemas.reports import ValidationReport
from services.budget import Budget, BudgetCounter
from services.errors import BudgetExceeded, MissingLimitError, PreconditionError
from services.fam.coproduct import decompose_connected, fam_coproduct
from services.fam.limit import fam_pullback
from services.fam.objects import (
    FamMorphism,
    FamObject,
    compose_fam,
    fam_morphism,
    validate_fam_morphism,
    with_arrow_into,
)
from services.kernel.builders import terminal_category
from services.kernel.category import FiniteCategory
from services.kernel.effective import EpiVerdict, effective_epi_stable_under_coproduct, jointly_effective
from services.kernel.functor import FunctorData, compose_functors
from services.kernel.groupoid import pi0, relabel_groupoid
from utils.random_structures import random_family, random_groupoid, random_morphism_into

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoveringFamily:
    """Endliche Familie von Fam-Morphismen in ein gemeinsames Ziel."""

    codomain: FamObject
    members: Tuple[FamMorphism, ...] = ()
    name: str = field(default="", compare=False)

    def validate(self) -> ValidationReport:
        report = ValidationReport(subject=self.name or "covering family")
        for i, m in enumerate(self.members):
            same = m.target.shape.same_as(self.codomain.shape) and m.target.arrow.same_maps(self.codomain.arrow)
            if not same:
                report.reference("member_codomain", [str(i)], f"Mitglied {i} hat ein anderes Ziel")
                continue
            report.extend(validate_fam_morphism(m), prefix=f"member[{i}].")
        return report.normalized()

    def shape_maps(self) -> List[FunctorData]:
        return [m.phi for m in self.members]


def is_covering_family(c: CoveringFamily) -> EpiVerdict:
    """Gemeinsame π₀-Surjektivität der Formabbildungen (Zeugnis wie bei is_effective_epi)."""
    return jointly_effective(c.shape_maps(), codomain=c.codomain.shape)


def pullback_cover(c: CoveringFamily, m: FamMorphism) -> Tuple[CoveringFamily, EpiVerdict]:
    """
    Zieht eine Überdeckung entlang m: (X′, F′) → (X, F) zurück.

    Returns:
        Die Familie {Xᵢ ×_X X′ → X′} und ihr (nachgeprüftes) Überdeckungsurteil.

    Raises:
        PreconditionError: m endet nicht im Ziel der Überdeckung
        MissingLimitError: ein punktweiser Pullback fehlt in C
    """
    if not (m.target.shape.same_as(c.codomain.shape) and m.target.arrow.same_maps(c.codomain.arrow)):
        raise PreconditionError("pullback_cover: m endet nicht im Ziel der Überdeckung")
    members = []
    for member in c.members:
        result = fam_pullback(member, m)
        members.append(result.projections[1])
    pulled = CoveringFamily(codomain=m.source, members=tuple(members), name=f"{c.name}×{m.name}")
    verdict = is_covering_family(pulled)
    if not verdict and is_covering_family(c):
        logger.warning("Zurückgezogene Überdeckung überdeckt nicht: %s", verdict.witness())
    return pulled, verdict


def componentwise_cover(f: FamObject) -> CoveringFamily:
    """Die Inklusionen der Zusammenhangskomponenten als Überdeckung von f."""
    cert = decompose_connected(f)
    return CoveringFamily(codomain=f, members=cert.inclusions, name=f"comp({f.name})")


def equivalence_cover(f: FamObject) -> CoveringFamily:
    """Einelementige Familie aus einer Umbenennung (Äquivalenz) von f."""
    copy, forward, _ = relabel_groupoid(f.shape)
    source = FamObject(shape=copy, target=f.target, arrow=compose_functors(f.arrow, forward), name=f"{f.name}'")
    m = fam_morphism(source, f, forward, {x: f.target.identity(source.at(x)) for x in copy.objects})
    return CoveringFamily(codomain=f, members=(m,), name="equiv")


def to_fam_point(c: CoveringFamily) -> CoveringFamily:
    """Π∞ als Morphismus von Situs: gleiche Formen, Pfeile in die terminale Kategorie."""
    point = terminal_category()
    obj = point.objects[0]

    def flatten(f: FamObject) -> FamObject:
        return with_arrow_into(
            f, point, {x: obj for x in f.shape.objects}, {m: point.identity(obj) for m in f.shape.morphisms}
        )

    codomain = flatten(c.codomain)
    members = tuple(
        fam_morphism(flatten(m.source), codomain, m.phi, {x: point.identity(obj) for x in m.source.shape.objects})
        for m in c.members
    )
    return CoveringFamily(codomain=codomain, members=members, name=f"Π({c.name})")


def pi0_surjective(members: Sequence[FunctorData], codomain) -> bool:
    """Unabhängige Formulierung: jede Komponente des Ziels enthält ein Bild."""
    blocks = pi0(codomain)
    images = {m.ob(x) for m in members for x in m.source.objects}
    return all(any(x in images for x in block) for block in blocks)


# ============================================================================
# Axiom-Suite
# ============================================================================

def random_cover(rng: random.Random, x: FamObject, counter: BudgetCounter, extra: int = 2) -> CoveringFamily:
    """Zufällige Familie, durch Komponenten-Inklusionen zu einer Überdeckung ergänzt."""
    members = [random_morphism_into(rng, x, counter=counter) for _ in range(rng.randint(0, extra))]
    family = CoveringFamily(codomain=x, members=tuple(members))
    verdict = is_covering_family(family)
    if verdict:
        return family
    inclusions = componentwise_cover(x).members
    missing = set(verdict.unhit_blocks)
    added = [incl for incl in inclusions if incl.source.shape.objects and min(incl.source.shape.objects) in missing]
    return CoveringFamily(codomain=x, members=tuple(members + added))


@dataclass
class AxiomSuiteResult:
    """Ergebnis der Axiom-Suite: eine Zeile pro (Stichprobe, Axiom)."""

    seed: int
    frame: pd.DataFrame

    @property
    def summary(self) -> pd.DataFrame:
        if self.frame.empty:
            return pd.DataFrame(columns=["axiom", "passed", "failed", "indeterminate"])
        grouped = self.frame.groupby("axiom")
        return pd.DataFrame(
            {
                "passed": grouped["status"].apply(lambda s: int((s == "pass").sum())),
                "failed": grouped["status"].apply(lambda s: int((s == "fail").sum())),
                "indeterminate": grouped["status"].apply(lambda s: int((s == "indeterminate").sum())),
            }
        ).reset_index()

    @property
    def indeterminate(self) -> bool:
        return bool((self.frame["status"] == "indeterminate").any()) if not self.frame.empty else False

    @property
    def all_passed(self) -> bool:
        return not self.frame.empty and bool((self.frame["status"] == "pass").all())

    def failures(self) -> pd.DataFrame:
        return self.frame[self.frame["status"] == "fail"]


def _sample_checks(rng: random.Random, c: FiniteCategory, counter: BudgetCounter) -> Dict[str, Callable[[], bool]]:
    x = random_family(rng, c, max_objects=3, min_objects=1, counter=counter)
    cover = random_cover(rng, x, counter)

    def equivalence() -> bool:
        return bool(is_covering_family(equivalence_cover(x)))

    def pullback_stability() -> bool:
        m = random_morphism_into(rng, x, counter=counter)
        _, verdict = pullback_cover(cover, m)
        return bool(verdict)

    def composition() -> bool:
        composite = []
        for member in cover.members:
            inner = random_cover(rng, member.source, counter)
            composite.extend(compose_fam(member, g) for g in inner.members)
        return bool(is_covering_family(CoveringFamily(codomain=x, members=tuple(composite))))

    def refinement() -> bool:
        extra = random_morphism_into(rng, x, counter=counter)
        return bool(is_covering_family(CoveringFamily(codomain=x, members=cover.members + (extra,))))

    def shape_invariance() -> bool:
        family = CoveringFamily(
            codomain=x, members=tuple(random_morphism_into(rng, x, counter=counter) for _ in range(rng.randint(0, 2)))
        )
        return bool(is_covering_family(family)) == bool(is_covering_family(to_fam_point(family)))

    def site_morphism() -> bool:
        return bool(is_covering_family(to_fam_point(cover)))

    def fam_point_specialization() -> bool:
        point = terminal_category()
        y = random_family(rng, point, max_objects=3, counter=counter)
        family = CoveringFamily(
            codomain=y, members=tuple(random_morphism_into(rng, y, counter=counter) for _ in range(rng.randint(0, 2)))
        )
        return bool(is_covering_family(family)) == pi0_surjective(family.shape_maps(), y.shape)

    def coproduct_stability() -> bool:
        induced = fam_coproduct([m.source for m in cover.members], target=c) if cover.members else None
        if induced is None:
            return True
        shape_map = FunctorData(
            induced.obj.shape,
            x.shape,
            {new: cover.members[int(label)].phi.ob(old) for new, (label, old) in induced.union.origin.items()},
            {new: cover.members[int(label)].phi.mor(old) for new, (label, old) in induced.union.morphism_origin.items()},
        )
        return effective_epi_stable_under_coproduct(shape_map, random_groupoid(rng, 2, prefix="z"))

    return {
        "equivalence": equivalence,
        "pullback_stability": pullback_stability,
        "composition": composition,
        "refinement": refinement,
        "shape_invariance": shape_invariance,
        "site_morphism": site_morphism,
        "fam_point_specialization": fam_point_specialization,
        "coproduct_stability": coproduct_stability,
    }


def pretopology_axiom_suite(
    c: FiniteCategory,
    seed: int,
    samples: int = 100,
    budget: Optional[Budget] = None,
) -> AxiomSuiteResult:
    """
    Prüft die Prätopologie-Axiome und die Situs-Eigenschaften auf Zufallsfamilien über C.

    Jede Stichprobe i nutzt ihren eigenen Generator Random(f"{seed}:{i}"),
    das Ergebnis hängt also nur von seed und samples ab. Budget-Überschreitungen
    und fehlende punktweise Limiten werden als "indeterminate" markiert.
    """
    budget = budget or Budget()
    rows = []
    for i in range(samples):
        rng = random.Random(f"{seed}:{i}")
        counter = budget.counter(f"axioms sample {i}")
        try:
            checks = _sample_checks(rng, c, counter)
        except BudgetExceeded:
            rows.append({"sample": i, "axiom": "generation", "status": "indeterminate", "detail": "budget"})
            continue
        for axiom, check in checks.items():
            try:
                status = "pass" if check() else "fail"
                detail = ""
            except BudgetExceeded as exc:
                status, detail = "indeterminate", str(exc)
            except MissingLimitError as exc:
                status, detail = "indeterminate", str(exc)
            rows.append({"sample": i, "axiom": axiom, "status": status, "detail": detail})
            if status == "fail":
                logger.warning("Axiom %s verletzt in Stichprobe %d (seed %d)", axiom, i, seed)
    frame = pd.DataFrame(rows, columns=["sample", "axiom", "status", "detail"])
    result = AxiomSuiteResult(seed=seed, frame=frame)
    logger.info("Axiom-Suite seed=%d: %d Zeilen, alle bestanden: %s", seed, len(frame), result.all_passed)
    return result

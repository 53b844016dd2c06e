import pytest

from services.budget import Budget
from services.errors import PreconditionError
from services.fam.coproduct import fam_coproduct
from services.fam.objects import FamMorphism, FamObject, fam_morphism, g_object_family, identity_fam, sigma_embed
from services.kernel.builders import discrete_category, poset_category, terminal_category, walking_arrow
from services.kernel.category import FiniteCategory
from services.kernel.functor import FunctorData, find_equivalence
from services.kernel.group import cyclic_group
from services.kernel.groupoid import aut_group, chaotic_groupoid, discrete_groupoid, pi0
from services.site import (
    CoveringFamily,
    componentwise_cover,
    equivalence_cover,
    is_covering_family,
    pretopology_axiom_suite,
    pullback_cover,
    to_fam_point,
)


SEED = 1234
AXIOMS = {
    "equivalence",
    "pullback_stability",
    "composition",
    "refinement",
    "shape_invariance",
    "site_morphism",
    "fam_point_specialization",
    "coproduct_stability",
}


def _bz2() -> FamObject:
    return g_object_family(cyclic_group(2), terminal_category(), "*", {"e": "id_*", "g": "id_*"}, name="BZ2")


def _point_into(x: FamObject) -> FamMorphism:
    a = sigma_embed(x.target, "*")
    phi = FunctorData(a.shape, x.shape, {"*": "*"}, {"id_*": "e"})
    return fam_morphism(a, x, phi, {"*": "id_*"}, name="pt")


# ============================================================================
# Überdeckungsprädikat
# ============================================================================

def test_component_inclusions_cover() -> None:
    c = discrete_category(["a", "b"])
    x = fam_coproduct([sigma_embed(c, "a"), sigma_embed(c, "b")]).obj
    cover = componentwise_cover(x)
    assert cover.validate().ok
    assert is_covering_family(cover)


def test_missing_component_is_named() -> None:
    c = discrete_category(["a", "b"])
    x = fam_coproduct([sigma_embed(c, "a"), sigma_embed(c, "b")]).obj
    first = componentwise_cover(x).members[0]
    verdict = is_covering_family(CoveringFamily(codomain=x, members=(first,)))
    assert not verdict
    assert len(verdict.unhit_blocks) == 1


def test_empty_family_covers_only_empty_object() -> None:
    c = walking_arrow()
    empty = fam_coproduct([], target=c).obj
    assert is_covering_family(CoveringFamily(codomain=empty))
    assert not is_covering_family(CoveringFamily(codomain=sigma_embed(c, "0")))


def test_arrows_do_not_matter_for_covering() -> None:
    x = _bz2()
    cover = CoveringFamily(codomain=x, members=(_point_into(x),))
    assert bool(is_covering_family(cover)) == bool(is_covering_family(to_fam_point(cover)))
    assert is_covering_family(equivalence_cover(x))


# ============================================================================
# Zurückziehen
# ============================================================================

def test_pullback_along_identity_gives_chaotic_fiber() -> None:
    x = _bz2()
    cover = CoveringFamily(codomain=x, members=(_point_into(x),), name="pt")
    pulled, verdict = pullback_cover(cover, identity_fam(x))
    assert verdict
    fiber = pulled.members[0].source.shape
    assert len(fiber.objects) == 2
    assert len(pi0(fiber)) == 1
    assert find_equivalence(fiber, chaotic_groupoid(["p", "q"])) is not None


def test_pullback_along_point_gives_discrete_fiber() -> None:
    x = _bz2()
    m = _point_into(x)
    cover = CoveringFamily(codomain=x, members=(m,), name="pt")
    pulled, verdict = pullback_cover(cover, m)
    assert verdict
    fiber = pulled.members[0].source.shape
    assert len(pi0(fiber)) == 2
    assert all(aut_group(fiber, y).order == 1 for y in fiber.objects)
    assert find_equivalence(fiber, discrete_groupoid(["p", "q"])) is not None


def test_pullback_rejects_foreign_morphism() -> None:
    x = _bz2()
    cover = CoveringFamily(codomain=x, members=(_point_into(x),))
    other = sigma_embed(terminal_category(), "*")
    with pytest.raises(PreconditionError):
        pullback_cover(cover, identity_fam(other))


# ============================================================================
# Axiom-Suite
# ============================================================================

@pytest.mark.parametrize(
    "c",
    [terminal_category(), walking_arrow(), poset_category(["a", "b", "m"], [("m", "a"), ("m", "b")])],
    ids=lambda c: c.name,
)
def test_axiom_suite_has_no_failures(c: FiniteCategory) -> None:
    result = pretopology_axiom_suite(c, seed=SEED, samples=100)
    assert result.failures().empty, result.failures()
    assert set(result.frame["axiom"]) <= AXIOMS | {"generation"}
    assert set(result.summary["axiom"]) & AXIOMS


def test_axiom_suite_is_seed_deterministic() -> None:
    first = pretopology_axiom_suite(walking_arrow(), seed=SEED, samples=10)
    second = pretopology_axiom_suite(walking_arrow(), seed=SEED, samples=10)
    assert first.frame.equals(second.frame)


def test_axiom_suite_marks_budget_as_indeterminate() -> None:
    result = pretopology_axiom_suite(walking_arrow(), seed=SEED, samples=5, budget=Budget(enumeration=1))
    assert result.indeterminate
    assert not result.all_passed

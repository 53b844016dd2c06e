import random
from typing import Dict, List

import pytest

from services.budget import Budget
from services.errors import BudgetExceeded, PreconditionError
from services.kernel.cech import cech_nerve, cech_pi0_coequalizer, check_simplicial_identities
from services.kernel.effective import effective_epi_stable_under_coproduct, is_effective_epi, jointly_effective
from services.kernel.functor import FunctorData, find_equivalence
from services.kernel.group import cyclic_group
from services.kernel.groupoid import FiniteGroupoid, delooping, discrete_groupoid, point_groupoid
from utils.random_structures import random_functor, random_groupoid


SEED = 20240
SAMPLES = 200
MAX_OBJECTS = 6


def _union_find_components(g: FiniteGroupoid) -> Dict[str, str]:
    """Unabhängiges Orakel: Wurzel pro Objekt über Pfadkompression."""
    parent = {x: x for x in g.objects}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in g.morphisms.values():
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[max(rs, rt)] = min(rs, rt)
    return {x: find(x) for x in g.objects}


def _oracle_surjective(f: FunctorData) -> bool:
    roots = _union_find_components(f.target)
    hit = {roots[f.ob(x)] for x in f.source.objects}
    return hit == set(roots.values())


def _samples() -> List[FunctorData]:
    rng = random.Random(SEED)
    functors = []
    while len(functors) < SAMPLES:
        source = random_groupoid(rng, MAX_OBJECTS, prefix="x")
        target = random_groupoid(rng, MAX_OBJECTS, prefix="y", min_objects=1)
        f = random_functor(rng, source, target)
        if f is not None:
            functors.append(f)
    return functors


@pytest.fixture(scope="session")
def seeded_functors() -> List[FunctorData]:
    return _samples()


def test_effective_epi_agrees_with_union_find(seeded_functors: List[FunctorData]) -> None:
    disagreements = [
        i for i, f in enumerate(seeded_functors) if bool(is_effective_epi(f)) != _oracle_surjective(f)
    ]
    assert not disagreements


def test_both_verdicts_occur(seeded_functors: List[FunctorData]) -> None:
    # Sonst wäre die Übereinstimmung trivial
    verdicts = {bool(is_effective_epi(f)) for f in seeded_functors}
    assert verdicts == {True, False}


def test_refuted_verdict_names_unhit_block() -> None:
    target = discrete_groupoid(["a", "b"])
    f = FunctorData(point_groupoid("a"), target, {"a": "a"}, {"id_a": "id_a"})
    verdict = is_effective_epi(f)
    assert not verdict
    assert verdict.witness()["unhit_block"] == "b"


def test_joint_family_covers_where_members_do_not() -> None:
    target = discrete_groupoid(["a", "b"])
    fa = FunctorData(point_groupoid("a"), target, {"a": "a"}, {"id_a": "id_a"})
    fb = FunctorData(point_groupoid("b"), target, {"b": "b"}, {"id_b": "id_b"})
    assert not is_effective_epi(fa)
    assert jointly_effective([fa, fb])


def test_empty_family_needs_codomain() -> None:
    with pytest.raises(PreconditionError):
        jointly_effective([])
    assert jointly_effective([], codomain=discrete_groupoid([]))
    verdict = jointly_effective([], codomain=discrete_groupoid(["a"]))
    assert verdict.unhit_blocks == ("a",)


def test_coproduct_with_preserves_effective_epis(seeded_functors: List[FunctorData]) -> None:
    rng = random.Random(SEED + 1)
    for f in seeded_functors[:40]:
        z = random_groupoid(rng, 2, prefix="z")
        assert effective_epi_stable_under_coproduct(f, z)


# ============================================================================
# Čech-Nerv
# ============================================================================

@pytest.fixture(scope="session")
def point_into_bz2() -> FunctorData:
    bz2 = delooping(cyclic_group(2))
    pt = point_groupoid()
    return FunctorData(pt, bz2, {"*": "*"}, {"id_*": "e"})


def test_cech_level_one_is_discrete_pair(point_into_bz2: FunctorData) -> None:
    levels = cech_nerve(point_into_bz2, 2)
    level1 = levels[1].groupoid
    assert len(level1.objects) == 2
    assert find_equivalence(level1, discrete_groupoid(["0", "1"])) is not None


def test_cech_simplicial_identities_hold(point_into_bz2: FunctorData) -> None:
    levels = cech_nerve(point_into_bz2, 2)
    assert [len(level.faces) for level in levels] == [1, 2, 3]
    assert check_simplicial_identities(levels).ok


def test_cech_pi0_coequalizer_matches_image(point_into_bz2: FunctorData) -> None:
    consistency = cech_pi0_coequalizer(point_into_bz2)
    assert consistency.consistent
    assert consistency.effective


def test_cech_budget_is_indeterminate(point_into_bz2: FunctorData) -> None:
    with pytest.raises(BudgetExceeded):
        cech_nerve(point_into_bz2, 3, Budget(cech_objects=3))

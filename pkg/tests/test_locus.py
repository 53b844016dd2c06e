import itertools
from typing import List

import pytest

from services.locus import (
    PointedSetFamily,
    RetractionDiagram,
    compose_diagram_morphisms,
    compose_family_morphisms,
    counit_iso,
    enumerate_diagram_morphisms,
    enumerate_family_morphisms,
    enumerate_pointed_families,
    enumerate_retraction_diagrams,
    functor_F,
    functor_F_on_morphism,
    functor_G,
    functor_G_on_morphism,
    pi0_corollary_check,
    roundtrip_check,
    unit_iso,
)


SEED = 99


def _two_fibers() -> RetractionDiagram:
    return RetractionDiagram(
        base=("p", "q"),
        total=("p0", "p1", "q0"),
        s={"p": "p0", "q": "q0"},
        r={"p0": "p", "p1": "p", "q0": "q"},
        name="two_fibers",
    )


@pytest.fixture(scope="module")
def diagrams() -> List[RetractionDiagram]:
    return list(enumerate_retraction_diagrams(4))


@pytest.fixture(scope="module")
def families() -> List[PointedSetFamily]:
    return list(enumerate_pointed_families(3, 3))


def test_enumeration_sizes(diagrams: List[RetractionDiagram], families: List[PointedSetFamily]) -> None:
    # Summe über geordnete Zerlegungen von n ≤ 4 des Produkts der Teile
    assert len(diagrams) == 34
    assert len(families) == 1 + 3 + 9 + 27
    assert all(x.validate().ok for x in diagrams)
    assert all(fam.validate().ok for fam in families)


def test_F_takes_fibers_pointed_by_section() -> None:
    fam = functor_F(_two_fibers())
    assert fam.indices == ("p", "q")
    assert fam.carriers == {"p": ("p0", "p1"), "q": ("q0",)}
    assert fam.basepoints == {"p": "p0", "q": "q0"}


def test_G_is_a_retraction() -> None:
    fam = PointedSetFamily(indices=("i", "j"), carriers={"i": ("a", "b"), "j": ("c",)}, basepoints={"i": "b", "j": "c"})
    x = functor_G(fam)
    assert x.validate().ok
    assert len(x.total) == 3
    assert x.r[x.s["i"]] == "i"


def test_exhaustive_roundtrip(diagrams: List[RetractionDiagram], families: List[PointedSetFamily]) -> None:
    report = roundtrip_check(diagrams, families, seed=SEED, morphism_samples=50)
    assert report.diagrams == len(diagrams)
    assert report.families == len(families)
    assert report.naturality_checked > 0
    assert report.holds, report.failures


def test_roundtrip_components_are_valid_morphisms() -> None:
    x = _two_fibers()
    assert unit_iso(x).validate().ok
    assert counit_iso(functor_F(x)).validate().ok


def test_pi0_corollary_on_all_small_diagrams(diagrams: List[RetractionDiagram]) -> None:
    failing = [x.name for x in diagrams if not pi0_corollary_check(x).holds]
    assert not failing


def test_pi0_corollary_counts_base() -> None:
    corollary = pi0_corollary_check(_two_fibers())
    assert corollary.base_size == corollary.components == 2


def test_F_is_functorial_on_morphisms(diagrams: List[RetractionDiagram]) -> None:
    small = [x for x in diagrams if len(x.total) <= 2]
    for x, y, z in itertools.product(small, repeat=3):
        for m1 in itertools.islice(enumerate_diagram_morphisms(x, y), 4):
            assert m1.validate().ok
            assert functor_F_on_morphism(m1).validate().ok
            for m2 in itertools.islice(enumerate_diagram_morphisms(y, z), 4):
                composite = functor_F_on_morphism(compose_diagram_morphisms(m2, m1))
                stepwise = compose_family_morphisms(functor_F_on_morphism(m2), functor_F_on_morphism(m1))
                assert composite.same_as(stepwise)


def test_G_is_functorial_on_morphisms(families: List[PointedSetFamily]) -> None:
    small = [fam for fam in families if len(fam.indices) <= 2 and all(len(c) <= 2 for c in fam.carriers.values())]
    for a, b, c in itertools.product(small[:6], repeat=3):
        for u1 in itertools.islice(enumerate_family_morphisms(a, b), 4):
            assert u1.validate().ok
            assert functor_G_on_morphism(u1).validate().ok
            for u2 in itertools.islice(enumerate_family_morphisms(b, c), 4):
                composite = functor_G_on_morphism(compose_family_morphisms(u2, u1))
                stepwise = compose_diagram_morphisms(functor_G_on_morphism(u2), functor_G_on_morphism(u1))
                assert composite.same_as(stepwise)


def test_broken_section_is_reported() -> None:
    x = RetractionDiagram(base=("p", "q"), total=("e",), s={"p": "e", "q": "e"}, r={"e": "p"})
    report = x.validate()
    assert report.has("retraction")
    assert any(v.instance == ["q"] for v in report.violations)

import random
from typing import Dict, List, Optional

import pytest

from services.errors import MissingLimitError, PreconditionError, UnsupportedIndexError
from services.fam.colimit import FamDiagram, fam_colimit, verify_colimit_universality
from services.fam.coproduct import copair, decompose_connected, fam_coproduct
from services.fam.extensivity import extensivity_check, small_families
from services.fam.hom import count_fam_morphisms
from services.fam.limit import (
    fam_limit,
    fam_product,
    fam_pullback,
    fam_terminal,
    product_pairing,
    sigma_left_exactness_check,
    terminal_morphism,
    verify_limit_universality,
)
from services.fam.objects import (
    FamMorphism,
    FamObject,
    compose_fam,
    fam_morphism,
    fam_morphisms_equal,
    fam_object,
    g_object_family,
    identity_fam,
    is_connected_fam,
    sigma_embed,
    sigma_on_morphism,
    validate_fam,
)
from services.kernel.builders import discrete_category, poset_category, terminal_category, walking_arrow
from services.kernel.category import FiniteCategory
from services.kernel.functor import FunctorData
from services.kernel.group import FiniteGroup, cyclic_group
from services.kernel.groupoid import aut_group, delooping, discrete_groupoid, pi0
from utils.random_structures import random_family, random_morphism_into


SEED = 4711
UNIVERSALITY_SAMPLES = 50
COLIMIT_SAMPLES = 12
Z2 = cyclic_group(2)
Z3 = cyclic_group(3)


def _diamond() -> FiniteCategory:
    """m ≤ a, b ≤ c: alle Meets existieren."""
    return poset_category(["a", "b", "c", "m"], [("m", "a"), ("m", "b"), ("a", "c"), ("b", "c")])


def _cospan_poset() -> FiniteCategory:
    return poset_category(["a", "b", "c"], [("a", "c"), ("b", "c")])


def _bz2_point() -> FamObject:
    """B(Z/2)-förmige Familie über der terminalen Kategorie."""
    c = terminal_category()
    return g_object_family(Z2, c, "*", {"e": "id_*", "g": "id_*"}, name="BZ2")


def _bz2_point_over(c: FiniteCategory) -> FamObject:
    return g_object_family(Z2, c, "a", {"e": "id_a", "g": "id_a"}, name="BZ2·a")


def _point_into_bz2() -> FamMorphism:
    x = _bz2_point()
    a = sigma_embed(x.target, "*")
    phi = FunctorData(a.shape, x.shape, {"*": "*"}, {"id_*": "e"})
    return fam_morphism(a, x, phi, {"*": "id_*"}, name="pt→BZ2")


# ============================================================================
# Koprodukte und Zerlegung
# ============================================================================

def test_coproduct_is_disjoint_union_with_valid_injections() -> None:
    c = discrete_category(["a", "b"])
    result = fam_coproduct([sigma_embed(c, "a"), sigma_embed(c, "b")])
    assert len(result.obj.shape.objects) == 2
    assert validate_fam(result.obj).ok
    assert all(validate_fam(inj).ok for inj in result.injections)
    assert sorted(result.obj.at(x) for x in result.obj.shape.objects) == ["a", "b"]


def test_empty_coproduct_needs_target() -> None:
    with pytest.raises(PreconditionError):
        fam_coproduct([])
    empty = fam_coproduct([], target=walking_arrow())
    assert not empty.obj.shape.objects


def test_copair_restricts_to_legs() -> None:
    c = walking_arrow()
    result = fam_coproduct([sigma_embed(c, "0"), sigma_embed(c, "1")])
    top = sigma_embed(c, "1")
    legs = [sigma_on_morphism(c, "0<=1"), identity_fam(top)]
    paired = copair(result, legs)
    assert validate_fam(paired).ok
    assert sorted(paired.components.values()) == ["0<=1", "1<=1"]


def test_decomposition_into_connected_components() -> None:
    c = discrete_category(["a", "b"])
    coproduct = fam_coproduct([sigma_embed(c, "a"), sigma_embed(c, "b"), _bz2_point_over(c)])
    certificate = decompose_connected(coproduct.obj)
    assert len(certificate.components) == 3
    assert all(is_connected_fam(comp) for comp in certificate.components)
    assert certificate.check().ok


# ============================================================================
# Kolimiten
# ============================================================================

def _constant_over_bz2() -> FamDiagram:
    """Triviale Wirkung von Z/2 auf σ(*)."""
    k = delooping(Z2)
    point = sigma_embed(terminal_category(), "*")
    ident = identity_fam(point)
    return FamDiagram(index=k, values={"*": point}, maps={"e": ident, "g": ident}, name="const")


def test_colimit_over_bz2_is_homotopy_quotient() -> None:
    d = _constant_over_bz2()
    result = fam_colimit(d.index, d)
    shape = result.obj.shape
    assert len(pi0(shape)) == 1
    assert aut_group(shape, shape.objects[0]).order == 2


def test_colimit_over_bz2_is_universal() -> None:
    d = _constant_over_bz2()
    result = fam_colimit(d.index, d)
    report = verify_colimit_universality(result, small_families(terminal_category(), 1))
    assert report.competitors > 0
    assert report.holds, report.failures


def test_discrete_colimit_agrees_with_coproduct() -> None:
    c = discrete_category(["a", "b"])
    k = discrete_groupoid(["a", "b"])
    values = {"a": sigma_embed(c, "a"), "b": sigma_embed(c, "b")}
    d = FamDiagram(index=k, values=values, maps={"id_a": identity_fam(values["a"]), "id_b": identity_fam(values["b"])})
    result = fam_colimit(k, d)
    assert len(pi0(result.obj.shape)) == 2
    coproduct = fam_coproduct(list(values.values()))
    assert count_fam_morphisms(result.obj, coproduct.obj) == count_fam_morphisms(coproduct.obj, coproduct.obj)


def test_colimit_rejects_non_groupoid_index() -> None:
    k = walking_arrow()
    d = FamDiagram(index=k, values={}, maps={})
    with pytest.raises(UnsupportedIndexError):
        fam_colimit(k, d)


def test_colimit_rejects_non_functorial_diagram() -> None:
    k = delooping(Z2)
    point = sigma_embed(terminal_category(), "*")
    d = FamDiagram(index=k, values={"*": point}, maps={"e": identity_fam(point)})
    with pytest.raises(PreconditionError):
        fam_colimit(k, d)


def _random_action(rng: random.Random, group: FiniteGroup, c: FiniteCategory, max_points: int = 3) -> FamDiagram:
    """Z/n wirkt auf eine diskrete Familie durch eine zufällige Permutation der Punkte."""
    n = group.order
    points = [f"p{i}" for i in range(rng.randint(1, max_points))]
    order = rng.sample(points, len(points))
    sigma = {x: x for x in points}
    for k in range(rng.randint(0, len(points) // n)):
        cycle = order[k * n:(k + 1) * n]
        sigma.update(zip(cycle, cycle[1:] + cycle[:1]))
    label: Dict[str, str] = {}
    for x in order:
        if x in label:
            continue
        y, obj = x, rng.choice(c.objects)
        while y not in label:
            label[y] = obj
            y = sigma[y]
    shape = discrete_groupoid(points)
    value = fam_object(shape, c, label, {shape.identity(x): c.identity(label[x]) for x in points}, name="P")
    components = {x: c.identity(label[x]) for x in points}
    maps, power = {}, {x: x for x in points}
    # Element k von Z/n wirkt als σ^k
    for g in group.elements:
        phi = FunctorData(shape, shape, dict(power), {shape.identity(x): shape.identity(power[x]) for x in points})
        maps[g] = fam_morphism(value, value, phi, components, name=g)
        power = {x: sigma[power[x]] for x in points}
    return FamDiagram(index=delooping(group), values={"*": value}, maps=maps, name=f"{group.name}·{len(points)}")


def _random_discrete_diagram(rng: random.Random, c: FiniteCategory) -> FamDiagram:
    k = discrete_groupoid(["i", "j"])
    values = {j: random_family(rng, c, max_objects=2, prefix=j) for j in k.objects}
    maps = {k.identity(j): identity_fam(values[j]) for j in k.objects}
    return FamDiagram(index=k, values=values, maps=maps, name="i⊔j")


@pytest.mark.parametrize("group", [None, Z2, Z3], ids=["discrete", "BZ2", "BZ3"])
def test_seeded_colimits_are_universal(group: Optional[FiniteGroup]) -> None:
    rng = random.Random(SEED)
    c = walking_arrow()
    tests = small_families(c, 1)
    failures: List[str] = []
    for i in range(COLIMIT_SAMPLES):
        d = _random_discrete_diagram(rng, c) if group is None else _random_action(rng, group, c)
        result = fam_colimit(d.index, d)
        assert validate_fam(result.obj).ok
        report = verify_colimit_universality(result, tests)
        if not report.holds:
            failures.append(f"#{i} {d.name}: {report.failures}")
    assert not failures


# ============================================================================
# Limiten
# ============================================================================

def test_terminal_is_sigma_of_terminal_object() -> None:
    c = walking_arrow()
    result = fam_terminal(c)
    assert result.obj.at("*") == "1"
    report = verify_limit_universality(result, small_families(c, 1))
    assert report.holds, report.failures


def test_every_family_maps_uniquely_to_terminal() -> None:
    c = walking_arrow()
    result = fam_terminal(c)
    for f in small_families(c, 2):
        m = terminal_morphism(f, result)
        assert validate_fam(m).ok
        assert count_fam_morphisms(f, result.obj) == 1


def test_terminal_missing_raises() -> None:
    with pytest.raises(MissingLimitError):
        fam_limit("terminal", discrete_category(["a", "b"]))


def test_product_of_bz2_families_has_klein_automorphisms() -> None:
    x = _bz2_point()
    result = fam_product([x, x])
    shape = result.obj.shape
    assert len(shape.objects) == 1
    assert aut_group(shape, shape.objects[0]).order == 4
    assert validate_fam(result.obj).ok


def test_product_in_diamond_is_meet() -> None:
    c = _diamond()
    result = fam_limit("product", members=[sigma_embed(c, "a"), sigma_embed(c, "b")])
    assert result.obj.at(result.obj.shape.objects[0]) == "m"
    report = verify_limit_universality(result, [sigma_embed(c, x) for x in c.objects])
    assert report.holds, report.failures


def test_product_pairing_recovers_legs() -> None:
    c = _diamond()
    result = fam_product([sigma_embed(c, "a"), sigma_embed(c, "b")])
    legs = [sigma_on_morphism(c, c.hom("m", x)[0]) for x in ("a", "b")]
    pairing = product_pairing(result, legs)
    assert validate_fam(pairing).ok
    for projection, leg in zip(result.projections, legs):
        assert fam_morphisms_equal(compose_fam(projection, pairing), leg)


def test_pullback_of_points_over_bz2_is_discrete_pair() -> None:
    m = _point_into_bz2()
    result = fam_limit("pullback", legs=[m, m])
    shape = result.obj.shape
    assert len(shape.objects) == 2
    assert len(pi0(shape)) == 2
    report = verify_limit_universality(result, small_families(terminal_category(), 1))
    assert report.holds, report.failures


def test_pullback_missing_in_cospan_poset() -> None:
    c = _cospan_poset()
    with pytest.raises(MissingLimitError) as excinfo:
        fam_pullback(sigma_on_morphism(c, "a<=c"), sigma_on_morphism(c, "b<=c"))
    assert "a<=c" in str(excinfo.value)


def test_pullback_rejects_different_codomains() -> None:
    c = walking_arrow()
    with pytest.raises(PreconditionError):
        fam_pullback(sigma_on_morphism(c, "0<=1"), sigma_on_morphism(c, "0<=0"))


def test_seeded_pullbacks_are_universal() -> None:
    rng = random.Random(SEED)
    c = _diamond()
    tests = [sigma_embed(c, x) for x in c.objects]
    failures: List[str] = []
    for i in range(UNIVERSALITY_SAMPLES):
        base = random_family(rng, c, max_objects=2, min_objects=1)
        left = random_morphism_into(rng, base, max_objects=2, prefix="l")
        right = random_morphism_into(rng, base, max_objects=2, prefix="r")
        result = fam_pullback(left, right)
        assert validate_fam(result.obj).ok
        report = verify_limit_universality(result, tests)
        if not report.holds:
            failures.append(f"#{i}: {report.failures}")
    assert not failures


def test_seeded_products_are_universal() -> None:
    rng = random.Random(SEED)
    c = _diamond()
    tests = [sigma_embed(c, x) for x in c.objects]
    failures: List[str] = []
    for i in range(UNIVERSALITY_SAMPLES):
        members = [random_family(rng, c, max_objects=2, min_objects=1, prefix=p) for p in ("l", "r")]
        result = fam_product(members)
        assert validate_fam(result.obj).ok
        report = verify_limit_universality(result, tests)
        assert report.competitors > 0
        if not report.holds:
            failures.append(f"#{i}: {report.failures}")
    assert not failures


@pytest.mark.parametrize("c", [terminal_category(), walking_arrow(), _diamond()], ids=lambda c: c.name)
def test_sigma_is_left_exact(c: FiniteCategory) -> None:
    report = sigma_left_exactness_check(c)
    assert report.holds
    assert report.products


# ============================================================================
# Extensivität
# ============================================================================

def test_extensivity_over_walking_arrow() -> None:
    c = walking_arrow()
    report = extensivity_check(sigma_embed(c, "0"), sigma_embed(c, "1"))
    assert report.pairs_checked > 0
    assert report.objects_checked == report.slice_sizes["c1⊔c2"]
    assert report.holds, (report.hom_mismatches, report.unsplit)


def test_extensivity_with_empty_summand() -> None:
    c = walking_arrow()
    empty = fam_coproduct([], target=c).obj
    report = extensivity_check(empty, sigma_embed(c, "1"), universe=small_families(c, 1))
    assert report.holds

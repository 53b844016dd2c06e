import itertools
from typing import List, Optional

import pytest

from services import homotopy
from services.errors import PreconditionError, UnsupportedIndexError
from services.fam.colimit import FamDiagram, fam_colimit
from services.fam.coproduct import fam_coproduct
from services.fam.objects import FamObject, fam_morphism, fam_object, g_object_family, identity_fam, sigma_embed
from services.homotopy import (
    adjunction_check,
    basepoint_change_iso,
    path_variance_conjugator,
    pi1,
    pi1_colimit_preservation_check,
    pi1_homomorphism,
    pointed_at,
    shape_of,
    tau0,
    tau0_groupoid,
    tau_le_1,
)
from services.kernel.builders import terminal_category, walking_arrow, walking_retraction
from services.kernel.category import FiniteCategory
from services.kernel.edge_path import edge_path_pi1
from services.kernel.functor import FunctorData
from services.kernel.group import FiniteGroup, cyclic_group, direct_product, find_group_isomorphism
from services.kernel.groupoid import FiniteGroupoid, chaotic_groupoid, connected_groupoid, delooping, discrete_groupoid


Z2 = cyclic_group(2)
Z3 = cyclic_group(3)
KLEIN = direct_product(Z2, Z2)


def _over_terminal(shape: FiniteGroupoid, name: str = "") -> FamObject:
    """Form mit dem einzigen Pfeil in die terminale Kategorie."""
    c = terminal_category()
    return fam_object(shape, c, {x: "*" for x in shape.objects}, {m: "id_*" for m in shape.morphisms}, name=name)


# ============================================================================
# Adjunktion Π∞|₀ ⊣ Δ
# ============================================================================

def _zero_truncated_families(c: FiniteCategory) -> List[FamObject]:
    points = fam_coproduct([sigma_embed(c, x) for x in c.objects]).obj
    first = c.objects[0]
    chaotic = chaotic_groupoid(["x", "y"])
    glued = fam_object(
        chaotic,
        c,
        {x: first for x in chaotic.objects},
        {m: c.identity(first) for m in chaotic.morphisms},
        name="chaotic",
    )
    return [points, glued, fam_coproduct([points, glued]).obj]


@pytest.mark.parametrize("c", [terminal_category(), walking_arrow(), walking_retraction()], ids=lambda c: c.name)
@pytest.mark.parametrize("size", [1, 2, 3])
def test_adjunction_bijection_and_naturality(c: FiniteCategory, size: int) -> None:
    index = [f"i{k}" for k in range(size)]
    for f in _zero_truncated_families(c):
        report = adjunction_check(f, index, seed=7, samples=20)
        assert report.fam_side == report.expected == size ** report.components
        assert report.naturality_checked > 0
        assert report.holds, report.naturality_failures


def test_adjunction_rejects_non_truncated_family() -> None:
    f = g_object_family(Z2, terminal_category(), "*", {"e": "id_*", "g": "id_*"})
    with pytest.raises(PreconditionError):
        adjunction_check(f, ["i0"])


def test_tau0_collapses_automorphisms() -> None:
    f = _over_terminal(connected_groupoid(["a", "b"], Z3))
    assert len(tau0(f)) == 1
    truncated, projection = tau0_groupoid(f)
    assert len(truncated.objects) == 1
    assert projection.source.same_as(f.shape)
    assert shape_of(f).same_as(f.shape)
    assert tau_le_1(f).same_as(f.shape)


# ============================================================================
# Fundamentalgruppen
# ============================================================================

@pytest.mark.parametrize(
    "shape, base, group",
    [
        (delooping(Z2), "*", Z2),
        (delooping(Z3), "*", Z3),
        (delooping(KLEIN), "*", KLEIN),
        (connected_groupoid(["a", "b"], Z2), "a", Z2),
        (connected_groupoid(["a", "b"], Z3), "b", Z3),
        (connected_groupoid(["a", "b"], KLEIN), "a", KLEIN),
    ],
    ids=["BZ2", "BZ3", "BKlein", "Z2@2", "Z3@2", "Klein@2"],
)
def test_pi1_agrees_with_edge_path_group(shape: FiniteGroupoid, base: str, group: FiniteGroup) -> None:
    p = pointed_at(_over_terminal(shape), base)
    assert p.validate().ok
    automorphisms = pi1(p)
    presented = edge_path_pi1(shape, base)
    assert automorphisms.order == presented.order == group.order
    assert find_group_isomorphism(automorphisms, presented) is not None
    assert find_group_isomorphism(automorphisms, group) is not None


def test_pointed_at_rejects_unknown_object() -> None:
    with pytest.raises(PreconditionError):
        pointed_at(_over_terminal(delooping(Z2)), "nowhere")


def test_pi1_homomorphism_of_point_inclusion_is_trivial() -> None:
    target = _over_terminal(delooping(Z2), name="BZ2")
    source = sigma_embed(target.target, "*")
    phi = FunctorData(source.shape, target.shape, {"*": "*"}, {"id_*": "e"})
    m = fam_morphism(source, target, phi, {"*": "id_*"})
    hom = pi1_homomorphism(m, pointed_at(source, "*"))
    assert hom.is_homomorphism()
    assert set(hom.as_dict().values()) == {"e"}


@pytest.mark.parametrize("group", [Z2, Z3, KLEIN], ids=lambda g: g.name)
def test_basepoint_change_is_group_isomorphism(group: FiniteGroup) -> None:
    f = _over_terminal(connected_groupoid(["a", "b", "c"], group))
    for x0, x1 in itertools.product(f.shape.objects, repeat=2):
        iso = basepoint_change_iso(f, x0, x1)
        assert iso.validate().ok
        assert iso.compose(iso.inverse()).is_homomorphism()


def test_basepoint_change_requires_connected_shape() -> None:
    f = _over_terminal(discrete_groupoid(["a", "b"]))
    with pytest.raises(PreconditionError):
        basepoint_change_iso(f, "a", "b")


@pytest.mark.parametrize("group", [Z2, Z3, KLEIN], ids=lambda g: g.name)
def test_path_variance_is_inner(group: FiniteGroup) -> None:
    f = _over_terminal(connected_groupoid(["a", "b", "c"], group))
    assert path_variance_conjugator(f, "a", "b", "c") is not None


# ============================================================================
# Π₁ und Kolimiten
# ============================================================================

def _trivial_action(group: FiniteGroup, value: Optional[FamObject] = None) -> FamDiagram:
    k = delooping(group)
    point = value if value is not None else sigma_embed(terminal_category(), "*")
    ident = identity_fam(point)
    return FamDiagram(index=k, values={"*": point}, maps={g: ident for g in group.elements}, name="const")


def _swap_action() -> FamDiagram:
    value = _over_terminal(discrete_groupoid(["p", "q"]), name="pq")
    shape = value.shape
    swap = FunctorData(shape, shape, {"p": "q", "q": "p"}, {"id_p": "id_q", "id_q": "id_p"})
    maps = {"e": identity_fam(value), "g": fam_morphism(value, value, swap, {"p": "id_*", "q": "id_*"})}
    return FamDiagram(index=delooping(Z2), values={"*": value}, maps=maps, name="swap")


@pytest.mark.parametrize("group", [Z2, Z3], ids=lambda g: g.name)
def test_pi1_preserves_colimit_over_bg(group: FiniteGroup) -> None:
    d = _trivial_action(group)
    basepoint = fam_colimit(d.index, d).obj.shape.objects[0]
    report = pi1_colimit_preservation_check(d.index, d, basepoint=basepoint)
    assert report.oracle == "orbit_stabilizer"
    assert report.pi1_order == report.expected_pi1_order == group.order
    assert report.holds


def test_free_action_has_trivial_pi1() -> None:
    d = _swap_action()
    report = pi1_colimit_preservation_check(d.index, d)
    assert report.colimit_objects == 2
    assert report.colimit_pi0 == report.shape_pi0 == 1
    assert not report.pi1_mismatches
    assert report.holds


def test_stabilizer_and_fiber_automorphisms_multiply() -> None:
    d = _trivial_action(Z3, _over_terminal(delooping(Z2), name="BZ2"))
    basepoint = fam_colimit(d.index, d).obj.shape.objects[0]
    report = pi1_colimit_preservation_check(d.index, d, basepoint=basepoint)
    assert report.expected_pi1_order == 6
    assert report.holds


def test_wrong_colimit_is_detected(monkeypatch) -> None:
    d = _trivial_action(Z2)
    wrong = fam_colimit(delooping(Z3), _trivial_action(Z3))
    monkeypatch.setattr(homotopy, "fam_colimit", lambda k, diagram: wrong)
    report = pi1_colimit_preservation_check(d.index, d)
    assert report.pi1_mismatches
    assert not report.holds


def test_pi1_preserves_coproducts() -> None:
    c = terminal_category()
    k = discrete_groupoid(["a", "b"])
    values = {"a": sigma_embed(c, "*"), "b": _over_terminal(delooping(Z2), name="BZ2")}
    d = FamDiagram(index=k, values=values, maps={"id_a": identity_fam(values["a"]), "id_b": identity_fam(values["b"])})
    basepoint = next(x for x in fam_colimit(k, d).obj.shape.objects if "b" in x)
    report = pi1_colimit_preservation_check(k, d, basepoint=basepoint)
    assert report.oracle == "disjoint_union"
    assert report.equivalent
    assert report.colimit_pi0 == report.shape_pi0 == 2
    assert report.pi1_order == 2
    assert report.pi1_isomorphic
    assert report.holds


def test_pi1_colimit_check_rejects_general_index() -> None:
    k = connected_groupoid(["a", "b"], Z2)
    with pytest.raises(UnsupportedIndexError):
        pi1_colimit_preservation_check(k, FamDiagram(index=k, values={}, maps={}))

import itertools
import random
from dataclasses import replace
from typing import Callable, List, Tuple

import pytest

from services.budget import BudgetCounter
from services.errors import BudgetExceeded, PreconditionError
from services.kernel.builders import (
    discrete_category,
    poset_category,
    pointed_set_skeleton,
    terminal_category,
    walking_arrow,
    walking_retraction,
)
from services.kernel.category import FiniteCategory, find_terminal, validate_category
from services.kernel.functor import (
    FunctorData,
    NatTransData,
    compose_functors,
    enumerate_functors,
    enumerate_nat_trans,
    find_equivalence,
    identity_functor,
    validate_functor,
)
from services.kernel.group import cyclic_group, direct_product, find_group_isomorphism, trivial_group
from services.kernel.grothendieck import action_groupoid
from services.kernel.groupoid import (
    FiniteGroupoid,
    aut_group,
    chaotic_groupoid,
    connected_groupoid,
    delooping,
    discrete_groupoid,
    groupoid_from_category,
    pi0,
    validate_groupoid,
)
from services.kernel.limits import Diagram, brute_force_limit
from services.kernel.pullback import IsoCommaPullback, iso_comma_pullback
from utils.random_structures import random_functor, random_groupoid


Z2 = cyclic_group(2)
Z3 = cyclic_group(3)
SEED = 4711
ISO_COMMA_SAMPLES = 10


def _valid_fixtures() -> List[FiniteCategory]:
    return [
        terminal_category(),
        discrete_category(["a", "b", "c"]),
        walking_arrow(),
        poset_category(["a", "b", "c"], [("a", "b"), ("b", "c")]),
        walking_retraction(),
        pointed_set_skeleton(2),
        delooping(Z2),
        delooping(Z3),
        connected_groupoid(["a", "b"], Z2),
        delooping(direct_product(Z2, Z2)),
    ]


def _drop(table: dict, key) -> dict:
    copy = dict(table)
    copy.pop(key)
    return copy


def _set(table: dict, key, value) -> dict:
    copy = dict(table)
    copy[key] = value
    return copy


# (Beschreibung, Mutation, erwartete Regel, erwartete IDs in der Instanz)
MUTATIONS: List[Tuple[str, Callable[[], FiniteCategory], str, List[str]]] = [
    (
        "Komposition fehlt",
        lambda: replace(walking_arrow(), composition=_drop(walking_arrow().composition, ("1<=1", "0<=1"))),
        "closure",
        ["1<=1", "0<=1"],
    ),
    (
        "rechte Identität",
        lambda: replace(delooping(Z2), composition=_set(delooping(Z2).composition, ("g", "e"), "e")),
        "right_identity",
        ["g"],
    ),
    (
        "Assoziativität",
        lambda: replace(delooping(Z3), composition=_set(delooping(Z3).composition, ("g", "g"), "e")),
        "associativity",
        ["g"],
    ),
    (
        "unbekannter Morphismus in der Tabelle",
        lambda: replace(walking_arrow(), composition=_set(walking_arrow().composition, ("0<=1", "0<=0"), "ghost")),
        "unknown_morphism",
        ["ghost"],
    ),
    (
        "Identität fehlt",
        lambda: replace(walking_arrow(), identities=_drop(walking_arrow().identities, "1")),
        "missing_identity",
        ["1"],
    ),
    (
        "Identität mit falschen Endpunkten",
        lambda: replace(walking_arrow(), identities=_set(walking_arrow().identities, "0", "0<=1")),
        "identity_endpoints",
        ["0", "0<=1"],
    ),
    (
        "Morphismus mit unbekanntem Objekt",
        lambda: replace(terminal_category(), morphisms=_set(terminal_category().morphisms, "loose", ("*", "nowhere"))),
        "unknown_object",
        ["loose", "nowhere"],
    ),
    (
        "Komposit mit falschen Endpunkten",
        lambda: replace(walking_arrow(), composition=_set(walking_arrow().composition, ("0<=1", "0<=0"), "1<=1")),
        "composite_endpoints",
        ["0<=1", "0<=0", "1<=1"],
    ),
    (
        "nicht komponierbares Paar eingetragen",
        lambda: replace(walking_arrow(), composition=_set(walking_arrow().composition, ("0<=0", "1<=1"), "0<=0")),
        "composable",
        ["0<=0", "1<=1"],
    ),
    (
        "falsches Inverses",
        lambda: replace(delooping(Z3), inverses=_set(delooping(Z3).inverses, "g", "g")),
        "left_inverse",
        ["g"],
    ),
]


@pytest.mark.parametrize("c", _valid_fixtures(), ids=lambda c: c.name)
def test_valid_fixtures_pass(c: FiniteCategory) -> None:
    report = validate_groupoid(c) if hasattr(c, "inverses") else validate_category(c)
    assert report.ok, report.violations


@pytest.mark.parametrize("label, mutate, rule, instance", MUTATIONS, ids=[m[0] for m in MUTATIONS])
def test_mutated_fixture_names_instance(label: str, mutate, rule: str, instance: List[str]) -> None:
    c = mutate()
    report = validate_groupoid(c) if hasattr(c, "inverses") else validate_category(c)
    assert not report.ok
    matching = [v for v in report.violations if v.rule == rule]
    assert matching, f"{label}: {report.rules()}"
    # Die verletzte Instanz muss alle erwarteten IDs nennen
    assert any(set(instance) <= set(v.instance) for v in matching)


def test_validation_report_is_order_independent() -> None:
    c = walking_arrow()
    shuffled = replace(c, composition=dict(reversed(list(c.composition.items()))))
    broken_a = replace(c, composition=_drop(c.composition, ("1<=1", "0<=1")))
    broken_b = replace(shuffled, composition=_drop(shuffled.composition, ("1<=1", "0<=1")))
    assert validate_category(broken_a).violations == validate_category(broken_b).violations


def test_reference_and_axiom_kinds_are_separated() -> None:
    c = replace(walking_arrow(), composition=_set(walking_arrow().composition, ("0<=1", "0<=0"), "ghost"))
    report = validate_category(c)
    assert {v.kind for v in report.violations if v.rule == "unknown_morphism"} == {"reference"}
    frame = report.to_frame()
    assert list(frame.columns) == ["kind", "rule", "instance", "message"]


def test_groupoid_from_category_rejects_non_invertible() -> None:
    with pytest.raises(PreconditionError):
        groupoid_from_category(walking_arrow())
    g = groupoid_from_category(discrete_category(["a", "b"]))
    assert validate_groupoid(g).ok


# ============================================================================
# Funktoren
# ============================================================================

def test_identity_functor_valid_and_broken_functor_reported() -> None:
    c = walking_retraction()
    assert validate_functor(identity_functor(c)).ok

    broken = FunctorData(
        source=c,
        target=c,
        object_map={x: x for x in c.objects},
        morphism_map={**{m: m for m in c.morphisms}, "e": "id1"},
    )
    report = validate_functor(broken)
    assert report.has("composition")


def test_functor_enumeration_counts() -> None:
    bz2 = delooping(Z2)
    # Endomorphismen von Z/2
    assert sum(1 for _ in enumerate_functors(bz2, bz2)) == 2
    # Monotone Selbstabbildungen der 2-Kette
    arrow = walking_arrow()
    assert sum(1 for _ in enumerate_functors(arrow, arrow)) == 3


def test_functor_enumeration_respects_budget() -> None:
    big = discrete_category([f"x{i}" for i in range(6)])
    with pytest.raises(BudgetExceeded):
        list(enumerate_functors(big, big, BudgetCounter("test", 10)))


def test_nat_trans_enumeration() -> None:
    arrow = walking_arrow()
    ident = identity_functor(arrow)
    assert sum(1 for _ in enumerate_nat_trans(ident, ident)) == 1
    bz3 = delooping(Z3)
    ident3 = identity_functor(bz3)
    # Komponenten sind zentrale Elemente von Z/3
    assert sum(1 for _ in enumerate_nat_trans(ident3, ident3)) == 3


def test_find_equivalence_chaotic_and_point() -> None:
    assert find_equivalence(chaotic_groupoid(["a", "b", "c"]), discrete_groupoid(["*"])) is not None
    assert find_equivalence(discrete_groupoid(["a", "b"]), discrete_groupoid(["*"])) is None


# ============================================================================
# Gruppen, Gruppoide, Limiten in C
# ============================================================================

def test_aut_group_of_connected_groupoid() -> None:
    g = connected_groupoid(["a", "b"], Z3)
    aut = aut_group(g, "a")
    assert aut.order == 3
    assert aut.validate().ok
    assert find_group_isomorphism(aut, Z3) is not None


def test_group_isomorphism_distinguishes_klein_from_cyclic() -> None:
    klein = direct_product(Z2, Z2)
    assert find_group_isomorphism(klein, cyclic_group(4)) is None
    assert find_group_isomorphism(klein, direct_product(Z2, Z2)) is not None


def test_cyclic_group_table_as_frame() -> None:
    frame = Z3.to_frame()
    assert list(frame.index) == ["e", "g", "g^2"]
    assert frame.loc["g", "g"] == "g^2"
    assert frame.loc["g^2", "g"] == Z3.mul("g^2", "g") == "e"
    assert Z3.validate().ok


def test_swap_action_groupoid_is_connected_and_free() -> None:
    swap = {"p": "q", "q": "p"}
    result = action_groupoid(Z2, ["p", "q"], lambda g, s: s if g == "e" else swap[s])
    total = result.groupoid
    assert validate_groupoid(total).ok
    assert len(pi0(total)) == 1
    assert all(aut_group(total, x).order == 1 for x in total.objects)


def test_trivial_action_groupoid_keeps_automorphisms() -> None:
    result = action_groupoid(Z2, ["p", "q"], lambda g, s: s)
    assert len(pi0(result.groupoid)) == 2
    assert aut_group(result.groupoid, result.groupoid.objects[0]).order == 2


def test_iso_comma_of_points_into_bz2_is_discrete_pair() -> None:
    bz2 = delooping(Z2)
    pt = discrete_groupoid(["*"], name="pt")
    inclusion = FunctorData(pt, bz2, {"*": "*"}, {"id_*": "e"})
    square = iso_comma_pullback(inclusion, inclusion)
    g = square.groupoid
    assert len(g.objects) == 2
    assert len(pi0(g)) == 2
    assert all(aut_group(g, x).order == 1 for x in g.objects)


def _cone_apexes() -> List[FiniteGroupoid]:
    return [
        discrete_groupoid(["z"], name="pt"),
        delooping(Z2),
        discrete_groupoid(["z0", "z1"], name="2"),
        chaotic_groupoid(["z0", "z1"]),
    ]


def _iso_comma_factorizations(square: IsoCommaPullback, p: FunctorData, q: FunctorData, alpha: NatTransData) -> int:
    """Anzahl der u: Z → P mit p_A∘u = p, p_B∘u = q und (Zeuge)∘u = α."""
    z = p.source
    fibers = [
        [o for o, (a, b, _) in square.triples.items() if a == p.ob(x) and b == q.ob(x)]
        for x in z.objects
    ]
    object_maps = [dict(zip(z.objects, images)) for images in itertools.product(*fibers)]
    count = 0
    for u in enumerate_functors(z, square.groupoid, object_maps=object_maps):
        if not compose_functors(square.left, u).same_maps(p) or not compose_functors(square.right, u).same_maps(q):
            continue
        if all(square.witness.at(u.ob(x)) == alpha.at(x) for x in z.objects):
            count += 1
    return count


def test_seeded_iso_comma_cones_factor_uniquely() -> None:
    rng = random.Random(SEED)
    small = [trivial_group(), Z2]
    cones = 0
    failures: List[str] = []
    for i in range(ISO_COMMA_SAMPLES):
        c = random_groupoid(rng, max_objects=2, prefix="c", min_objects=1)
        a = random_groupoid(rng, max_objects=2, groups=small, prefix="a", min_objects=1)
        b = random_groupoid(rng, max_objects=2, groups=small, prefix="b", min_objects=1)
        f, g = random_functor(rng, a, c), random_functor(rng, b, c)
        square = iso_comma_pullback(f, g)
        assert validate_groupoid(square.groupoid).ok
        for z in _cone_apexes():
            for p in enumerate_functors(z, a):
                for q in enumerate_functors(z, b):
                    for alpha in enumerate_nat_trans(compose_functors(f, p), compose_functors(g, q)):
                        cones += 1
                        n = _iso_comma_factorizations(square, p, q, alpha)
                        if n != 1:
                            failures.append(f"#{i} {z.name}: {n} Faktorisierungen")
    assert cones > 0
    assert not failures


def test_brute_force_limit_in_poset() -> None:
    c = poset_category(["a", "b", "c", "m"], [("m", "a"), ("m", "b"), ("a", "c"), ("b", "c")])
    cone = brute_force_limit(c, Diagram.cospan(c, "a<=c", "b<=c"))
    assert cone is not None and cone.apex == "m"
    assert find_terminal(c) == "c"


def test_brute_force_limit_missing_in_cospan_poset() -> None:
    c = poset_category(["a", "b", "c"], [("a", "c"), ("b", "c")])
    assert brute_force_limit(c, Diagram.cospan(c, "a<=c", "b<=c")) is None

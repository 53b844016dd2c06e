"""
Seed-deterministische Zufallsstrukturen für Property-Tests und die
Axiom-Suite: Gruppoide, Funktoren, Familien und Fam-Morphismen.

Alle Funktionen nehmen ein random.Random-Objekt entgegen; es gibt keine
globale Entropiequelle.
"""

import itertools
import random
from typing import List, Optional, Sequence

from services.budget import BudgetCounter, unlimited
from services.fam.objects import FamMorphism, FamObject, fam_morphism
from services.kernel.category import FiniteCategory
from services.kernel.functor import FunctorData, compose_functors, enumerate_functors
from services.kernel.group import FiniteGroup, cyclic_group, trivial_group
from services.kernel.groupoid import FiniteGroupoid, connected_groupoid, core_groupoid, pi0

# Maximale Zahl betrachteter Funktoren pro Objektabbildung
FUNCTOR_SAMPLE = 64


def default_groups() -> List[FiniteGroup]:
    return [trivial_group(), cyclic_group(2), cyclic_group(3)]


def merge_groupoids(parts: Sequence[FiniteGroupoid], name: str = "") -> FiniteGroupoid:
    """Vereinigung von Gruppoiden mit paarweise disjunkten Bezeichnern."""
    objects, morphisms, identities, composition, inverses = [], {}, {}, {}, {}
    for part in parts:
        objects.extend(part.objects)
        morphisms.update(part.morphisms)
        identities.update(part.identities)
        composition.update(part.composition)
        inverses.update(part.inverses)
    return FiniteGroupoid(
        objects=tuple(sorted(objects)),
        morphisms=morphisms,
        identities=identities,
        composition=composition,
        name=name or "⊔".join(p.name for p in parts),
        inverses=inverses,
    )


def random_groupoid(
    rng: random.Random,
    max_objects: int = 4,
    groups: Optional[Sequence[FiniteGroup]] = None,
    prefix: str = "x",
    min_objects: int = 0,
) -> FiniteGroupoid:
    """Disjunkte Vereinigung zusammenhängender Blöcke mit Gruppen aus groups."""
    groups = list(groups) if groups is not None else default_groups()
    n = rng.randint(min_objects, max_objects)
    names = [f"{prefix}{i}" for i in range(n)]
    blocks: List[List[str]] = []
    for x in names:
        if blocks and rng.random() < 0.5:
            rng.choice(blocks).append(x)
        else:
            blocks.append([x])
    parts = [connected_groupoid(block, rng.choice(groups)) for block in blocks]
    return merge_groupoids(parts, name=f"R{n}")


def random_functor(
    rng: random.Random,
    source: FiniteGroupoid,
    target: FiniteCategory,
    counter: Optional[BudgetCounter] = None,
) -> Optional[FunctorData]:
    """
    Zufälliger Funktor aus einem Gruppoid; landet über den Kern, falls target
    kein Gruppoid ist. None, wenn target leer und source nicht leer ist.
    """
    counter = counter or unlimited()
    if source.objects and not target.objects:
        return None
    if isinstance(target, FiniteGroupoid):
        core, inclusion = target, None
    else:
        core, inclusion = core_groupoid(target)
    targets = list(core.objects)
    for _ in range(8):
        object_map = {x: rng.choice(targets) for x in source.objects}
        options = list(itertools.islice(enumerate_functors(source, core, counter, object_maps=[object_map]), FUNCTOR_SAMPLE))
        if options:
            chosen = rng.choice(options)
            break
    else:
        # konstant auf ein Objekt: existiert immer
        y = targets[0]
        chosen = FunctorData(
            source, core, {x: y for x in source.objects}, {m: core.identity(y) for m in source.morphisms}
        )
    return chosen if inclusion is None else compose_functors(inclusion, chosen)


def random_family(
    rng: random.Random,
    c: FiniteCategory,
    max_objects: int = 3,
    min_objects: int = 0,
    prefix: str = "x",
    counter: Optional[BudgetCounter] = None,
) -> FamObject:
    shape = random_groupoid(rng, max_objects, prefix=prefix, min_objects=min_objects)
    arrow = random_functor(rng, shape, c, counter)
    if arrow is None:
        shape = random_groupoid(rng, 0, prefix=prefix)
        arrow = FunctorData(shape, c, {}, {})
    return FamObject(shape=shape, target=c, arrow=arrow, name=f"F{len(shape.objects)}")


def _is_posetal(c: FiniteCategory) -> bool:
    """Dünn und ohne verschiedene isomorphe Objekte."""
    for a, b in itertools.product(c.objects, repeat=2):
        if len(c.hom(a, b)) > 1 or (a != b and c.hom(a, b) and c.hom(b, a)):
            return False
    return True


def random_morphism_into(
    rng: random.Random,
    codomain: FamObject,
    max_objects: int = 3,
    prefix: str = "y",
    counter: Optional[BudgetCounter] = None,
) -> FamMorphism:
    """
    Zufälliger Fam-Morphismus (φ, φ★) in codomain.

    Über Posets wird der Pfeil der Quelle pro Komponente auf
    ein kleineres Objekt verschoben; sonst ist φ★ die Identität.
    """
    c = codomain.target
    if not codomain.shape.objects:
        shape = random_groupoid(rng, 0, prefix=prefix)
    else:
        shape = random_groupoid(rng, max_objects, prefix=prefix)
    phi = random_functor(rng, shape, codomain.shape, counter)
    pulled = compose_functors(codomain.arrow, phi)
    object_map = dict(pulled.object_map)
    morphism_map = dict(pulled.morphism_map)
    components = {y: c.identity(object_map[y]) for y in shape.objects}
    if _is_posetal(c):
        for block in pi0(shape):
            top = pulled.ob(block[0])
            below = sorted(a for a in c.objects if c.hom(a, top))
            lower = rng.choice(below)
            for y in block:
                object_map[y] = lower
                components[y] = c.hom(lower, top)[0]
            for m, (s, _) in shape.morphisms.items():
                if s in block:
                    morphism_map[m] = c.identity(lower)
    source = FamObject(shape=shape, target=c, arrow=FunctorData(shape, c, object_map, morphism_map), name=f"Y{len(shape.objects)}")
    return fam_morphism(source, codomain, phi, components)

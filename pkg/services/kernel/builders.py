"""
Bausteine für Testkategorien: Posets, terminale Kategorie, Monoide,
die laufende Retraktion (r∘s = id) und ein Skelett endlicher punktierter Mengen.
"""

import itertools
from typing import Dict, Iterable, List, Sequence, Tuple

from services.errors import PreconditionError

from .category import FiniteCategory, build_category


def poset_category(elements: Sequence[str], relations: Iterable[Tuple[str, str]], name: str = "") -> FiniteCategory:
    """
    Poset-Kategorie aus erzeugenden Relationen a ≤ b (reflexiv-transitiver Abschluss).

    Morphismus 'a<=b' für jedes Paar a ≤ b.
    """
    elems = sorted(set(elements))
    leq = {(a, a) for a in elems} | set(relations)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(leq), repeat=2):
            if b == c and (a, d) not in leq:
                leq.add((a, d))
                changed = True
    for a, b in leq:
        if a != b and (b, a) in leq:
            raise PreconditionError(f"Relation ist nicht antisymmetrisch: {a}, {b}")

    def mid(a: str, b: str) -> str:
        return f"{a}<={b}"

    morphisms = {mid(a, b): (a, b) for a, b in leq}
    composition = {}
    for (a, b), (c, d) in itertools.product(leq, repeat=2):
        if b == c:
            composition[(mid(c, d), mid(a, b))] = mid(a, d)
    return build_category(elems, morphisms, {a: mid(a, a) for a in elems}, composition, name=name or "Poset")


def terminal_category(obj: str = "*") -> FiniteCategory:
    return build_category([obj], {f"id_{obj}": (obj, obj)}, {obj: f"id_{obj}"}, {(f"id_{obj}", f"id_{obj}"): f"id_{obj}"}, name="1")


def discrete_category(objects: Sequence[str], name: str = "") -> FiniteCategory:
    objs = sorted(set(objects))
    return build_category(
        objs,
        {f"id_{x}": (x, x) for x in objs},
        {x: f"id_{x}" for x in objs},
        {(f"id_{x}", f"id_{x}"): f"id_{x}" for x in objs},
        name=name or f"Disc({len(objs)})",
    )


def walking_arrow() -> FiniteCategory:
    """0 → 1."""
    return poset_category(["0", "1"], [("0", "1")], name="[1]")


def walking_retraction() -> FiniteCategory:
    """Δ̂[1]: Objekte [0], [1]; s: [0] → [1], r: [1] → [0], r∘s = id, e = s∘r idempotent."""
    morphisms = {
        "id0": ("[0]", "[0]"),
        "id1": ("[1]", "[1]"),
        "s": ("[0]", "[1]"),
        "r": ("[1]", "[0]"),
        "e": ("[1]", "[1]"),
    }
    composition = {
        ("id0", "id0"): "id0",
        ("id1", "id1"): "id1",
        ("s", "id0"): "s",
        ("id1", "s"): "s",
        ("r", "id1"): "r",
        ("id0", "r"): "r",
        ("e", "id1"): "e",
        ("id1", "e"): "e",
        ("r", "s"): "id0",
        ("s", "r"): "e",
        ("e", "e"): "e",
        ("e", "s"): "s",
        ("r", "e"): "r",
    }
    return build_category(["[0]", "[1]"], morphisms, {"[0]": "id0", "[1]": "id1"}, composition, name="Δ̂[1]")


def pointed_set_name(size: int) -> str:
    return f"P{size}"


def pointed_map_name(source: int, target: int, images: Sequence[int]) -> str:
    return f"P{source}->P{target}:" + "".join(str(i) for i in images)


def pointed_set_skeleton(max_size: int) -> FiniteCategory:
    """
    Skelett der endlichen punktierten Mengen {0, …, k−1} (Basispunkt 0), 1 ≤ k ≤ max_size.

    Morphismen sind basispunkterhaltende Abbildungen, codiert als Bildfolge.
    """
    if max_size < 1:
        raise PreconditionError("max_size muss ≥ 1 sein")
    sizes = range(1, max_size + 1)
    maps: Dict[str, Tuple[int, int, Tuple[int, ...]]] = {}
    for k in sizes:
        for l in sizes:
            for rest in itertools.product(range(l), repeat=k - 1):
                images = (0,) + rest
                maps[pointed_map_name(k, l, images)] = (k, l, images)
    morphisms = {m: (pointed_set_name(k), pointed_set_name(l)) for m, (k, l, _) in maps.items()}
    by_source: Dict[int, List[str]] = {}
    for m, (k, _, _) in maps.items():
        by_source.setdefault(k, []).append(m)
    composition = {}
    for f, (k, l, fi) in maps.items():
        for g in by_source.get(l, ()):
            _, m_size, gi = maps[g]
            composition[(g, f)] = pointed_map_name(k, m_size, tuple(gi[i] for i in fi))
    identities = {pointed_set_name(k): pointed_map_name(k, k, tuple(range(k))) for k in sizes}
    return build_category([pointed_set_name(k) for k in sizes], morphisms, identities, composition, name=f"Set*≤{max_size}")

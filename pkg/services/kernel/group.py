"""
Endliche Gruppen als Cayley-Tabellen (numpy) sowie Homomorphismen,
Isomorphie-Suche und Konjugator-Suche.

table[i, j] ist der Index von elements[i]·elements[j].
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from schemas.reports import ValidationReport
from services.budget import BudgetCounter, unlimited
from services.errors import BudgetExceeded, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Endliche Gruppe: Elemente, Multiplikationstabelle, Einselement, Inverse."""

    elements: Tuple[str, ...]
    table: np.ndarray
    identity: int
    inverses: np.ndarray
    name: str = field(default="")

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, element: str) -> int:
        try:
            return self.elements.index(element)
        except ValueError:
            raise PreconditionError(f"{element} ist kein Element von {self.name or 'G'}")

    def mul(self, a: str, b: str) -> str:
        return self.elements[self.table[self.index(a), self.index(b)]]

    def inv(self, a: str) -> str:
        return self.elements[self.inverses[self.index(a)]]

    def element_order(self, i: int) -> int:
        power, n = i, 1
        while power != self.identity:
            power = int(self.table[power, i])
            n += 1
            if n > self.order:
                return 0
        return n

    def order_profile(self) -> Tuple[int, ...]:
        return tuple(sorted(self.element_order(i) for i in range(self.order)))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def generators(self) -> List[int]:
        """Gierige Erzeugendenmenge (Elemente in Index-Reihenfolge)."""
        gens: List[int] = []
        reached = {self.identity}
        for i in sorted(range(self.order), key=lambda k: (-self.element_order(k), k)):
            if i in reached:
                continue
            gens.append(i)
            reached = self._closure(gens)
            if len(reached) == self.order:
                break
        return gens

    def _closure(self, gens: Sequence[int]) -> set:
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(self.table[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def words(self, gens: Sequence[int]) -> Dict[int, Tuple[int, int]]:
        """BFS-Baum: Element → (Vorgänger, Erzeuger) mit Element = Vorgänger·Erzeuger."""
        tree: Dict[int, Tuple[int, int]] = {}
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(self.table[x, g])
                if y not in seen:
                    seen.add(y)
                    tree[y] = (x, g)
                    queue.append(y)
        return tree

    def validate(self) -> ValidationReport:
        """Prüft Abgeschlossenheit, Assoziativität, Einselement und Inverse vektorisiert."""
        report = ValidationReport(subject=self.name or "group")
        n = self.order
        t = self.table
        if t.shape != (n, n):
            report.reference("table_shape", [str(t.shape)], "Tabelle hat falsche Form")
            return report
        if n == 0:
            report.axiom("nonempty", [], "Gruppe ohne Elemente")
            return report
        if t.min() < 0 or t.max() >= n:
            report.axiom("closure", [], "Tabelle enthält Einträge außerhalb der Elementmenge")
            return report
        idx = np.arange(n)
        left = t[t[:, :, None], idx[None, None, :]]
        right = t[idx[:, None, None], t[None, :, :]]
        bad = np.argwhere(left != right)
        for i, j, k in bad[:10]:
            report.axiom("associativity", [self.elements[i], self.elements[j], self.elements[k]])
        e = self.identity
        if not (np.array_equal(t[e, :], idx) and np.array_equal(t[:, e], idx)):
            report.axiom("identity", [self.elements[e]], "Einselement wirkt nicht neutral")
        inv = self.inverses
        for i in range(n):
            if inv[i] < 0 or t[i, inv[i]] != e or t[inv[i], i] != e:
                report.axiom("inverse", [self.elements[i]], "Kein beidseitiges Inverses")
        return report.normalized()

    def to_frame(self) -> pd.DataFrame:
        labels = list(self.elements)
        return pd.DataFrame(
            [[labels[k] for k in row] for row in self.table.tolist()],
            index=labels,
            columns=labels,
        )

    def table_rows(self) -> List[List[str]]:
        return [[self.elements[k] for k in row] for row in self.table.tolist()]

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name} order={self.order}>"


def group_from_operation(
    elements: Sequence[str],
    operation: Callable[[str, str], str],
    name: str = "",
) -> FiniteGroup:
    """
    Baut eine Gruppe aus einer Verknüpfung auf Bezeichnern.

    Das Einselement ist das (kleinste) Element e mit e·x = x für alle x;
    fehlende Inverse werden mit -1 markiert und von validate() gemeldet.
    """
    elems = tuple(elements)
    position = {x: i for i, x in enumerate(elems)}
    n = len(elems)
    table = np.full((n, n), -1, dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            table[i, j] = position.get(operation(a, b), -1)
    idx = np.arange(n)
    identity = next((i for i in range(n) if np.array_equal(table[i, :], idx)), 0)
    inverses = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        hits = np.nonzero(table[i, :] == identity)[0]
        if hits.size:
            inverses[i] = int(hits[0])
    return FiniteGroup(elements=elems, table=table, identity=identity, inverses=inverses, name=name)


def group_from_table(elements: Sequence[str], table: np.ndarray, name: str = "") -> FiniteGroup:
    elems = tuple(elements)
    return group_from_operation(elems, lambda a, b: elems[table[elems.index(a), elems.index(b)]], name)


def cyclic_group(n: int, symbol: str = "g") -> FiniteGroup:
    """Z/n mit Elementen e, g, g^2, …"""
    if n < 1:
        raise PreconditionError("Ordnung muss ≥ 1 sein")
    names = ["e"] + [symbol if k == 1 else f"{symbol}^{k}" for k in range(1, n)]
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    inverses = (-np.arange(n)) % n
    return FiniteGroup(elements=tuple(names), table=table, identity=0, inverses=inverses, name=f"Z/{n}")


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G × H mit Elementen 'a,b'."""
    pairs = [(i, j) for i in range(g.order) for j in range(h.order)]
    position = {p: k for k, p in enumerate(pairs)}
    names = tuple(f"{g.elements[i]},{h.elements[j]}" for i, j in pairs)
    n = len(pairs)
    table = np.empty((n, n), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        for l, (a, b) in enumerate(pairs):
            table[k, l] = position[(int(g.table[i, a]), int(h.table[j, b]))]
    inverses = np.array([position[(int(g.inverses[i]), int(h.inverses[j]))] for i, j in pairs], dtype=np.int64)
    return FiniteGroup(
        elements=names,
        table=table,
        identity=position[(g.identity, h.identity)],
        inverses=inverses,
        name=f"{g.name}×{h.name}",
    )


# ============================================================================
# Homomorphismen
# ============================================================================

@dataclass(frozen=True, eq=False)
class GroupHom:
    """Abbildung zwischen Gruppen, gegeben als Index-Array."""

    source: FiniteGroup
    target: FiniteGroup
    mapping: np.ndarray

    def __call__(self, element: str) -> str:
        return self.target.elements[int(self.mapping[self.source.index(element)])]

    def is_homomorphism(self) -> bool:
        m = self.mapping
        if m.shape != (self.source.order,):
            return False
        return bool(np.array_equal(m[self.source.table], self.target.table[m[:, None], m[None, :]]))

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(set(self.mapping.tolist())) == self.source.order

    def as_dict(self) -> Dict[str, str]:
        return {self.source.elements[i]: self.target.elements[int(k)] for i, k in enumerate(self.mapping)}

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self∘first."""
        return type(self)(source=first.source, target=self.target, mapping=self.mapping[first.mapping])


@dataclass(frozen=True, eq=False)
class GroupIso(GroupHom):
    """Gruppenisomorphismus (Bijektion, die die Multiplikation erhält)."""

    def validate(self) -> ValidationReport:
        report = ValidationReport(subject="group isomorphism")
        if not self.is_bijective():
            report.axiom("bijection", [], "Elementabbildung ist keine Bijektion")
        if not self.is_homomorphism():
            report.axiom("homomorphism", [], "Multiplikation wird nicht erhalten")
        elif int(self.mapping[self.source.identity]) != self.target.identity:
            report.axiom("identity", [], "Einselement wird nicht erhalten")
        return report

    def inverse(self) -> "GroupIso":
        inv = np.empty_like(self.mapping)
        inv[self.mapping] = np.arange(self.source.order)
        return GroupIso(source=self.target, target=self.source, mapping=inv)


def from_dict(source: FiniteGroup, target: FiniteGroup, mapping: Dict[str, str], iso: bool = True) -> GroupHom:
    arr = np.array([target.index(mapping[x]) for x in source.elements], dtype=np.int64)
    cls = GroupIso if iso else GroupHom
    return cls(source=source, target=target, mapping=arr)


def enumerate_homomorphisms(
    g: FiniteGroup,
    h: FiniteGroup,
    counter: Optional[BudgetCounter] = None,
    injective: bool = False,
) -> Iterator[GroupHom]:
    """
    Alle Homomorphismen G → H über Bilder einer Erzeugendenmenge.

    Args:
        injective: Nur Bilder gleicher Elementordnung zulassen (Isomorphie-Suche)
    """
    counter = counter or unlimited()
    gens = g.generators()
    tree = g.words(gens)
    order_of = [h.element_order(k) for k in range(h.order)]
    options = []
    for gen in gens:
        o = g.element_order(gen)
        if injective:
            options.append([k for k in range(h.order) if order_of[k] == o])
        else:
            options.append([k for k in range(h.order) if order_of[k] and o % order_of[k] == 0])
    bfs = sorted(tree, key=lambda y: _depth(tree, y))
    for images in itertools.product(*options):
        counter.tick()
        image_of = dict(zip(gens, images))
        mapping = np.full(g.order, -1, dtype=np.int64)
        mapping[g.identity] = h.identity
        for y in bfs:
            prev, gen = tree[y]
            mapping[y] = h.table[mapping[prev], image_of[gen]]
        hom = GroupHom(source=g, target=h, mapping=mapping)
        if hom.is_homomorphism():
            yield hom


def _depth(tree: Dict[int, Tuple[int, int]], y: int) -> int:
    d = 0
    while y in tree:
        y = tree[y][0]
        d += 1
    return d


def find_group_isomorphism(
    g: FiniteGroup,
    h: FiniteGroup,
    cap: int = 24,
    counter: Optional[BudgetCounter] = None,
) -> Optional[GroupIso]:
    """
    Brute-Force-Isomorphiesuche über Erzeugerbilder.

    Returns:
        Einen Isomorphismus oder None (definitiv nicht isomorph).

    Raises:
        BudgetExceeded: Ordnung über der Obergrenze – unentschieden
    """
    if g.order != h.order:
        return None
    if g.order > cap:
        raise BudgetExceeded("group isomorphism", cap)
    if g.order_profile() != h.order_profile() or g.is_abelian() != h.is_abelian():
        return None
    for hom in enumerate_homomorphisms(g, h, counter, injective=True):
        if hom.is_bijective():
            return GroupIso(source=g, target=h, mapping=hom.mapping)
    return None


def conjugation(g: FiniteGroup, element: int) -> GroupIso:
    """Innerer Automorphismus x ↦ a·x·a⁻¹."""
    inv = int(g.inverses[element])
    mapping = g.table[g.table[element, :], inv]
    return GroupIso(source=g, target=g, mapping=np.asarray(mapping, dtype=np.int64))


def find_conjugator(first: GroupHom, second: GroupHom) -> Optional[int]:
    """Kleinstes ℓ im Ziel mit first(x) = ℓ·second(x)·ℓ⁻¹ für alle x; sonst None."""
    if first.target is not second.target and first.target.elements != second.target.elements:
        raise PreconditionError("Homomorphismen haben verschiedene Ziele")
    target = first.target
    for ell in range(target.order):
        conj = conjugation(target, ell).mapping
        if np.array_equal(first.mapping, conj[second.mapping]):
            return ell
    return None

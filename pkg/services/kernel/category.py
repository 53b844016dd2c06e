"""
Endliche Kategorien mit extensional gespeicherter Kompositionstabelle.

Konvention: composition[(g, f)] = g∘f, definiert genau wenn target(f) = source(g).
Im JSON-Austauschformat erscheinen Einträge als Tripel [f, g, g∘f].
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple, TypeVar

from schemas.reports import ValidationReport
from services.errors import MalformedReferenceError, PreconditionError

logger = logging.getLogger(__name__)

K = TypeVar("K")
V = TypeVar("V")


@dataclass(frozen=True)
class FiniteCategory:
    """Endliche Kategorie: Objekte, Morphismen mit Quelle/Ziel, Identitäten, Komposition."""

    objects: Tuple[str, ...]
    morphisms: Dict[str, Tuple[str, str]]       # id -> (source, target)
    identities: Dict[str, str]                  # object -> identity morphism
    composition: Dict[Tuple[str, str], str]     # (g, f) -> g∘f
    name: str = field(default="", compare=False)
    # widersprüchliche Tabelleneinträge: (Regel, Instanz, Meldung)
    conflicts: Tuple[Tuple[str, Tuple[str, ...], str], ...] = field(default=(), compare=False)

    # ------------------------------------------------------------------
    # Indizes
    # ------------------------------------------------------------------
    @cached_property
    def _hom_index(self) -> Dict[Tuple[str, str], Tuple[str, ...]]:
        index: Dict[Tuple[str, str], List[str]] = defaultdict(list)
        for m, (s, t) in self.morphisms.items():
            index[(s, t)].append(m)
        return {key: tuple(sorted(ms)) for key, ms in index.items()}

    @cached_property
    def _out_index(self) -> Dict[str, Tuple[str, ...]]:
        index: Dict[str, List[str]] = defaultdict(list)
        for m, (s, _) in self.morphisms.items():
            index[s].append(m)
        return {key: tuple(sorted(ms)) for key, ms in index.items()}

    @cached_property
    def _identity_set(self) -> frozenset:
        return frozenset(self.identities.values())

    # ------------------------------------------------------------------
    # Zugriff
    # ------------------------------------------------------------------
    def source(self, f: str) -> str:
        return self.morphisms[f][0]

    def target(self, f: str) -> str:
        return self.morphisms[f][1]

    def identity(self, x: str) -> str:
        return self.identities[x]

    def is_identity(self, f: str) -> bool:
        return f in self._identity_set

    def hom(self, a: str, b: str) -> Tuple[str, ...]:
        """Alle Morphismen a → b in Bezeichner-Reihenfolge."""
        return self._hom_index.get((a, b), ())

    def out_of(self, a: str) -> Tuple[str, ...]:
        return self._out_index.get(a, ())

    def compose(self, g: str, f: str) -> str:
        """g∘f; wirft PreconditionError bei nicht komponierbarem Paar."""
        try:
            return self.composition[(g, f)]
        except KeyError:
            if f not in self.morphisms or g not in self.morphisms:
                raise MalformedReferenceError(f"Unbekannter Morphismus in ({g}, {f})", [g, f])
            raise PreconditionError(f"{g}∘{f} ist nicht definiert")

    def compose_path(self, *morphisms: str) -> str:
        """Komposition in Diagramm-Reihenfolge: compose_path(f, g, h) = h∘g∘f."""
        if not morphisms:
            raise PreconditionError("leerer Pfad")
        result = morphisms[0]
        for m in morphisms[1:]:
            result = self.compose(m, result)
        return result

    def composable_pairs(self) -> Iterator[Tuple[str, str]]:
        """Alle Paare (g, f) mit target(f) = source(g), deterministisch sortiert."""
        for f in sorted(self.morphisms):
            for g in self.out_of(self.target(f)):
                yield g, f

    def is_isomorphism(self, f: str) -> bool:
        return self.inverse_of(f) is not None

    def inverse_of(self, f: str) -> Optional[str]:
        s, t = self.morphisms[f]
        for g in self.hom(t, s):
            if self.composition.get((g, f)) == self.identities.get(s) and self.composition.get((f, g)) == self.identities.get(t):
                return g
        return None

    def same_as(self, other: "FiniteCategory") -> bool:
        return self is other or self == other

    @property
    def size(self) -> Tuple[int, int]:
        return len(self.objects), len(self.morphisms)

    def __repr__(self) -> str:
        label = self.name or "FiniteCategory"
        return f"<{label}: {len(self.objects)} Objekte, {len(self.morphisms)} Morphismen>"


def build_category(
    objects,
    morphisms: Dict[str, Tuple[str, str]],
    identities: Dict[str, str],
    composition: Dict[Tuple[str, str], str],
    name: str = "",
    conflicts: Iterable[Tuple[str, Tuple[str, ...], str]] = (),
) -> FiniteCategory:
    """Normalisiert die Eingabe (sortierte Objekte, Kopien der Tabellen)."""
    return FiniteCategory(
        objects=tuple(sorted(set(objects))),
        morphisms={m: (s, t) for m, (s, t) in morphisms.items()},
        identities=dict(identities),
        composition=dict(composition),
        name=name,
        conflicts=tuple(sorted(conflicts)),
    )


def collect_table(entries: Iterable[Tuple[K, V]]) -> Tuple[Dict[K, V], Dict[K, Tuple[V, ...]]]:
    """
    Baut eine Tabelle aus Schlüssel-Wert-Paaren, ohne dass spätere Einträge frühere überschreiben.

    Bei mehrdeutigen Schlüsseln gilt der kleinste Wert; alle Werte landen in den Konflikten.

    Returns:
        (Tabelle, Konflikte: Schlüssel -> sortierte verschiedene Werte)
    """
    seen: Dict[K, Set[V]] = defaultdict(set)
    for key, value in entries:
        seen[key].add(value)
    table = {key: min(values) for key, values in seen.items()}
    conflicts = {key: tuple(sorted(values)) for key, values in seen.items() if len(values) > 1}
    return table, conflicts


# ============================================================================
# Validierung
# ============================================================================

def validate_category(c: FiniteCategory) -> ValidationReport:
    """
    Prüft alle Kategorienaxiome durch vollständige Aufzählung.

    Referenzfehler (unbekannte IDs) werden getrennt von Axiomverletzungen
    gemeldet. Axiome, deren Prüfung auf fehlerhaften Referenzen beruhen würde,
    werden für die betroffenen Instanzen übersprungen.

    Returns:
        ValidationReport, sortiert und unabhängig von der Eingabereihenfolge
    """
    report = ValidationReport(subject=c.name or "category")
    objects = set(c.objects)

    # ---- Referenzen ----
    for m, (s, t) in sorted(c.morphisms.items()):
        for end in (s, t):
            if end not in objects:
                report.reference("unknown_object", [m, end], f"Morphismus {m} verweist auf unbekanntes Objekt {end}")
    for x in c.objects:
        if x not in c.identities:
            report.reference("missing_identity", [x], f"Objekt {x} hat keine Identität")
    for x, i in sorted(c.identities.items()):
        if x not in objects:
            report.reference("unknown_object", [x], f"Identität für unbekanntes Objekt {x}")
        elif i not in c.morphisms:
            report.reference("unknown_morphism", [i], f"Identität {i} von {x} ist kein Morphismus")
        elif c.morphisms[i] != (x, x):
            report.axiom("identity_endpoints", [x, i], f"Identität {i} ist kein Endomorphismus von {x}")
    for (g, f), gf in sorted(c.composition.items()):
        unknown = [m for m in (f, g, gf) if m not in c.morphisms]
        if unknown:
            report.reference("unknown_morphism", unknown, f"Kompositionseintrag [{f}, {g}, {gf}] mit unbekannter ID")
            continue
        if c.target(f) != c.source(g):
            report.axiom("composable", [g, f], f"{g}∘{f} eingetragen, aber nicht komponierbar")
        elif c.morphisms[gf] != (c.source(f), c.target(g)):
            report.axiom("composite_endpoints", [g, f, gf], f"{gf} hat falsche Endpunkte für {g}∘{f}")
    for rule, instance, message in c.conflicts:
        report.axiom(rule, instance, message)

    if any(v.rule == "unknown_object" for v in report.violations):
        return report.normalized()

    # ---- Abgeschlossenheit ----
    for g, f in c.composable_pairs():
        if (g, f) not in c.composition:
            report.axiom("closure", [g, f], f"Komposition {g}∘{f} fehlt")

    # ---- Identitätsgesetze ----
    for f, (s, t) in sorted(c.morphisms.items()):
        id_s, id_t = c.identities.get(s), c.identities.get(t)
        if id_t is not None and (id_t, f) in c.composition and c.composition[(id_t, f)] != f:
            report.axiom("left_identity", [f], f"id_{t}∘{f} ≠ {f}")
        if id_s is not None and (f, id_s) in c.composition and c.composition[(f, id_s)] != f:
            report.axiom("right_identity", [f], f"{f}∘id_{s} ≠ {f}")

    # ---- Assoziativität ----
    for g, f in c.composable_pairs():
        gf = c.composition.get((g, f))
        if gf is None or gf not in c.morphisms:
            continue
        for h in c.out_of(c.target(g)):
            hg = c.composition.get((h, g))
            if hg is None or hg not in c.morphisms:
                continue
            left = c.composition.get((h, gf))
            right = c.composition.get((hg, f))
            if left is not None and right is not None and left != right:
                report.axiom("associativity", [h, g, f], f"{h}∘({g}∘{f}) ≠ ({h}∘{g})∘{f}")

    result = report.normalized()
    if not result.ok:
        logger.debug("Kategorie %s: %d Verletzungen", c.name, len(result.violations))
    return result


# ============================================================================
# Terminale Objekte und Kern
# ============================================================================

def find_terminal(c: FiniteCategory) -> Optional[str]:
    """Kleinstes Objekt t mit genau einem Morphismus x → t für jedes x; sonst None."""
    for t in c.objects:
        if all(len(c.hom(x, t)) == 1 for x in c.objects):
            return t
    return None

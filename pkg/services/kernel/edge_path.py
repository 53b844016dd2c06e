"""
Kanten-Weg-Gruppe des Nervs (2-Skelett) als Gegenprobe zu aut_group.

Ecken = Objekte, Kanten = Morphismen, Dreiecke = komponierbare Paare.
Nach Kontraktion eines BFS-Spannbaums bleibt eine endliche Präsentation:
ein Erzeuger pro Nicht-Baum-Kante, eine Relation [f][g] = [g∘f] pro Dreieck.
Die Präsentation wird per Nebenklassen-Aufzählung (sympy) zu einer
Cayley-Tabelle reduziert.
"""

import logging
from collections import deque
from typing import Dict, List

import networkx as nx
import numpy as np
from sympy.combinatorics.fp_groups import FpGroup, coset_enumeration_r
from sympy.combinatorics.free_groups import free_group

from services.errors import BudgetExceeded, PreconditionError

from .category import FiniteCategory
from .group import FiniteGroup, group_from_table, trivial_group
from .groupoid import pi0

logger = logging.getLogger(__name__)


def spanning_tree(g: FiniteCategory, root: str) -> Dict[str, str]:
    """BFS-Spannbaum ab root: Objekt → Baumkante (kleinster Bezeichner je Objektpaar)."""
    graph = nx.DiGraph()
    graph.add_nodes_from(g.objects)
    for m in sorted(g.morphisms):
        s, t = g.morphisms[m]
        if s != t and not graph.has_edge(s, t):
            graph.add_edge(s, t, morphism=m)
    tree = {}
    for u, v in nx.bfs_edges(graph, root, sort_neighbors=sorted):
        tree[v] = graph.edges[u, v]["morphism"]
    return tree


def edge_path_presentation(g: FiniteCategory, x: str):
    """Freie Gruppe, Relatoren und Kantenwörter der Kanten-Weg-Gruppe bei x."""
    tree_edges = set(spanning_tree(g, x).values())
    generators = [m for m in sorted(g.morphisms) if m not in tree_edges and not g.is_identity(m)]
    if not generators:
        return None, [], {}
    free, *letters = free_group(", ".join(f"m{i}" for i in range(len(generators))))
    word = {m: free.identity for m in g.morphisms}
    for m, letter in zip(generators, letters):
        word[m] = letter
    relators = []
    for (second, first), composite in sorted(g.composition.items()):
        rel = word[first] * word[second] * word[composite] ** -1
        if rel != free.identity and rel not in relators:
            relators.append(rel)
    return free, relators, dict(zip(generators, letters))


def edge_path_pi1(g: FiniteCategory, x: str, coset_cap: int = 2048) -> FiniteGroup:
    """
    Kanten-Weg-Gruppe π₁(N(g), x).

    Args:
        g: Zusammenhängendes endliches Gruppoid
        x: Basisobjekt
        coset_cap: Obergrenze der Nebenklassen-Aufzählung

    Raises:
        PreconditionError: g nicht zusammenhängend oder x unbekannt
        BudgetExceeded: Gruppe innerhalb der Obergrenze nicht als endlich bestätigt
    """
    if x not in g.objects:
        raise PreconditionError(f"Unbekanntes Objekt {x}")
    if len(pi0(g)) != 1:
        raise PreconditionError("edge_path_pi1 erwartet ein zusammenhängendes Gruppoid")

    free, relators, letters = edge_path_presentation(g, x)
    if free is None:
        return trivial_group()

    fp = FpGroup(free, relators)
    try:
        table = coset_enumeration_r(fp, [], max_cosets=coset_cap)
    except ValueError as exc:
        logger.warning("Nebenklassen-Aufzählung abgebrochen: %s", exc)
        raise BudgetExceeded("coset enumeration", coset_cap) from exc
    table.compress()
    table.standardize()

    rows: List[List[int]] = [list(row) for row in table.table]
    n = len(rows)
    columns = len(table.A)
    # BFS-Wörter: Nebenklasse k = Wort words[k] (Spaltenfolge) ab Nebenklasse 0
    words: Dict[int, List[int]] = {0: []}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for col in range(columns):
            d = rows[c][col]
            if d is not None and d not in words:
                words[d] = words[c] + [col]
                queue.append(d)
    if len(words) != n:
        raise BudgetExceeded("coset table incomplete", coset_cap)

    mult = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for k in range(n):
            c = i
            for col in words[k]:
                c = rows[c][col]
            mult[i, k] = c

    names = []
    for k in range(n):
        w = free.identity
        for col in words[k]:
            w = w * table.A[col]
        names.append("1" if not words[k] else str(w))
    group = group_from_table(names, mult, name=f"π1_edge({x})")
    logger.debug("Kanten-Weg-Gruppe bei %s: %d Erzeuger, %d Relatoren, Ordnung %d", x, len(letters), len(relators), n)
    return group

"""
Čech-Nerv einer Abbildung f: X′ → X von Gruppoiden.

Level k benutzt k+1 Kopien von X′ (Level 0 = X′), gebildet als iterierter
Iso-Komma-Pullback. Jedes Objekt auf Level k entspricht einer Kette
(x₀, …, x_k; φ₁, …, φ_k) mit φᵢ: f(x_{i-1}) → f(xᵢ); die Randabbildung dᵢ
löscht xᵢ und komponiert die angrenzenden Isomorphismen.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import networkx as nx

from schemas.reports import ValidationReport
from services.budget import Budget
from services.errors import PreconditionError

from .functor import FunctorData, NatTransData, compose_functors, identity_functor, validate_nat_trans
from .groupoid import FiniteGroupoid, pi0
from .pullback import iso_comma_pullback

logger = logging.getLogger(__name__)

Chain = Tuple[Tuple[str, ...], Tuple[str, ...]]


@dataclass(frozen=True)
class CechLevel:
    """Level k: Gruppoid, Randabbildungen d₀…d_k zum Level k−1 (Level 0: Augmentation f)."""

    level: int
    groupoid: FiniteGroupoid
    faces: Tuple[FunctorData, ...]
    chains: Dict[str, Chain] = field(repr=False)
    alphas: Dict[str, Tuple[str, ...]] = field(repr=False)


def _face(
    level: int,
    i: int,
    current: FiniteGroupoid,
    chains: Dict[str, Chain],
    alphas: Dict[str, Tuple[str, ...]],
    lower: "CechLevel",
    base: FiniteGroupoid,
) -> FunctorData:
    obj_by_chain = {chain: obj for obj, chain in lower.chains.items()}
    mor_by_key = {(lower.groupoid.source(m), a): m for m, a in lower.alphas.items()}

    def face_chain(chain: Chain) -> Chain:
        xs, phis = chain
        new_xs = xs[:i] + xs[i + 1:]
        if i == 0:
            new_phis = phis[1:]
        elif i == level:
            new_phis = phis[:-1]
        else:
            new_phis = phis[:i - 1] + (base.compose(phis[i], phis[i - 1]),) + phis[i + 1:]
        return new_xs, new_phis

    object_map = {obj: obj_by_chain[face_chain(chain)] for obj, chain in chains.items()}
    morphism_map = {}
    for m, a in alphas.items():
        src = object_map[current.source(m)]
        morphism_map[m] = mor_by_key[(src, a[:i] + a[i + 1:])]
    return FunctorData(current, lower.groupoid, object_map, morphism_map, name=f"d{i}")


def cech_nerve(f: FunctorData, n: int, budget: Budget = Budget()) -> List[CechLevel]:
    """
    Level 0 … n des augmentierten Čech-Nervs.

    Raises:
        PreconditionError: n < 0 oder keine Gruppoide
        BudgetExceeded: Objektzahl eines Levels über budget.cech_objects
    """
    if n < 0:
        raise PreconditionError("Levelgrenze muss ≥ 0 sein")
    x_prime, x = f.source, f.target
    if not isinstance(x_prime, FiniteGroupoid) or not isinstance(x, FiniteGroupoid):
        raise PreconditionError("cech_nerve erwartet Gruppoide")

    level0 = CechLevel(
        level=0,
        groupoid=x_prime,
        faces=(f,),
        chains={obj: ((obj,), ()) for obj in x_prime.objects},
        alphas={m: (m,) for m in x_prime.morphisms},
    )
    levels = [level0]
    last_projection = identity_functor(x_prime)
    for k in range(1, n + 1):
        lower = levels[-1]
        pullback = iso_comma_pullback(compose_functors(f, last_projection), f, max_objects=budget.cech_objects)
        chains: Dict[str, Chain] = {}
        for obj, (prev, x_new, phi) in pullback.triples.items():
            xs, phis = lower.chains[prev]
            chains[obj] = (xs + (x_new,), phis + (phi,))
        alphas = {m: lower.alphas[alpha] + (beta,) for m, (_, alpha, beta) in pullback.pairs.items()}
        faces = tuple(
            _face(k, i, pullback.groupoid, chains, alphas, lower, x) for i in range(k + 1)
        )
        levels.append(CechLevel(k, pullback.groupoid, faces, chains, alphas))
        last_projection = pullback.right
        logger.debug("Čech-Level %d: %d Objekte", k, len(pullback.groupoid.objects))
    return levels


def check_simplicial_identities(levels: List[CechLevel]) -> ValidationReport:
    """
    dᵢ∘d_j = d_{j−1}∘dᵢ für i < j auf allen Levels ≥ 2 (strikt), auf Level 1
    die Augmentation f∘d₀ ≅ f∘d₁ über die tautologische Transformation.
    """
    report = ValidationReport(subject="cech nerve")
    for level in levels[2:]:
        lower = levels[level.level - 1]
        for j in range(level.level + 1):
            for i in range(j):
                left = compose_functors(lower.faces[i], level.faces[j])
                right = compose_functors(lower.faces[j - 1], level.faces[i])
                if not left.same_maps(right):
                    report.axiom("simplicial_identity", [str(level.level), str(i), str(j)], f"d{i}∘d{j} ≠ d{j - 1}∘d{i}")
    if len(levels) > 1:
        f = levels[0].faces[0]
        level1 = levels[1]
        witness = NatTransData(
            source_functor=compose_functors(f, level1.faces[1]),
            target_functor=compose_functors(f, level1.faces[0]),
            components={obj: chain[1][0] for obj, chain in level1.chains.items()},
        )
        sub = validate_nat_trans(witness)
        if not sub.ok:
            report.extend(sub, prefix="augmentation.")
    return report.normalized()


@dataclass(frozen=True)
class CechConsistency:
    """π₀-Koegalisator des Nervs im Vergleich zu π₀(Y)."""

    coequalizer_classes: int
    image_blocks: int
    target_blocks: int

    @property
    def consistent(self) -> bool:
        return self.coequalizer_classes == self.image_blocks

    @property
    def effective(self) -> bool:
        return self.coequalizer_classes == self.target_blocks


def cech_pi0_coequalizer(f: FunctorData, budget: Budget = Budget()) -> CechConsistency:
    """Koegalisator von π₀(d₀), π₀(d₁): π₀(C₁) ⇉ π₀(C₀), verglichen mit dem Bild von π₀(f)."""
    levels = cech_nerve(f, 1, budget)
    level0, level1 = levels
    blocks0 = pi0(level0.groupoid)
    index0 = {x: i for i, b in enumerate(blocks0) for x in b}
    graph = nx.Graph()
    graph.add_nodes_from(range(len(blocks0)))
    d0, d1 = level1.faces
    for obj in level1.groupoid.objects:
        graph.add_edge(index0[d0.ob(obj)], index0[d1.ob(obj)])
    classes = nx.number_connected_components(graph)
    target_blocks = pi0(f.target)
    target_index = {x: i for i, b in enumerate(target_blocks) for x in b}
    image = {target_index[f.ob(x)] for x in f.source.objects}
    return CechConsistency(classes, len(image), len(target_blocks))

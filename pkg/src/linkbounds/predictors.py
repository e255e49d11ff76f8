"""Structural link predictors over a past coauthor graph.

Candidate pairs are the disconnected pairs sharing at least one neighbor.
Three scores are supported for a pair (x, y) with neighbor sets G(x), G(y):

  adamic-adar        sum over z in G(x) & G(y) of 1 / log degree(z)
  degree-product     |G(x)| * |G(y)|   (preferential attachment)
  common-neighbors   |G(x) & G(y)|

Rankings group pairs by exact score so downstream evaluation never depends
on arbitrary tie-breaking. The log base only rescales adamic-adar scores by
a constant, so the ranking itself is base-invariant.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import combinations
from typing import IO, Iterator

from .graph import CoauthorGraph


class PredictorKind(enum.Enum):
    ADAMIC_ADAR = "adamic-adar"
    DEGREE_PRODUCT = "degree-product"
    COMMON_NEIGHBORS = "common-neighbors"


@dataclass(frozen=True)
class ScoredPair:
    pair: tuple[str, str]
    score: float


@dataclass(frozen=True)
class TieGroup:
    """All candidate pairs sharing one exact score value."""

    score: float
    pairs: tuple[tuple[str, str], ...]  # lexicographic, for stable output only

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class RankedList:
    """Tie-groups in strictly decreasing score order."""

    predictor: PredictorKind
    groups: tuple[TieGroup, ...]

    @property
    def n_pairs(self) -> int:
        return sum(len(g) for g in self.groups)

    def scored_pairs(self) -> Iterator[ScoredPair]:
        """Every pair with its score, in rank order."""
        for group in self.groups:
            for pair in group.pairs:
                yield ScoredPair(pair, group.score)


def _canonical(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u < v else (v, u)


def candidate_pairs(past: CoauthorGraph) -> set[tuple[str, str]]:
    """Disconnected pairs with at least one common neighbor."""
    found: set[tuple[str, str]] = set()
    for z in past.nodes:
        for u, v in combinations(sorted(past.neighbors(z)), 2):
            if (u, v) not in found and not past.has_edge(u, v):
                found.add((u, v))
    return found


def score(
    kind: PredictorKind,
    past: CoauthorGraph,
    pair: tuple[str, str],
    log_base: float = math.e,
) -> float:
    """Score one pair; both endpoints must be distinct nodes of `past`."""
    u, v = pair
    if u == v:
        raise ValueError(f"pair endpoints must be distinct: {u!r}")
    gu, gv = past.neighbors(u), past.neighbors(v)
    if kind is PredictorKind.DEGREE_PRODUCT:
        return float(len(gu) * len(gv))
    common = gu & gv
    if kind is PredictorKind.COMMON_NEIGHBORS:
        return float(len(common))
    terms = []
    for z in common:
        dz = past.degree(z)
        # a shared neighbor touches two distinct nodes, so log never hits 0
        assert dz >= 2, f"common neighbor {z!r} has degree {dz} < 2"
        terms.append(1.0 / math.log(dz, log_base))
    return math.fsum(terms)


def rank(
    kind: PredictorKind, past: CoauthorGraph, log_base: float = math.e
) -> RankedList:
    """Score every candidate pair and group by exact score, descending.

    Scores use order-independent summation, so pairs with identical
    common-neighbor degree profiles land in the same group regardless of
    iteration order.
    """
    by_score: dict[float, list[tuple[str, str]]] = {}
    for pair in candidate_pairs(past):
        by_score.setdefault(score(kind, past, pair, log_base), []).append(pair)
    groups = tuple(
        TieGroup(s, tuple(sorted(by_score[s])))
        for s in sorted(by_score, reverse=True)
    )
    return RankedList(kind, groups)


def write_ranked_csv(ranked: RankedList, f: IO[str]) -> None:
    f.write("rank_group,score,author_u,author_v\n")
    for group_no, group in enumerate(ranked.groups, start=1):
        for u, v in group.pairs:
            f.write(f"{group_no},{group.score:.9g},{u},{v}\n")

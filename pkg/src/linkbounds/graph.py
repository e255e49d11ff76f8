"""Binary undirected coauthor graphs for one year window.

Every author pair on a paper becomes one edge; repeat collaborations across
papers collapse onto the same edge (no weights, no parallel edges, no
self-loops). Graphs are immutable after construction so analysis tasks can
share them freely.
"""

from __future__ import annotations

from itertools import combinations
from typing import IO, Iterator

from .corpus import Corpus
from .windowing import Window


class CoauthorGraph:
    """Adjacency-set graph over opaque author-id strings."""

    __slots__ = ("window", "_adj", "_n_edges")

    def __init__(self, window: Window, adjacency: dict[str, set[str]]):
        self.window = window
        self._adj = {v: frozenset(nbrs) for v, nbrs in adjacency.items()}
        self._n_edges = sum(len(nbrs) for nbrs in self._adj.values()) // 2

    @property
    def nodes(self) -> frozenset[str]:
        return frozenset(self._adj)

    @property
    def n_nodes(self) -> int:
        return len(self._adj)

    @property
    def n_edges(self) -> int:
        return self._n_edges

    def __contains__(self, v: str) -> bool:
        return v in self._adj

    def neighbors(self, v: str) -> frozenset[str]:
        try:
            return self._adj[v]
        except KeyError:
            raise KeyError(f"node not in graph: {v!r}") from None

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: str, v: str) -> bool:
        if u not in self._adj:
            raise KeyError(f"node not in graph: {u!r}")
        if v not in self._adj:
            raise KeyError(f"node not in graph: {v!r}")
        return v in self._adj[u]

    def edges(self) -> Iterator[tuple[str, str]]:
        """Each edge once, as (u, v) with u < v. Not sorted globally."""
        for u, nbrs in self._adj.items():
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def degrees(self) -> dict[str, int]:
        return {v: len(nbrs) for v, nbrs in self._adj.items()}


def build_graph(
    corpus: Corpus, window: Window, include_solo_authors: bool = True
) -> CoauthorGraph:
    """Build the coauthor graph of all papers with year inside `window`.

    Authors of single-author papers become isolated nodes when
    `include_solo_authors` is true and are omitted otherwise.
    """
    adj: dict[str, set[str]] = {}
    for record in corpus.records:
        if not window.contains(record.year):
            continue
        authors = sorted(set(record.authors))
        if len(authors) == 1:
            if include_solo_authors:
                adj.setdefault(authors[0], set())
            continue
        for a in authors:
            adj.setdefault(a, set())
        for u, v in combinations(authors, 2):
            adj[u].add(v)
            adj[v].add(u)
    return CoauthorGraph(window, adj)


def write_edgelist_csv(g: CoauthorGraph, f: IO[str]) -> None:
    """Sorted edge list, one `author_u,author_v` line per edge with u < v."""
    f.write("author_u,author_v\n")
    for u, v in sorted(g.edges()):
        f.write(f"{u},{v}\n")

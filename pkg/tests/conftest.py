import random

import pytest

from linkbounds.corpus import Corpus, PublicationRecord
from linkbounds.graph import CoauthorGraph
from linkbounds.windowing import Window


def make_corpus(rows, provenance="test"):
    """rows: iterable of (paper_id, year, authors)."""
    return Corpus.from_records(
        [PublicationRecord(pid, year, tuple(authors)) for pid, year, authors in rows],
        provenance=provenance,
    )


def random_graph(rng: random.Random, n_nodes: int, p_edge: float) -> CoauthorGraph:
    """Erdos-Renyi style graph over string node ids."""
    nodes = [f"a{i}" for i in range(n_nodes)]
    adj = {v: set() for v in nodes}
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            if rng.random() < p_edge:
                adj[nodes[i]].add(nodes[j])
                adj[nodes[j]].add(nodes[i])
    return CoauthorGraph(Window(2000, 2000), adj)


@pytest.fixture
def tiny_frame_corpus():
    """The worked census frame: past {X,Y},{Y,Q}; present {X,Y},{X,Q},{Q,Z},{Z,W}."""
    return make_corpus(
        [
            ("p1", 2000, ["X", "Y"]),
            ("p2", 2000, ["Y", "Q"]),
            ("p3", 2001, ["X", "Y"]),
            ("p4", 2001, ["X", "Q"]),
            ("p5", 2001, ["Q", "Z"]),
            ("p6", 2001, ["Z", "W"]),
        ]
    )

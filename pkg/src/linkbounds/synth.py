"""Reproducible synthetic longitudinal corpora with a controllable mix of
link-formation types.

The generator exists to exercise the pipeline, not to model science. Its
guarantee is bookkeeping, not asymptotics: every generated pair carries the
formation type it *realizes* against the pool of authors and links that
existed at the start of its year. Pools update only at year boundaries, so
for a frame whose past window covers the full prior history the recorded
intents coincide exactly with the census classification.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import IO, Iterable

from .census import LinkType
from .corpus import Corpus, PublicationRecord
from .windowing import FramePair, Window

_PAIR_ATTEMPTS = 64


@dataclass(frozen=True)
class SynthConfig:
    """Generation knobs.

    Each paper draws a seed pair whose role is sampled from: repeat an
    existing collaboration (`p_repeat`, realizes type A), join two existing
    but unlinked authors (`p_existing_new_pair`, type B), introduce two
    newcomers (`p_both_newcomers`, type D), otherwise pair an existing
    author with one newcomer (type C). Papers larger than two authors top
    up with extra members drawn existing-vs-new at the configured mass.
    """

    seed: int
    years: Window
    papers_per_year: int
    team_sizes: dict[int, float] = field(default_factory=lambda: {2: 1.0})
    p_repeat: float = 0.0
    p_existing_new_pair: float = 0.0
    p_both_newcomers: float = 0.0

    def __post_init__(self) -> None:
        if self.papers_per_year < 1:
            raise ValueError("papers_per_year must be >= 1")
        if not self.team_sizes or any(k < 2 for k in self.team_sizes):
            raise ValueError("team sizes must be >= 2")
        if any(w < 0 for w in self.team_sizes.values()):
            raise ValueError("team size weights must be >= 0")
        probs = (self.p_repeat, self.p_existing_new_pair, self.p_both_newcomers)
        if any(not 0.0 <= p <= 1.0 for p in probs):
            raise ValueError("role probabilities must lie in [0, 1]")
        if sum(probs) > 1.0 + 1e-12:
            raise ValueError("role probabilities must sum to at most 1")


@dataclass(frozen=True)
class IntentRecord:
    year: int
    pair: tuple[str, str]
    intended: LinkType


@dataclass(frozen=True)
class SynthResult:
    corpus: Corpus
    intents: tuple[IntentRecord, ...]
    fallbacks: int  # role draws that could not be honored and became newcomer pairs


def _pair_key(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u < v else (v, u)


class _Generator:
    def __init__(self, config: SynthConfig):
        self.config = config
        self.rng = random.Random(config.seed)
        self.pool: list[str] = []  # authors existing at the current year start
        self.pool_set: set[str] = set()
        self.links: list[tuple[str, str]] = []  # linked pairs at year start
        self.link_set: set[tuple[str, str]] = set()
        self.next_author = 0
        self.next_paper = 0
        self.fallbacks = 0

    def new_author(self) -> str:
        name = f"a{self.next_author}"
        self.next_author += 1
        return name

    def classify(self, u: str, v: str) -> LinkType:
        u_in, v_in = u in self.pool_set, v in self.pool_set
        if u_in and v_in:
            return LinkType.A if _pair_key(u, v) in self.link_set else LinkType.B
        if u_in or v_in:
            return LinkType.C
        return LinkType.D

    def draw_seed_pair(self) -> tuple[str, str]:
        cfg, rng = self.config, self.rng
        roll = rng.random()
        if roll < cfg.p_repeat:
            if self.links:
                return rng.choice(self.links)
            self.fallbacks += 1
            return (self.new_author(), self.new_author())
        roll -= cfg.p_repeat
        if roll < cfg.p_existing_new_pair:
            if len(self.pool) >= 2:
                for _ in range(_PAIR_ATTEMPTS):
                    u, v = rng.sample(self.pool, 2)
                    if _pair_key(u, v) not in self.link_set:
                        return (u, v)
            self.fallbacks += 1
            return (self.new_author(), self.new_author())
        roll -= cfg.p_existing_new_pair
        if roll < cfg.p_both_newcomers:
            return (self.new_author(), self.new_author())
        if self.pool:
            return (rng.choice(self.pool), self.new_author())
        self.fallbacks += 1
        return (self.new_author(), self.new_author())

    def draw_extra(self) -> str:
        p_existing = self.config.p_repeat + self.config.p_existing_new_pair
        if self.pool and self.rng.random() < p_existing:
            return self.rng.choice(self.pool)
        return self.new_author()

    def run(self) -> SynthResult:
        cfg = self.config
        sizes = sorted(cfg.team_sizes)
        weights = [cfg.team_sizes[s] for s in sizes]
        records: list[PublicationRecord] = []
        intents: dict[tuple[int, tuple[str, str]], LinkType] = {}

        for year in range(cfg.years.start_year, cfg.years.end_year + 1):
            year_pairs: set[tuple[str, str]] = set()
            year_authors: list[str] = []
            for _ in range(cfg.papers_per_year):
                k = self.rng.choices(sizes, weights)[0]
                u, v = self.draw_seed_pair()
                members = [u, v]
                attempts = 0
                while len(members) < k:
                    extra = self.draw_extra()
                    if extra in members:
                        attempts += 1
                        if attempts < _PAIR_ATTEMPTS:
                            continue
                        extra = self.new_author()  # pool exhausted; top up fresh
                    members.append(extra)
                    attempts = 0
                for i in range(len(members)):
                    for j in range(i + 1, len(members)):
                        key = _pair_key(members[i], members[j])
                        intents.setdefault((year, key), self.classify(*key))
                        year_pairs.add(key)
                year_authors.extend(m for m in members if m not in self.pool_set)
                records.append(
                    PublicationRecord(f"p{self.next_paper}", year, tuple(members))
                )
                self.next_paper += 1
            # pools advance only between years, keeping intents exact
            # against any full-history past window
            for a in dict.fromkeys(year_authors):
                if a not in self.pool_set:
                    self.pool.append(a)
                    self.pool_set.add(a)
            for pair in sorted(year_pairs):
                if pair not in self.link_set:
                    self.links.append(pair)
                    self.link_set.add(pair)

        corpus = Corpus.from_records(records, provenance=f"synth(seed={cfg.seed})")
        intent_records = tuple(
            IntentRecord(year, pair, intended)
            for (year, pair), intended in intents.items()
        )
        return SynthResult(corpus, intent_records, self.fallbacks)


def generate(config: SynthConfig) -> SynthResult:
    """Generate a corpus plus per-pair intent labels, deterministic per seed."""
    return _Generator(config).run()


def generate_corpus(config: SynthConfig) -> Corpus:
    return generate(config).corpus


def write_intents_jsonl(intents: Iterable[IntentRecord], f: IO[str]) -> None:
    for rec in intents:
        f.write(
            json.dumps(
                {
                    "year": rec.year,
                    "author_u": rec.pair[0],
                    "author_v": rec.pair[1],
                    "intended_type": rec.intended.value,
                },
                separators=(",", ":"),
            )
        )
        f.write("\n")


def build_planted_frame_corpus(
    n_a: int,
    n_b_with_cn: int,
    n_b_without_cn: int,
    n_c: int,
    n_d: int = 0,
    past_year: int = 2000,
) -> tuple[Corpus, FramePair]:
    """Deterministic single-frame corpus with exact link-type counts.

    Each planted link lives in its own author namespace, so counts are
    exact and, in the past graph, the only candidate pairs (disconnected
    with a shared neighbor) are the type-B links planted *with* a common
    neighbor. Type-B links planted without one are structurally invisible
    to common-neighbor predictors, which pins the reachable recall at
    n_b_with_cn / (n_b_with_cn + n_b_without_cn).
    """
    present_year = past_year + 1
    records: list[PublicationRecord] = []
    pid = 0

    def paper(year: int, *authors: str) -> None:
        nonlocal pid
        records.append(PublicationRecord(f"q{pid}", year, tuple(authors)))
        pid += 1

    for i in range(n_a):
        u, v = f"A{i}u", f"A{i}v"
        paper(past_year, u, v)
        paper(present_year, u, v)
    for i in range(n_b_with_cn):
        u, v, shared = f"B{i}u", f"B{i}v", f"B{i}s"
        paper(past_year, u, shared)
        paper(past_year, v, shared)
        paper(present_year, u, v)
    for i in range(n_b_without_cn):
        u, v = f"N{i}u", f"N{i}v"
        paper(past_year, u, f"N{i}x")
        paper(past_year, v, f"N{i}y")
        paper(present_year, u, v)
    for i in range(n_c):
        old, partner, newcomer = f"C{i}u", f"C{i}x", f"C{i}z"
        paper(past_year, old, partner)
        paper(present_year, old, newcomer)
    for i in range(n_d):
        paper(present_year, f"D{i}u", f"D{i}v")

    frame = FramePair(Window(past_year, past_year), Window(present_year, present_year))
    return Corpus.from_records(records, provenance="planted"), frame

"""Parsing, validation, and filtering of longitudinal bibliographic records.

Author identifiers are opaque, pre-disambiguated strings; no name matching
happens here. Two input formats are supported: `jsonl` (one object per line
with keys paper_id, year, authors) and `tsv` (paper_id, year, then one
author id per remaining field).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator


class CorpusError(ValueError):
    """Raised when input records cannot form a usable corpus."""


@dataclass(frozen=True)
class PublicationRecord:
    """One paper: id, publication year, ordered distinct author ids."""

    paper_id: str
    year: int
    authors: tuple[str, ...]


@dataclass
class ParseReport:
    """Diagnostics accumulated while parsing one stream."""

    lines_read: int = 0
    records_parsed: int = 0
    malformed: list[tuple[int, str]] = field(default_factory=list)
    duplicate_paper_ids: list[tuple[int, str]] = field(default_factory=list)
    empty_author_records: int = 0
    duplicate_authors_removed: int = 0


@dataclass
class Corpus:
    """An immutable set of publication records with its year span.

    The parse-time diagnostics ride along in `report` but are excluded from
    equality so that a serialize/re-parse round trip compares equal.
    """

    records: tuple[PublicationRecord, ...]
    year_min: int
    year_max: int
    provenance: str = ""
    report: ParseReport | None = field(default=None, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.records)

    @classmethod
    def from_records(
        cls,
        records: Iterable[PublicationRecord],
        provenance: str = "",
        report: ParseReport | None = None,
    ) -> "Corpus":
        recs = tuple(records)
        if not recs:
            raise CorpusError("empty corpus")
        seen: set[str] = set()
        for r in recs:
            if r.paper_id in seen:
                raise CorpusError(f"duplicate paper_id: {r.paper_id!r}")
            seen.add(r.paper_id)
            if not r.authors:
                raise CorpusError(f"record {r.paper_id!r} has no authors")
        years = [r.year for r in recs]
        return cls(recs, min(years), max(years), provenance, report)


@dataclass(frozen=True)
class IngestConfig:
    """Ingestion knobs. `max_authors=None` keeps every team size."""

    max_authors: int | None = None
    dedupe_author_within_paper: bool = True

    def __post_init__(self) -> None:
        if self.max_authors is not None and self.max_authors < 2:
            raise ValueError("max_authors must be >= 2 when finite")


def _parse_jsonl_line(line: str) -> tuple[str, int, list[str]]:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid json: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ValueError("line is not an object")
    try:
        paper_id, year, authors = obj["paper_id"], obj["year"], obj["authors"]
    except KeyError as exc:
        raise ValueError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(paper_id, str):
        raise ValueError("paper_id must be a string")
    if isinstance(year, bool) or not isinstance(year, int):
        raise ValueError("year must be an integer")
    if not isinstance(authors, list) or any(not isinstance(a, str) for a in authors):
        raise ValueError("authors must be a list of strings")
    return paper_id, year, authors


def _parse_tsv_line(line: str) -> tuple[str, int, list[str]]:
    fields = line.split("\t")
    if len(fields) < 3:
        raise ValueError("expected at least 3 tab-separated fields")
    paper_id, year_text = fields[0], fields[1]
    try:
        year = int(year_text)
    except ValueError:
        raise ValueError(f"year is not an integer: {year_text!r}") from None
    return paper_id, year, fields[2:]


_LINE_PARSERS = {"jsonl": _parse_jsonl_line, "tsv": _parse_tsv_line}


def parse_records(
    stream: Iterable[str] | IO[str],
    fmt: str = "jsonl",
    provenance: str = "",
    config: IngestConfig | None = None,
) -> Corpus:
    """Parse a line-oriented stream into a Corpus.

    Malformed lines are rejected and reported with their line number;
    duplicate paper ids keep the first occurrence; records left with no
    authors are dropped and counted. All diagnostics land in the returned
    corpus's `report`. Raises CorpusError if nothing parses.
    """
    if fmt not in _LINE_PARSERS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {sorted(_LINE_PARSERS)}")
    parse_line = _LINE_PARSERS[fmt]
    dedupe = config.dedupe_author_within_paper if config is not None else True

    report = ParseReport()
    records: list[PublicationRecord] = []
    seen_ids: set[str] = set()
    for lineno, raw in enumerate(stream, start=1):
        report.lines_read += 1
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        try:
            paper_id, year, authors = parse_line(line)
        except ValueError as exc:
            report.malformed.append((lineno, str(exc)))
            continue
        if any(a == "" for a in authors):
            report.malformed.append((lineno, "empty author id"))
            continue
        if dedupe:
            deduped = list(dict.fromkeys(authors))
            report.duplicate_authors_removed += len(authors) - len(deduped)
            authors = deduped
        if not authors:
            report.empty_author_records += 1
            continue
        if paper_id in seen_ids:
            report.duplicate_paper_ids.append((lineno, paper_id))
            continue
        seen_ids.add(paper_id)
        records.append(PublicationRecord(paper_id, year, tuple(authors)))
        report.records_parsed += 1

    if not records:
        raise CorpusError("empty corpus")
    return Corpus.from_records(records, provenance, report)


def filter_by_team_size(corpus: Corpus, config: IngestConfig) -> tuple[Corpus, float]:
    """Keep records with at most `config.max_authors` authors.

    Returns the filtered corpus and the retention ratio kept/total.
    """
    if not corpus.records:
        raise CorpusError("empty corpus")
    if config.max_authors is None:
        return corpus, 1.0
    kept = tuple(r for r in corpus.records if len(r.authors) <= config.max_authors)
    if not kept:
        raise CorpusError("empty corpus after filtering")
    ratio = len(kept) / len(corpus.records)
    return Corpus.from_records(kept, corpus.provenance, corpus.report), ratio


def corpus_stats(corpus: Corpus) -> dict:
    """Summary counts: papers, papers per year, team sizes, distinct authors."""
    per_year: Counter[int] = Counter()
    team_sizes: Counter[int] = Counter()
    authors: set[str] = set()
    for r in corpus.records:
        per_year[r.year] += 1
        team_sizes[len(r.authors)] += 1
        authors.update(r.authors)
    return {
        "papers": len(corpus.records),
        "distinct_authors": len(authors),
        "year_min": corpus.year_min,
        "year_max": corpus.year_max,
        "papers_per_year": dict(sorted(per_year.items())),
        "team_size_distribution": dict(sorted(team_sizes.items())),
    }


def to_jsonl_lines(corpus: Corpus) -> Iterator[str]:
    for r in corpus.records:
        yield json.dumps(
            {"paper_id": r.paper_id, "year": r.year, "authors": list(r.authors)},
            separators=(",", ":"),
        )


def to_tsv_lines(corpus: Corpus) -> Iterator[str]:
    for r in corpus.records:
        yield "\t".join([r.paper_id, str(r.year), *r.authors])


def write_corpus(corpus: Corpus, f: IO[str], fmt: str = "jsonl") -> None:
    lines = {"jsonl": to_jsonl_lines, "tsv": to_tsv_lines}[fmt](corpus)
    for line in lines:
        f.write(line)
        f.write("\n")

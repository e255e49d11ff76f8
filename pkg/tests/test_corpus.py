import io
import json

import pytest

from linkbounds.corpus import (
    Corpus,
    CorpusError,
    IngestConfig,
    PublicationRecord,
    corpus_stats,
    filter_by_team_size,
    parse_records,
    to_jsonl_lines,
    to_tsv_lines,
)

JSONL_OK = '{"paper_id": "p1", "year": 1995, "authors": ["A", "B", "C"]}\n'


def test_parse_minimal_jsonl():
    corpus = parse_records([JSONL_OK], "jsonl")
    assert len(corpus) == 1
    rec = corpus.records[0]
    assert rec == PublicationRecord("p1", 1995, ("A", "B", "C"))
    assert corpus.year_min == corpus.year_max == 1995


def test_parse_minimal_tsv():
    corpus = parse_records(["p1\t1995\tA\tB\tC\n"], "tsv")
    assert corpus.records[0] == PublicationRecord("p1", 1995, ("A", "B", "C"))


def test_parse_dedupes_authors_and_counts():
    corpus = parse_records(['{"paper_id": "p1", "year": 1995, "authors": ["A", "A", "B"]}'])
    assert corpus.records[0].authors == ("A", "B")
    assert corpus.report.duplicate_authors_removed == 1


def test_parse_empty_stream_is_error():
    with pytest.raises(CorpusError, match="empty corpus"):
        parse_records([], "jsonl")
    with pytest.raises(CorpusError, match="empty corpus"):
        parse_records(["", "   "], "jsonl")


@pytest.mark.parametrize(
    "line",
    [
        "not json",
        '{"paper_id": "p1", "year": "1995", "authors": ["A"]}',
        '{"paper_id": "p1", "authors": ["A"]}',
        '{"paper_id": 3, "year": 1995, "authors": ["A"]}',
        '{"paper_id": "p1", "year": 1995, "authors": "A"}',
        '{"paper_id": "p1", "year": 1995, "authors": ["A", ""]}',
    ],
)
def test_malformed_jsonl_reported_with_line_number(line):
    corpus = parse_records([JSONL_OK, line], "jsonl")
    assert len(corpus) == 1
    assert corpus.report.malformed == [(2, corpus.report.malformed[0][1])]


def test_malformed_tsv_reported():
    corpus = parse_records(["p1\t1995\tA\tB", "p2\tnineteen\tA", "only-two\tfields"], "tsv")
    assert len(corpus) == 1
    assert [lineno for lineno, _ in corpus.report.malformed] == [2, 3]


def test_duplicate_paper_id_keeps_first():
    corpus = parse_records(
        [
            '{"paper_id": "p1", "year": 1995, "authors": ["A", "B"]}',
            '{"paper_id": "p1", "year": 1996, "authors": ["C", "D"]}',
        ]
    )
    assert len(corpus) == 1
    assert corpus.records[0].year == 1995
    assert corpus.report.duplicate_paper_ids == [(2, "p1")]


def test_record_left_without_authors_is_dropped_and_counted():
    corpus = parse_records(
        [JSONL_OK, '{"paper_id": "p2", "year": 1995, "authors": []}'],
    )
    assert len(corpus) == 1
    assert corpus.report.empty_author_records == 1


def test_filter_by_team_size_paper_like_retention():
    # 98 small papers plus 2 oversized ones, mirroring the ~98% retention
    # reported for the production ingestion thresholds
    rows = [(f"p{i}", 1995, [f"x{i}", f"y{i}"]) for i in range(98)]
    rows += [(f"big{i}", 1995, [f"b{i}_{j}" for j in range(15)]) for i in range(2)]
    corpus = parse_records(
        [json.dumps({"paper_id": p, "year": y, "authors": a}) for p, y, a in rows]
    )
    filtered, ratio = filter_by_team_size(corpus, IngestConfig(max_authors=14))
    assert len(filtered) == 98
    assert ratio == pytest.approx(0.98)


def test_filter_unlimited_is_identity():
    corpus = parse_records([JSONL_OK])
    filtered, ratio = filter_by_team_size(corpus, IngestConfig(max_authors=None))
    assert filtered == corpus
    assert ratio == 1.0


def test_filter_hand_count():
    lines = [
        '{"paper_id": "p1", "year": 2000, "authors": ["a", "b"]}',
        '{"paper_id": "p2", "year": 2000, "authors": ["a", "b", "c"]}',
        '{"paper_id": "p3", "year": 2000, "authors": ["q1","q2","q3","q4","q5","q6","q7","q8"]}',
    ]
    corpus = parse_records(lines)
    filtered, ratio = filter_by_team_size(corpus, IngestConfig(max_authors=7))
    assert sorted(len(r.authors) for r in filtered.records) == [2, 3]
    assert ratio == pytest.approx(2 / 3)


def test_filter_everything_out_is_error():
    corpus = parse_records([JSONL_OK])
    with pytest.raises(CorpusError, match="empty corpus after filtering"):
        filter_by_team_size(corpus, IngestConfig(max_authors=2))


def test_filter_idempotent():
    lines = [
        '{"paper_id": "p%d", "year": 2000, "authors": %s}' % (i, json.dumps([f"a{j}" for j in range(k)]))
        for i, k in enumerate([2, 3, 5, 8, 2])
    ]
    corpus = parse_records(lines)
    config = IngestConfig(max_authors=4)
    once, _ = filter_by_team_size(corpus, config)
    twice, ratio = filter_by_team_size(once, config)
    assert twice == once
    assert ratio == 1.0


def test_config_rejects_tiny_max_authors():
    with pytest.raises(ValueError):
        IngestConfig(max_authors=1)


def test_stats_counts():
    corpus = parse_records(
        [
            '{"paper_id": "p1", "year": 1995, "authors": ["A", "B", "C"]}',
            '{"paper_id": "p2", "year": 1995, "authors": ["A", "D"]}',
            '{"paper_id": "p3", "year": 1996, "authors": ["A"]}',
        ]
    )
    stats = corpus_stats(corpus)
    assert stats["papers"] == 3
    assert stats["distinct_authors"] == 4  # A counted once
    assert stats["papers_per_year"] == {1995: 2, 1996: 1}
    assert sum(stats["papers_per_year"].values()) == stats["papers"]
    assert stats["team_size_distribution"] == {1: 1, 2: 1, 3: 1}


def test_jsonl_round_trip():
    corpus = parse_records(
        [
            '{"paper_id": "p1", "year": 1995, "authors": ["A", "B"]}',
            '{"paper_id": "p2", "year": 1997, "authors": ["C"]}',
        ],
        provenance="src",
    )
    text = "\n".join(to_jsonl_lines(corpus)) + "\n"
    again = parse_records(io.StringIO(text), "jsonl", provenance="src")
    assert again == corpus


def test_tsv_round_trip():
    corpus = parse_records(["p1\t1995\tA\tB", "p2\t1997\tC"], "tsv", provenance="src")
    text = "\n".join(to_tsv_lines(corpus)) + "\n"
    again = parse_records(io.StringIO(text), "tsv", provenance="src")
    assert again == corpus


def test_duplicate_paper_id_in_from_records_rejected():
    recs = [
        PublicationRecord("p1", 2000, ("a",)),
        PublicationRecord("p1", 2001, ("b",)),
    ]
    with pytest.raises(CorpusError, match="duplicate paper_id"):
        Corpus.from_records(recs)

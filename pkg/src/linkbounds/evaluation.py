"""Recall-precision evaluation of ranked predictions against new links
between existing authors (census type B).

Curves are computed at tie-group boundaries: a whole group is retrieved at
once, so the curve is invariant to any ordering of pairs within a group.
No interpolation is applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable

from .census import LinkCensus, LinkType, classify_link
from .graph import CoauthorGraph
from .predictors import PredictorKind, RankedList
from .windowing import FramePair


@dataclass(frozen=True)
class GroundTruth:
    """The type-B links of one frame: the pairs a structural predictor is
    asked to find."""

    frame: FramePair
    positives: frozenset[tuple[str, str]]


@dataclass(frozen=True)
class PRPoint:
    cumulative_k: int
    precision: float
    recall: float


@dataclass(frozen=True)
class PRCurve:
    predictor: PredictorKind
    frame: FramePair
    points: tuple[PRPoint, ...]
    recall_at_full: float | None
    n_positives: int


def ground_truth_type_b(past: CoauthorGraph, present: CoauthorGraph) -> GroundTruth:
    frame = FramePair(past.window, present.window)
    positives = frozenset(
        edge for edge in present.edges() if classify_link(past, edge) is LinkType.B
    )
    return GroundTruth(frame, positives)


def pr_curve(ranked: RankedList, truth: GroundTruth) -> PRCurve:
    """Walk tie-groups in rank order, emitting one point per group.

    With no positives the curve has no points and recall is reported as
    absent rather than fabricated.
    """
    if not truth.positives:
        return PRCurve(ranked.predictor, truth.frame, (), None, 0)
    n_pos = len(truth.positives)
    points: list[PRPoint] = []
    retrieved = 0
    hits = 0
    for group in ranked.groups:
        retrieved += len(group)
        hits += sum(1 for pair in group.pairs if pair in truth.positives)
        points.append(PRPoint(retrieved, hits / retrieved, hits / n_pos))
    recall_at_full = points[-1].recall if points else 0.0
    return PRCurve(ranked.predictor, truth.frame, tuple(points), recall_at_full, n_pos)


def overall_coverage(recall_at_full: float, link_census: LinkCensus) -> float:
    """Fraction of all A+B+C links the predictor explains: its final recall
    on type B scaled by type B's share of the census."""
    ratio_b = link_census.ratio_b
    if ratio_b is None:
        raise ValueError("census ratios undefined (no A/B/C links)")
    return recall_at_full * ratio_b


def write_pr_csv(
    curves: Iterable[tuple[PRCurve, LinkCensus | None]], f: IO[str]
) -> None:
    """Point rows per curve plus one summary row carrying the final recall
    and, when a census is supplied, the overall coverage."""
    f.write(
        "predictor,past_start,past_end,present_start,present_end,"
        "cum_k,precision,recall,recall_at_full,overall_coverage\n"
    )
    for curve, link_census in curves:
        frame = curve.frame
        prefix = (
            f"{curve.predictor.value},{frame.past.start_year},{frame.past.end_year},"
            f"{frame.present.start_year},{frame.present.end_year}"
        )
        for pt in curve.points:
            f.write(f"{prefix},{pt.cumulative_k},{pt.precision:.6f},{pt.recall:.6f},,\n")
        if curve.recall_at_full is None:
            f.write(f"{prefix},,,,,\n")
            continue
        coverage = ""
        if link_census is not None and link_census.ratio_b is not None:
            coverage = f"{overall_coverage(curve.recall_at_full, link_census):.6f}"
        f.write(f"{prefix},,,,{curve.recall_at_full:.6f},{coverage}\n")

"""Census of link-formation types over past/present frame pairs.

Every link in the present network falls in exactly one class, judged
against the past network:

  A  both endpoints published in the past window and were already linked
     (sustained collaboration);
  B  both endpoints published in the past window but were not linked
     (the classic link-prediction target);
  C  exactly one endpoint published in the past window (a newcomer joins
     an existing author);
  D  neither endpoint published in the past window (two newcomers).

Reported ratios are each count over A+B+C; type D is counted but excluded
from the denominator.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import partial
from typing import IO, Iterable

from ._parallel import pmap
from .corpus import Corpus
from .graph import CoauthorGraph, build_graph
from .windowing import FramePair


class LinkType(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"


@dataclass(frozen=True)
class LinkCensus:
    """Counts and ratios of link types for one frame pair.

    Ratios are None when no A/B/C link exists, rather than a fabricated 0.
    """

    frame: FramePair
    count_a: int
    count_b: int
    count_c: int
    count_d: int

    @property
    def total_abc(self) -> int:
        return self.count_a + self.count_b + self.count_c

    @property
    def total(self) -> int:
        return self.total_abc + self.count_d

    @property
    def ratio_a(self) -> float | None:
        return self.count_a / self.total_abc if self.total_abc else None

    @property
    def ratio_b(self) -> float | None:
        return self.count_b / self.total_abc if self.total_abc else None

    @property
    def ratio_c(self) -> float | None:
        return self.count_c / self.total_abc if self.total_abc else None


def classify_link(past: CoauthorGraph, pair: tuple[str, str]) -> LinkType:
    """Classify one present link against the past network."""
    u, v = pair
    if u == v:
        raise ValueError(f"link endpoints must be distinct: {u!r}")
    u_in, v_in = u in past, v in past
    if u_in and v_in:
        return LinkType.A if past.has_edge(u, v) else LinkType.B
    if u_in or v_in:
        return LinkType.C
    return LinkType.D


def census(past: CoauthorGraph, present: CoauthorGraph) -> LinkCensus:
    """Classify every present edge exactly once."""
    frame = FramePair(past.window, present.window)
    counts = {t: 0 for t in LinkType}
    for edge in present.edges():
        counts[classify_link(past, edge)] += 1
    return LinkCensus(
        frame, counts[LinkType.A], counts[LinkType.B], counts[LinkType.C], counts[LinkType.D]
    )


def _census_one_frame(corpus: Corpus, include_solo: bool, frame: FramePair) -> LinkCensus:
    past = build_graph(corpus, frame.past, include_solo_authors=include_solo)
    present = build_graph(corpus, frame.present, include_solo_authors=include_solo)
    return census(past, present)


def census_over_frames(
    corpus: Corpus,
    frames: Iterable[FramePair],
    include_solo: bool = True,
    jobs: int = 1,
) -> list[LinkCensus]:
    """One census per frame, in frame order."""
    work = partial(_census_one_frame, corpus, include_solo)
    return pmap(work, list(frames), jobs=jobs)


def _fmt_ratio(value: float | None) -> str:
    return "" if value is None else f"{value:.6f}"


def write_census_csv(rows: Iterable[LinkCensus], f: IO[str]) -> None:
    f.write(
        "past_start,past_end,present_start,present_end,"
        "count_A,count_B,count_C,count_D,ratio_A,ratio_B,ratio_C\n"
    )
    for row in rows:
        frame = row.frame
        f.write(
            f"{frame.past.start_year},{frame.past.end_year},"
            f"{frame.present.start_year},{frame.present.end_year},"
            f"{row.count_a},{row.count_b},{row.count_c},{row.count_d},"
            f"{_fmt_ratio(row.ratio_a)},{_fmt_ratio(row.ratio_b)},{_fmt_ratio(row.ratio_c)}\n"
        )

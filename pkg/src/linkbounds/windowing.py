"""Year windows and past/present frame enumeration with yearly sliding."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Window:
    """Closed interval of calendar years, inclusive on both ends."""

    start_year: int
    end_year: int

    def __post_init__(self) -> None:
        if self.start_year > self.end_year:
            raise ValueError(f"window start {self.start_year} after end {self.end_year}")

    @property
    def length(self) -> int:
        return self.end_year - self.start_year + 1

    def contains(self, year: int) -> bool:
        return self.start_year <= year <= self.end_year

    @classmethod
    def parse(cls, text: str) -> "Window":
        """Parse 'YYYY-YYYY' (or a single 'YYYY')."""
        parts = text.split("-")
        if len(parts) == 1:
            year = int(parts[0])
            return cls(year, year)
        if len(parts) != 2:
            raise ValueError(f"cannot parse window {text!r}; expected YYYY-YYYY")
        return cls(int(parts[0]), int(parts[1]))

    def __str__(self) -> str:
        return f"{self.start_year}-{self.end_year}"


@dataclass(frozen=True)
class FramePair:
    """A past window immediately followed by a present window, no gap."""

    past: Window
    present: Window

    def __post_init__(self) -> None:
        if self.present.start_year != self.past.end_year + 1:
            raise ValueError(
                f"present window {self.present} must start the year after past {self.past}"
            )

    def __str__(self) -> str:
        return f"{self.past}|{self.present}"


def enumerate_frames(
    data_range: Window,
    past_lengths: Iterable[int],
    present_lengths: Iterable[int],
    slide: int = 1,
) -> list[FramePair]:
    """All frame pairs fitting inside `data_range` for each length combination.

    Frames that would extend past the range on either side are dropped, not
    truncated. Ordering is by past length, then present length, then present
    start year. Present start years advance by `slide`.
    """
    pasts = sorted(set(past_lengths))
    presents = sorted(set(present_lengths))
    if any(p < 1 for p in pasts) or any(q < 1 for q in presents):
        raise ValueError("window lengths must be >= 1")
    if slide < 1:
        raise ValueError("slide must be >= 1")
    frames: list[FramePair] = []
    empty_combos = 0
    for p in pasts:
        for q in presents:
            start = data_range.start_year + p  # earliest present start
            any_fit = False
            s = start
            while s + q - 1 <= data_range.end_year:
                frames.append(FramePair(Window(s - p, s - 1), Window(s, s + q - 1)))
                any_fit = True
                s += slide
            if not any_fit:
                empty_combos += 1
    if empty_combos:
        logger.info(
            "%d of %d length combinations produced no frame within %s",
            empty_combos,
            len(pasts) * len(presents),
            data_range,
        )
    return frames


def enumerate_single_windows(
    data_range: Window, lengths: Iterable[int], slide: int = 1
) -> list[Window]:
    """All windows of the given lengths inside `data_range`, end years
    advancing by `slide`. Ordered by length, then end year."""
    wanted = sorted(set(lengths))
    if any(length < 1 for length in wanted):
        raise ValueError("window lengths must be >= 1")
    if slide < 1:
        raise ValueError("slide must be >= 1")
    windows: list[Window] = []
    for length in wanted:
        end = data_range.start_year + length - 1
        while end <= data_range.end_year:
            windows.append(Window(end - length + 1, end))
            end += slide
    return windows

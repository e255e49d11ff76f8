"""Temporal coauthorship network analytics.

Slices longitudinal publication corpora into past/present frame pairs,
censuses how present links form relative to the past network, ranks
candidate pairs with structural link predictors, evaluates them with
recall-precision curves, and fits discrete power laws to degree
distributions to bound how much of the network topology a
preferential-attachment style model can account for.
"""

__version__ = "0.1.0"

from .census import LinkCensus, LinkType, census, census_over_frames, classify_link
from .corpus import (
    Corpus,
    CorpusError,
    IngestConfig,
    PublicationRecord,
    corpus_stats,
    filter_by_team_size,
    parse_records,
)
from .evaluation import (
    GroundTruth,
    PRCurve,
    PRPoint,
    ground_truth_type_b,
    overall_coverage,
    pr_curve,
)
from .graph import CoauthorGraph, build_graph
from .powerlaw import (
    DegreeSample,
    InsufficientTailError,
    PowerLawFit,
    degree_sequence,
    fit_discrete,
    gof_pvalue,
    powerlaw_over_windows,
    sample_zeta,
)
from .predictors import (
    PredictorKind,
    RankedList,
    ScoredPair,
    TieGroup,
    candidate_pairs,
    rank,
    score,
)
from .synth import SynthConfig, SynthResult, generate, generate_corpus
from .windowing import FramePair, Window, enumerate_frames, enumerate_single_windows

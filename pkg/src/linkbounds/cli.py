"""Command-line pipeline: ingest, census, predict, evaluate, powerlaw,
synth, and report subcommands emitting CSV/JSONL artifacts plus a run
manifest. All randomness takes an explicit --seed; outputs are
byte-identical across runs and --jobs settings."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .census import census, census_over_frames, write_census_csv
from .corpus import (
    Corpus,
    CorpusError,
    IngestConfig,
    corpus_stats,
    filter_by_team_size,
    parse_records,
    write_corpus,
)
from .evaluation import ground_truth_type_b, pr_curve, write_pr_csv
from .graph import build_graph
from .powerlaw import (
    degree_sequence,
    powerlaw_over_windows,
    write_ccdf_csv,
    write_fits_csv,
)
from .predictors import PredictorKind, rank, write_ranked_csv
from .synth import SynthConfig, generate, write_intents_jsonl
from .windowing import FramePair, Window, enumerate_frames, enumerate_single_windows


@dataclass
class RunManifest:
    command: str
    version: str
    inputs: list[str]
    flags: dict
    seeds: dict
    outputs: list[str] = field(default_factory=list)
    started_at: str = ""
    duration_seconds: float = 0.0


def _manifest_for(args: argparse.Namespace, inputs: list[str]) -> RunManifest:
    flags = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
    seeds = {"seed": args.seed} if getattr(args, "seed", None) is not None else {}
    return RunManifest(
        command=args.command,
        version=__version__,
        inputs=inputs,
        flags=flags,
        seeds=seeds,
        started_at=datetime.now(timezone.utc).isoformat(),
    )


def _finish(manifest: RunManifest, path: Path, t0: float) -> None:
    manifest.duration_seconds = round(time.perf_counter() - t0, 6)
    with open(path, "w", encoding="utf-8", newline="") as f:
        json.dump(asdict(manifest), f, indent=2)
        f.write("\n")


def _open_out(path: str):
    return open(path, "w", encoding="utf-8", newline="")


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}") from None


def _team_sizes(text: str) -> dict[int, float]:
    sizes: dict[int, float] = {}
    for part in text.split(","):
        size_text, _, weight_text = part.partition(":")
        sizes[int(size_text)] = float(weight_text) if weight_text else 1.0
    return sizes


def _load_corpus(args: argparse.Namespace) -> Corpus:
    config = IngestConfig(max_authors=getattr(args, "max_authors", None))
    with open(args.input, "r", encoding="utf-8") as f:
        corpus = parse_records(f, args.format, provenance=args.input, config=config)
    return corpus


def _predictor(args: argparse.Namespace) -> PredictorKind:
    return PredictorKind(args.predictor)


def cmd_ingest(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    corpus = _load_corpus(args)
    config = IngestConfig(max_authors=args.max_authors)
    corpus, retention = filter_by_team_size(corpus, config)
    manifest = _manifest_for(args, [args.input])
    with _open_out(args.out) as f:
        write_corpus(corpus, f, fmt="jsonl")
    manifest.outputs.append(args.out)
    stats = corpus_stats(corpus)
    stats["retention_ratio"] = retention
    if corpus.report is not None:
        stats["parse_report"] = {
            "lines_read": corpus.report.lines_read,
            "records_parsed": corpus.report.records_parsed,
            "malformed": corpus.report.malformed,
            "duplicate_paper_ids": corpus.report.duplicate_paper_ids,
            "empty_author_records": corpus.report.empty_author_records,
            "duplicate_authors_removed": corpus.report.duplicate_authors_removed,
        }
    if args.stats:
        with _open_out(args.stats) as f:
            json.dump(stats, f, indent=2, sort_keys=True)
            f.write("\n")
        manifest.outputs.append(args.stats)
    _finish(manifest, Path(args.out + ".manifest.json"), t0)
    print(f"ingested {stats['papers']} papers ({retention:.4f} retained) -> {args.out}")
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    corpus = _load_corpus(args)
    data_range = Window(corpus.year_min, corpus.year_max)
    frames = enumerate_frames(
        data_range, _int_list(args.past_lengths), _int_list(args.present_lengths), args.slide
    )
    rows = census_over_frames(corpus, frames, include_solo=args.include_solo, jobs=args.jobs)
    manifest = _manifest_for(args, [args.input])
    with _open_out(args.out) as f:
        write_census_csv(rows, f)
    manifest.outputs.append(args.out)
    _finish(manifest, Path(args.out + ".manifest.json"), t0)
    print(f"wrote {len(rows)} frame rows -> {args.out}")
    return 0


def cmd_predict(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    corpus = _load_corpus(args)
    past = build_graph(corpus, Window.parse(args.past), include_solo_authors=args.include_solo)
    ranked = rank(_predictor(args), past)
    manifest = _manifest_for(args, [args.input])
    with _open_out(args.out) as f:
        write_ranked_csv(ranked, f)
    manifest.outputs.append(args.out)
    _finish(manifest, Path(args.out + ".manifest.json"), t0)
    print(f"ranked {ranked.n_pairs} candidate pairs in {len(ranked.groups)} groups -> {args.out}")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    corpus = _load_corpus(args)
    frame = FramePair(Window.parse(args.past), Window.parse(args.present))
    past = build_graph(corpus, frame.past, include_solo_authors=args.include_solo)
    present = build_graph(corpus, frame.present, include_solo_authors=args.include_solo)
    ranked = rank(_predictor(args), past)
    truth = ground_truth_type_b(past, present)
    curve = pr_curve(ranked, truth)
    frame_census = census(past, present)
    manifest = _manifest_for(args, [args.input])
    with _open_out(args.out) as f:
        write_pr_csv([(curve, frame_census)], f)
    manifest.outputs.append(args.out)
    _finish(manifest, Path(args.out + ".manifest.json"), t0)
    recall = "absent" if curve.recall_at_full is None else f"{curve.recall_at_full:.6f}"
    print(f"evaluated {frame}: {curve.n_positives} positives, recall_at_full={recall} -> {args.out}")
    return 0


def cmd_powerlaw(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    if args.n_boot > 0 and args.seed is None:
        raise ValueError("--seed is required when --n-boot > 0")
    corpus = _load_corpus(args)
    data_range = Window(corpus.year_min, corpus.year_max)
    windows = enumerate_single_windows(data_range, _int_list(args.window_lengths), args.slide)
    rows = powerlaw_over_windows(
        corpus,
        windows,
        n_boot=args.n_boot,
        seed=args.seed if args.seed is not None else 0,
        include_solo=args.include_solo,
        min_tail=args.min_tail,
        jobs=args.jobs,
    )
    manifest = _manifest_for(args, [args.input])
    with _open_out(args.out) as f:
        write_fits_csv(rows, f)
    manifest.outputs.append(args.out)
    if args.ccdf_dir:
        ccdf_dir = Path(args.ccdf_dir)
        ccdf_dir.mkdir(parents=True, exist_ok=True)
        for row in rows:
            if row.fit is None:
                continue
            g = build_graph(corpus, row.window, include_solo_authors=args.include_solo)
            path = ccdf_dir / f"ccdf_{row.window.start_year}_{row.window.end_year}.csv"
            with _open_out(str(path)) as f:
                write_ccdf_csv(degree_sequence(g), f)
            manifest.outputs.append(str(path))
    _finish(manifest, Path(args.out + ".manifest.json"), t0)
    fitted = sum(1 for r in rows if r.fit is not None)
    print(f"fitted {fitted}/{len(rows)} windows -> {args.out}")
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    config = SynthConfig(
        seed=args.seed,
        years=Window.parse(args.years),
        papers_per_year=args.papers_per_year,
        team_sizes=_team_sizes(args.team_sizes),
        p_repeat=args.p_repeat,
        p_existing_new_pair=args.p_existing_new,
        p_both_newcomers=args.p_both_new,
    )
    result = generate(config)
    manifest = _manifest_for(args, [])
    with _open_out(args.out) as f:
        write_corpus(result.corpus, f, fmt="jsonl")
    manifest.outputs.append(args.out)
    intents_path = args.intents or args.out + ".intents.jsonl"
    with _open_out(intents_path) as f:
        write_intents_jsonl(result.intents, f)
    manifest.outputs.append(intents_path)
    _finish(manifest, Path(args.out + ".manifest.json"), t0)
    print(
        f"generated {len(result.corpus.records)} papers "
        f"({result.fallbacks} role fallbacks) -> {args.out}"
    )
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    if args.n_boot > 0 and args.seed is None:
        raise ValueError("--seed is required when --n-boot > 0")
    corpus = _load_corpus(args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = _manifest_for(args, [args.input])
    data_range = Window(corpus.year_min, corpus.year_max)

    # formation-type ratio series, one row per frame
    frames = enumerate_frames(
        data_range, _int_list(args.past_lengths), _int_list(args.present_lengths), args.slide
    )
    census_rows = census_over_frames(corpus, frames, include_solo=args.include_solo, jobs=args.jobs)
    census_path = out_dir / "census.csv"
    with _open_out(str(census_path)) as f:
        write_census_csv(census_rows, f)
    manifest.outputs.append(str(census_path))

    # recall-precision curves for the first, middle, and last frame of each
    # length combination
    by_combo: dict[tuple[int, int], list[FramePair]] = {}
    for frame in frames:
        by_combo.setdefault((frame.past.length, frame.present.length), []).append(frame)
    curves = []
    kind = _predictor(args)
    for combo_frames in by_combo.values():
        picks = sorted({0, len(combo_frames) // 2, len(combo_frames) - 1})
        for i in picks:
            frame = combo_frames[i]
            past = build_graph(corpus, frame.past, include_solo_authors=args.include_solo)
            present = build_graph(corpus, frame.present, include_solo_authors=args.include_solo)
            curve = pr_curve(rank(kind, past), ground_truth_type_b(past, present))
            curves.append((curve, census(past, present)))
    pr_path = out_dir / "pr_curves.csv"
    with _open_out(str(pr_path)) as f:
        write_pr_csv(curves, f)
    manifest.outputs.append(str(pr_path))

    # degree power-law fit series over single windows
    windows = enumerate_single_windows(data_range, _int_list(args.window_lengths), args.slide)
    fit_rows = powerlaw_over_windows(
        corpus,
        windows,
        n_boot=args.n_boot,
        seed=args.seed if args.seed is not None else 0,
        include_solo=args.include_solo,
        min_tail=args.min_tail,
        jobs=args.jobs,
    )
    fits_path = out_dir / "powerlaw.csv"
    with _open_out(str(fits_path)) as f:
        write_fits_csv(fit_rows, f)
    manifest.outputs.append(str(fits_path))
    ccdf_dir = out_dir / "ccdf"
    ccdf_dir.mkdir(exist_ok=True)
    for row in fit_rows:
        if row.fit is None:
            continue
        g = build_graph(corpus, row.window, include_solo_authors=args.include_solo)
        path = ccdf_dir / f"ccdf_{row.window.start_year}_{row.window.end_year}.csv"
        with _open_out(str(path)) as f:
            write_ccdf_csv(degree_sequence(g), f)
        manifest.outputs.append(str(path))

    _finish(manifest, out_dir / "manifest.json", t0)
    print(f"report written to {out_dir}")
    return 0


def _add_corpus_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="corpus file")
    p.add_argument("--format", default="jsonl", choices=["jsonl", "tsv"])
    p.add_argument(
        "--include-solo",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="count authors of single-author papers as (isolated) past members",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linkbounds",
        description="Formation census, link predictors, and degree power-law "
        "bounds for temporal coauthorship networks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse, validate, and filter a corpus")
    p.add_argument("--input", required=True)
    p.add_argument("--format", default="jsonl", choices=["jsonl", "tsv"])
    p.add_argument("--max-authors", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--stats", default=None)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("census", help="link-type census over a frame grid")
    _add_corpus_args(p)
    p.add_argument("--past-lengths", default="1,3,5")
    p.add_argument("--present-lengths", default="1,3,5")
    p.add_argument("--slide", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("predict", help="rank candidate pairs in a past window")
    _add_corpus_args(p)
    p.add_argument("--predictor", default="adamic-adar", choices=[k.value for k in PredictorKind])
    p.add_argument("--past", required=True, help="past window, YYYY-YYYY")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="recall-precision curve for one frame")
    _add_corpus_args(p)
    p.add_argument("--predictor", default="adamic-adar", choices=[k.value for k in PredictorKind])
    p.add_argument("--past", required=True, help="past window, YYYY-YYYY")
    p.add_argument("--present", required=True, help="present window, YYYY-YYYY")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("powerlaw", help="degree power-law fits over sliding windows")
    _add_corpus_args(p)
    p.add_argument("--window-lengths", default="2,6,10")
    p.add_argument("--slide", type=int, default=1)
    p.add_argument("--n-boot", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--min-tail", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--ccdf-dir", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_powerlaw)

    p = sub.add_parser("synth", help="generate a synthetic corpus with intent labels")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--years", required=True, help="YYYY-YYYY")
    p.add_argument("--papers-per-year", type=int, required=True)
    p.add_argument("--team-sizes", default="2:1.0", help="size:weight list, e.g. 2:0.7,3:0.3")
    p.add_argument("--p-repeat", type=float, default=0.0)
    p.add_argument("--p-existing-new", type=float, default=0.0)
    p.add_argument("--p-both-new", type=float, default=0.0)
    p.add_argument("--out", required=True)
    p.add_argument("--intents", default=None)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("report", help="emit plot data for every figure family")
    _add_corpus_args(p)
    p.add_argument("--past-lengths", default="1,3,5")
    p.add_argument("--present-lengths", default="1,3,5")
    p.add_argument("--window-lengths", default="2,6,10")
    p.add_argument("--slide", type=int, default=1)
    p.add_argument("--predictor", default="adamic-adar", choices=[k.value for k in PredictorKind])
    p.add_argument("--n-boot", type=int, default=0)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--min-tail", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CorpusError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

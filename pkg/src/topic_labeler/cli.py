"""
Command-line interface: one subcommand per pipeline stage, plus ``run``.

Settings are resolved as defaults < config file < TOPIC_LABELER_* environment
variables < command-line flags.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from topic_labeler import __version__
from topic_labeler.config import COHERENCE_METRICS, COUNT_MODES, NON_ASCII_POLICIES, RunConfig
from topic_labeler.errors import ConfigError, StageError
from topic_labeler.pipeline import run_pipeline
from topic_labeler.stages import RunContext, default_registry

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s : %(levelname)s : %(message)s"

# Flags whose dest names a RunConfig field; everything else is a path or a switch.
_CONFIG_FIELDS = {
    "inputs",
    "output_dir",
    "text_column",
    "delimiter",
    "pool",
    "assign_inputs",
    "gold",
    "stopwords_path",
    "contractions_path",
    "lexicon_dir",
    "min_token_len",
    "min_tokens_keep",
    "non_ascii_policy",
    "min_df",
    "max_df_fraction",
    "num_topics",
    "sweep",
    "k_min",
    "k_max",
    "k_step",
    "alpha_sum",
    "beta",
    "iterations",
    "fold_in_iterations",
    "seed",
    "metric",
    "top_n",
    "window",
    "count_mode",
    "workers",
    "plots",
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="Flat key=value (or .json) config file")
    parser.add_argument("--output-dir", dest="output_dir", help="Run directory for default artifact paths")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")


def _add_inputs(parser: argparse.ArgumentParser, required: bool = False) -> None:
    parser.add_argument("--input", dest="inputs", nargs="+", required=required, help="Tweet CSV file(s)")
    parser.add_argument("--text-column", dest="text_column", help="Column holding the tweet text")
    parser.add_argument("--delimiter", help="CSV field delimiter")
    parser.add_argument(
        "--no-pool",
        dest="pool",
        action="store_const",
        const=False,
        help="Train on the first input only; fold in the others",
    )


def _add_cleaning(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--stopwords", dest="stopwords_path", help="Stopword list (one per line)")
    parser.add_argument("--contractions", dest="contractions_path", help="pattern<TAB>expansion table")
    parser.add_argument("--lexicon-dir", dest="lexicon_dir", help="Directory overriding tagger lexicons")
    parser.add_argument("--min-token-len", dest="min_token_len", type=int)
    parser.add_argument("--min-tokens-keep", dest="min_tokens_keep", type=int)
    parser.add_argument("--non-ascii-policy", dest="non_ascii_policy", choices=NON_ASCII_POLICIES)


def _add_training(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--min-df", dest="min_df", type=int)
    parser.add_argument("--max-df-fraction", dest="max_df_fraction", type=float)
    parser.add_argument("--alpha-sum", dest="alpha_sum", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--iterations", type=int)
    parser.add_argument("--seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topic-labeler",
        description="Aspect-based topic identification and labeling for tweets",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="Clean tweets into clean.jsonl")
    _add_common(p)
    _add_inputs(p)
    _add_cleaning(p)
    p.add_argument("--output", help="Output JSONL (default: <output-dir>/clean.jsonl)")

    p = sub.add_parser("aspects", help="Extract aspect terms into aspects.jsonl")
    _add_common(p)
    _add_inputs(p)
    _add_cleaning(p)
    p.add_argument("--output", help="Output JSONL (default: <output-dir>/aspects.jsonl)")

    p = sub.add_parser("sweep-k", help="Coherence curve over candidate K")
    _add_common(p)
    _add_inputs(p)
    _add_cleaning(p)
    _add_training(p)
    p.add_argument("--clean", help="Cleaned documents (clean.jsonl) instead of --input")
    p.add_argument("--k-min", dest="k_min", type=int)
    p.add_argument("--k-max", dest="k_max", type=int)
    p.add_argument("--k-step", dest="k_step", type=int)
    p.add_argument("--metric", choices=COHERENCE_METRICS)
    p.add_argument("--top-n", dest="top_n", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--output", help="Curve CSV (default: <output-dir>/curve.csv)")
    p.add_argument("--svg", help="Also render the curve to this SVG")

    p = sub.add_parser("train", help="Train LDA into a model file")
    _add_common(p)
    _add_inputs(p)
    _add_cleaning(p)
    _add_training(p)
    p.add_argument("--clean", help="Cleaned documents (clean.jsonl) instead of --input")
    p.add_argument("--k", dest="num_topics", type=int, help="Number of topics")
    p.add_argument("--output", help="Model file (default: <output-dir>/model.json)")

    p = sub.add_parser("label", help="Label topics from aspect clusters")
    _add_common(p)
    _add_inputs(p)
    _add_cleaning(p)
    p.add_argument("--model", help="Model file")
    p.add_argument("--aspects", help="Aspect terms (aspects.jsonl) instead of --input")
    p.add_argument("--count-mode", dest="count_mode", choices=COUNT_MODES)
    p.add_argument("--output", help="Labels JSON (default: <output-dir>/labels.json)")
    p.add_argument("--svg", help="Directory for per-topic unigram SVGs")

    p = sub.add_parser("assign", help="Assign tweets their topic and label")
    _add_common(p)
    _add_cleaning(p)
    p.add_argument("--input", dest="assign_inputs", nargs="+", help="Unseen tweet CSV(s) to fold in")
    p.add_argument("--text-column", dest="text_column")
    p.add_argument("--delimiter")
    p.add_argument("--model", help="Model file")
    p.add_argument("--labels", help="Labels JSON")
    p.add_argument("--fold-in-iterations", dest="fold_in_iterations", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--output", help="Assignment CSV (default: <output-dir>/assigned.csv)")

    p = sub.add_parser("evaluate", help="Accuracy and confusion matrix against gold labels")
    _add_common(p)
    p.add_argument("--assigned", help="Assignment CSV")
    p.add_argument("--gold", help="Gold label CSV (tweet_id,label)")
    p.add_argument("--output", help="Report JSON (default: <output-dir>/report.json)")
    p.add_argument("--matrix", help="Confusion matrix CSV (default: <output-dir>/confusion.csv)")

    p = sub.add_parser("map", help="Intertopic distance map")
    _add_common(p)
    p.add_argument("--model", help="Model file")
    p.add_argument("--labels", help="Labels JSON (optional)")
    p.add_argument("--output", help="Map JSON (default: <output-dir>/map.json)")
    p.add_argument("--svg", help="Also render the map to this SVG")

    p = sub.add_parser("run", help="Run the whole pipeline")
    _add_common(p)
    _add_inputs(p)
    _add_cleaning(p)
    _add_training(p)
    p.add_argument("--k", dest="num_topics", type=int, help="Number of topics (ignored with --sweep)")
    p.add_argument("--sweep", action="store_const", const=True, help="Choose K by coherence sweep")
    p.add_argument("--k-min", dest="k_min", type=int)
    p.add_argument("--k-max", dest="k_max", type=int)
    p.add_argument("--k-step", dest="k_step", type=int)
    p.add_argument("--metric", choices=COHERENCE_METRICS)
    p.add_argument("--top-n", dest="top_n", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--count-mode", dest="count_mode", choices=COUNT_MODES)
    p.add_argument("--assign-input", dest="assign_inputs", nargs="+", help="Unseen CSV(s) to fold in")
    p.add_argument("--fold-in-iterations", dest="fold_in_iterations", type=int)
    p.add_argument("--gold", help="Gold label CSV; adds the evaluate stage")
    p.add_argument("--svg", dest="plots", action="store_const", const=True, help="Also render SVGs")
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(format=LOG_FORMAT, level=level, force=True)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the config file and environment, then explicit flags."""
    overrides: dict[str, Any] = {
        key: value for key, value in vars(args).items() if key in _CONFIG_FIELDS and value is not None
    }
    svg = getattr(args, "svg", None)
    if isinstance(svg, str):
        overrides["plots"] = True
    return RunConfig.load(args.config).merged(overrides)


# Artifact each verb's --output flag points at.
_OUTPUT_ARTIFACT = {
    "preprocess": "clean",
    "aspects": "aspects",
    "sweep-k": "curve",
    "train": "model",
    "label": "labels",
    "assign": "assigned",
    "evaluate": "report",
    "map": "map",
}

_SVG_ARTIFACT = {"sweep-k": "curve_svg", "label": "unigrams_svg", "map": "map_svg"}


def artifact_paths(args: argparse.Namespace) -> dict[str, Path]:
    paths: dict[str, Path] = {}
    if getattr(args, "output", None):
        paths[_OUTPUT_ARTIFACT[args.command]] = Path(args.output)
    for flag, artifact in (
        ("clean", "clean"),
        ("aspects", "aspects"),
        ("model", "model"),
        ("labels", "labels"),
        ("assigned", "assigned"),
        ("matrix", "confusion"),
    ):
        value = getattr(args, flag, None)
        if value:
            paths[artifact] = Path(value)
    if isinstance(getattr(args, "svg", None), str) and args.command in _SVG_ARTIFACT:
        paths[_SVG_ARTIFACT[args.command]] = Path(args.svg)
    return paths


def _validate_for(cfg: RunConfig, args: argparse.Namespace) -> None:
    # Other verbs can read upstream artifacts instead of raw inputs.
    needs_inputs = args.command in ("preprocess", "aspects")
    needs_seed = args.command in ("sweep-k", "train")
    cfg.validate(require_inputs=needs_inputs, require_seed=needs_seed)


def run_stage(args: argparse.Namespace, cfg: RunConfig) -> int:
    stage = default_registry().get(args.command)
    if stage is None:
        raise ValueError(f"Unknown command: {args.command}")
    ctx = RunContext(
        config=cfg,
        paths=artifact_paths(args),
        progress_callback=lambda kind, message: logger.info(message),
    )
    result = stage.run(ctx)
    if not result.success:
        print(f"error [{stage.name}]: {result.error}", file=sys.stderr)
        return 1
    for path in result.output or []:
        print(path)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)

    try:
        cfg = resolve_config(args)
        if args.command == "run":
            artifacts = run_pipeline(cfg, progress_callback=lambda kind, message: logger.info(message))
            for path in artifacts.values():
                print(path)
            return 0
        _validate_for(cfg, args)
        return run_stage(args, cfg)
    except ConfigError as e:
        print(f"error [config]: {e}", file=sys.stderr)
        return 2
    except StageError as e:
        print(f"error [{e.stage}]: {e.cause}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

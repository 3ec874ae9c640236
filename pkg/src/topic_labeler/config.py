"""
Configuration management for the topic labeling pipeline.

Two dataclasses live here: PipelineConfig (text cleaning parameters shared by
preprocessing and aspect extraction) and RunConfig (everything a full run needs).
Run configs are flat ``key=value`` files read with python-dotenv; environment
variables prefixed ``TOPIC_LABELER_`` and explicit overrides win over the file.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field, fields
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional

from dotenv import dotenv_values

from topic_labeler.errors import ConfigError

DATA_DIR = Path(__file__).resolve().parent / "data"
DEFAULT_STOPWORDS_PATH = DATA_DIR / "stopwords.txt"
DEFAULT_CONTRACTIONS_PATH = DATA_DIR / "contractions.tsv"

ENV_PREFIX = "TOPIC_LABELER_"

NON_ASCII_POLICIES = ("strip_chars", "drop_tweet")
COHERENCE_METRICS = ("cv", "umass")
COUNT_MODES = ("raw", "presence")


def load_stopwords(path: Path | str | None = None) -> frozenset[str]:
    """Load a stopword list, one entry per line."""
    path = Path(path) if path else DEFAULT_STOPWORDS_PATH
    if not path.exists():
        raise ConfigError(f"Stopword file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return frozenset(
            line.strip().lower() for line in f if line.strip() and not line.startswith("#")
        )


def load_contractions(path: Path | str | None = None) -> tuple[tuple[str, str], ...]:
    """Load ``pattern<TAB>expansion`` pairs, preserving file order."""
    path = Path(path) if path else DEFAULT_CONTRACTIONS_PATH
    if not path.exists():
        raise ConfigError(f"Contraction file not found: {path}")
    pairs: list[tuple[str, str]] = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            if "\t" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'pattern<TAB>expansion'")
            pattern, expansion = line.split("\t", 1)
            pairs.append((pattern.strip(), expansion.strip()))
    return tuple(pairs)


@lru_cache(maxsize=8)
def _default_stopwords() -> frozenset[str]:
    return load_stopwords()


@lru_cache(maxsize=8)
def _default_contractions() -> tuple[tuple[str, str], ...]:
    return load_contractions()


@dataclass(frozen=True)
class PipelineConfig:
    """Parameters of the tweet cleaning steps."""

    stopwords: frozenset[str] = field(default_factory=_default_stopwords)
    contractions: tuple[tuple[str, str], ...] = field(default_factory=_default_contractions)
    min_token_len: int = 2
    min_tokens_keep: int = 1
    non_ascii_policy: str = "strip_chars"
    lexicon_dir: Optional[str] = None

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if self.min_token_len < 1:
            raise ConfigError("min_token_len must be >= 1")
        if self.min_tokens_keep < 0:
            raise ConfigError("min_tokens_keep must be >= 0")
        if self.non_ascii_policy not in NON_ASCII_POLICIES:
            raise ConfigError(
                f"Invalid non_ascii_policy: {self.non_ascii_policy}. "
                f"Must be one of {', '.join(NON_ASCII_POLICIES)}"
            )
        for pattern, _ in self.contractions:
            if pattern != pattern.lower():
                raise ConfigError(f"Contraction pattern must be lowercase: {pattern!r}")

    @classmethod
    def from_files(
        cls,
        stopwords_path: Path | str | None = None,
        contractions_path: Path | str | None = None,
        **kwargs: Any,
    ) -> "PipelineConfig":
        """Build a config from (possibly overridden) data files."""
        return cls(
            stopwords=load_stopwords(stopwords_path) if stopwords_path else _default_stopwords(),
            contractions=(
                load_contractions(contractions_path) if contractions_path else _default_contractions()
            ),
            **kwargs,
        )

    def to_dict(self) -> dict:
        return {
            "stopwords_count": len(self.stopwords),
            "stopwords_sha1": hashlib.sha1("\n".join(sorted(self.stopwords)).encode()).hexdigest(),
            "contractions_count": len(self.contractions),
            "min_token_len": self.min_token_len,
            "min_tokens_keep": self.min_tokens_keep,
            "non_ascii_policy": self.non_ascii_policy,
            "lexicon_dir": self.lexicon_dir,
        }


def _parse_bool(raw: str) -> bool:
    value = raw.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def _coerce(type_name: str, raw: Any) -> Any:
    """Convert a raw config value to the declared field type."""
    if not isinstance(raw, str):
        return raw
    text = raw.strip()
    optional = type_name.startswith("Optional[")
    base = type_name[len("Optional["):-1] if optional else type_name
    if optional and text.lower() in ("", "none", "null"):
        return None
    if base == "str":
        # Whitespace is significant here (a tab delimiter).
        return raw
    if base == "int":
        return int(text)
    if base == "float":
        return float(text)
    if base == "bool":
        return _parse_bool(text)
    if base == "list[str]":
        return [part.strip() for part in text.split(",") if part.strip()]
    if base == "list[int]":
        return [int(part) for part in text.split(",") if part.strip()]
    return text


# Fields that do not change results and stay out of the config hash.
_NON_SEMANTIC_FIELDS = frozenset({"output_dir", "workers", "plots"})


@dataclass
class RunConfig:
    """Configuration of one end-to-end run."""

    inputs: list[str] = field(default_factory=list)
    output_dir: str = "runs/latest"
    text_column: str = "OriginalTweet"
    delimiter: str = ","
    pool: bool = True
    assign_inputs: list[str] = field(default_factory=list)
    gold: Optional[str] = None

    stopwords_path: Optional[str] = None
    contractions_path: Optional[str] = None
    lexicon_dir: Optional[str] = None
    min_token_len: int = 2
    min_tokens_keep: int = 1
    non_ascii_policy: str = "strip_chars"

    min_df: int = 2
    max_df_fraction: float = 0.5

    num_topics: int = 20
    sweep: bool = False
    k_min: int = 2
    k_max: int = 40
    k_step: int = 2
    alpha_sum: float = 5.0
    beta: float = 0.01
    iterations: int = 1000
    fold_in_iterations: int = 50
    seed: Optional[int] = None

    metric: str = "cv"
    top_n: int = 20
    window: int = 110

    count_mode: str = "raw"
    workers: int = 1
    plots: bool = False

    def validate(self, *, require_inputs: bool = True, require_seed: bool = True) -> None:
        """Validate that the configuration has required fields."""
        if require_seed and self.seed is None:
            raise ConfigError("A seed is required (set seed=... or pass --seed)")
        if require_inputs and not self.inputs:
            raise ConfigError("No input CSV given (set inputs=... or pass --input)")
        for path in [*self.inputs, *self.assign_inputs]:
            if not Path(path).exists():
                raise ConfigError(f"Input file not found: {path}")
        if self.gold and not Path(self.gold).exists():
            raise ConfigError(f"Gold label file not found: {self.gold}")
        if len(self.delimiter) != 1:
            raise ConfigError("delimiter must be a single character")
        if self.num_topics < 1:
            raise ConfigError("num_topics must be >= 1")
        if self.sweep and (self.k_min < 2 or self.k_max < self.k_min or self.k_step < 1):
            raise ConfigError("Sweep range requires 2 <= k_min <= k_max and k_step >= 1")
        if self.alpha_sum <= 0 or self.beta <= 0:
            raise ConfigError("alpha_sum and beta must be positive")
        if self.iterations < 1 or self.fold_in_iterations < 1:
            raise ConfigError("iterations and fold_in_iterations must be >= 1")
        if self.min_df < 1 or not 0 < self.max_df_fraction <= 1:
            raise ConfigError("min_df must be >= 1 and max_df_fraction in (0, 1]")
        if self.metric not in COHERENCE_METRICS:
            raise ConfigError(f"Invalid metric: {self.metric}. Must be 'cv' or 'umass'")
        if self.top_n < 2 or self.window < 1:
            raise ConfigError("top_n must be >= 2 and window >= 1")
        if self.count_mode not in COUNT_MODES:
            raise ConfigError(f"Invalid count_mode: {self.count_mode}. Must be 'raw' or 'presence'")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        # Raises ConfigError for a bad policy or data file.
        self.pipeline_config()

    def k_candidates(self) -> list[int]:
        return list(range(self.k_min, self.k_max + 1, self.k_step))

    def pipeline_config(self) -> PipelineConfig:
        return PipelineConfig.from_files(
            self.stopwords_path,
            self.contractions_path,
            min_token_len=self.min_token_len,
            min_tokens_keep=self.min_tokens_keep,
            non_ascii_policy=self.non_ascii_policy,
            lexicon_dir=self.lexicon_dir,
        )

    def to_dict(self) -> dict:
        """Convert configuration to dictionary."""
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def config_hash(self) -> str:
        """Stable hash of the settings that influence results."""
        semantic = {k: v for k, v in self.to_dict().items() if k not in _NON_SEMANTIC_FIELDS}
        payload = json.dumps(semantic, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        """Create configuration from a dictionary of raw or typed values."""
        known = {f.name: f for f in fields(cls)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ConfigError(f"Unknown config keys: {', '.join(unknown)}")
        values = {}
        for key, raw in data.items():
            try:
                values[key] = _coerce(str(known[key].type), raw)
            except ValueError as e:
                raise ConfigError(f"Bad value for {key}: {e}") from e
        return cls(**values)

    def merged(self, overrides: dict[str, Any]) -> "RunConfig":
        """Return a copy with non-None overrides applied."""
        data = self.to_dict()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig.from_dict(data)

    def save(self, path: Path | str) -> None:
        """Save configuration as flat key=value text."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = []
        for key, value in self.to_dict().items():
            if value is None:
                continue
            if isinstance(value, list):
                value = ",".join(str(v) for v in value)
            elif isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{key}={json.dumps(str(value))}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: Path | str | None = None, *, use_env: bool = True) -> "RunConfig":
        """Load configuration from a flat key=value file plus environment overrides."""
        data: dict[str, Any] = {}
        if path is not None:
            path = Path(path)
            if not path.exists():
                raise ConfigError(f"Config file not found: {path}")
            if path.suffix == ".json":
                with open(path, "r", encoding="utf-8") as f:
                    data.update(json.load(f))
            else:
                data.update({k: v for k, v in dotenv_values(path).items() if v is not None})
        if use_env:
            data.update(_env_overrides())
        return cls.from_dict(data)


def _env_overrides() -> dict[str, str]:
    known = {f.name for f in fields(RunConfig)}
    overrides = {}
    for key, value in os.environ.items():
        if key.startswith(ENV_PREFIX):
            name = key[len(ENV_PREFIX):].lower()
            if name in known:
                overrides[name] = value
    return overrides

"""Loading of the tweet dataset and of annotator gold labels."""
from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

import pandas as pd

from topic_labeler.errors import DatasetError, GoldLabelError

logger = logging.getLogger(__name__)

DEFAULT_TEXT_COLUMN = "OriginalTweet"
META_COLUMNS = ("UserName", "ScreenName", "Location", "TweetAt", "Sentiment")


@dataclass(frozen=True)
class RawTweet:
    """A tweet exactly as read from the dataset."""

    id: int
    text: str
    meta: Optional[dict[str, str]] = None


@dataclass(frozen=True)
class SkippedRow:
    """A malformed data row left out of the load."""

    line: int
    reason: str


@dataclass
class LoadResult:
    """Tweets of one load plus the rows that were skipped."""

    tweets: list[RawTweet] = field(default_factory=list)
    skipped: list[SkippedRow] = field(default_factory=list)

    @property
    def skipped_count(self) -> int:
        return len(self.skipped)

    def __iter__(self):
        return iter(self.tweets)

    def __len__(self) -> int:
        return len(self.tweets)


@dataclass(frozen=True)
class GoldLabelSet:
    """Annotator labels keyed by tweet id."""

    entries: tuple[tuple[int, str], ...] = ()

    def as_dict(self) -> dict[int, str]:
        return dict(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def load_dataset(
    path: Path | str,
    text_column: str = DEFAULT_TEXT_COLUMN,
    delimiter: str = ",",
    *,
    id_offset: int = 0,
) -> LoadResult:
    """
    Read a tweet CSV (Kaggle Corona_NLP layout) into RawTweets.

    Bytes that are not valid UTF-8 are replaced rather than rejected, so
    loading never fails on encoding. Rows with the wrong field count are
    skipped and reported with their line number.

    Args:
        path: CSV file with a header row
        text_column: Column holding the tweet text
        delimiter: Field delimiter
        id_offset: First id to assign (used when pooling several files)

    Returns:
        LoadResult with tweets numbered id_offset.. in file order
    """
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"Dataset file not found: {path}")

    result = LoadResult()
    with open(path, "r", encoding="utf-8", errors="replace", newline="") as handle:
        reader = csv.reader(handle, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(f"Dataset file is empty (no header row): {path}")
        if header and header[0].startswith("\ufeff"):
            header[0] = header[0][1:]
        if text_column not in header:
            raise DatasetError(
                f"Column '{text_column}' not found in {path}. Available columns: {header}"
            )
        text_idx = header.index(text_column)
        meta_idx = {name: header.index(name) for name in META_COLUMNS if name in header}

        next_id = id_offset
        start_line = reader.line_num + 1
        for row in reader:
            if not row:
                # Blank line between records.
                start_line = reader.line_num + 1
                continue
            if len(row) != len(header):
                skipped = SkippedRow(
                    line=start_line,
                    reason=f"expected {len(header)} fields, found {len(row)}",
                )
                logger.warning("%s:%d skipped: %s", path.name, skipped.line, skipped.reason)
                result.skipped.append(skipped)
            else:
                meta = {name: row[i] for name, i in meta_idx.items()} or None
                result.tweets.append(RawTweet(id=next_id, text=row[text_idx], meta=meta))
                next_id += 1
            start_line = reader.line_num + 1

    logger.info(
        "Loaded %d tweets from %s (%d rows skipped)", len(result.tweets), path, result.skipped_count
    )
    return result


def load_corpus(
    paths: Iterable[Path | str],
    text_column: str = DEFAULT_TEXT_COLUMN,
    delimiter: str = ",",
) -> LoadResult:
    """Pool several dataset files, numbering ids consecutively across files."""
    pooled = LoadResult()
    for path in paths:
        part = load_dataset(path, text_column, delimiter, id_offset=len(pooled.tweets))
        source = Path(path).name
        pooled.tweets.extend(
            RawTweet(id=t.id, text=t.text, meta={**(t.meta or {}), "source": source})
            for t in part.tweets
        )
        pooled.skipped.extend(part.skipped)
    return pooled


def write_dataset(
    tweets: Iterable[RawTweet],
    path: Path | str,
    text_column: str = DEFAULT_TEXT_COLUMN,
    delimiter: str = ",",
) -> None:
    """Write tweets back to CSV (id column first, then text and metadata)."""
    tweets = list(tweets)
    meta_names = [name for name in META_COLUMNS if any(name in (t.meta or {}) for t in tweets)]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, delimiter=delimiter)
        writer.writerow(["id", text_column, *meta_names])
        for t in tweets:
            meta = t.meta or {}
            writer.writerow([t.id, t.text, *(meta.get(name, "") for name in meta_names)])


def load_gold_labels(path: Path | str) -> GoldLabelSet:
    """
    Read a two-column ``tweet_id,label`` CSV.

    A header row is optional. Labels are trimmed and lowercased.
    """
    path = Path(path)
    if not path.exists():
        raise GoldLabelError(f"Gold label file not found: {path}")

    try:
        df = pd.read_csv(
            path,
            header=None,
            names=["tweet_id", "label"],
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
            encoding="utf-8",
            encoding_errors="replace",
        )
    except pd.errors.EmptyDataError:
        return GoldLabelSet()
    except pd.errors.ParserError as e:
        raise GoldLabelError(f"{path}: expected two columns (tweet_id,label): {e}") from e
    if len(df) and df.iloc[0]["tweet_id"].strip().lower() in ("tweet_id", "id"):
        df = df.iloc[1:]

    entries: list[tuple[int, str]] = []
    seen: set[int] = set()
    for row_num, (raw_id, raw_label) in enumerate(zip(df["tweet_id"], df["label"]), start=1):
        try:
            tweet_id = int(raw_id.strip())
        except ValueError:
            raise GoldLabelError(f"{path}: row {row_num}: non-integer tweet id {raw_id!r}")
        if tweet_id in seen:
            raise GoldLabelError(f"{path}: row {row_num}: duplicate tweet id {tweet_id}")
        label = raw_label.strip().lower()
        if not label:
            raise GoldLabelError(f"{path}: row {row_num}: empty label for tweet {tweet_id}")
        seen.add(tweet_id)
        entries.append((tweet_id, label))

    logger.info("Loaded %d gold labels from %s", len(entries), path)
    return GoldLabelSet(entries=tuple(entries))

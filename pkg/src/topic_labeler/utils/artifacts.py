"""
Artifact file helpers.

Every artifact is first written as ``<name>.partial`` and renamed once the
write completes; a failed stage leaves the ``.partial`` file behind.
"""
from __future__ import annotations

import hashlib
import json
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterable, Iterator, TextIO

from topic_labeler.utils.util import clean_for_json

logger = logging.getLogger(__name__)

PARTIAL_SUFFIX = ".partial"


def partial_path(path: Path | str) -> Path:
    path = Path(path)
    return path.with_name(path.name + PARTIAL_SUFFIX)


@contextmanager
def open_artifact(path: Path | str, newline: str | None = None) -> Iterator[TextIO]:
    """Open ``path.partial`` for writing and move it into place on success."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = partial_path(path)
    with open(tmp, "w", encoding="utf-8", newline=newline) as handle:
        yield handle
    tmp.replace(path)
    logger.debug("Wrote %s", path)


def write_json(path: Path | str, data: Any) -> Path:
    """Write indented JSON with stable key order as given."""
    with open_artifact(path) as handle:
        json.dump(clean_for_json(data), handle, indent=2, ensure_ascii=False)
        handle.write("\n")
    return Path(path)


def read_json(path: Path | str) -> Any:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def write_jsonl(path: Path | str, records: Iterable[dict]) -> Path:
    """Write one compact JSON object per line."""
    with open_artifact(path) as handle:
        for record in records:
            handle.write(json.dumps(clean_for_json(record), ensure_ascii=False, separators=(",", ":")))
            handle.write("\n")
    return Path(path)


def read_jsonl(path: Path | str) -> list[dict]:
    records = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                records.append(json.loads(line))
    return records


def compute_file_hash(path: Path | str) -> str:
    """sha256 of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()

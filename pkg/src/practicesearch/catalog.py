"""Best-practice catalog: loading, validation, and stage/task organization.

A catalog is an ordered collection of practices, each attached to exactly
one pipeline stage and one free-text task label. The on-disk format is
JSON-lines, one practice object per line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import IO, Iterator, Optional, Union


class Stage(Enum):
    """Pipeline stages, in workflow order. Declaration order is the display order."""

    MODEL_REQUIREMENTS = "ModelRequirements"
    DATA_COLLECTION = "DataCollection"
    DATA_CLEANING = "DataCleaning"
    FEATURE_ENGINEERING = "FeatureEngineering"
    DATA_LABELING = "DataLabeling"
    MODEL_TRAINING = "ModelTraining"
    MODEL_EVALUATION = "ModelEvaluation"
    MODEL_DEPLOYMENT = "ModelDeployment"
    MODEL_MONITORING = "ModelMonitoring"
    SUPPORT_TASKS = "SupportTasks"


ORIGINS = ("qa-coded", "guidebook", "other")


class CatalogError(ValueError):
    """Raised when a practices file fails validation."""


def parse_stage(name: str) -> Stage:
    """Parse a CamelCase stage name, raising with the offending value on failure."""
    try:
        return Stage(name)
    except ValueError:
        raise CatalogError(f"unknown stage {name!r}") from None


@dataclass(frozen=True)
class Source:
    origin: str
    url: Optional[str] = None

    def to_dict(self) -> dict:
        d: dict = {"origin": self.origin}
        if self.url is not None:
            d["url"] = self.url
        return d


@dataclass(frozen=True)
class Practice:
    id: str
    title: str
    description: str
    stage: Stage
    task: str
    source: Source

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "description": self.description,
            "stage": self.stage.value,
            "task": self.task,
            "source": self.source.to_dict(),
        }


class Catalog:
    """Ordered, immutable collection of practices with lookup maps."""

    def __init__(self, practices: list[Practice]):
        self.practices = list(practices)
        self.by_id: dict[str, Practice] = {}
        self.by_stage: dict[Stage, list[Practice]] = {s: [] for s in Stage}
        for p in self.practices:
            if p.id in self.by_id:
                raise CatalogError(f"duplicate practice id {p.id!r}")
            self.by_id[p.id] = p
            self.by_stage[p.stage].append(p)

    def __len__(self) -> int:
        return len(self.practices)

    def __iter__(self) -> Iterator[Practice]:
        return iter(self.practices)


def _parse_record(obj: dict, line_no: int) -> Practice:
    if not isinstance(obj, dict):
        raise CatalogError(f"line {line_no}: expected a JSON object")

    def require(key: str) -> object:
        if key not in obj:
            raise CatalogError(f"line {line_no}: missing field {key!r}")
        return obj[key]

    pid = require("id")
    title = require("title")
    stage_name = require("stage")
    task = require("task")
    if not isinstance(pid, str) or not pid.strip():
        raise CatalogError(f"line {line_no}: id must be a non-empty string")
    if not isinstance(title, str) or not title.strip():
        raise CatalogError(f"line {line_no}: title must be a non-empty string")
    if not isinstance(stage_name, str):
        raise CatalogError(f"line {line_no}: stage must be a string")
    if not isinstance(task, str):
        raise CatalogError(f"line {line_no}: task must be a string")
    try:
        stage = parse_stage(stage_name)
    except CatalogError as e:
        raise CatalogError(f"line {line_no}: {e}") from None

    description = obj.get("description", "")
    if not isinstance(description, str):
        raise CatalogError(f"line {line_no}: description must be a string")

    raw_source = obj.get("source", {"origin": "other"})
    if not isinstance(raw_source, dict):
        raise CatalogError(f"line {line_no}: source must be an object")
    origin = raw_source.get("origin", "other")
    if origin not in ORIGINS:
        raise CatalogError(f"line {line_no}: unknown source origin {origin!r}")
    url = raw_source.get("url")
    if url is not None and not isinstance(url, str):
        raise CatalogError(f"line {line_no}: source url must be a string")

    return Practice(
        id=pid,
        title=title,
        description=description,
        stage=stage,
        task=task,
        source=Source(origin=origin, url=url),
    )


def load_catalog(source: Union[str, Path, IO[str], IO[bytes]]) -> Catalog:
    """Load a JSON-lines practices file.

    Accepts a path or an open text/binary stream. Blank lines are skipped.
    Raises CatalogError with the 1-based line number for malformed JSON,
    missing or invalid fields, unknown stages, and duplicate ids.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return _load_from_lines(fh)
    return _load_from_lines(source)


def _load_from_lines(stream: Union[IO[str], IO[bytes]]) -> Catalog:
    practices: list[Practice] = []
    seen: set[str] = set()
    for line_no, raw in enumerate(stream, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise CatalogError(f"line {line_no}: malformed JSON: {e.msg}") from None
        practice = _parse_record(obj, line_no)
        if practice.id in seen:
            raise CatalogError(f"line {line_no}: duplicate practice id {practice.id!r}")
        seen.add(practice.id)
        practices.append(practice)
    return Catalog(practices)


def filter_practices(
    catalog: Catalog,
    stage: Optional[Stage] = None,
    task: Optional[str] = None,
) -> list[Practice]:
    """Practices matching all provided filters, in catalog order.

    No filters returns the full list. An unknown task yields an empty
    list rather than an error; task labels are free text.
    """
    result = []
    for p in catalog:
        if stage is not None and p.stage is not stage:
            continue
        if task is not None and p.task != task:
            continue
        result.append(p)
    return result


def group_by_stage(catalog: Catalog) -> dict[Stage, list[Practice]]:
    """Map every stage, in enumeration order, to its practices (possibly empty)."""
    return {s: list(catalog.by_stage[s]) for s in Stage}


def default_corpus_path() -> Path:
    """Path of the seed corpus bundled with the package."""
    return Path(__file__).parent / "data" / "practices.jsonl"

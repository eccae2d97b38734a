"""Bridge to a generative language model endpoint.

Wraps user queries in a fixed instruction template, fetches a completion
over a minimal HTTP contract ({"prompt": ...} -> {"text": ...}), parses the
enumerated list it asks for, and homogenizes the outcome into the same
response shape the retrieval engine produces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

import httpx

from .catalog import Catalog
from .rankers import RankedResult

PROMPT_PREFIX = (
    "Below is an instruction that describes a task, paired with an input "
    "that provides further context. Write a response that appropriately "
    "completes the request.### Instruction: Give me an enumerated list of "
    "best practices for "
)
PROMPT_SUFFIX = " with a description of each of them."


def build_prompt(user_query: str) -> str:
    """Splice the trimmed query into the instruction template."""
    query = user_query.strip()
    if not query:
        raise ValueError("query must not be empty")
    return PROMPT_PREFIX + query + PROMPT_SUFFIX


@dataclass(frozen=True)
class GenerationEndpointConfig:
    url: str
    timeout_s: float = 30.0
    max_response_chars: int = 20000
    retries: int = 1

    def __post_init__(self):
        if self.timeout_s <= 0:
            raise ValueError("timeout_s must be positive")
        if self.max_response_chars < 1:
            raise ValueError("max_response_chars must be positive")
        if self.retries < 0:
            raise ValueError("retries must not be negative")


class GenerationError(Exception):
    """Base error for generation endpoint failures; `reason` is a stable tag."""

    reason = "generation_failed"


class GenerationTimeout(GenerationError):
    reason = "timeout"


class GenerationConnectionError(GenerationError):
    reason = "unreachable"


class GenerationProtocolError(GenerationError):
    reason = "protocol"

    def __init__(self, message: str, status_code: Optional[int] = None):
        super().__init__(message)
        self.status_code = status_code


def generate(prompt: str, config: GenerationEndpointConfig) -> str:
    """POST the prompt and return the completion text.

    Transport failures are retried up to config.retries times; protocol
    errors (non-2xx, malformed body) are not. Overlong completions are
    truncated to max_response_chars.
    """
    last_error: Optional[GenerationError] = None
    for _ in range(config.retries + 1):
        try:
            response = httpx.post(
                config.url, json={"prompt": prompt}, timeout=config.timeout_s
            )
        except httpx.TimeoutException as e:
            last_error = GenerationTimeout(f"generation endpoint timed out: {e}")
            continue
        except httpx.TransportError as e:
            last_error = GenerationConnectionError(
                f"generation endpoint unreachable: {e}"
            )
            continue
        if response.status_code // 100 != 2:
            raise GenerationProtocolError(
                f"generation endpoint returned status {response.status_code}",
                status_code=response.status_code,
            )
        try:
            body = response.json()
        except ValueError:
            raise GenerationProtocolError("generation endpoint returned non-JSON body")
        text = body.get("text") if isinstance(body, dict) else None
        if not isinstance(text, str):
            raise GenerationProtocolError(
                'generation endpoint response lacks a "text" string'
            )
        return text[: config.max_response_chars]
    assert last_error is not None
    raise last_error


@dataclass(frozen=True)
class GeneratedPractice:
    title: str
    description: Optional[str] = None


_NUMBERED_LINE = re.compile(r"^\s*\d+[.)]\s+(.*)$")


def _split_title(text: str) -> tuple[str, Optional[str]]:
    """Title runs up to the first ":" or " - "; the rest starts the description."""
    candidates = [i for i in (text.find(":"), text.find(" - ")) if i != -1]
    if not candidates:
        return text.strip(), None
    cut = min(candidates)
    sep_len = 1 if text[cut] == ":" else 3
    return text[:cut].strip(), text[cut + sep_len:].strip() or None


def parse_practices(raw: str) -> list[GeneratedPractice]:
    """Parse an enumerated list of practices out of free-form completion text.

    Lines before the first numbered line are preamble and ignored.
    Non-numbered lines after a numbered one continue its description.
    Never raises; no numbered lines means an empty list.
    """
    records: list[tuple[str, list[str]]] = []
    for line in raw.splitlines():
        match = _NUMBERED_LINE.match(line)
        if match:
            title, desc = _split_title(match.group(1))
            records.append((title, [desc] if desc else []))
        elif records and line.strip():
            records[-1][1].append(line.strip())
    out = []
    for title, desc_parts in records:
        if not title:
            continue
        description = " ".join(desc_parts).strip() or None
        out.append(GeneratedPractice(title=title, description=description))
    return out


@dataclass(frozen=True)
class SearchResult:
    """One homogenized result; retrieval results carry task and score,
    generated ones only title and maybe description."""

    title: str
    description: Optional[str] = None
    task: Optional[str] = None
    score: Optional[float] = None

    def to_dict(self) -> dict:
        d: dict = {"title": self.title}
        if self.description is not None:
            d["description"] = self.description
        if self.task is not None:
            d["task"] = self.task
        if self.score is not None:
            d["score"] = self.score
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SearchResult":
        return cls(
            title=d["title"],
            description=d.get("description"),
            task=d.get("task"),
            score=d.get("score"),
        )


@dataclass(frozen=True)
class SearchResponse:
    query: str
    results: tuple[SearchResult, ...]
    engine: Optional[str] = None

    def to_dict(self) -> dict:
        d: dict = {"query": self.query}
        if self.engine is not None:
            d["engine"] = self.engine
        d["results"] = [r.to_dict() for r in self.results]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SearchResponse":
        return cls(
            query=d["query"],
            results=tuple(SearchResult.from_dict(r) for r in d["results"]),
            engine=d.get("engine"),
        )


def homogenize_ir(
    query: str,
    ranked: Sequence[RankedResult],
    catalog: Catalog,
    engine: Optional[str] = "ir",
) -> SearchResponse:
    """Map ranked catalog hits into the unified response shape."""
    results = []
    for r in ranked:
        practice = catalog.by_id[r.practice_id]
        results.append(
            SearchResult(
                title=practice.title,
                description=practice.description or None,
                task=practice.task,
                score=r.score,
            )
        )
    return SearchResponse(query=query, results=tuple(results), engine=engine)


def homogenize_glm(
    query: str,
    practices: Sequence[GeneratedPractice],
    engine: Optional[str] = "glm",
) -> SearchResponse:
    """Map generated practices into the unified response shape.

    Generated practices belong to no catalog task and have no similarity
    score, so those fields stay absent.
    """
    results = tuple(
        SearchResult(title=p.title, description=p.description) for p in practices
    )
    return SearchResponse(query=query, results=results, engine=engine)

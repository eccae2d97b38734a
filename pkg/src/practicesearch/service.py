"""JSON HTTP service: search over both back-ends, catalog browsing, and
append-only feedback capture.

Handlers are plain (non-async) functions so the framework runs them in its
thread pool: a slow generation call never blocks retrieval requests. The
catalog and index are built once at startup and shared read-only.
"""

from __future__ import annotations

import json
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .catalog import CatalogError, filter_practices, group_by_stage, load_catalog, parse_stage
from .config import ServiceConfig, load_service_config
from .glm import (
    GenerationEndpointConfig,
    GenerationError,
    build_prompt,
    generate,
    homogenize_glm,
    homogenize_ir,
    parse_practices,
)
from .rankers import SearchEngine

K_MAX = 50

STAGES_NOTE = (
    "Stage browsing covers the curated practice catalog served by the ir "
    "engine; generated answers carry no stage information."
)


class FeedbackIn(BaseModel):
    """Feedback on one displayed result: a verdict, a star rating, or both."""

    model_config = ConfigDict(extra="forbid")

    query: str
    engine_used: Literal["ir", "glm"]
    target: str = Field(min_length=1)
    verdict: Optional[Literal["useful", "not_useful"]] = None
    stars: Optional[int] = Field(default=None, ge=1, le=5)

    @model_validator(mode="after")
    def _require_some_signal(self):
        if self.verdict is None and self.stars is None:
            raise ValueError("at least one of verdict or stars is required")
        return self


class FeedbackLog:
    """Append-only JSON-lines log with a single serialized writer."""

    def __init__(self, path: str):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, record: dict) -> None:
        line = json.dumps(record) + "\n"
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line)


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    cfg = config if config is not None else load_service_config()
    if cfg.index:
        engine = SearchEngine.load(cfg.index)
        catalog = engine.catalog
    else:
        catalog = load_catalog(cfg.corpus)
        engine = SearchEngine.build(catalog)
    gen_cfg = GenerationEndpointConfig(
        url=cfg.glm_url, timeout_s=cfg.glm_timeout_s, retries=cfg.glm_retries
    )
    feedback_log = FeedbackLog(cfg.feedback)
    app = FastAPI(title="practicesearch")

    @app.get("/api/search")
    def search(
        q: str = Query(""),
        engine_name: Literal["ir", "glm"] = Query("ir", alias="engine"),
        k: int = Query(10),
    ):
        if not q.strip():
            raise HTTPException(status_code=400, detail="query must not be empty")
        if not 1 <= k <= K_MAX:
            raise HTTPException(
                status_code=400, detail=f"k must be between 1 and {K_MAX}"
            )
        tag = None if cfg.blind_mode else engine_name
        if engine_name == "ir":
            ranked = engine.search(q, k=k)
            response = homogenize_ir(q, ranked, catalog, engine=tag)
        else:
            try:
                completion = generate(build_prompt(q), gen_cfg)
            except GenerationError as e:
                raise HTTPException(
                    status_code=502,
                    detail={"reason": e.reason, "message": str(e)},
                )
            practices = parse_practices(completion)[:k]
            response = homogenize_glm(q, practices, engine=tag)
        return response.to_dict()

    @app.get("/api/practices")
    def practices(stage: Optional[str] = None, task: Optional[str] = None):
        stage_value = None
        if stage is not None:
            try:
                stage_value = parse_stage(stage)
            except CatalogError as e:
                raise HTTPException(status_code=400, detail=str(e))
        matched = filter_practices(catalog, stage=stage_value, task=task)
        return {"practices": [p.to_dict() for p in matched]}

    @app.get("/api/stages")
    def stages():
        grouped = group_by_stage(catalog)
        return {
            "stages": [
                {"stage": s.value, "practices": [p.to_dict() for p in ps]}
                for s, ps in grouped.items()
            ],
            "note": STAGES_NOTE,
        }

    @app.post("/api/feedback")
    def feedback(event: FeedbackIn):
        record = {
            "id": uuid.uuid4().hex,
            "timestamp": _utc_now(),
            **event.model_dump(exclude_none=True),
        }
        feedback_log.append(record)
        return {"id": record["id"]}

    if cfg.static_dir:
        app.mount(
            "/", StaticFiles(directory=cfg.static_dir, html=True), name="ui"
        )

    return app

"""Service configuration from a JSON file plus environment overrides.

Precedence: built-in defaults < config file < PRACTICESEARCH_* environment
variables. The environment always wins so deployments can override a
checked-in file without editing it.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Mapping, Optional, Union

from .catalog import default_corpus_path

ENV_PREFIX = "PRACTICESEARCH_"

_TRUTHY = {"1", "true", "yes", "on"}
_FALSY = {"0", "false", "no", "off"}


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    corpus: str = str(default_corpus_path())
    index: Optional[str] = None
    glm_url: str = "http://127.0.0.1:8601/generate"
    glm_timeout_s: float = 30.0
    glm_retries: int = 1
    blind_mode: bool = False
    feedback: str = "feedback.jsonl"
    static_dir: Optional[str] = None


_FIELD_TYPES = {f.name: f.type for f in fields(ServiceConfig)}

# Environment variable suffix -> config field.
_ENV_FIELDS = {
    "HOST": "host",
    "PORT": "port",
    "CORPUS": "corpus",
    "INDEX": "index",
    "GLM_URL": "glm_url",
    "GLM_TIMEOUT": "glm_timeout_s",
    "GLM_RETRIES": "glm_retries",
    "BLIND_MODE": "blind_mode",
    "FEEDBACK": "feedback",
    "STATIC_DIR": "static_dir",
}

_INT_FIELDS = {"port", "glm_retries"}
_FLOAT_FIELDS = {"glm_timeout_s"}
_BOOL_FIELDS = {"blind_mode"}


def _parse_bool(raw: str, name: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in _TRUTHY:
        return True
    if lowered in _FALSY:
        return False
    raise ValueError(f"{name}: cannot parse boolean from {raw!r}")


def _coerce(field: str, raw: object, origin: str) -> object:
    if field in _BOOL_FIELDS:
        if isinstance(raw, bool):
            return raw
        return _parse_bool(str(raw), origin)
    if field in _INT_FIELDS:
        return int(raw)
    if field in _FLOAT_FIELDS:
        return float(raw)
    if raw is None:
        return None
    return str(raw)


def load_service_config(
    path: Union[str, Path, None] = None,
    env: Optional[Mapping[str, str]] = None,
) -> ServiceConfig:
    """Build a ServiceConfig from defaults, an optional JSON file, and the
    environment. Unknown file keys are an error; unknown PRACTICESEARCH_*
    variables are ignored (they may belong to another tool version)."""
    config = ServiceConfig()
    if path is not None:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            raise ValueError("config file must hold a JSON object")
        for key, value in raw.items():
            if key not in _FIELD_TYPES:
                raise ValueError(f"unknown config key {key!r}")
            setattr(config, key, _coerce(key, value, f"config key {key!r}"))
    env = env if env is not None else os.environ
    for suffix, field in _ENV_FIELDS.items():
        name = ENV_PREFIX + suffix
        if name in env:
            setattr(config, field, _coerce(field, env[name], name))
    if config.port < 1 or config.port > 65535:
        raise ValueError(f"port {config.port} out of range")
    if config.glm_timeout_s <= 0:
        raise ValueError("glm_timeout_s must be positive")
    return config

"""Engine configuration: defaults, JSON config file, ASE_-prefixed environment
overrides, then explicit per-invocation overrides, in that precedence order.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .errors import InvalidRequest, NotFound


@dataclass
class EngineConfig:
    store_root: str = "./ase-store"
    bind_address: str = "127.0.0.1:8752"

    embedding_kind: str = "deterministic"  # deterministic | remote
    embedding_url: str = ""
    embedding_model: str = ""
    embedding_dim: int = 64
    embedding_timeout: float = 30.0
    max_chunk_chars: int = 3000

    llm_url: str = ""
    llm_model: str = ""
    llm_timeout: float = 30.0
    llm_retry_backoff: float = 1.0

    pdf_extractor_command: str = ""

    summarizer_backend: str = "extractive"  # extractive | llm_chain
    target_sentences: int = 5
    chunk_chars: int = 3000

    remove_stopwords: bool = False
    stopword_file: str = ""

    headline_metric: str = "embedding"

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(EngineConfig)}

ENV_PREFIX = "ASE_"


def _coerce(name: str, raw: str):
    kind = _FIELD_TYPES[name]
    if kind == "int":
        return int(raw)
    if kind == "float":
        return float(raw)
    if kind == "bool":
        return raw.strip().lower() in ("1", "true", "yes", "on")
    return raw


def load_config(
    path: str | Path | None = None,
    env: Mapping[str, str] | None = None,
    overrides: Mapping[str, object] | None = None,
) -> EngineConfig:
    """Build an EngineConfig. Unknown keys in the file or overrides are
    rejected so typos fail loudly."""
    values: dict[str, object] = {}

    if path is not None:
        config_path = Path(path)
        if not config_path.is_file():
            raise NotFound(f"config file not found: {config_path}")
        try:
            file_values = json.loads(config_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise InvalidRequest(f"config file is not valid JSON: {exc}")
        if not isinstance(file_values, dict):
            raise InvalidRequest("config file must contain a JSON object")
        for key, value in file_values.items():
            if key not in _FIELD_TYPES:
                raise InvalidRequest(f"unknown config key {key!r}")
            values[key] = value

    env = os.environ if env is None else env
    for name in _FIELD_TYPES:
        env_key = ENV_PREFIX + name.upper()
        if env_key in env:
            values[name] = _coerce(name, env[env_key])

    if overrides:
        for key, value in overrides.items():
            if key not in _FIELD_TYPES:
                raise InvalidRequest(f"unknown config key {key!r}")
            if value is not None:
                values[key] = value

    return EngineConfig(**values)  # type: ignore[arg-type]

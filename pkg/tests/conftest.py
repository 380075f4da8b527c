from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ase.config import EngineConfig
from ase.engine import Engine

# Single-space sentence joins, so a full extractive summary equals the text.
IDENTITY_TEXT = "The cat sat on the mat. The dog barked at the moon. Birds sing in the morning."


@pytest.fixture
def engine(tmp_path) -> Engine:
    """Engine with deterministic backends over a scratch store."""
    return Engine(EngineConfig(store_root=str(tmp_path / "store")))


@pytest.fixture
def identity_setup(engine):
    """Document whose default extractive summary is byte-identical to it."""
    doc = engine.ingest_text("identity", IDENTITY_TEXT)
    summary = engine.summarize_document(doc.document_id, engine.default_summary_request())
    assert summary.text == IDENTITY_TEXT
    return engine, doc, summary

"""File-backed record store: one JSON file per record, an append-only index
per collection, atomic writes via temp-file-then-rename.

A record becomes visible only after the rename; a process killed mid-write
leaves at most an invisible temp file behind.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from pathlib import Path

from .errors import NotFound

COLLECTIONS = ("documents", "summaries", "attempts")


class Store:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        for collection in COLLECTIONS:
            (self.root / collection).mkdir(exist_ok=True)
        self._locks = {collection: threading.Lock() for collection in COLLECTIONS}

    def _record_path(self, collection: str, record_id: str) -> Path:
        return self.root / collection / f"{record_id}.json"

    def _index_path(self, collection: str) -> Path:
        return self.root / f"{collection}.index"

    def put(self, collection: str, record_id: str, payload: dict) -> None:
        """Durably persist one record: fsync the temp file, rename it into
        place, then append the id to the collection index."""
        if collection not in COLLECTIONS:
            raise ValueError(f"unknown collection {collection!r}")
        final_path = self._record_path(collection, record_id)
        # Temp name carries no .json suffix, so readers can never pick it up.
        tmp_path = final_path.parent / f".tmp-{record_id}-{uuid.uuid4().hex}"
        with self._locks[collection]:
            with open(tmp_path, "w", encoding="utf-8") as f:
                json.dump(payload, f, ensure_ascii=False)
                f.flush()
                os.fsync(f.fileno())
            os.replace(tmp_path, final_path)
            self._fsync_dir(final_path.parent)
            with open(self._index_path(collection), "a", encoding="utf-8") as f:
                f.write(record_id + "\n")
                f.flush()
                os.fsync(f.fileno())

    @staticmethod
    def _fsync_dir(path: Path) -> None:
        fd = os.open(path, os.O_RDONLY)
        try:
            os.fsync(fd)
        finally:
            os.close(fd)

    def get(self, collection: str, record_id: str) -> dict:
        path = self._record_path(collection, record_id)
        try:
            with open(path, encoding="utf-8") as f:
                return json.load(f)
        except FileNotFoundError:
            raise NotFound(f"no {collection[:-1]} with id {record_id}")

    def exists(self, collection: str, record_id: str) -> bool:
        return self._record_path(collection, record_id).is_file()

    def list_ids(self, collection: str, newest_first: bool = True) -> list[str]:
        """Record ids in index order (creation order), deduplicated; ids whose
        record file is missing are skipped."""
        index_path = self._index_path(collection)
        if not index_path.is_file():
            return []
        with open(index_path, encoding="utf-8") as f:
            ids = [line.strip() for line in f if line.strip()]
        ids = list(dict.fromkeys(ids))
        ids = [i for i in ids if self.exists(collection, i)]
        return list(reversed(ids)) if newest_first else ids

    def list_records(
        self, collection: str, limit: int | None = None, newest_first: bool = True
    ) -> list[dict]:
        records = []
        for record_id in self.list_ids(collection, newest_first=newest_first):
            records.append(self.get(collection, record_id))
            if limit is not None and len(records) >= limit:
                break
        return records

    def healthcheck(self) -> dict:
        probe = self.root / f".probe-{uuid.uuid4().hex}"
        try:
            probe.write_text("ok", encoding="utf-8")
            probe.unlink()
        except OSError as exc:
            return {"status": "error", "detail": f"store root not writable: {exc}"}
        return {"status": "ok"}

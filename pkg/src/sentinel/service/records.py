"""Append-only health-record store with an in-memory index.

One JSON object per line on disk; writes are serialized under a lock
while readers hit the index directly. Records are only ever persisted
with storage consent, so a stored record can always be returned.
"""

import json
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path

from ..errors import ConsentError, DuplicateIdError, NotFoundError, ValidationError


class RecordStore:
    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._index = {}
        if self.path.exists():
            with open(self.path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        record = json.loads(line)
                        self._index[record["record_id"]] = record

    def __len__(self):
        return len(self._index)

    def store(self, task, answers, consent_flags, record_id=None):
        """Persist a record; returns the stored document."""
        storage = bool(consent_flags.get("storage", False))
        if not storage:
            raise ConsentError("record not stored: storage consent is false")
        if record_id is not None and not str(record_id).strip():
            raise ValidationError("record_id, when given, must be non-empty")
        record = {
            "record_id": str(record_id) if record_id else uuid.uuid4().hex,
            "created_at": datetime.now(timezone.utc).isoformat(),
            "task": task,
            "answers": dict(answers),
            "consent_flags": {
                "storage": storage,
                "research": bool(consent_flags.get("research", False)),
            },
        }
        with self._lock:
            if record["record_id"] in self._index:
                raise DuplicateIdError(f"record id {record['record_id']!r} already exists")
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, sort_keys=True) + "\n")
                fh.flush()
            self._index[record["record_id"]] = record
        return record

    def get(self, record_id):
        record = self._index.get(record_id)
        if record is None:
            raise NotFoundError(f"no record with id {record_id!r}")
        return record

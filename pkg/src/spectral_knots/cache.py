"""Persistent result cache: one JSON file per config fingerprint.

Writes are atomic (temp file + rename).  A corrupt or mismatched cache
file is treated as a miss; callers recompute and overwrite, never serve
wrong data.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass


def fingerprint(config: dict, version: str) -> str:
    """Stable hash of a run configuration plus the code version."""
    blob = json.dumps({"config": config, "version": version}, sort_keys=True)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


@dataclass
class ResultRecord:
    fingerprint: str
    payload: dict
    wall_time: float
    timestamp: str

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ResultRecord":
        return cls(
            fingerprint=d["fingerprint"],
            payload=d["payload"],
            wall_time=d["wall_time"],
            timestamp=d["timestamp"],
        )


def cache_roundtrip(record: ResultRecord, cache_dir: str) -> ResultRecord:
    """Store a record, then read it back; the result equals the input."""
    cache = ResultCache(cache_dir)
    cache.store(record)
    out = cache.load(record.fingerprint)
    if out is None:
        raise OSError(f"cache write for {record.fingerprint} did not survive a read")
    return out


class ResultCache:
    def __init__(self, cache_dir: str):
        self.cache_dir = cache_dir
        os.makedirs(cache_dir, exist_ok=True)

    def path(self, fp: str) -> str:
        return os.path.join(self.cache_dir, f"{fp}.json")

    def load(self, fp: str) -> ResultRecord | None:
        """Return the cached record for ``fp``, or None on miss/corruption."""
        path = self.path(fp)
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
            record = ResultRecord.from_dict(data)
        except (json.JSONDecodeError, KeyError, TypeError, OSError) as exc:
            print(f"warning: ignoring corrupt cache file {path}: {exc}", file=sys.stderr)
            return None
        if record.fingerprint != fp:
            return None
        return record

    def store(self, record: ResultRecord) -> None:
        path = self.path(record.fingerprint)
        fd, tmp = tempfile.mkstemp(dir=self.cache_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                json.dump(record.to_dict(), f, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

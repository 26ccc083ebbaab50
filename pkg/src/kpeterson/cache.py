"""Content-addressed JSON cache with embedded checksums."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Callable, Optional


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


class Cache:
    """Entries are keyed by (kind, n, D, mode, key); the key includes D so
    a shallow result is never served for a deeper request."""

    def __init__(self, root):
        self.root = Path(root)

    @staticmethod
    def address(kind: str, n: int, D: int, key, mode: str = "SL") -> str:
        return _digest(canonical_json({"kind": kind, "n": n, "D": D, "mode": mode, "key": key}))

    def path(self, kind: str, n: int, D: int, key, mode: str = "SL") -> Path:
        h = self.address(kind, n, D, key, mode)
        return self.root / h[:2] / f"{h[2:]}.json"

    def get(self, kind: str, n: int, D: int, key, mode: str = "SL"):
        p = self.path(kind, n, D, key, mode)
        try:
            doc = json.loads(p.read_text())
            payload = doc["payload"]
        except (OSError, ValueError, KeyError, TypeError):
            return None
        if doc.get("checksum") != _digest(canonical_json(payload)):
            return None
        if doc.get("meta") != {"kind": kind, "n": n, "D": D, "mode": mode, "key": key}:
            return None
        return payload

    def put(self, kind: str, n: int, D: int, key, payload, mode: str = "SL") -> Path:
        p = self.path(kind, n, D, key, mode)
        p.parent.mkdir(parents=True, exist_ok=True)
        doc = {
            "meta": {"kind": kind, "n": n, "D": D, "mode": mode, "key": key},
            "payload": payload,
            "checksum": _digest(canonical_json(payload)),
        }
        fd, tmp = tempfile.mkstemp(dir=p.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(canonical_json(doc))
        os.replace(tmp, p)
        return p

    def get_or_compute(self, kind: str, n: int, D: int, key, compute: Callable[[], object], mode: str = "SL"):
        got = self.get(kind, n, D, key, mode)
        if got is None:
            got = compute()
            self.put(kind, n, D, key, got, mode)
        return got

    def gc(self, remove_all: bool = False) -> int:
        """Delete corrupt entries and stray temp files (or everything); return the count."""
        removed = 0
        if not self.root.exists():
            return 0
        for p in sorted(self.root.rglob("*")):
            if not p.is_file():
                continue
            bad = remove_all or p.suffix == ".tmp" or not self._valid(p)
            if bad:
                p.unlink()
                removed += 1
        return removed

    @staticmethod
    def _valid(p: Path) -> bool:
        try:
            doc = json.loads(p.read_text())
            return doc["checksum"] == _digest(canonical_json(doc["payload"]))
        except (OSError, ValueError, KeyError, TypeError):
            return False


def maybe_cache(root: Optional[str]) -> Optional[Cache]:
    return Cache(root) if root else None

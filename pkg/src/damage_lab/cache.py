"""On-disk results cache keyed by (canonical graph6, s, semantics version).

The semantics version is bumped whenever the game rules or solver
semantics change, which invalidates every stored value at once.  Cache
location: explicit directory argument, else the DAMAGE_LAB_CACHE
environment variable, else ~/.cache/damage_lab.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

SEMANTICS_VERSION = 1

ENV_VAR = "DAMAGE_LAB_CACHE"


def resolve_cache_dir(explicit: str | os.PathLike | None = None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "damage_lab"


class ResultsCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = resolve_cache_dir(directory)

    def _path(self, canonical_g6: str, s: int) -> Path:
        key = f"{canonical_g6}|{s}|{SEMANTICS_VERSION}"
        name = hashlib.sha1(key.encode()).hexdigest()
        return self.directory / f"{name}.json"

    def get(self, canonical_g6: str, s: int) -> dict | None:
        path = self._path(canonical_g6, s)
        if not path.exists():
            return None
        try:
            payload = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None
        if (payload.get("graph") != canonical_g6 or payload.get("s") != s
                or payload.get("semantics_version") != SEMANTICS_VERSION):
            return None
        return payload

    def put(self, canonical_g6: str, s: int, payload: dict) -> None:
        record = dict(payload)
        record["graph"] = canonical_g6
        record["s"] = s
        record["semantics_version"] = SEMANTICS_VERSION
        self.directory.mkdir(parents=True, exist_ok=True)
        self._path(canonical_g6, s).write_text(json.dumps(record))

"""Canonical report serialization and the content-addressed result cache.

Reports must be byte-identical across runs, platforms, and cache state, so
serialization is pinned down completely: sorted keys, no whitespace beyond a
single trailing newline, UTF-8, and plain int/str/bool/null/list/dict values
only. The cache maps a content hash of (tool version, operation, config) to
the canonical bytes of the payload; entries that fail to parse, carry a
different version stamp, or belong to some other tool are ignored.
"""

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .config import TOOL_VERSION


def plainify(obj):
    """Recursively convert tuples and numpy scalars into plain JSON values."""
    if isinstance(obj, dict):
        return {str(k): plainify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plainify(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return int(obj)
    if hasattr(obj, "item") and not hasattr(obj, "__len__"):
        got = obj.item()
        if isinstance(got, (bool, int)):
            return got
    raise AssertionError(f"value {obj!r} has no canonical form")


def _check_plain(obj, path="$"):
    if obj is None or isinstance(obj, (bool, int, str)):
        return
    if isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _check_plain(v, f"{path}[{i}]")
        return
    if isinstance(obj, dict):
        for k, v in obj.items():
            assert isinstance(k, str), f"non-string key at {path}: {k!r}"
            _check_plain(v, f"{path}.{k}")
        return
    raise AssertionError(f"non-canonical value at {path}: {type(obj).__name__}")


def canonical_json(obj) -> bytes:
    """Stable bytes for a report object. Floats are refused; every number in
    a report is an exact integer."""
    _check_plain(obj)
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def report(config: dict, result: dict, verdict: str) -> dict:
    return {
        "tool_version": TOOL_VERSION,
        "config": config,
        "result": result,
        "timing_ms": 0,  # kept stable so reports are byte-identical
        "verdict": verdict,
    }


def cache_key(operation: str, config: dict) -> str:
    blob = canonical_json(
        {"tool": "pq", "tool_version": TOOL_VERSION, "operation": operation,
         "config": config}
    )
    return hashlib.sha256(blob).hexdigest()


def default_cache_dir() -> Path:
    env = os.environ.get("PQ_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "pq"


class ResultCache:
    """Content-addressed store of canonical payload bytes."""

    def __init__(self, directory=None):
        self.directory = Path(directory) if directory else default_cache_dir()

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, operation: str, config: dict):
        """The cached payload dict, or None on miss/corruption/version skew."""
        path = self._path(cache_key(operation, config))
        try:
            raw = path.read_bytes()
        except OSError:
            return None
        try:
            entry = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, ValueError):
            return None
        if not isinstance(entry, dict):
            return None
        if entry.get("tool_version") != TOOL_VERSION:
            return None
        if entry.get("operation") != operation or entry.get("config") != config:
            return None
        if "payload" not in entry:
            return None
        return entry["payload"]

    def put(self, operation: str, config: dict, payload: dict):
        entry = {
            "tool_version": TOOL_VERSION,
            "operation": operation,
            "config": config,
            "payload": payload,
        }
        data = canonical_json(entry)
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(cache_key(operation, config))
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as f:
                f.write(data)
            os.replace(tmp, path)  # atomic on POSIX; readers never see partials
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise

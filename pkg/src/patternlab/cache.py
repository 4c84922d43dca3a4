"""Count providers and the on-disk JSON memo of brute-force tables."""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from . import __version__
from .core import as_pattern_set
from .enumeration import (DEFAULT_BUDGET, DEFAULT_PERM_CAP, CountTable,
                          count_perms, count_words)

SCHEMA_VERSION = 1
ENV_VAR = "PATTERNLAB_CACHE"


class CacheCorruptionError(RuntimeError):
    pass


class MissingCountError(LookupError):
    """A count needed by an identity check is not available from the source."""


def _checksum(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


class DiskCache:
    """One JSON file per key; files carry a schema version and a checksum.

    Files written by another schema or package version are ignored and
    recomputed. A checksum mismatch is treated as corruption and raised.
    """

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    @classmethod
    def from_env(cls, path=None) -> "DiskCache | None":
        path = path or os.environ.get(ENV_VAR)
        return cls(path) if path else None

    def _path(self, key: str) -> Path:
        digest = hashlib.sha256(f"{__version__}|{key}".encode()).hexdigest()[:24]
        return self.root / f"{digest}.json"

    def get(self, key: str):
        path = self._path(key)
        if not path.exists():
            return None
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise CacheCorruptionError(f"unreadable cache file {path}: {exc}") from exc
        if doc.get("schema") != SCHEMA_VERSION or doc.get("version") != __version__ or doc.get("key") != key:
            return None
        if _checksum(doc.get("payload")) != doc.get("checksum"):
            raise CacheCorruptionError(f"checksum mismatch in cache file {path}")
        return doc["payload"]

    def put(self, key: str, payload) -> None:
        doc = {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "key": key,
            "checksum": _checksum(payload),
            "payload": payload,
        }
        path = self._path(key)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(doc, sort_keys=True))
        tmp.replace(path)


class CountProvider:
    """Brute-force count tables, memoized in memory and optionally on disk."""

    def __init__(self, cache: DiskCache | None = None, budget: int = DEFAULT_BUDGET,
                 perm_cap: int = DEFAULT_PERM_CAP, threads: int = 1):
        self.cache = cache
        self.budget = budget
        self.perm_cap = perm_cap
        self.threads = threads
        self._memo: dict[str, CountTable] = {}

    def _lookup(self, key: str, compute) -> CountTable:
        if key in self._memo:
            return self._memo[key]
        table = None
        if self.cache is not None:
            payload = self.cache.get(key)
            if payload is not None:
                table = CountTable.from_json(payload)
        if table is None:
            table = compute()
            if self.cache is not None:
                self.cache.put(key, table.to_json())
        self._memo[key] = table
        return table

    def words(self, patterns, k: int, n: int) -> CountTable:
        members = as_pattern_set(patterns)
        key = f"words|{'+'.join(map(str, members))}|{k}|{n}"
        return self._lookup(key, lambda: count_words(
            members, k, n, budget=self.budget, threads=self.threads))

    def perms(self, patterns, n: int) -> CountTable:
        members = as_pattern_set(patterns)
        key = f"perms|{'+'.join(map(str, members))}|{n}"
        return self._lookup(key, lambda: count_perms(
            members, n, cap=self.perm_cap, threads=self.threads))


class TableSource:
    """A fixed collection of tables; asking for anything else is an error."""

    def __init__(self, tables):
        self._tables = {}
        for t in tables:
            self._tables[(t.domain, t.patterns, t.k, t.n)] = t

    def words(self, patterns, k: int, n: int) -> CountTable:
        label = tuple(str(p) for p in as_pattern_set(patterns))
        try:
            return self._tables[("words", label, k, n)]
        except KeyError:
            raise MissingCountError(f"no word table for {label} k={k} n={n}") from None

    def perms(self, patterns, n: int) -> CountTable:
        label = tuple(str(p) for p in as_pattern_set(patterns))
        try:
            return self._tables[("perms", label, n, n)]
        except KeyError:
            raise MissingCountError(f"no permutation table for {label} n={n}") from None

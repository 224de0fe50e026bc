"""Content-addressed on-disk cache for Betti tables.

Entries live in ``<dir>/<key>.json`` where ``key`` is the SHA-256 of the
complex JSON together with the coefficient descriptor. Each entry stores a
checksum of its own payload; an entry that fails to parse or whose checksum
does not match is reported with a warning and recomputed. Writes go to a
temporary file in the same directory followed by an atomic rename.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import warnings
from pathlib import Path
from typing import Callable

from .complex import SimplicialComplex
from .homology import BettiTable, betti_numbers, parse_coefficients

CACHE_ENV = "STABLETVERBERG_CACHE"


class CacheWarning(UserWarning):
    pass


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def coefficient_tag(coefficients) -> str:
    c = parse_coefficients(coefficients)
    return c if isinstance(c, str) else f"gf:{c}"


def complex_key(K: SimplicialComplex, coefficients="int") -> str:
    text = _canonical(K.to_dict()) + "|" + coefficient_tag(coefficients)
    return hashlib.sha256(text.encode()).hexdigest()


class BettiCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.hits = 0
        self.misses = 0
        self.writable = True
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            warnings.warn(f"cache directory unusable ({exc}); running uncached", CacheWarning)
            self.writable = False

    @classmethod
    def from_env(cls) -> BettiCache | None:
        d = os.environ.get(CACHE_ENV)
        return cls(d) if d else None

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def lookup(self, key: str) -> BettiTable | None:
        path = self._path(key)
        if not path.exists():
            self.misses += 1
            return None
        try:
            data = json.loads(path.read_text())
            payload = data["table"]
            if hashlib.sha256(_canonical(payload).encode()).hexdigest() != data["checksum"]:
                raise ValueError("checksum mismatch")
            table = BettiTable.from_dict(payload)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            warnings.warn(f"ignoring corrupt cache entry {path.name}: {exc}", CacheWarning)
            self.misses += 1
            return None
        self.hits += 1
        return table

    def store(self, key: str, table: BettiTable) -> None:
        if not self.writable:
            return
        payload = table.to_dict()
        entry = {
            "version": 1,
            "table": payload,
            "checksum": hashlib.sha256(_canonical(payload).encode()).hexdigest(),
        }
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(_canonical(entry))
            os.replace(tmp, self._path(key))
        except OSError as exc:
            warnings.warn(f"cache write failed ({exc}); continuing uncached", CacheWarning)
            self.writable = False

    def homology(self, K: SimplicialComplex, coefficients="int") -> BettiTable:
        key = complex_key(K, coefficients)
        table = self.lookup(key)
        if table is None:
            table = betti_numbers(K, coefficients)
            self.store(key, table)
        return table


def homology_function(cache: BettiCache | None, coefficients="int") -> Callable[[SimplicialComplex], BettiTable]:
    """A ``K -> BettiTable`` callable that goes through ``cache`` when given."""
    if cache is None:
        return lambda K: betti_numbers(K, coefficients)
    return lambda K: cache.homology(K, coefficients)

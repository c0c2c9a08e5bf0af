"""Append-only cache of exact results, one JSON record per line.

Rationals are stored as "num/den" strings.  A key written twice must carry the
same value; anything else is reported as a mismatch rather than overwritten.
"""
from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from filelock import FileLock

from . import __version__


class CacheMismatchError(RuntimeError):
    pass


def tau_key(g: int, k: Sequence[int]) -> str:
    return f"tau;g={g};k={list(sorted(k, reverse=True))}"


def hurwitz_key(g: int, mu: Sequence[int]) -> str:
    return f"hurwitz;g={g};mu={list(sorted(mu, reverse=True))}"


def hodge_key(g: int, j: int, k: Sequence[int]) -> str:
    return f"hodge;g={g};j={j};k={list(sorted(k, reverse=True))}"


def parse_key(key: str) -> tuple[str, dict]:
    kind, *fields = key.split(";")
    out = {}
    for f in fields:
        name, value = f.split("=", 1)
        out[name] = json.loads(value)
    return kind, out


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


@dataclass(frozen=True)
class CacheEntry:
    key: str
    value: Fraction
    method: str
    version: str
    timestamp: float


class ResultCache:
    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self._lock = FileLock(str(self.path) + ".lock")

    def entries(self) -> dict[str, CacheEntry]:
        """Latest record per key; conflicting duplicates raise."""
        out: dict[str, CacheEntry] = {}
        if not self.path.exists():
            return out
        for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
            if not line.strip():
                continue
            rec = json.loads(line)
            e = CacheEntry(rec["key"], parse_rational(rec["value"]), rec.get("method", ""),
                           rec.get("version", ""), rec.get("timestamp", 0.0))
            if e.key in out and out[e.key].value != e.value:
                raise CacheMismatchError(f"line {lineno}: {e.key} stored as {out[e.key].value} and {e.value}")
            out[e.key] = e
        return out

    def get(self, key: str) -> Fraction | None:
        e = self.entries().get(key)
        return None if e is None else e.value

    def put(self, key: str, value, method: str) -> None:
        """Append unless already present; a differing stored value raises."""
        value = Fraction(value)
        with self._lock:
            old = self.entries().get(key)
            if old is not None:
                if old.value != value:
                    raise CacheMismatchError(f"{key}: cached {old.value}, recomputed {value}")
                return
            rec = {"key": key, "value": format_rational(value), "method": method,
                   "version": __version__, "timestamp": time.time()}
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a") as fh:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
                fh.flush()
                os.fsync(fh.fileno())

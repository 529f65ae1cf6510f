"""On-disk cache for expensive q-expansions and eigenform tables.

Entries are JSON files named by a SHA-256 of ``(kind, params, FORMAT_VERSION)``
and carry a checksum of their payload.  Unreadable or mismatching entries are
discarded and recomputed.  Writes go to a temporary file that is renamed
into place.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from collections.abc import Callable
from pathlib import Path
from typing import Any

import mpmath

from .modular import EigenformTable, eigenforms_numeric
from .partitions import PartitionTable, oracle_for

__all__ = ["FORMAT_VERSION", "Cache", "cached_eigenforms", "cached_partition_table", "default_cache_dir"]

FORMAT_VERSION = 2
ENV_VAR = "COLPART_CACHE_DIR"

log = logging.getLogger(__name__)


def default_cache_dir() -> Path:
    if os.environ.get(ENV_VAR):
        return Path(os.environ[ENV_VAR])
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "colpart"


def _canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


class Cache:
    def __init__(self, directory: str | Path | None = None, enabled: bool = True):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    def key(self, kind: str, params: dict) -> str:
        return hashlib.sha256(_canonical({"kind": kind, "params": params, "version": FORMAT_VERSION})).hexdigest()

    def path(self, kind: str, params: dict) -> Path:
        return self.directory / f"{kind}-{self.key(kind, params)[:32]}.json"

    def load(self, kind: str, params: dict):
        if not self.enabled:
            return None
        path = self.path(kind, params)
        try:
            entry = json.loads(path.read_text())
            payload = entry["payload"]
            ok = (
                entry["key"] == self.key(kind, params)
                and entry["checksum"] == hashlib.sha256(_canonical(payload)).hexdigest()
            )
        except FileNotFoundError:
            return None
        except (OSError, ValueError, KeyError, TypeError):
            ok = False
        if not ok:
            log.warning("discarding corrupt cache entry %s", path)
            path.unlink(missing_ok=True)
            return None
        return payload

    def store(self, kind: str, params: dict, payload) -> None:
        if not self.enabled:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        entry = {
            "key": self.key(kind, params),
            "kind": kind,
            "params": params,
            "version": FORMAT_VERSION,
            "checksum": hashlib.sha256(_canonical(payload)).hexdigest(),
            "payload": payload,
        }
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(_canonical(entry))
            os.replace(tmp, self.path(kind, params))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def get_or_compute(self, kind: str, params: dict, compute: Callable[[], Any], encode: Callable, decode: Callable):
        payload = self.load(kind, params)
        if payload is not None:
            try:
                value = decode(payload)
            except (ValueError, KeyError, TypeError):
                log.warning("cache entry for %s %s failed to decode", kind, params)
            else:
                self.hits += 1
                return value
        self.misses += 1
        value = compute()
        self.store(kind, params, encode(value))
        return value


# numeric entries keep their exact binary value: "mantissa:exponent"


def _enc_mpf(x) -> str:
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)  # mpf(mpf) would round to the ambient precision
    man, exp = x.man_exp  # man_exp drops the sign
    return f"{-man if x < 0 else man}:{exp}"


def _dec_mpf(s: str):
    man, exp = (int(p) for p in s.split(":"))
    with mpmath.workprec(max(man.bit_length(), 1) + 2):
        return mpmath.ldexp(man, exp)


def _encode_table(table: EigenformTable) -> dict:
    if table.exact:
        return {"json": table.to_json()}
    return {
        "weight": table.weight,
        "dim": table.dim,
        "prec": table.prec,
        "labels": [_enc_mpf(x) for x in table.labels],
        "forms": [[_enc_mpf(x) for x in f] for f in table.forms],
        "meta": table.meta,
    }


def _decode_table(data: dict) -> EigenformTable:
    if "json" in data:
        return EigenformTable.from_json(data["json"])
    return EigenformTable(
        weight=data["weight"],
        dim=data["dim"],
        forms=[[_dec_mpf(x) for x in f] for f in data["forms"]],
        labels=[_dec_mpf(x) for x in data["labels"]],
        exact=False,
        prec=data["prec"],
        meta=data["meta"],
    )


def cached_partition_table(cache: Cache, kind: str, t: int, N: int) -> PartitionTable:
    return cache.get_or_compute(
        "partitions",
        {"kind": kind, "t": t, "N": N},
        lambda: oracle_for(kind, t, N),
        PartitionTable.to_json,
        PartitionTable.from_json,
    )


def cached_eigenforms(cache: Cache, weight: int, N: int, prec: int) -> EigenformTable:
    return cache.get_or_compute(
        "eigenforms",
        {"weight": weight, "N": N, "prec": prec},
        lambda: eigenforms_numeric(weight, N, prec),
        _encode_table,
        _decode_table,
    )

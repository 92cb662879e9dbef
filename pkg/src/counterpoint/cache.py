"""On-disk cache of projection tables.

A cache file holds one JSON object ``{"header", "checksum", "body"}``.  The
header pins the format version, the dichotomy and the engine options; the
checksum is the SHA-256 of the canonical body serialization.  Any mismatch
makes :func:`cache_read` return ``None`` so the caller recomputes.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .dichotomy import StrongDichotomy
from .projections import ProjectionResult, projection_table

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
ENGINE_OPTIONS = {"cantus": 0, "successors": "union", "z_range": "all"}


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def header_for(D: StrongDichotomy) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "modulus": D.modulus,
        "consonances": list(D.X),
        "polarity": [D.u, D.v],
        "engine": dict(ENGINE_OPTIONS),
    }


def _checksum(body: dict) -> str:
    return hashlib.sha256(dumps(body).encode()).hexdigest()


def _body(results) -> dict:
    return {f"{r.y},{r.z}": r.to_dict() for r in results}


def cache_write(path: str | Path, D: StrongDichotomy, results) -> None:
    """Write atomically (temp file in the same directory, then rename)."""
    path = Path(path)
    body = _body(results)
    doc = {"header": header_for(D), "checksum": _checksum(body), "body": body}
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(dumps(doc))
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def cache_read(path: str | Path, D: StrongDichotomy) -> list[ProjectionResult] | None:
    path = Path(path)
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_text())
        header, body, checksum = doc["header"], doc["body"], doc["checksum"]
    except (ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring unreadable cache %s: %s", path, exc)
        return None
    if header != header_for(D):
        log.warning("ignoring cache %s: header does not match this configuration", path)
        return None
    if checksum != _checksum(body):
        log.warning("ignoring cache %s: checksum mismatch", path)
        return None
    results = [ProjectionResult.from_dict(body[key]) for key in sorted(body, key=lambda s: tuple(map(int, s.split(","))))]
    return results


def load_or_build(D: StrongDichotomy, path: str | Path | None = None, threads: int = 1) -> list[ProjectionResult]:
    if path is not None:
        cached = cache_read(path, D)
        if cached is not None:
            return cached
    results = projection_table(D, threads=threads)
    if path is not None:
        cache_write(path, D, results)
    return results

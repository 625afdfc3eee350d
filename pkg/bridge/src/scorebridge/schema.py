"""Score-record exchange format, restated on the producer side.

The consumer ships its own reader; this module is deliberately a standalone
copy of the contract so the two packages only ever meet through files.  A
record is one JSON object per line with the required fields ``word``,
``context_id``, ``step``, ``seed`` followed by at least one of the log fields
``log_q``, ``log_q_c``, ``log_r``, each a finite float that is at most zero.
An optional first line ``{"_meta": <str>}`` carries free-form provenance.
Context identifiers are the first 16 hex digits of the SHA-256 of the
context's tokens joined by the unit separator character.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path

from .errors import FormatError

REQUIRED_FIELDS = ("word", "context_id", "step", "seed")
LOG_FIELDS = ("log_q", "log_q_c", "log_r")
CONTEXT_ID_HEX = 16


def context_id(tokens) -> str:
    joined = "\x1f".join(tokens)
    return hashlib.sha256(joined.encode("utf-8")).hexdigest()[:CONTEXT_ID_HEX]


def record_errors(obj) -> list[str]:
    """Return every contract violation in one decoded record, [] if clean."""
    problems = []
    if not isinstance(obj, dict):
        return ["record is not a JSON object"]
    for field in ("word", "context_id"):
        value = obj.get(field)
        if not isinstance(value, str) or not value:
            problems.append(f"{field} must be a non-empty string")
    for field in ("step", "seed"):
        value = obj.get(field)
        # bool is an int subclass and must not slip through
        if not isinstance(value, int) or isinstance(value, bool):
            problems.append(f"{field} must be an integer")
    present = [f for f in LOG_FIELDS if obj.get(f) is not None]
    if not present:
        problems.append("at least one log field is required")
    for field in present:
        value = obj[field]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            problems.append(f"{field} must be a number")
        elif math.isnan(value):
            problems.append(f"{field} is NaN")
        elif value > 0:
            problems.append(f"{field} is a log-probability and must be <= 0")
    return problems


def record_line(word: str, cid: str, step: int, seed: int, logs: dict) -> str:
    """Serialize one record with the canonical key order."""
    obj = {"word": word, "context_id": cid, "step": step, "seed": seed}
    for field in LOG_FIELDS:
        if field in logs and logs[field] is not None:
            obj[field] = logs[field]
    return json.dumps(obj)


def validate_file(path) -> tuple[int, list[tuple[int, str]]]:
    """Check a finished score file line by line.

    Returns the number of valid records and a list of (line number, message)
    pairs for the rest.  The optional meta line counts as neither.
    """
    valid = 0
    bad = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                bad.append((lineno, f"not JSON: {exc}"))
                continue
            if lineno == 1 and isinstance(obj, dict) and set(obj) == {"_meta"}:
                if not isinstance(obj["_meta"], str):
                    bad.append((lineno, "_meta must be a string"))
                continue
            problems = record_errors(obj)
            if problems:
                bad.append((lineno, "; ".join(problems)))
            else:
                valid += 1
    return valid, bad


def read_contexts(path) -> list[tuple[str, list[str]]]:
    """Load a contexts sidecar, preserving file order.

    Each line is ``{"context_id": ..., "tokens": [...]}``.  The identifier is
    recomputed from the tokens and must match; a silent mismatch here would
    poison every downstream join.
    """
    path = Path(path)
    out = []
    seen = set()
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"{path}:{lineno}: not JSON: {exc}") from exc
            if not isinstance(obj, dict) or "context_id" not in obj or "tokens" not in obj:
                raise FormatError(f"{path}:{lineno}: expected context_id and tokens")
            tokens = obj["tokens"]
            if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
                raise FormatError(f"{path}:{lineno}: tokens must be a list of strings")
            cid = obj["context_id"]
            if cid != context_id(tokens):
                raise FormatError(f"{path}:{lineno}: context_id does not match its tokens")
            if cid in seen:
                raise FormatError(f"{path}:{lineno}: duplicate context_id {cid}")
            seen.add(cid)
            out.append((cid, tokens))
    if not out:
        raise FormatError(f"{path}: no contexts")
    return out

"""Canonical JSON serialization.

Every JSON body this package emits (API responses, CLI ``--json``,
report export) goes through :func:`canonical_json` so that identical
inputs produce identical bytes regardless of which surface computed
them.
"""
from __future__ import annotations

import hashlib
import json


def canonical_json(doc) -> str:
    """Serialize ``doc`` deterministically: sorted keys, compact separators."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def content_hash(doc) -> str:
    """SHA-256 hex digest of the canonical JSON form of ``doc``."""
    return hashlib.sha256(canonical_json(doc).encode("utf-8")).hexdigest()

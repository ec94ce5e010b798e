"""On-disk cache of expansions keyed by (kind, degree, weight, bound)."""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Callable, Optional

from .qexp import FORMAT_VERSION, FourierExpansion

log = logging.getLogger(__name__)


def cache_path(cache_dir, kind: str, degree: int, weight: int, bound: int,
               det2_bound: Optional[int] = None) -> Path:
    extra = "" if det2_bound is None else f"-d{det2_bound}"
    return Path(cache_dir) / f"{kind}-deg{degree}-k{weight}-b{bound}{extra}-v{FORMAT_VERSION}.json"


def cached_expansion(cache_dir, kind: str, degree: int, weight: int, bound: int,
                     build: Callable[[], FourierExpansion],
                     det2_bound: Optional[int] = None) -> FourierExpansion:
    """Load from ``cache_dir`` if possible, otherwise build (and store)."""
    if not cache_dir:
        return build()
    path = cache_path(cache_dir, kind, degree, weight, bound, det2_bound)
    if path.exists():
        try:
            text = path.read_text()
            if json.loads(text).get("format_version") != FORMAT_VERSION:
                raise ValueError("format version mismatch")
            return FourierExpansion.from_json(text)
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("ignoring corrupt cache entry %s: %s", path, exc)
    F = build()
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    tmp.write_text(F.to_json())
    os.replace(tmp, path)
    return F

"""On-disk cache of isoscalar tables, one line-delimited JSON file per (s1, s2, s)."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import List, Optional

ENV_VAR = "SU3_CACHE_DIR"


def cache_dir() -> Optional[Path]:
    d = os.environ.get(ENV_VAR)
    return Path(d) if d else None


def _path(root: Path, s1, s2, s) -> Path:
    return root / "isf_{}_{}_{}_{}_{}_{}.jsonl".format(*s1, *s2, *s)


def load(s1, s2, s) -> Optional[List[dict]]:
    root = cache_dir()
    if root is None:
        return None
    p = _path(root, s1, s2, s)
    if not p.exists():
        return None
    with p.open() as fh:
        return [json.loads(line) for line in fh if line.strip()]


def store(s1, s2, s, records: List[dict]) -> None:
    """Write atomically: temp file in the same directory, then rename."""
    root = cache_dir()
    if root is None:
        return
    root.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=root, prefix=".isf-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            for r in records:
                fh.write(json.dumps(r) + "\n")
        os.replace(tmp, _path(root, s1, s2, s))
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

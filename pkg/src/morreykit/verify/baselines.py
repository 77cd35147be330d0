"""Regression baselines for constants that are only known to exist.

A baseline is the largest ratio observed on the reference corpus (seed 42).
Later runs regress when they exceed it by more than ``TOLERANCE``.
"""

from __future__ import annotations

import json
import os
import tempfile
from importlib import resources
from pathlib import Path

TOLERANCE = 0.05
REFERENCE_SEED = 42


def packaged_path() -> Path:
    return Path(str(resources.files("morreykit.verify").joinpath("baselines.json")))


def load(path: str | os.PathLike | None = None) -> dict:
    path = packaged_path() if path is None else Path(path)
    if not path.exists():
        return {}
    with open(path) as fh:
        return json.load(fh)


def save(baselines: dict, path: str | os.PathLike):
    path = Path(path)
    atomic_write(path, json.dumps(dict(sorted(baselines.items())), indent=2) + "\n")


def atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def compare(report, baselines: dict, record_missing: bool = True) -> list[str]:
    """Check observed maxima against baselines; fill in missing entries.

    Returns the list of new keys written into ``baselines``.
    """
    added = []
    for key, value in sorted(report.observed.items()):
        entry = baselines.get(key)
        if entry is None:
            if record_missing:
                baselines[key] = {"value": value, "seed": report.seed, "count": report.count}
                report.baselines[key] = value
                added.append(key)
            continue
        base = entry["value"]
        report.baselines[key] = base
        if value > base * (1 + TOLERANCE) + 1e-12:
            report.regressions.append(f"{key}: observed {value:.6g} exceeds baseline {base:.6g} by more than 5%")
    return added

"""
Run artifacts: manifest.json, result CSVs and summary.txt.

Outputs contain no timestamps or host details, so identical configs and seeds
give byte-identical files.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import platform
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np
import scipy
import sympy

from src.semigroup import __version__
from src.semigroup.numerics_config import CSV_FLOAT_FORMAT

logger = logging.getLogger(__name__)

PACKAGE_VERSION = __version__


def format_cell(value: Any) -> str:
    if isinstance(value, bool | np.bool_):
        return "true" if value else "false"
    if isinstance(value, float | np.floating):
        value = float(value)
        if math.isnan(value):
            return "nan"
        return CSV_FLOAT_FORMAT.format(value)
    if value is None:
        return ""
    return str(value)


def versions() -> dict[str, str]:
    return {
        "semigroup": PACKAGE_VERSION,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "sympy": sympy.__version__,
    }


class RunOutputs:
    """Single writer for everything a command produces under ``out_dir``."""

    def __init__(self, out_dir: str | Path) -> None:
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.summary: list[str] = []
        self.files: list[str] = []

    def write_csv(self, name: str, columns: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> Path:
        path = self.out_dir / name
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_cell(row.get(column)) for column in columns])
        self.files.append(name)
        logger.debug("wrote %s", path)
        return path

    def add_summary(self, line: str) -> None:
        self.summary.append(line)
        print(line)

    def write_manifest(
        self,
        command: str,
        config: Mapping[str, Any],
        seed: int | None,
        threads: int,
        extra: Mapping[str, Any] | None = None,
    ) -> Path:
        manifest = {
            "command": command,
            "config": config,
            "seed": seed,
            "threads": threads,
            "versions": versions(),
            "files": sorted(self.files),
            **(extra or {}),
        }
        path = self.out_dir / "manifest.json"
        with open(path, "w") as f:
            json.dump(manifest, f, indent=2, sort_keys=True, default=_json_default)
            f.write("\n")
        return path

    def write_summary(self) -> Path:
        path = self.out_dir / "summary.txt"
        with open(path, "w") as f:
            f.write("\n".join(self.summary) + "\n")
        return path


def _json_default(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, set | frozenset | tuple):
        return sorted(value) if isinstance(value, set | frozenset) else list(value)
    raise TypeError(f"cannot serialise {type(value).__name__}")

"""Flat ``key = value`` config files and CSV tables."""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np


def parse_keyvalue(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment, blank lines are skipped."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def read_keyvalue(path) -> dict[str, str]:
    return parse_keyvalue(Path(path).read_text())


def format_float(v: float) -> str:
    # repr is the shortest string that round-trips exactly
    return repr(float(v))


def write_csv(path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([format_float(v) if isinstance(v, (float, np.floating)) else v for v in row])


def matrix_csv(path, M: np.ndarray, prefix: str = "f") -> None:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    header = [f"{prefix}{j + 1}" for j in range(M.shape[1])]
    write_csv(path, header, M.tolist())


def population_csv(path, F: np.ndarray, X: np.ndarray | None = None) -> None:
    """Write objective columns ``f1..fm``, optionally followed by ``x1..xd``."""
    F = np.atleast_2d(np.asarray(F, dtype=float))
    header = [f"f{j + 1}" for j in range(F.shape[1])]
    data = F
    if X is not None:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        header += [f"x{k + 1}" for k in range(X.shape[1])]
        data = np.hstack([F, X])
    write_csv(path, header, data.tolist())


def read_csv_matrix(path, prefix: str = "f") -> np.ndarray:
    """Read the columns named ``<prefix>1..`` of a CSV file as a float matrix."""
    text = Path(path).read_text()
    reader = csv.reader(io.StringIO(text))
    rows = [r for r in reader if r]
    if not rows:
        return np.empty((0, 0))
    header = rows[0]
    cols = [i for i, h in enumerate(header) if h.startswith(prefix) and h[len(prefix):].isdigit()]
    if not cols:
        raise ValueError(f"{path}: no '{prefix}1..' columns in header {header}")
    data = [[float(r[i]) for i in cols] for r in rows[1:]]
    if not data:
        return np.empty((0, len(cols)))
    return np.asarray(data, dtype=float)


def read_csv_dicts(path) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))

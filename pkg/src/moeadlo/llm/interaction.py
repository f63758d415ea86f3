"""Stateless generation with retry, and the line-delimited interaction log."""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from .backends import LlmBackend
from .prompt import ParseFailure, PromptSpec, build_prompt, parse_response

logger = logging.getLogger(__name__)

LOG_FIELDS = ("subproblem_index", "parents", "parent_values", "response", "offspring", "attempts", "unix_time_ms")


class OperatorFailure(RuntimeError):
    def __init__(self, message: str, attempts: int, last_response: str | None = None):
        super().__init__(message)
        self.attempts = attempts
        self.last_response = last_response


@dataclass
class InteractionRecord:
    """One model call: parents best first, their aggregation values and the parsed reply."""

    subproblem_index: int
    parents: np.ndarray
    parent_values: np.ndarray
    raw_response: str
    parsed_offspring: list = field(default_factory=list)
    attempt_count: int = 1
    timestamp: int = 0

    def to_json(self) -> str:
        obj = {
            "subproblem_index": int(self.subproblem_index),
            "parents": np.asarray(self.parents, dtype=float).tolist(),
            "parent_values": np.asarray(self.parent_values, dtype=float).tolist(),
            "response": self.raw_response,
            "offspring": [np.asarray(o, dtype=float).tolist() for o in self.parsed_offspring],
            "attempts": int(self.attempt_count),
            "unix_time_ms": int(self.timestamp),
        }
        return json.dumps(obj, allow_nan=False)

    @classmethod
    def from_json(cls, line: str) -> "InteractionRecord":
        obj = json.loads(line)
        missing = [k for k in LOG_FIELDS if k not in obj]
        if missing:
            raise ValueError(f"interaction record lacks fields {missing}")
        parents = np.asarray(obj["parents"], dtype=float)
        offspring = [np.asarray(o, dtype=float) for o in obj["offspring"]]
        if parents.ndim != 2 or any(o.shape != (parents.shape[1],) for o in offspring):
            raise ValueError("inconsistent dimensions in interaction record")
        return cls(
            subproblem_index=int(obj["subproblem_index"]),
            parents=parents,
            parent_values=np.asarray(obj["parent_values"], dtype=float),
            raw_response=obj["response"],
            parsed_offspring=offspring,
            attempt_count=int(obj["attempts"]),
            timestamp=int(obj["unix_time_ms"]),
        )

    def same_payload(self, other: "InteractionRecord") -> bool:
        """Equality ignoring the timestamp."""
        return (
            self.subproblem_index == other.subproblem_index
            and np.array_equal(self.parents, other.parents)
            and np.array_equal(self.parent_values, other.parent_values)
            and self.raw_response == other.raw_response
            and len(self.parsed_offspring) == len(other.parsed_offspring)
            and all(np.array_equal(a, b) for a, b in zip(self.parsed_offspring, other.parsed_offspring))
            and self.attempt_count == other.attempt_count
        )


def generate_with_retry(
    backend: LlmBackend,
    spec: PromptSpec,
    max_retries: int = 3,
    subproblem_index: int = -1,
) -> tuple[list[np.ndarray], InteractionRecord]:
    """Ask the backend for ``spec.s`` points, retrying on unparseable replies.

    Every attempt is an independent single-message call. Raises
    :class:`OperatorFailure` once ``max_retries`` attempts have failed.
    """
    if max_retries < 1:
        raise ValueError("max_retries must be at least 1")
    prompt = build_prompt(spec)
    text = None
    for attempt in range(1, max_retries + 1):
        text = backend.complete(prompt)
        try:
            points = parse_response(text, spec.d, spec.s)
        except ParseFailure:
            logger.debug("attempt %d/%d: unparseable response", attempt, max_retries)
            continue
        if len(points) < spec.s:
            logger.info("response held %d of %d requested points", len(points), spec.s)
        X, values = spec.parents_best_first()
        record = InteractionRecord(
            subproblem_index=subproblem_index,
            parents=X,
            parent_values=values,
            raw_response=text,
            parsed_offspring=points,
            attempt_count=attempt,
            timestamp=int(time.time() * 1000),
        )
        return points, record
    raise OperatorFailure(f"no usable point after {max_retries} attempts", max_retries, text)


class InteractionLog:
    """Append-only JSONL sink. An I/O error disables it with a warning."""

    def __init__(self, sink: str | Path | IO[str]):
        self._owned = not hasattr(sink, "write")
        self.path = Path(sink) if self._owned else None
        self._fh = None if self._owned else sink
        self.enabled = True
        self.written = 0

    def write(self, record: InteractionRecord) -> bool:
        if not self.enabled:
            return False
        try:
            if self._fh is None:
                self._fh = open(self.path, "a", encoding="utf-8")
            self._fh.write(record.to_json() + "\n")
            self._fh.flush()
        except (OSError, ValueError) as exc:
            logger.warning("interaction logging disabled: %s", exc)
            self.enabled = False
            return False
        self.written += 1
        return True

    def close(self) -> None:
        if self._owned and self._fh is not None:
            self._fh.close()
            self._fh = None


def log_interactions(records: Iterable[InteractionRecord], sink) -> int:
    """Append records to ``sink`` (path or text stream); returns how many were written."""
    log = sink if isinstance(sink, InteractionLog) else InteractionLog(sink)
    try:
        for rec in records:
            if not log.write(rec):
                break
    finally:
        if log is not sink:
            log.close()
    return log.written


def read_interactions(path) -> tuple[list[InteractionRecord], int]:
    """Load a log; malformed lines are skipped and counted."""
    records = []
    skipped = 0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            try:
                records.append(InteractionRecord.from_json(line))
            except (ValueError, KeyError, TypeError):
                skipped += 1
    return records, skipped

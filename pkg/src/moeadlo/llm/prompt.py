"""Prompt rendering and response parsing for the language-model operator."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

START = "<start>"
END = "<end>"

_HEADER = (
    "Now you will help me minimize a function with {d} variables. "
    "I have some points and the function values of them. "
    "The points start with <start> and end with <end>. "
    "The points are arranged in descending order based on their function values, "
    "where lower values are better."
)
_FOOTER = (
    "Give me {s} new points that are different from all points above, "
    "and have a function value lower than any of the above. "
    "Do not write code. Do not give any explanation. "
    "Each output new point must start with <start> and end with <end>."
)

_POINT_RE = re.compile(re.escape(START) + r"(.*?)" + re.escape(END), re.DOTALL)


class ParseFailure(ValueError):
    """The response contained no usable point."""


@dataclass(frozen=True)
class PromptSpec:
    """Inputs of one prompt.

    ``parents`` is a tuple of ``(x, value)`` pairs ordered worst first, so the
    best point is listed last.
    """

    d: int
    parents: tuple
    s: int = 2
    decimal_places: int = 3
    goal: str = "minimize"

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be at least 1")
        if self.goal != "minimize":
            raise ValueError("only minimization prompts are supported")
        values = [float(v) for _, v in self.parents]
        if any(a < b for a, b in zip(values, values[1:])):
            raise ValueError("parents must be sorted by descending value")

    @classmethod
    def from_best_first(cls, X, values, s: int = 2, decimal_places: int = 3) -> "PromptSpec":
        X = np.asarray(X, dtype=float)
        pairs = tuple((tuple(X[i]), float(values[i])) for i in range(len(X) - 1, -1, -1))
        return cls(d=X.shape[1] if X.ndim == 2 else 0, parents=pairs, s=s, decimal_places=decimal_places)

    def parents_best_first(self) -> tuple[np.ndarray, np.ndarray]:
        X = np.array([x for x, _ in reversed(self.parents)], dtype=float)
        v = np.array([val for _, val in reversed(self.parents)], dtype=float)
        return X, v


def _fmt(v: float, places: int) -> str:
    return f"{v:.{places}f}"


def build_prompt(spec: PromptSpec) -> str:
    if not spec.parents:
        raise ValueError("a prompt needs at least one parent point")
    lines = [_HEADER.format(d=spec.d)]
    for x, value in spec.parents:
        if len(x) != spec.d:
            raise ValueError(f"parent has {len(x)} variables, expected {spec.d}")
        coords = ",".join(_fmt(c, spec.decimal_places) for c in x)
        lines.append(f"point: {START}{coords}{END}")
        lines.append(f"value: {_fmt(value, spec.decimal_places)}")
    lines.append(_FOOTER.format(s=spec.s))
    return "\n".join(lines)


def _parse_point(body: str, d: int) -> np.ndarray | None:
    parts = body.split(",")
    if len(parts) != d:
        return None
    vals = []
    for p in parts:
        try:
            v = float(p.strip())
        except ValueError:
            return None
        if not math.isfinite(v):
            return None
        vals.append(v)
    return np.array(vals)


def parse_response(text: str, d: int, s: int) -> list[np.ndarray]:
    """Points between ``<start>`` and ``<end>`` markers, at most ``s`` of them.

    Malformed points are skipped. The result may hold fewer than ``s``
    points; :class:`ParseFailure` is raised only when none is usable.
    """
    found = []
    for match in _POINT_RE.finditer(text or ""):
        point = _parse_point(match.group(1), d)
        if point is not None:
            found.append(point)
            if len(found) == s:
                break
    if not found:
        raise ParseFailure("no well-formed point in response")
    return found

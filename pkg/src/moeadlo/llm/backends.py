"""Text-completion backends: scripted, recorded fixtures and a live HTTP endpoint."""

from __future__ import annotations

import hashlib
import logging
import os
import re
import time
from pathlib import Path
from typing import Callable, Iterable, Protocol

import httpx
import numpy as np

logger = logging.getLogger(__name__)

API_KEY_ENV = "LLM_API_KEY"


class ConfigurationError(RuntimeError):
    pass


class FixtureMissing(KeyError):
    pass


class LlmBackend(Protocol):
    def complete(self, prompt: str) -> str: ...


def prompt_digest(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class ScriptedBackend:
    """Backend driven by a Python function of the prompt text."""

    def __init__(self, fn: Callable[[str], str]):
        self.fn = fn
        self.calls = 0

    def complete(self, prompt: str) -> str:
        self.calls += 1
        return self.fn(prompt)

    @classmethod
    def from_responses(cls, responses: Iterable[str]) -> "ScriptedBackend":
        """Return the given responses in order, repeating the last one."""
        items = list(responses)
        if not items:
            raise ValueError("need at least one response")
        state = {"i": 0}

        def fn(_prompt):
            i = min(state["i"], len(items) - 1)
            state["i"] += 1
            return items[i]

        return cls(fn)


_PROMPT_POINT = re.compile(r"^point: (<start>.*?<end>)$", re.MULTILINE)


def echo_best(prompt: str) -> str:
    """Reply with the last (best) point of the prompt, twice."""
    points = _PROMPT_POINT.findall(prompt)
    if not points:
        return "I cannot help with that."
    return f"{points[-1]}\n{points[-1]}"


def mimic(prompt: str) -> str:
    """Deterministic stand-in for a model.

    Recombines the prompt's points with rank-decaying weights plus noise
    seeded by the prompt digest, and answers in the requested format.
    """
    points = []
    for body in _PROMPT_POINT.findall(prompt):
        points.append([float(v) for v in body[len("<start>"):-len("<end>")].split(",")])
    if not points:
        return "I cannot help with that."
    P = np.array(points[::-1])  # best first
    m = re.search(r"Give me (\d+) new points", prompt)
    s = int(m.group(1)) if m else 1
    rng = np.random.default_rng(int(prompt_digest(prompt)[:16], 16))
    w = np.exp(-0.3 * np.arange(len(P)))
    w /= w.sum()
    out = []
    for _ in range(s):
        x = (w + 0.3 * rng.standard_normal(len(P)) / len(P)) @ P
        out.append("<start>" + ",".join(f"{v:.4f}" for v in x) + "<end>")
    return "\n".join(out)


class RecordedBackend:
    """Replays responses stored as ``<digest>.txt`` files in a directory."""

    def __init__(self, directory):
        self.directory = Path(directory)
        if not self.directory.is_dir():
            raise ConfigurationError(f"fixture directory {self.directory} does not exist")

    def complete(self, prompt: str) -> str:
        path = self.directory / f"{prompt_digest(prompt)}.txt"
        try:
            return path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise FixtureMissing(f"no recorded response for prompt digest {path.stem}") from None


class RecordingBackend:
    """Forwards to another backend and stores every response as a fixture."""

    def __init__(self, inner: LlmBackend, directory):
        self.inner = inner
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def complete(self, prompt: str) -> str:
        text = self.inner.complete(prompt)
        (self.directory / f"{prompt_digest(prompt)}.txt").write_text(text, encoding="utf-8")
        return text


class LiveBackend:
    """OpenAI-style chat-completion endpoint.

    Each call sends exactly one user message, so no conversation history is
    carried between calls. The token is read from ``LLM_API_KEY``.
    """

    def __init__(
        self,
        base_url: str,
        model: str,
        temperature: float = 1.0,
        api_key: str | None = None,
        min_interval: float = 0.0,
        timeout: float = 60.0,
        client: httpx.Client | None = None,
    ):
        key = api_key if api_key is not None else os.environ.get(API_KEY_ENV)
        if not key:
            raise ConfigurationError(f"live backend needs the {API_KEY_ENV} environment variable")
        self.url = base_url.rstrip("/") + "/chat/completions"
        self.model = model
        self.temperature = temperature
        self.min_interval = min_interval
        self._headers = {"Authorization": f"Bearer {key}"}
        self._client = client or httpx.Client(timeout=timeout)
        self._last = 0.0

    def request_payload(self, prompt: str) -> dict:
        return {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.temperature,
        }

    def complete(self, prompt: str) -> str:
        wait = self.min_interval - (time.monotonic() - self._last)
        if wait > 0:
            time.sleep(wait)
        self._last = time.monotonic()
        resp = self._client.post(self.url, json=self.request_payload(prompt), headers=self._headers)
        resp.raise_for_status()
        data = resp.json()
        return data["choices"][0]["message"]["content"] or ""


def make_backend(spec: str, **live_kw) -> LlmBackend:
    """Parse ``scripted:<name>``, ``recorded:<dir>`` or ``live``."""
    kind, _, arg = spec.partition(":")
    if kind == "scripted":
        scripts = {"echo": echo_best, "mimic": mimic}
        if arg not in scripts:
            raise ConfigurationError(f"unknown scripted backend {arg!r}; available: {', '.join(scripts)}")
        return ScriptedBackend(scripts[arg])
    if kind == "recorded":
        if not arg:
            raise ConfigurationError("recorded backend needs a directory: recorded:<dir>")
        return RecordedBackend(arg)
    if kind == "live":
        return LiveBackend(**live_kw)
    raise ConfigurationError(f"unknown backend {spec!r}")

"""Language model as a black-box reproduction operator."""

from .backends import (
    API_KEY_ENV,
    ConfigurationError,
    FixtureMissing,
    LiveBackend,
    LlmBackend,
    RecordedBackend,
    RecordingBackend,
    ScriptedBackend,
    echo_best,
    make_backend,
    mimic,
    prompt_digest,
)
from .interaction import (
    InteractionLog,
    InteractionRecord,
    OperatorFailure,
    generate_with_retry,
    log_interactions,
    read_interactions,
)
from .prompt import ParseFailure, PromptSpec, build_prompt, parse_response

__all__ = [
    "API_KEY_ENV",
    "ConfigurationError",
    "FixtureMissing",
    "InteractionLog",
    "InteractionRecord",
    "LiveBackend",
    "LlmBackend",
    "OperatorFailure",
    "ParseFailure",
    "PromptSpec",
    "RecordedBackend",
    "RecordingBackend",
    "ScriptedBackend",
    "build_prompt",
    "echo_best",
    "generate_with_retry",
    "log_interactions",
    "make_backend",
    "mimic",
    "parse_response",
    "prompt_digest",
    "read_interactions",
]

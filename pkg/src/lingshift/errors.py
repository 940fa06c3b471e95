"""Exception types shared across the pipeline.

Every exception carries a short machine-readable ``reason`` so the CLI and the
error sidecars can report failures without string matching on messages.
"""
from __future__ import annotations


class LingshiftError(Exception):
    reason = "error"

    def __init__(self, message: str = "", **details) -> None:
        super().__init__(message or self.reason)
        self.details = details


class EmptyTextError(LingshiftError):
    reason = "empty_text"


class InvalidConfigError(LingshiftError):
    reason = "invalid_config"


class InvalidResourceError(LingshiftError):
    reason = "invalid_resource"

    def __init__(self, message: str = "", path=None, line: int | None = None) -> None:
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f", line {line}"
            where += ": "
        super().__init__(where + message, path=path, line=line)
        self.path = path
        self.line = line


class NoCoverageError(LingshiftError):
    reason = "no_coverage"


class InsufficientSentencesError(LingshiftError):
    reason = "insufficient_sentences"


class InsufficientDataError(LingshiftError):
    reason = "insufficient_data"


class InsufficientHistoryError(LingshiftError):
    reason = "insufficient_history"


class UndefinedEffectError(LingshiftError):
    reason = "undefined_effect"


class UndefinedRateError(LingshiftError):
    reason = "undefined_rate"


class OutOfWindowError(LingshiftError):
    reason = "out_of_window"


class AmbiguityError(LingshiftError):
    reason = "ambiguity"

    def __init__(self, message: str = "", ids=()) -> None:
        super().__init__(message, ids=list(ids))
        self.ids = list(ids)


class InvalidMetricError(LingshiftError):
    reason = "invalid_metric"


class SchemaError(LingshiftError):
    reason = "schema"

    def __init__(self, message: str = "", missing=()) -> None:
        super().__init__(message, missing=list(missing))
        self.missing = list(missing)

"""Lexical density, diversity (TTR / MATTR) and sophistication."""
from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .errors import EmptyTextError, InvalidConfigError, InvalidResourceError, NoCoverageError
from .textkit import AnalyzedText, WordClass


@dataclass(frozen=True)
class LexicalProfile:
    word_count: int
    avg_word_length: float
    content_tokens: int
    content_types: int
    function_tokens: int
    function_types: int
    lexical_density_tokens: float
    lexical_density_types: float
    mattr50: float | None
    range_log_aw: float | None = None
    frequency_log_aw: float | None = None
    norms_coverage: float | None = None


def lexical_items(analyzed: AnalyzedText) -> list[str]:
    """Normalized word tokens with math placeholders removed."""
    return [t.normalized for t in analyzed.tokens if t.is_lexical]


def ttr(tokens: Sequence[str]) -> float:
    if not tokens:
        raise EmptyTextError("no word tokens")
    return len(set(tokens)) / len(tokens)


def mattr(tokens: Sequence[str], window: int = 50) -> float:
    """Mean type-token ratio over every contiguous window of ``window`` tokens.

    Texts no longer than the window fall back to plain TTR.
    """
    if window < 2:
        raise InvalidConfigError(f"window must be >= 2, got {window}")
    n = len(tokens)
    if n == 0:
        raise EmptyTextError("no word tokens")
    if n <= window:
        return ttr(tokens)
    counts = Counter(tokens[:window])
    distinct = len(counts)
    total = distinct
    for i in range(window, n):
        out_tok, in_tok = tokens[i - window], tokens[i]
        counts[out_tok] -= 1
        if counts[out_tok] == 0:
            distinct -= 1
            del counts[out_tok]
        if counts[in_tok] == 0:
            distinct += 1
        counts[in_tok] += 1
        total += distinct
    return total / ((n - window + 1) * window)


Norms = Mapping[str, tuple[float, float]]


def load_norms(path: str | Path) -> dict[str, tuple[float, float]]:
    """Read ``word<TAB>log_frequency<TAB>log_range`` rows."""
    norms: dict[str, tuple[float, float]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise InvalidResourceError(f"expected 3 tab-separated columns, got {len(parts)}", path=path, line=lineno)
            try:
                norms[parts[0].strip().lower()] = (float(parts[1]), float(parts[2]))
            except ValueError:
                if lineno == 1:
                    continue  # header row
                raise InvalidResourceError("non-numeric norm value", path=path, line=lineno) from None
    if not norms:
        raise InvalidResourceError("norms file has no entries", path=path)
    return norms


def sophistication(tokens: Sequence[str], norms: Norms) -> tuple[float, float, float]:
    """Return (frequency_log_aw, range_log_aw, coverage) over all words found in the norms."""
    if not norms:
        raise InvalidResourceError("norms table is empty")
    freq_sum = range_sum = 0.0
    hits = 0
    for tok in tokens:
        entry = norms.get(tok)
        if entry is None:
            continue
        freq_sum += entry[0]
        range_sum += entry[1]
        hits += 1
    if hits == 0:
        raise NoCoverageError("no token found in norms")
    return freq_sum / hits, range_sum / hits, hits / len(tokens)


def lexical_profile(analyzed: AnalyzedText, norms: Norms | None = None, window: int = 50) -> LexicalProfile:
    words = analyzed.word_tokens
    if not words:
        raise EmptyTextError("no word tokens")
    content = [t.normalized for t in words if t.word_class is WordClass.CONTENT]
    function = [t.normalized for t in words if t.word_class is WordClass.FUNCTION]
    content_types, function_types = len(set(content)), len(set(function))
    classified = len(content) + len(function)
    classified_types = content_types + function_types
    items = lexical_items(analyzed)

    freq = rng = coverage = None
    if norms is not None and items:
        try:
            freq, rng, coverage = sophistication(items, norms)
        except NoCoverageError:
            coverage = 0.0

    return LexicalProfile(
        word_count=len(words),
        avg_word_length=sum(t.char_length for t in words) / len(words),
        content_tokens=len(content),
        content_types=content_types,
        function_tokens=len(function),
        function_types=function_types,
        lexical_density_tokens=len(content) / classified if classified else 0.0,
        lexical_density_types=content_types / classified_types if classified_types else 0.0,
        mattr50=mattr(items, window) if items else None,
        range_log_aw=rng,
        frequency_log_aw=freq,
        norms_coverage=coverage,
    )


def write_norms(path: str | Path, norms: Mapping[str, tuple[float, float]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        for word, (f, r) in sorted(norms.items()):
            writer.writerow([word, f, r])

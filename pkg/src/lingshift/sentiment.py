"""Lexicon-based polarity and subjectivity, averaged per sentence."""
from __future__ import annotations

import csv
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvalidResourceError
from .textkit import AnalyzedText


@dataclass(frozen=True)
class SentimentScore:
    polarity: float
    subjectivity: float

    @property
    def objectivity(self) -> float:
        return 1.0 - self.subjectivity


@dataclass(frozen=True)
class SentimentLexicon:
    entries: dict[tuple[str, str], tuple[float, float]]
    negations: frozenset[str] = frozenset()
    intensifiers: dict[str, float] = field(default_factory=dict)
    negation_window: int = 3

    def __post_init__(self):
        if not self.entries:
            raise InvalidResourceError("sentiment lexicon is empty")
        sums: dict[str, list[float]] = defaultdict(lambda: [0.0, 0.0, 0])
        for (word, _pos), (p, s) in self.entries.items():
            acc = sums[word]
            acc[0] += p
            acc[1] += s
            acc[2] += 1
        object.__setattr__(self, "_by_word", {w: (a[0] / a[2], a[1] / a[2]) for w, a in sums.items()})

    def lookup(self, word: str, pos: str) -> tuple[float, float] | None:
        """POS-qualified entry if present, else the word's average over its entries."""
        hit = self.entries.get((word, pos[:2]))
        if hit is None:
            hit = self.entries.get((word, ""))
        if hit is None:
            hit = self._by_word.get(word)
        return hit


def _read_csv(path: str | Path, header: list[str]):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        if next(reader, None) != header:
            raise InvalidResourceError(f"header must be {','.join(header)!r}", path=path, line=1)
        for lineno, row in enumerate(reader, 2):
            if row:
                yield lineno, [c.strip() for c in row]


def load_sentiment_lexicon(
    lexicon_path: str | Path,
    negations_path: str | Path | None = None,
    intensifiers_path: str | Path | None = None,
    negation_window: int = 3,
) -> SentimentLexicon:
    entries: dict[tuple[str, str], tuple[float, float]] = {}
    for lineno, row in _read_csv(lexicon_path, ["word", "pos", "polarity", "subjectivity"]):
        if len(row) != 4:
            raise InvalidResourceError("expected 4 columns", path=lexicon_path, line=lineno)
        try:
            p, s = float(row[2]), float(row[3])
        except ValueError:
            raise InvalidResourceError("non-numeric score", path=lexicon_path, line=lineno) from None
        if not (-1 <= p <= 1 and 0 <= s <= 1):
            raise InvalidResourceError("score out of range", path=lexicon_path, line=lineno)
        entries[(row[0].lower(), row[1][:2].upper())] = (p, s)

    negations: set[str] = set()
    if negations_path is not None:
        for lineno, row in _read_csv(negations_path, ["word"]):
            negations.add(row[0].lower())

    intensifiers: dict[str, float] = {}
    if intensifiers_path is not None:
        for lineno, row in _read_csv(intensifiers_path, ["word", "multiplier"]):
            try:
                m = float(row[1])
            except (ValueError, IndexError):
                raise InvalidResourceError("bad multiplier", path=intensifiers_path, line=lineno) from None
            if m <= 0:
                raise InvalidResourceError("multiplier must be positive", path=intensifiers_path, line=lineno)
            intensifiers[row[0].lower()] = m

    return SentimentLexicon(entries, frozenset(negations), intensifiers, negation_window)


def _clamp(x: float, lo: float, hi: float) -> float:
    return max(lo, min(hi, x))


def sentiment_scores(analyzed: AnalyzedText, lexicon: SentimentLexicon) -> SentimentScore:
    sentence_scores = []
    for sentence in analyzed.sentences:
        words = [t.normalized for t in sentence]
        matches = []
        for i, tok in enumerate(sentence):
            if not tok.is_lexical:
                continue
            entry = lexicon.lookup(tok.normalized, tok.pos)
            if entry is None:
                continue
            if tok.normalized in lexicon.intensifiers and i + 1 < len(sentence):
                nxt = sentence[i + 1]
                if nxt.is_lexical and lexicon.lookup(nxt.normalized, nxt.pos) is not None:
                    # modifier of the next scored word, not scored itself
                    continue
            polarity, subjectivity = entry
            if i > 0 and words[i - 1] in lexicon.intensifiers:
                polarity *= lexicon.intensifiers[words[i - 1]]
            window = words[max(0, i - lexicon.negation_window):i]
            if any(w in lexicon.negations for w in window):
                polarity = -polarity
            matches.append((_clamp(polarity, -1.0, 1.0), subjectivity))
        if matches:
            sentence_scores.append((
                sum(m[0] for m in matches) / len(matches),
                sum(m[1] for m in matches) / len(matches),
            ))
    if not sentence_scores:
        return SentimentScore(0.0, 0.0)
    n = len(sentence_scores)
    return SentimentScore(
        polarity=sum(s[0] for s in sentence_scores) / n,
        subjectivity=sum(s[1] for s in sentence_scores) / n,
    )

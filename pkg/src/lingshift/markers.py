"""LLM-preferred word rates, new-word emergence and POS-category frequency shift."""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import InsufficientHistoryError, InvalidConfigError, InvalidResourceError
from .textkit import AnalyzedText

log = logging.getLogger(__name__)

POS_CATEGORIES = ("CC", "IN", "VBZ", "VBN", "RB", "NN", "JJS")
LLM_ADJ = "LLM-adjectives"
LLM_ADV = "LLM-adverbs"


@dataclass(frozen=True)
class LLMWordList:
    adjectives: frozenset[str]
    adverbs: frozenset[str]
    # word -> number of extra copies dropped on load, per list
    duplicates: dict[str, dict[str, int]] = field(default_factory=dict)


def _read_unique(path: str | Path) -> tuple[list[str], dict[str, int]]:
    seen: dict[str, int] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.strip().lower()
        if word and not word.startswith("#"):
            seen[word] = seen.get(word, 0) + 1
    if not seen:
        raise InvalidResourceError("word list is empty", path=path)
    return list(seen), {w: c - 1 for w, c in seen.items() if c > 1}


def load_llm_words(adjectives_path: str | Path, adverbs_path: str | Path) -> LLMWordList:
    adjectives, adj_dups = _read_unique(adjectives_path)
    adverbs, adv_dups = _read_unique(adverbs_path)
    for name, dups in (("adjectives", adj_dups), ("adverbs", adv_dups)):
        if dups:
            log.info("dropped %d repeated %s: %s", sum(dups.values()), name, ", ".join(sorted(dups)))
    overlap = set(adjectives) & set(adverbs)
    if overlap:
        raise InvalidResourceError(f"words listed as both adjective and adverb: {sorted(overlap)}")
    return LLMWordList(frozenset(adjectives), frozenset(adverbs), {"adjectives": adj_dups, "adverbs": adv_dups})


@dataclass(frozen=True)
class MarkerProfile:
    llm_adj_count: int
    llm_adv_count: int
    llm_adj_rate: float
    llm_adv_rate: float


def llm_marker_profile(analyzed: AnalyzedText, words: LLMWordList) -> MarkerProfile:
    """Counts and per-1000-word rates of list members, ignoring POS."""
    adj = adv = 0
    for tok in analyzed.tokens:
        if tok.normalized in words.adjectives:
            adj += 1
        elif tok.normalized in words.adverbs:
            adv += 1
    n = analyzed.word_count
    return MarkerProfile(
        llm_adj_count=adj,
        llm_adv_count=adv,
        llm_adj_rate=1000.0 * adj / n if n else 0.0,
        llm_adv_rate=1000.0 * adv / n if n else 0.0,
    )


def vocabulary(analyzed: AnalyzedText) -> Counter:
    return Counter(t.normalized for t in analyzed.tokens if t.is_lexical)


def detect_new_words(
    periods: Mapping[int, Counter | Iterable[str]],
    min_count: int = 5,
    min_prior_periods: int = 4,
) -> dict[int, list[tuple[str, int]]]:
    """Words first attested in a period with at least ``min_count`` uses there.

    Only periods preceded by ``min_prior_periods`` periods of history are
    reported; earlier ones only feed the seen-vocabulary.
    """
    if min_count < 1 or min_prior_periods < 1:
        raise InvalidConfigError("thresholds must be >= 1")
    ordinals = sorted(periods)
    if ordinals and ordinals != list(range(ordinals[0], ordinals[-1] + 1)):
        raise InvalidConfigError("periods must be contiguous")
    if len(ordinals) <= min_prior_periods:
        raise InsufficientHistoryError(
            f"{len(ordinals)} periods given, need more than {min_prior_periods}", periods=len(ordinals)
        )
    seen: set[str] = set()
    report: dict[int, list[tuple[str, int]]] = {}
    for idx, p in enumerate(ordinals):
        counts = periods[p]
        if not isinstance(counts, Counter):
            counts = Counter(counts)
        if idx >= min_prior_periods:
            fresh = [(w, c) for w, c in counts.items() if c >= min_count and w not in seen]
            fresh.sort(key=lambda wc: (-wc[1], wc[0]))
            report[p] = fresh
        seen.update(counts)
    return report


def pos_counts(texts: Iterable[AnalyzedText]) -> Counter:
    """(normalized word, tag) frequencies over lexical tokens."""
    counts: Counter = Counter()
    for text in texts:
        counts.update((t.normalized, t.pos) for t in text.tokens if t.is_lexical)
    return counts


@dataclass(frozen=True)
class CategoryShift:
    category: str
    top_words: tuple[str, ...]
    before: int
    after: int
    change: float
    flagged: bool


def _category_counts(counts: Counter, category: str, words: LLMWordList | None) -> Counter:
    out: Counter = Counter()
    if category in (LLM_ADJ, LLM_ADV):
        members = words.adjectives if category == LLM_ADJ else words.adverbs
        for (w, _tag), c in counts.items():
            if w in members:
                out[w] += c
    else:
        for (w, tag), c in counts.items():
            if tag == category:
                out[w] += c
    return out


def percent_change(before: float, after: float) -> float:
    return (after - before) / before


def pos_category_shift(
    before: Counter,
    after: Counter,
    k: int = 10,
    threshold: float = 0.04,
    words: LLMWordList | None = None,
    categories: Sequence[str] | None = None,
) -> list[CategoryShift]:
    """Per category: top-k baseline words, their summed frequency in both samples, and the change.

    ``before``/``after`` map (word, tag) to counts. Categories empty in the
    baseline are omitted with a log notice.
    """
    if k < 1:
        raise InvalidConfigError("k must be >= 1")
    if categories is None:
        categories = POS_CATEGORIES + ((LLM_ADJ, LLM_ADV) if words is not None else ())
    rows = []
    for cat in categories:
        base = _category_counts(before, cat, words)
        if not base:
            log.info("category %s is empty in the baseline sample; omitted", cat)
            continue
        top = [w for w, _ in sorted(base.items(), key=lambda wc: (-wc[1], wc[0]))[:k]]
        later = _category_counts(after, cat, words)
        b = sum(base[w] for w in top)
        a = sum(later[w] for w in top)
        change = percent_change(b, a)
        rows.append(CategoryShift(cat, tuple(top), b, a, change, abs(change) >= threshold))
    return rows

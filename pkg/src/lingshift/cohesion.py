"""Inter-sentence cohesion: adjacent overlap, vector overlap, connective incidence."""
from __future__ import annotations

import csv
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import InsufficientSentencesError, InvalidConfigError, InvalidResourceError
from .textkit import AnalyzedText, Token, WordClass
from .textkit.core import NOUN_TAGS, PRONOUN_TAGS

CONNECTIVE_CATEGORIES = ("basic_connectives", "all_logical", "all_temporal", "reason_and_purpose", "order")


@dataclass(frozen=True)
class CohesionProfile:
    adjacent_overlap_all: float | None
    adjacent_overlap_argument: float | None
    lsa_all_sent: float | None
    basic_connectives: float
    all_logical: float
    all_temporal: float
    reason_and_purpose: float
    order: float


@dataclass(frozen=True)
class ConnectiveLexicon:
    """Category -> expressions, each expression a tuple of lowercase words."""
    categories: dict[str, tuple[tuple[str, ...], ...]]

    def __post_init__(self):
        # expression -> categories it belongs to, and the longest length to try
        index: dict[tuple[str, ...], list[str]] = defaultdict(list)
        for cat, exprs in self.categories.items():
            for e in exprs:
                if cat not in index[e]:
                    index[e].append(cat)
        object.__setattr__(self, "_index", dict(index))
        object.__setattr__(self, "_max_len", max((len(e) for e in index), default=0))
        lengths: dict[str, set[int]] = defaultdict(set)
        for e in index:
            lengths[e[0]].add(len(e))
        # first word -> candidate expression lengths, longest first
        object.__setattr__(self, "_starts", {w: sorted(v, reverse=True) for w, v in lengths.items()})

    def lookup(self, words: tuple[str, ...]) -> list[str]:
        return self._index.get(words, [])

    @property
    def max_len(self) -> int:
        return self._max_len

    def lengths_from(self, word: str) -> list[int]:
        return self._starts.get(word, [])


def load_connectives(path: str | Path) -> ConnectiveLexicon:
    cats: dict[str, list[tuple[str, ...]]] = {c: [] for c in CONNECTIVE_CATEGORIES}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        if next(reader, None) != ["category", "expression"]:
            raise InvalidResourceError("header must be 'category,expression'", path=path, line=1)
        for lineno, row in enumerate(reader, 2):
            if not row:
                continue
            if len(row) != 2:
                raise InvalidResourceError("expected 'category,expression'", path=path, line=lineno)
            cat, expr = row[0].strip(), row[1].strip().lower()
            if cat not in cats:
                raise InvalidResourceError(f"unknown connective category {cat!r}", path=path, line=lineno)
            words = tuple(expr.split())
            if not words:
                raise InvalidResourceError("empty expression", path=path, line=lineno)
            cats[cat].append(words)
    return ConnectiveLexicon({c: tuple(v) for c, v in cats.items()})


def _content_types(sentence: Sequence[Token]) -> set[str]:
    return {t.normalized for t in sentence if t.word_class is WordClass.CONTENT}


def _argument_types(sentence: Sequence[Token]) -> set[str]:
    return {t.normalized for t in sentence if t.is_lexical and (t.pos in NOUN_TAGS or t.pos in PRONOUN_TAGS)}


def overlap_of_sets(type_sets: Sequence[set[str]], symmetric: bool = False) -> float:
    """Mean over adjacent pairs of shared types / types of the earlier sentence.

    ``symmetric`` divides by the union instead. Pairs with an empty denominator are skipped.
    """
    if len(type_sets) < 2:
        raise InsufficientSentencesError("need at least 2 sentences", sentences=len(type_sets))
    values = []
    for a, b in zip(type_sets, type_sets[1:]):
        denom = len(a | b) if symmetric else len(a)
        if denom:
            values.append(len(a & b) / denom)
    if not values:
        raise InsufficientSentencesError("no adjacent pair has any eligible types")
    return sum(values) / len(values)


def adjacent_overlap(analyzed: AnalyzedText, mode: str = "all", symmetric: bool = False) -> float:
    if mode == "all":
        pick = _content_types
    elif mode == "argument":
        pick = _argument_types
    else:
        raise InvalidConfigError(f"unknown overlap mode {mode!r}")
    return overlap_of_sets([pick(s) for s in analyzed.sentences], symmetric)


VectorSpace = Mapping[str, Sequence[float]]


def load_vectors(path: str | Path) -> dict[str, tuple[float, ...]]:
    """Text vectors, one ``word v1 ... vk`` per line, k fixed for the file."""
    vectors: dict[str, tuple[float, ...]] = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.split()
            if not parts:
                continue
            if dim is None:
                dim = len(parts) - 1
                if dim < 1:
                    raise InvalidResourceError("vector line has no components", path=path, line=lineno)
            if len(parts) - 1 != dim:
                raise InvalidResourceError(f"expected {dim} components, got {len(parts) - 1}", path=path, line=lineno)
            try:
                vectors[parts[0].lower()] = tuple(float(x) for x in parts[1:])
            except ValueError:
                raise InvalidResourceError("non-numeric vector component", path=path, line=lineno) from None
    if not vectors:
        raise InvalidResourceError("vector file is empty", path=path)
    return vectors


def _cosine(u: Mapping | Sequence, v: Mapping | Sequence) -> float | None:
    if isinstance(u, Mapping):
        dot = sum(c * v.get(k, 0) for k, c in u.items())
        nu = math.sqrt(sum(c * c for c in u.values()))
        nv = math.sqrt(sum(c * c for c in v.values()))
    else:
        dot = sum(a * b for a, b in zip(u, v))
        nu = math.sqrt(sum(a * a for a in u))
        nv = math.sqrt(sum(b * b for b in v))
    if nu == 0 or nv == 0:
        return None
    return max(-1.0, min(1.0, dot / (nu * nv)))


def _sentence_items(sentence: Sequence[Token]) -> list[str]:
    return [t.normalized for t in sentence if t.is_lexical and t.word_class is not WordClass.FUNCTION]


def _mean_vector(words: Iterable[str], space: VectorSpace) -> tuple[float, ...] | None:
    acc = None
    n = 0
    for w in words:
        vec = space.get(w)
        if vec is None:
            continue
        acc = list(vec) if acc is None else [a + b for a, b in zip(acc, vec)]
        n += 1
    return None if acc is None else tuple(a / n for a in acc)


def semantic_overlap(analyzed: AnalyzedText, vector_space: VectorSpace | None = None) -> float:
    """Mean cosine between adjacent sentence vectors.

    Without a vector space, sentences are term-frequency vectors over non-function words.
    """
    if analyzed.sentence_count < 2:
        raise InsufficientSentencesError("need at least 2 sentences", sentences=analyzed.sentence_count)
    if vector_space is None:
        vecs = [Counter(_sentence_items(s)) for s in analyzed.sentences]
    else:
        vecs = [_mean_vector(_sentence_items(s), vector_space) for s in analyzed.sentences]
    sims = []
    for u, v in zip(vecs, vecs[1:]):
        if not u or not v:
            continue
        c = _cosine(u, v)
        if c is not None:
            sims.append(c)
    if not sims:
        raise InsufficientSentencesError("no adjacent pair with non-zero vectors")
    return sum(sims) / len(sims)


def connective_counts(analyzed: AnalyzedText, lexicon: ConnectiveLexicon) -> Counter:
    """Longest-match scan within each sentence; returns matches per category."""
    counts: Counter = Counter({c: 0 for c in lexicon.categories})
    for sentence in analyzed.sentences:
        words = [t.normalized for t in sentence]
        i = 0
        while i < len(words):
            step = 1
            for size in lexicon.lengths_from(words[i]):
                if i + size > len(words):
                    continue
                cats = lexicon.lookup(tuple(words[i:i + size]))
                if cats:
                    for c in cats:
                        counts[c] += 1
                    step = size
                    break
            i += step
    return counts


def connective_rates(analyzed: AnalyzedText, lexicon: ConnectiveLexicon) -> dict[str, float]:
    n = analyzed.word_count
    counts = connective_counts(analyzed, lexicon)
    return {c: (counts[c] / n if n else 0.0) for c in lexicon.categories}


def cohesion_profile(
    analyzed: AnalyzedText,
    connectives: ConnectiveLexicon,
    vector_space: VectorSpace | None = None,
    symmetric: bool = False,
) -> CohesionProfile:
    def missing_if_short(fn, *args):
        try:
            return fn(*args)
        except InsufficientSentencesError:
            return None

    rates = connective_rates(analyzed, connectives)
    return CohesionProfile(
        adjacent_overlap_all=missing_if_short(adjacent_overlap, analyzed, "all", symmetric),
        adjacent_overlap_argument=missing_if_short(adjacent_overlap, analyzed, "argument", symmetric),
        lsa_all_sent=missing_if_short(semantic_overlap, analyzed, vector_space),
        **{c: rates.get(c, 0.0) for c in CONNECTIVE_CATEGORIES},
    )

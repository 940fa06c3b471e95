"""New Dale-Chall and Flesch Reading Ease."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import AbstractSet

from .errors import EmptyTextError, InvalidResourceError
from .textkit import AnalyzedText, Token, read_word_list


@dataclass(frozen=True)
class ReadabilityInputs:
    n_words: int
    n_sentences: int
    n_syllables: int
    n_difficult_words: int
    # denominator of the syllable ratio; defaults to n_words
    n_alpha_words: int | None = None


@dataclass(frozen=True)
class ReadabilityScores:
    ndc: float
    fre: float


def load_easy_words(path: str | Path) -> frozenset[str]:
    words = frozenset(read_word_list(Path(path)))
    if not words:
        raise InvalidResourceError("easy-word list is empty", path=path)
    return words


def _base_forms(word: str) -> list[str]:
    """Candidate stems for regular -s/-es/-ed/-ing inflections."""
    out = []
    if word.endswith("ies") and len(word) > 4:
        out.append(word[:-3] + "y")
    if word.endswith("es") and len(word) > 3:
        out.append(word[:-2])
    if word.endswith("s") and not word.endswith("ss") and len(word) > 2:
        out.append(word[:-1])
    for suffix in ("ed", "ing"):
        if word.endswith(suffix) and len(word) > len(suffix) + 1:
            stem = word[: -len(suffix)]
            out.append(stem)
            out.append(stem + "e")
            if len(stem) > 2 and stem[-1] == stem[-2]:
                out.append(stem[:-1])
            if suffix == "ed" and stem.endswith("i"):
                out.append(stem[:-1] + "y")
    return out


def _part_is_difficult(part: str, easy: AbstractSet[str]) -> bool:
    if not any(c.isalpha() for c in part) or part[0].isdigit():
        return False
    if part in easy:
        return False
    return not any(b in easy for b in _base_forms(part))


def is_difficult_word(token: Token | str, easy_words: AbstractSet[str]) -> bool:
    """True when neither the word nor a regular stem of it is on the easy list.

    Numbers, math placeholders and clitics are never difficult; a hyphenated
    compound is difficult if any of its parts is.
    """
    if not easy_words:
        raise InvalidResourceError("easy-word list is empty")
    if isinstance(token, Token):
        if token.is_math or not token.is_alpha_word:
            return False
        word = token.normalized
    else:
        word = token.casefold()
    if word[:1] in ("'", "’"):
        return False
    if isinstance(easy_words, frozenset):
        return _cached_difficulty(word, easy_words)
    return _difficulty(word, easy_words)


def _difficulty(word: str, easy_words: AbstractSet[str]) -> bool:
    return any(_part_is_difficult(p, easy_words) for p in word.split("-") if p)


# keyed by identity: equal sets loaded twice would otherwise be compared element by element on every hit
_MEMO: dict[int, tuple[frozenset, dict[str, bool]]] = {}


def _cached_difficulty(word: str, easy_words: frozenset[str]) -> bool:
    entry = _MEMO.get(id(easy_words))
    if entry is None or entry[0] is not easy_words:
        if len(_MEMO) > 8:
            _MEMO.clear()
        entry = _MEMO[id(easy_words)] = (easy_words, {})
    memo = entry[1]
    hit = memo.get(word)
    if hit is None:
        if len(memo) > 131072:
            memo.clear()
        hit = memo[word] = _difficulty(word, easy_words)
    return hit


def _check(inputs: ReadabilityInputs) -> None:
    if inputs.n_words < 1 or inputs.n_sentences < 1:
        raise EmptyTextError("readability needs at least one word and one sentence")


def ndc_score(inputs: ReadabilityInputs) -> float:
    _check(inputs)
    pct_difficult = 100.0 * inputs.n_difficult_words / inputs.n_words
    return 0.1579 * pct_difficult + 0.0496 * (inputs.n_words / inputs.n_sentences)


def fre_score(inputs: ReadabilityInputs) -> float:
    _check(inputs)
    syllable_base = inputs.n_words if inputs.n_alpha_words is None else inputs.n_alpha_words
    if syllable_base < 1:
        raise EmptyTextError("no alphabetic words for the syllable ratio")
    return 206.835 - 1.015 * (inputs.n_words / inputs.n_sentences) - 84.6 * (inputs.n_syllables / syllable_base)


def readability_inputs(analyzed: AnalyzedText, easy_words: AbstractSet[str]) -> ReadabilityInputs:
    words = analyzed.word_tokens
    alpha = [t for t in words if t.is_alpha_word]
    return ReadabilityInputs(
        n_words=len(words),
        n_sentences=analyzed.sentence_count,
        n_syllables=sum(t.syllables for t in alpha),
        n_difficult_words=sum(1 for t in alpha if is_difficult_word(t, easy_words)),
        n_alpha_words=len(alpha),
    )


def readability_scores(analyzed: AnalyzedText, easy_words: AbstractSet[str]) -> ReadabilityScores:
    inputs = readability_inputs(analyzed, easy_words)
    return ReadabilityScores(ndc=ndc_score(inputs), fre=fre_score(inputs))

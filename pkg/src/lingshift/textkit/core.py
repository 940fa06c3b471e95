from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from functools import lru_cache
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from ..errors import EmptyTextError, InvalidResourceError
from .markup import MATH_PLACEHOLDER
from .syllables import count_syllables
from .tagger import BrillTagger


class WordClass(str, Enum):
    CONTENT = "Content"
    FUNCTION = "Function"
    OTHER = "Other"


CONTENT_TAGS = frozenset({"NN", "NNS", "NNP", "NNPS", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "JJ", "JJR", "JJS", "RB", "RBR", "RBS"})
NOUN_TAGS = frozenset({"NN", "NNS", "NNP", "NNPS"})
PRONOUN_TAGS = frozenset({"PRP", "PRP$", "WP", "WP$", "EX"})
TERMINALS = frozenset({".", "!", "?"})


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    normalized: str
    pos: str
    syllables: int
    char_length: int
    word_class: WordClass

    @property
    def is_word(self) -> bool:
        """Occupies a word slot: has a letter or digit (MATHEXPR included)."""
        return _has_alnum(self.surface)

    @property
    def is_math(self) -> bool:
        return self.surface == MATH_PLACEHOLDER

    @property
    def is_alpha_word(self) -> bool:
        """A word with letters that is not a math placeholder."""
        return self.surface != MATH_PLACEHOLDER and _has_alpha(self.surface)

    @property
    def is_lexical(self) -> bool:
        """Counts as vocabulary: a word token other than a math placeholder."""
        return self.surface != MATH_PLACEHOLDER and _has_alnum(self.surface)


@lru_cache(maxsize=65536)
def _has_alnum(s: str) -> bool:
    return any(c.isalnum() for c in s)


@lru_cache(maxsize=65536)
def _has_alpha(s: str) -> bool:
    return any(c.isalpha() for c in s)


@dataclass(frozen=True)
class AnalyzedText:
    sentences: tuple[tuple[Token, ...], ...]
    tokens: tuple[Token, ...]

    @property
    def word_tokens(self) -> list[Token]:
        return [t for t in self.tokens if t.is_word]

    @property
    def word_count(self) -> int:
        return sum(1 for t in self.tokens if _has_alnum(t.surface))

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)


@dataclass(frozen=True)
class Lexicons:
    tagger: BrillTagger
    function_words: frozenset[str]
    syllable_exceptions: dict[str, int]
    abbreviations: frozenset[str]
    compound_words: frozenset[str] = frozenset()
    # sensitivity switches for undocumented tokenizer behaviour
    keep_hyphenated: bool = True
    # (surface, tag) -> Token; tokens are immutable so they can be shared
    token_cache: dict = field(default_factory=dict, compare=False, repr=False)


def read_word_list(path: Path) -> list[str]:
    """One entry per line; blank lines and '#' comments skipped."""
    words = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.append(line.lower())
    return words


def read_syllable_exceptions(path: Path) -> dict[str, int]:
    out: dict[str, int] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["word", "syllables"]:
            raise InvalidResourceError("header must be 'word,syllables'", path=path, line=1)
        for lineno, row in enumerate(reader, 2):
            if len(row) != 2 or not row[1].strip().isdigit():
                raise InvalidResourceError("expected 'word,syllables'", path=path, line=lineno)
            out[row[0].strip().lower()] = int(row[1])
    return out


_ABBREV_RE_CACHE: dict[frozenset[str], re.Pattern] = {}


def _token_pattern(abbreviations: frozenset[str], keep_hyphenated: bool) -> re.Pattern:
    key = abbreviations | ({"\0hyphen"} if keep_hyphenated else set())
    pat = _ABBREV_RE_CACHE.get(key)
    if pat is None:
        # multiword abbreviations ("et al.") tokenize as their parts; the last part carries the period
        singles = sorted({a.split()[-1] for a in abbreviations}, key=len, reverse=True)
        abbrev = "|".join(re.escape(a) for a in singles)
        joiner = r"[-./]" if keep_hyphenated else r"[./]"
        pat = re.compile(
            rf"{MATH_PLACEHOLDER}(?![\w-])"
            rf"|(?i:(?<![\w.])(?:{abbrev}))(?!\w)"
            rf"|[A-Z]\.(?=\s+[A-Z])"
            rf"|\d+(?:[.,:/]\d+)*(?:%|(?!\w))(?:-\w+)*"
            rf"|\w+(?:{joiner}\w+)*"
            r"|['\u2019](?:s|re|ve|ll|d|m|t)\b"
            r"|\.\.\.|--|[^\w\s]"
        )
        _ABBREV_RE_CACHE[key] = pat
    return pat


def tokenize(text: str, lexicons: Lexicons) -> list[str]:
    return _token_pattern(lexicons.abbreviations, lexicons.keep_hyphenated).findall(text)


def _is_abbreviation(surface: str, prev: str | None, nxt: str | None, lexicons: Lexicons) -> bool:
    low = surface.lower()
    if not low.endswith(".") or low == ".":
        return False
    if low in lexicons.abbreviations:
        return True
    if len(surface) == 2 and surface[0].isupper():
        # initials: "J. Smith" but not "... model A. We"
        return prev is None or prev[:1].isupper() or (len(prev) == 2 and prev.endswith("."))
    return False


_CLOSERS = frozenset({")", "]", '"', "''", "\u201d", "\u2019"})


def split_sentences(surfaces: Sequence[str], lexicons: Lexicons) -> list[list[str]]:
    """Group tokens into sentences at terminal punctuation.

    A word-final period that is not an abbreviation or an initial is split off
    into its own token before the boundary is placed.
    """
    sentences: list[list[str]] = []
    current: list[str] = []
    n = len(surfaces)
    i = 0
    while i < n:
        tok = surfaces[i]
        boundary = False
        if tok in TERMINALS or tok == "...":
            current.append(tok)
            boundary = True
        elif tok.endswith(".") and len(tok) > 1:
            prev = surfaces[i - 1] if i > 0 else None
            nxt = surfaces[i + 1] if i + 1 < n else None
            if _is_abbreviation(tok, prev, nxt, lexicons):
                current.append(tok)
                # a clause-final "etc." still ends the sentence before a capital
                boundary = nxt is not None and nxt[:1].isupper() and tok.lower() in {"etc.", "resp."}
            else:
                current.extend([tok[:-1], "."])
                boundary = True
        else:
            current.append(tok)
        i += 1
        if boundary:
            while i < n and surfaces[i] in _CLOSERS:
                current.append(surfaces[i])
                i += 1
            sentences.append(current)
            current = []
    if current:
        if sentences and not any(any(c.isalnum() for c in t) for t in current):
            sentences[-1].extend(current)
        else:
            sentences.append(current)
    return sentences


def _word_class(normalized: str, pos: str, lexicons: Lexicons, surface: str) -> WordClass:
    if surface == MATH_PLACEHOLDER or not any(c.isalpha() for c in surface):
        return WordClass.OTHER
    if normalized in lexicons.function_words and pos not in NOUN_TAGS:
        return WordClass.FUNCTION
    if pos in CONTENT_TAGS:
        return WordClass.CONTENT
    return WordClass.OTHER


def _make_token(surface: str, pos: str, lexicons: Lexicons) -> Token:
    key = (surface, pos)
    tok = lexicons.token_cache.get(key)
    if tok is None:
        if len(lexicons.token_cache) > 200_000:
            lexicons.token_cache.clear()
        tok = lexicons.token_cache[key] = _build_token(surface, pos, lexicons)
    return tok


def _build_token(surface: str, pos: str, lexicons: Lexicons) -> Token:
    normalized = surface.casefold()
    if surface == MATH_PLACEHOLDER:
        syllables = 0
        pos = "SYM"
    else:
        syllables = count_syllables(normalized, lexicons.syllable_exceptions, lexicons.compound_words) if any(c.isalpha() for c in surface) else 0
    return Token(
        surface=surface,
        normalized=normalized,
        pos=pos,
        syllables=syllables,
        char_length=len(surface),
        word_class=_word_class(normalized, pos, lexicons, surface),
    )


def tag_pos(words: Sequence[str], lexicons: Lexicons) -> list[str]:
    """Penn tag for each surface string of one sentence."""
    # tag math placeholders as nouns for context, report them as SYM afterwards
    surfaces = [MATH_PLACEHOLDER.lower() if w == MATH_PLACEHOLDER else w for w in words]
    tags = lexicons.tagger.tag(surfaces)
    return ["SYM" if w == MATH_PLACEHOLDER else t for w, t in zip(words, tags)]


def analyze_text(clean_text: str, lexicons: Lexicons) -> AnalyzedText:
    """Segment, tokenize, tag and classify markup-free text."""
    if not clean_text or not clean_text.strip():
        raise EmptyTextError("text is empty")
    surfaces = tokenize(clean_text, lexicons)
    if not surfaces:
        raise EmptyTextError("text has no tokens")
    sentences = []
    for sent in split_sentences(surfaces, lexicons):
        tags = tag_pos(sent, lexicons)
        sentences.append(tuple(_make_token(s, t, lexicons) for s, t in zip(sent, tags)))
    tokens = tuple(tok for sent in sentences for tok in sent)
    return AnalyzedText(sentences=tuple(sentences), tokens=tokens)


def concat(texts: Iterable[AnalyzedText]) -> AnalyzedText:
    sentences = tuple(s for t in texts for s in t.sentences)
    return AnalyzedText(sentences=sentences, tokens=tuple(tok for s in sentences for tok in s))

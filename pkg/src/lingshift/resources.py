"""Locating and loading the bundled (or user-supplied) linguistic resources."""
from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path

from .textkit.tagger import load_context_rules
from .textkit import BrillTagger, Lexicons, read_syllable_exceptions, read_word_list

BUNDLED_DIR = Path(__file__).resolve().parent / "data"
ENV_VAR = "LINGSHIFT_RESOURCES"

DEFAULT_FILES = {
    "brill_lexicon": "brill_lexicon.txt",
    "brill_morphology": "brill_morphology.txt",
    "brill_context": "brill_context.txt",
    "pos_overrides": "pos_overrides.txt",
    "context_extra": "context_extra.txt",
    "function_words": "function_words.txt",
    "syllable_exceptions": "syllable_exceptions.csv",
    "abbreviations": "abbreviations.txt",
    "connectives": "connectives.csv",
    "easy_words": "dale_chall_easy_words.txt",
    "sentiment_lexicon": "sentiment_lexicon.csv",
    "negations": "negations.csv",
    "intensifiers": "intensifiers.csv",
    "llm_adjectives": "llm_adjectives.txt",
    "llm_adverbs": "llm_adverbs.txt",
    "country_groups": "country_groups.csv",
}


def resource_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else BUNDLED_DIR


def resource_path(name: str, overrides: dict[str, str | Path] | None = None) -> Path:
    if overrides and overrides.get(name):
        return Path(overrides[name])
    return resource_dir() / DEFAULT_FILES[name]


def load_lexicons(overrides: dict[str, str | Path] | None = None, keep_hyphenated: bool = True) -> Lexicons:
    pos_overrides = resource_path("pos_overrides", overrides)
    tagger = BrillTagger.from_files(
        resource_path("brill_lexicon", overrides),
        resource_path("brill_morphology", overrides),
        resource_path("brill_context", overrides),
        overrides=pos_overrides if pos_overrides.exists() else None,
    )
    extra = resource_path("context_extra", overrides)
    if extra.exists():
        tagger = BrillTagger(tagger.lexicon, tagger.morphology, tagger.context + load_context_rules(extra))
    return Lexicons(
        tagger=tagger,
        function_words=frozenset(read_word_list(resource_path("function_words", overrides))),
        syllable_exceptions=read_syllable_exceptions(resource_path("syllable_exceptions", overrides)),
        abbreviations=frozenset(read_word_list(resource_path("abbreviations", overrides))),
        compound_words=frozenset(read_word_list(resource_path("easy_words", overrides))),
        keep_hyphenated=keep_hyphenated,
    )


@lru_cache(maxsize=4)
def _cached_default_lexicons(directory: str) -> Lexicons:
    return load_lexicons()


def default_lexicons() -> Lexicons:
    """Lexicons from the active resource directory, loaded once per process."""
    return _cached_default_lexicons(str(resource_dir()))

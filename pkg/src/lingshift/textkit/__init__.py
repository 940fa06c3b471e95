from .core import (
    AnalyzedText,
    Lexicons,
    Token,
    WordClass,
    analyze_text,
    concat,
    read_syllable_exceptions,
    read_word_list,
    split_sentences,
    tag_pos,
    tokenize,
)
from .markup import MATH_PLACEHOLDER, strip_markup
from .syllables import count_syllables
from .tagger import BrillTagger

__all__ = [
    "AnalyzedText",
    "BrillTagger",
    "Lexicons",
    "MATH_PLACEHOLDER",
    "Token",
    "WordClass",
    "analyze_text",
    "concat",
    "count_syllables",
    "read_syllable_exceptions",
    "read_word_list",
    "split_sentences",
    "strip_markup",
    "tag_pos",
    "tokenize",
]

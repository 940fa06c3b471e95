"""The full per-document metric battery."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from . import resources as res
from .cohesion import ConnectiveLexicon, cohesion_profile, load_connectives, load_vectors
from .errors import EmptyTextError
from .lexical import Norms, lexical_profile, load_norms
from .markers import LLMWordList, llm_marker_profile, load_llm_words
from .readability import fre_score, load_easy_words, ndc_score, readability_inputs
from .sentiment import SentimentLexicon, load_sentiment_lexicon, sentiment_scores
from .syntax import syntactic_profile
from .textkit import AnalyzedText, Lexicons, analyze_text, strip_markup

# feature-store column order; follows the significance table, then the marker columns
METRIC_COLUMNS = (
    "avg_word_length",
    "word_count",
    "content_tokens",
    "content_types",
    "function_tokens",
    "function_types",
    "lexical_density_types",
    "lexical_density_tokens",
    "mattr50",
    "range_log_aw",
    "frequency_log_aw",
    "sentence_count",
    "tunit_count",
    "clause_count",
    "mlc",
    "mls",
    "mltu",
    "tus",
    "adjacent_overlap_all",
    "adjacent_overlap_argument",
    "lsa_all_sent",
    "basic_connectives",
    "order",
    "reason_and_purpose",
    "all_logical",
    "all_temporal",
    "fre",
    "ndc",
    "polarity",
    "objectivity",
    "llm_adj_count",
    "llm_adv_count",
    "llm_adj_rate",
    "llm_adv_rate",
)

METRIC_UNITS = {
    "avg_word_length": "characters per word",
    "word_count": "words",
    "content_tokens": "tokens",
    "content_types": "types",
    "function_tokens": "tokens",
    "function_types": "types",
    "lexical_density_types": "ratio",
    "lexical_density_tokens": "ratio",
    "mattr50": "ratio",
    "range_log_aw": "log10",
    "frequency_log_aw": "log10",
    "sentence_count": "sentences",
    "tunit_count": "T-units",
    "clause_count": "clauses",
    "mlc": "words per clause",
    "mls": "words per sentence",
    "mltu": "words per T-unit",
    "tus": "T-units per sentence",
    "adjacent_overlap_all": "ratio",
    "adjacent_overlap_argument": "ratio",
    "lsa_all_sent": "cosine",
    "basic_connectives": "matches per word",
    "order": "matches per word",
    "reason_and_purpose": "matches per word",
    "all_logical": "matches per word",
    "all_temporal": "matches per word",
    "fre": "score",
    "ndc": "score",
    "polarity": "score in [-1, 1]",
    "objectivity": "score in [0, 1]",
    "llm_adj_count": "tokens",
    "llm_adv_count": "tokens",
    "llm_adj_rate": "per 1000 words",
    "llm_adv_rate": "per 1000 words",
}


@dataclass(frozen=True)
class AnalysisResources:
    lexicons: Lexicons
    easy_words: frozenset[str]
    connectives: ConnectiveLexicon
    sentiment: SentimentLexicon
    llm_words: LLMWordList
    norms: Norms | None = None
    vectors: Mapping | None = None
    allow_zero_tunits: bool = False
    symmetric_overlap: bool = False
    mattr_window: int = 50
    paths: dict = field(default_factory=dict)

    @classmethod
    def load(
        cls,
        overrides: Mapping[str, str | Path] | None = None,
        norms: str | Path | None = None,
        vectors: str | Path | None = None,
        **switches,
    ) -> "AnalysisResources":
        overrides = dict(overrides or {})
        keep_hyphenated = switches.pop("keep_hyphenated", True)
        if not overrides and keep_hyphenated:
            lexicons = res.default_lexicons()
        else:
            lexicons = res.load_lexicons(overrides, keep_hyphenated=keep_hyphenated)
        path = lambda name: res.resource_path(name, overrides)  # noqa: E731
        return cls(
            lexicons=lexicons,
            easy_words=load_easy_words(path("easy_words")),
            connectives=load_connectives(path("connectives")),
            sentiment=load_sentiment_lexicon(path("sentiment_lexicon"), path("negations"), path("intensifiers")),
            llm_words=load_llm_words(path("llm_adjectives"), path("llm_adverbs")),
            norms=load_norms(norms) if norms else None,
            vectors=load_vectors(vectors) if vectors else None,
            paths={"norms": str(norms) if norms else None, "vectors": str(vectors) if vectors else None},
            **switches,
        )


def analyze_raw(raw_text: str, resources: AnalysisResources) -> AnalyzedText:
    return analyze_text(strip_markup(raw_text), resources.lexicons)


def style_profile(analyzed: AnalyzedText, resources: AnalysisResources) -> dict[str, float | int | None]:
    """Every metric column for one analyzed document; undefined values are None."""
    if analyzed.word_count == 0:
        raise EmptyTextError("no word tokens")
    lex = lexical_profile(analyzed, resources.norms, resources.mattr_window)
    syn = syntactic_profile(analyzed, resources.allow_zero_tunits)
    coh = cohesion_profile(analyzed, resources.connectives, resources.vectors, resources.symmetric_overlap)
    inputs = readability_inputs(analyzed, resources.easy_words)
    try:
        fre = fre_score(inputs)
    except EmptyTextError:
        fre = None
    senti = sentiment_scores(analyzed, resources.sentiment)
    mk = llm_marker_profile(analyzed, resources.llm_words)
    return {
        "avg_word_length": lex.avg_word_length,
        "word_count": lex.word_count,
        "content_tokens": lex.content_tokens,
        "content_types": lex.content_types,
        "function_tokens": lex.function_tokens,
        "function_types": lex.function_types,
        "lexical_density_types": lex.lexical_density_types,
        "lexical_density_tokens": lex.lexical_density_tokens,
        "mattr50": lex.mattr50,
        "range_log_aw": lex.range_log_aw,
        "frequency_log_aw": lex.frequency_log_aw,
        "sentence_count": syn.sentence_count,
        "tunit_count": syn.tunit_count,
        "clause_count": syn.clause_count,
        "mlc": syn.mlc,
        "mls": syn.mls,
        "mltu": syn.mltu,
        "tus": syn.tus,
        "adjacent_overlap_all": coh.adjacent_overlap_all,
        "adjacent_overlap_argument": coh.adjacent_overlap_argument,
        "lsa_all_sent": coh.lsa_all_sent,
        "basic_connectives": coh.basic_connectives,
        "order": coh.order,
        "reason_and_purpose": coh.reason_and_purpose,
        "all_logical": coh.all_logical,
        "all_temporal": coh.all_temporal,
        "fre": fre,
        "ndc": ndc_score(inputs),
        "polarity": senti.polarity,
        "objectivity": senti.objectivity,
        "llm_adj_count": mk.llm_adj_count,
        "llm_adv_count": mk.llm_adv_count,
        "llm_adj_rate": mk.llm_adj_rate,
        "llm_adv_rate": mk.llm_adv_rate,
    }


def analyze_document(raw_text: str, resources: AnalysisResources) -> dict[str, float | int | None]:
    return style_profile(analyze_raw(raw_text, resources), resources)

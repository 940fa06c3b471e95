"""Clause and T-unit detection from POS tags, plus MLS / MLC / MLTU / TU-S."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyTextError
from .textkit import AnalyzedText, Token

FINITE_TAGS = frozenset({"VBZ", "VBP", "VBD", "MD"})
# non-finite material that continues an auxiliary chain ("has been shown", "can also be")
VERB_CHAIN_TAGS = frozenset({"VB", "VBG", "VBN", "RB", "RBR", "RBS", "TO"})
# words that open a dependent clause; coordination after them is not a T-unit join
SUBORDINATORS = frozenset({
    "that", "which", "who", "whom", "whose", "because", "although", "though", "while",
    "whereas", "if", "unless", "since", "when", "whenever", "where", "whether", "until",
    "after", "before", "once", "as", "so",
})
# a right conjunct containing one of these has its own subject
SUBJECT_TAGS = frozenset({"NN", "NNS", "NNP", "NNPS", "PRP", "EX", "DT", "CD", "SYM", "JJ", "JJR", "JJS", "PRP$", "POS"})
# adverbs that coordinate clauses after a comma ("..., yet many remain")
COMMA_COORDINATORS = frozenset({"yet", "so"})


@dataclass(frozen=True)
class SyntacticProfile:
    sentence_count: int
    clause_count: int
    tunit_count: int
    mls: float
    mlc: float
    mltu: float | None
    tus: float


def _finite_groups(tokens: Sequence[Token]) -> list[int]:
    """Start index of each finite verb group; auxiliary chains count once."""
    starts = []
    in_group = False
    for i, tok in enumerate(tokens):
        if in_group and tok.pos in VERB_CHAIN_TAGS:
            continue
        in_group = False
        if tok.pos in FINITE_TAGS:
            starts.append(i)
            in_group = True
    return starts


def count_clauses(tokens: Sequence[Token]) -> int:
    """Finite verb groups in a sentence, never fewer than one."""
    return max(len(_finite_groups(tokens)), 1)


def _is_join(tokens: Sequence[Token], at: int, segment_start: int, groups: list[int]) -> bool:
    # left side: a finite verb after the segment start and after the last subordinator
    left_floor = segment_start
    for j in range(segment_start, at):
        if tokens[j].normalized in SUBORDINATORS and tokens[j].pos in ("IN", "WDT", "WP", "WRB", "RB"):
            left_floor = j
    if not any(left_floor <= g < at for g in groups):
        return False
    # right side: a subject precedes the next finite verb, so it is a clause and not a bare VP
    right = [g for g in groups if g > at]
    if not right:
        return False
    nxt = right[0]
    between = tokens[at + 1:nxt]
    if any(t.pos == "CC" or t.surface == ";" for t in between):
        return False
    return any(t.pos in SUBJECT_TAGS for t in between)


def count_tunits(tokens: Sequence[Token], allow_zero: bool = False) -> int:
    """1 + coordinations/semicolons joining two independent clauses.

    With ``allow_zero`` a sentence without any finite verb has no T-unit.
    """
    groups = _finite_groups(tokens)
    if not groups:
        return 0 if allow_zero else 1
    count = 1
    segment_start = 0
    for i, tok in enumerate(tokens):
        comma_coord = tok.normalized in COMMA_COORDINATORS and i > 0 and tokens[i - 1].surface == ","
        if tok.pos == "CC" or tok.surface == ";" or comma_coord:
            if _is_join(tokens, i, segment_start, groups):
                count += 1
                segment_start = i + 1
    return count


def syntactic_profile(analyzed: AnalyzedText, allow_zero_tunits: bool = False) -> SyntacticProfile:
    if analyzed.sentence_count == 0:
        raise EmptyTextError("no sentences")
    words = analyzed.word_count
    if words == 0:
        raise EmptyTextError("no word tokens")
    sentences = analyzed.sentence_count
    clauses = sum(count_clauses(s) for s in analyzed.sentences)
    tunits = sum(count_tunits(s, allow_zero_tunits) for s in analyzed.sentences)
    return SyntacticProfile(
        sentence_count=sentences,
        clause_count=clauses,
        tunit_count=tunits,
        mls=words / sentences,
        mlc=words / clauses,
        mltu=words / tunits if tunits else None,
        tus=tunits / sentences,
    )

"""Lexicon + rule part-of-speech tagger (Brill-style, Penn Treebank tags).

Known words get their lexicon tag; unknown words get a default tag refined by
suffix/prefix/neighbour rules; then contextual rules rewrite tags left to right.
"""
from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import InvalidResourceError

_NUMBER = re.compile(r"^[-+]?(\d+([.,/:]\d+)*|\d*\.\d+)(%|s|th|st|nd|rd)?$")
_PUNCT_TAGS = {
    ".": ".", "!": ".", "?": ".",
    ",": ",", ";": ":", ":": ":", "...": ":", "--": ":",
    "(": "(", "[": "(", "{": "(",
    ")": ")", "]": ")", "}": ")",
    '"': "''", "''": "''", "``": "``", "'": "''", "“": "``", "”": "''",
    "$": "$", "#": "#", "%": "NN",
}
# tags that stand for word classes whose members can be added to without limit
OPEN_CLASS_TAGS = frozenset({"NN", "NNS", "NNP", "NNPS", "JJ", "JJR", "JJS", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "RB", "RBR", "RBS", "FW"})


def _read_rule_lines(path: Path):
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith(";;;"):
            continue
        yield lineno, line.split()


def load_lexicon(path: Path, overrides: Path | None = None) -> dict[str, str]:
    lexicon: dict[str, str] = {}
    for source in (path, overrides):
        if source is None:
            continue
        for lineno, parts in _read_rule_lines(source):
            if len(parts) != 2:
                raise InvalidResourceError("expected 'word TAG'", path=source, line=lineno)
            lexicon[parts[0]] = parts[1]
    return lexicon


@dataclass(frozen=True)
class MorphRule:
    from_tag: str | None  # None: applies regardless of the current tag
    command: str  # hassuf, deletesuf, addsuf, haspref, deletepref, addpref, char, goodleft, goodright
    affix: str
    to_tag: str


@dataclass(frozen=True)
class ContextRule:
    from_tag: str
    to_tag: str
    template: str
    args: tuple[str, ...]


_MORPH_COMMANDS = {"hassuf", "deletesuf", "addsuf", "haspref", "deletepref", "addpref", "char", "goodleft", "goodright"}


def load_morphology(path: Path) -> list[MorphRule]:
    rules = []
    for lineno, parts in _read_rule_lines(path):
        for i, token in enumerate(parts):
            cmd = token[1:] if token.startswith("f") and token[1:] in _MORPH_COMMANDS else token
            if cmd in _MORPH_COMMANDS:
                break
        else:
            raise InvalidResourceError("no morphology command found", path=path, line=lineno)
        fixed_from = token != cmd
        if fixed_from:
            from_tag, affix = parts[0], parts[1]
        else:
            from_tag, affix = None, parts[0]
        # numeric affix length sits between the command and the target tag
        rest = parts[i + 1:]
        if rest and rest[0].isdigit():
            rest = rest[1:]
        if not rest:
            raise InvalidResourceError("missing target tag", path=path, line=lineno)
        rules.append(MorphRule(from_tag, cmd, affix, rest[0]))
    return rules


def load_context_rules(path: Path) -> list[ContextRule]:
    rules = []
    for lineno, parts in _read_rule_lines(path):
        if len(parts) < 4:
            raise InvalidResourceError("expected 'FROM TO TEMPLATE ARGS'", path=path, line=lineno)
        rules.append(ContextRule(parts[0], parts[1], parts[2], tuple(parts[3:])))
    return rules


_BOUNDARY = "STAART"
_PAD = 3


def _compile(rule: ContextRule):
    """Predicate over (padded words, padded tags, index) for one contextual rule."""
    a = rule.args
    a0 = a[0] if a else None
    a1 = a[1] if len(a) > 1 else None
    table = {
        "PREVTAG": lambda W, T, i: T[i - 1] == a0,
        "NEXTTAG": lambda W, T, i: T[i + 1] == a0,
        "PREV2TAG": lambda W, T, i: T[i - 2] == a0,
        "NEXT2TAG": lambda W, T, i: T[i + 2] == a0,
        "PREV1OR2TAG": lambda W, T, i: T[i - 1] == a0 or T[i - 2] == a0,
        "NEXT1OR2TAG": lambda W, T, i: T[i + 1] == a0 or T[i + 2] == a0,
        "PREV1OR2OR3TAG": lambda W, T, i: a0 in (T[i - 1], T[i - 2], T[i - 3]),
        "NEXT1OR2OR3TAG": lambda W, T, i: a0 in (T[i + 1], T[i + 2], T[i + 3]),
        "SURROUNDTAG": lambda W, T, i: T[i - 1] == a0 and T[i + 1] == a1,
        "PREVBIGRAM": lambda W, T, i: T[i - 2] == a0 and T[i - 1] == a1,
        "NEXTBIGRAM": lambda W, T, i: T[i + 1] == a0 and T[i + 2] == a1,
        "CURWD": lambda W, T, i: W[i] == a0,
        "PREVWD": lambda W, T, i: W[i - 1] == a0,
        "NEXTWD": lambda W, T, i: W[i + 1] == a0,
        "PREV1OR2WD": lambda W, T, i: W[i - 1] == a0 or W[i - 2] == a0,
        "NEXT1OR2WD": lambda W, T, i: W[i + 1] == a0 or W[i + 2] == a0,
        "WDPREVTAG": lambda W, T, i: T[i - 1] == a0 and W[i] == a1,
        "WDNEXTTAG": lambda W, T, i: W[i] == a0 and T[i + 1] == a1,
        "LBIGRAM": lambda W, T, i: W[i - 1] == a0 and W[i] == a1,
        "RBIGRAM": lambda W, T, i: W[i] == a0 and W[i + 1] == a1,
        "WDAND2AFT": lambda W, T, i: W[i] == a0 and W[i + 2] == a1,
        "WDAND2BFR": lambda W, T, i: W[i - 2] == a0 and W[i] == a1,
        "WDAND2TAGAFT": lambda W, T, i: W[i] == a0 and T[i + 2] == a1,
        "WDAND2TAGBFR": lambda W, T, i: T[i - 2] == a0 and W[i] == a1,
    }
    return table.get(rule.template, lambda W, T, i: False)


@dataclass
class BrillTagger:
    lexicon: dict[str, str]
    morphology: list[MorphRule] = field(default_factory=list)
    context: list[ContextRule] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._by_tag: dict[str, list[int]] = {}
        for idx, rule in enumerate(self.context):
            self._by_tag.setdefault(rule.from_tag, []).append(idx)
        self._checks = [_compile(rule) for rule in self.context]

    @classmethod
    def from_files(cls, lexicon: Path, morphology: Path, context: Path, overrides: Path | None = None) -> "BrillTagger":
        return cls(load_lexicon(lexicon, overrides), load_morphology(morphology), load_context_rules(context))

    def _known(self, word: str) -> bool:
        return word in self.lexicon or word.lower() in self.lexicon

    def _lookup(self, word: str) -> str | None:
        tag = self.lexicon.get(word)
        if tag is None:
            tag = self.lexicon.get(word.lower())
        return tag

    def _initial(self, words: list[str], i: int) -> str:
        word = words[i]
        if word in _PUNCT_TAGS:
            return _PUNCT_TAGS[word]
        if _NUMBER.match(word):
            return "CD"
        tag = self._lookup(word)
        if tag is not None:
            return tag
        if "-" in word:
            # hyphenated compounds: tag from the head (last part) when it is known
            head = word.rsplit("-", 1)[-1]
            head_tag = self._lookup(head) if head else None
            if head_tag in ("NN", "NNS", "JJ", "VBN", "VBG"):
                return head_tag if head_tag != "VBG" else "JJ"
        tag = "NNP" if word[:1].isupper() and i > 0 else "NN"
        return self._apply_morphology(word, tag, words, i)

    def _apply_morphology(self, word: str, tag: str, words: list[str], i: int) -> str:
        prev_word = words[i - 1] if i > 0 else _BOUNDARY
        next_word = words[i + 1] if i + 1 < len(words) else _BOUNDARY
        for rule in self.morphology:
            if rule.from_tag is not None and rule.from_tag != tag:
                continue
            cmd, x = rule.command, rule.affix
            hit = False
            if cmd == "hassuf":
                hit = word.endswith(x)
            elif cmd == "deletesuf":
                hit = word.endswith(x) and self._known(word[: -len(x)])
            elif cmd == "addsuf":
                hit = self._known(word + x)
            elif cmd == "haspref":
                hit = word.startswith(x)
            elif cmd == "deletepref":
                hit = word.startswith(x) and self._known(word[len(x):])
            elif cmd == "addpref":
                hit = self._known(x + word)
            elif cmd == "char":
                hit = x in word
            elif cmd == "goodleft":
                hit = prev_word == x
            elif cmd == "goodright":
                hit = next_word == x
            if hit:
                tag = rule.to_tag
        return tag

    def tag(self, words: list[str]) -> list[str]:
        """Tag one sentence given as a list of surface strings."""
        n = len(words)
        pad = [_BOUNDARY] * _PAD
        W = pad + list(words) + pad
        initial = [self._initial(words, i) for i in range(n)]
        T = pad + initial + pad
        checks, context, by_tag = self._checks, self.context, self._by_tag
        for j in range(_PAD, _PAD + n):
            position = -1
            while True:
                candidates = by_tag.get(T[j])
                if not candidates:
                    break
                k = bisect_right(candidates, position)
                fired = False
                for idx in candidates[k:]:
                    if checks[idx](W, T, j):
                        T[j] = context[idx].to_tag
                        position = idx
                        fired = True
                        break
                if not fired:
                    break
        tags = T[_PAD:_PAD + n]
        for i, t in enumerate(tags):
            # closed-class words never become nouns
            if initial[i] in _CLOSED and t in _NOUNS:
                tags[i] = initial[i]
        return _repair(words, tags)


_FINITE = frozenset({"VBZ", "VBP", "VBD", "MD"})
_CLOSED = frozenset({"IN", "CC", "DT", "TO", "PRP", "PRP$", "WDT", "WP", "MD", "EX", "PDT"})
_NOUNS = frozenset({"NN", "NNS", "NNP", "NNPS"})
_SUBORDINATORS = frozenset({"because", "that", "when", "if", "while", "since", "although", "though", "whereas", "unless", "once", "until"})
_SUBJECT_LEFT = frozenset({"PRP", "NNS", "WDT", "WP"})


def _repair(words: list[str], tags: list[str]) -> list[str]:
    """Two consistency fixes the newswire-trained rules miss in academic prose."""
    for i, (w, t) in enumerate(zip(words, tags)):
        # -ing tag on a word without the suffix
        if t == "VBG" and not w.lower().endswith("ing"):
            tags[i] = "VBP" if i > 0 and tags[i - 1] in _SUBJECT_LEFT else "NN"
    # each clause needs a verb: "the method works" rather than two nouns
    starts = [0] + [i + 1 for i, w in enumerate(words) if w.lower() in _SUBORDINATORS and tags[i] == "IN"]
    for a, b in zip(starts, starts[1:] + [len(words)]):
        if _FINITE.intersection(tags[a:b]):
            continue
        for i in range(max(a, 1), b):
            if tags[i] == "NNS" and tags[i - 1] in ("NN", "NNP") and words[i].lower().endswith("s"):
                tags[i] = "VBZ"
                break
    return tags

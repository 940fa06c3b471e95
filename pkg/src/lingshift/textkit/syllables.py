import re
from typing import AbstractSet, Mapping

_VOWEL_GROUPS = re.compile(r"[aeiouy]+")
_LETTERS = re.compile(r"[a-z]+")

# vowel pairs pronounced as two syllables ("ratio", "video", "actual", "fluid")
_HIATUS = re.compile(
    r"(?<![cgqtsxhln])i[ao]"
    r"|(?<=[cgst])io(?=[^n]|$)"
    r"|[^aeiou]eo"
    r"|(?<![gq])u[ao]"
    r"|(?<![gq])ui(?=[dt])"
    r"|iu|ii"
    r"|(?<=[aeiou][a-z])ea$"
    r"|[aeiouy]ing$"
    r"|[aeiou]y[aeiou]"
    r"|ire$"
    r"|(?<=[^aeiou])sms?$|thms?$"
)
_SUFFIXES = ("ness", "less", "ment", "ful", "ly", "some")


def _base_count(word: str) -> int:
    w = word[1:] if word.startswith("y") else word
    count = len(_VOWEL_GROUPS.findall(w)) + len(_HIATUS.findall(w))
    if w.endswith(("que", "ques", "gue", "gues")) and count > 1:
        count -= 1
    elif w.endswith("e") and not w.endswith(("le", "ee", "ye", "oe", "ie")) and count > 1:
        count -= 1
    elif w.endswith("le") and len(w) > 2 and w[-3] in "aeiouy" and count > 1:
        count -= 1
    elif w.endswith("ed") and len(w) > 3 and w[-3] not in "aeiouytd":
        count -= 1
    elif (
        w.endswith("es")
        and len(w) > 3
        and w[-3] not in "aeiouysxz"
        and not w.endswith(("ches", "shes", "ces", "ges"))
    ):
        count -= 1
    return max(count, 1)


def _count_alpha(word: str, exceptions: Mapping[str, int], compounds: AbstractSet[str] = frozenset()) -> int:
    if word in exceptions:
        return exceptions[word]
    if len(word) <= 2:
        return 1
    if compounds:
        # "baseline" = "base" + "line": the first part keeps its silent e
        for cut in range(3, len(word) - 2):
            head, tail = word[:cut], word[cut:]
            if head.endswith("e") and head[-2] not in "aeiouy" and head in compounds and tail in compounds:
                return _count_alpha(head, exceptions) + _count_alpha(tail, exceptions)
    for suffix in _SUFFIXES:
        stem = word[: -len(suffix)]
        # "careful" = "care" + "ful": the stem's silent e survives suffixing
        if word.endswith(suffix) and len(stem) >= 3 and stem.endswith("e") and stem[-2] not in "aeiouyl":
            return _count_alpha(stem, exceptions) + _base_count(suffix)
    return _base_count(word)


def count_syllables(
    word: str,
    exceptions: Mapping[str, int] | None = None,
    compounds: AbstractSet[str] = frozenset(),
) -> int:
    """Syllables in a word token.

    Hyphenated tokens count as the sum of their parts.  Parts without letters
    (numbers, symbols) contribute 0; any part with letters contributes at least 1.
    """
    exceptions = exceptions or {}
    w = word.lower()
    if w in exceptions:
        return exceptions[w]
    if "-" in w:
        return sum(count_syllables(part, exceptions, compounds) for part in w.split("-") if part)
    letters = "".join(_LETTERS.findall(w))
    if not letters:
        return 0
    return _count_alpha(letters, exceptions, compounds)

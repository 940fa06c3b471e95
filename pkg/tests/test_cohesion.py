import itertools

import pytest

from lingshift.cohesion import (
    ConnectiveLexicon,
    adjacent_overlap,
    cohesion_profile,
    connective_counts,
    connective_rates,
    load_connectives,
    load_vectors,
    semantic_overlap,
)
from lingshift.errors import InsufficientSentencesError, InvalidResourceError
from lingshift.resources import resource_path
from lingshift.textkit import WordClass


@pytest.fixture(scope="module")
def connectives():
    return load_connectives(resource_path("connectives"))


def test_identical_sentences_full_overlap(analyze):
    a = analyze("The model learns graphs. The model learns graphs.")
    assert adjacent_overlap(a, "all") == 1.0
    assert semantic_overlap(a) == pytest.approx(1.0)


def test_disjoint_sentences_zero_overlap(analyze):
    assert adjacent_overlap(analyze("Cats purr loudly. Dogs bark often.")) == 0.0


def test_orthogonal_one_word_sentences(analyze):
    assert semantic_overlap(analyze("Cats. Dogs.")) == 0.0


def test_single_sentence_is_insufficient(analyze):
    a = analyze("One sentence only.")
    with pytest.raises(InsufficientSentencesError):
        adjacent_overlap(a)
    with pytest.raises(InsufficientSentencesError):
        semantic_overlap(a)


def test_single_sentence_profile_records_missing(analyze, connectives):
    p = cohesion_profile(analyze("One sentence only."), connectives)
    assert p.adjacent_overlap_all is None and p.lsa_all_sent is None
    assert p.basic_connectives == 0


def test_three_sentence_oracle(analyze):
    a = analyze("The graph model learns sparse codes. Sparse codes help the model. Robust models need data.")
    sets = [{t.normalized for t in s if t.word_class is WordClass.CONTENT} for s in a.sentences]
    expected = sum(len(x & y) / len(x) for x, y in zip(sets, sets[1:])) / 2
    assert adjacent_overlap(a, "all") == pytest.approx(expected, abs=1e-12)


def test_symmetric_switch_uses_union(analyze):
    a = analyze("Graphs help. Graphs help models learn.")
    assert adjacent_overlap(a, "all", symmetric=True) < adjacent_overlap(a, "all")


def test_and_once_in_ten_words(analyze, connectives):
    a = analyze("The model learns sparse codes and the solver finds them")
    assert a.word_count == 10
    assert connective_rates(a, connectives)["basic_connectives"] == pytest.approx(0.1)


def test_no_connectives(analyze, connectives):
    rates = connective_rates(analyze("Graphs matter."), connectives)
    assert all(v == 0 for v in rates.values())


def test_order_multiword(analyze, connectives):
    assert connective_counts(analyze("To begin with, next."), connectives)["order"] == 2


def test_longest_match_wins(analyze):
    lex = ConnectiveLexicon({"order": (("to", "begin", "with"),), "basic_connectives": (("with",),)})
    counts = connective_counts(analyze("To begin with we start."), lex)
    assert counts["order"] == 1 and counts["basic_connectives"] == 0


def test_rates_in_unit_interval(analyze, connectives):
    text = "And so, first, then, because and and."
    assert all(0 <= v <= 1 for v in connective_rates(analyze(text), connectives).values())


def test_bad_connective_category(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("category,expression\nnonsense,and\n")
    with pytest.raises(InvalidResourceError):
        load_connectives(path)


def test_vector_space_overlap(tmp_path, analyze):
    path = tmp_path / "vec.txt"
    path.write_text("cats 1 0\ndogs 0 1\nkittens 1 0\n")
    space = load_vectors(path)
    assert semantic_overlap(analyze("Cats. Kittens."), space) == pytest.approx(1.0)
    assert semantic_overlap(analyze("Cats. Dogs."), space) == pytest.approx(0.0)


def test_overlap_in_range_over_permutations(analyze):
    sentences = ["The model learns.", "The data grows.", "Models need data.", "Growth helps learning."]
    for perm in itertools.permutations(sentences):
        a = analyze(" ".join(perm))
        assert 0 <= adjacent_overlap(a) <= 1
        assert -1 <= semantic_overlap(a) <= 1

import pytest

from lingshift.errors import EmptyTextError, InvalidResourceError
from lingshift.readability import (
    ReadabilityInputs,
    fre_score,
    is_difficult_word,
    load_easy_words,
    ndc_score,
    readability_inputs,
)
from lingshift.resources import resource_path


@pytest.fixture(scope="module")
def easy():
    return load_easy_words(resource_path("easy_words"))


def test_ndc_example():
    assert ndc_score(ReadabilityInputs(100, 5, 150, 10)) == pytest.approx(2.571, abs=1e-12)


def test_ndc_boundary():
    assert ndc_score(ReadabilityInputs(1, 1, 1, 0)) == pytest.approx(0.0496, abs=1e-12)


def test_fre_example():
    assert fre_score(ReadabilityInputs(100, 5, 150, 0)) == pytest.approx(59.635, abs=1e-9)


def test_fre_boundary():
    assert fre_score(ReadabilityInputs(1, 1, 1, 0)) == pytest.approx(121.22, abs=1e-9)


@pytest.mark.parametrize("inputs", [ReadabilityInputs(0, 1, 0, 0), ReadabilityInputs(5, 0, 5, 0)])
def test_zero_denominators(inputs):
    with pytest.raises(EmptyTextError):
        ndc_score(inputs)
    with pytest.raises(EmptyTextError):
        fre_score(inputs)


def test_listed_word_is_easy(easy):
    assert not is_difficult_word("the", easy)


def test_rare_word_is_difficult(easy):
    assert is_difficult_word("heteroscedasticity", easy)


def test_empty_list_rejected():
    with pytest.raises(InvalidResourceError):
        is_difficult_word("the", frozenset())


def test_inflection_pairs(fixtures_dir, easy):
    lines = (fixtures_dir / "inflections.tsv").read_text().splitlines()[1:]
    pairs = [line.split("\t") for line in lines]
    assert len(pairs) == 50
    for inflected, base in pairs:
        assert base in easy and inflected not in easy
        assert not is_difficult_word(inflected, easy), inflected


def test_running_with_run_listed():
    assert not is_difficult_word("running", frozenset({"run"}))


def test_numbers_and_math_never_difficult(analyze, easy):
    a = analyze("We use 2048 MATHEXPR samples.")
    flags = {t.surface: is_difficult_word(t, easy) for t in a.word_tokens}
    assert flags["2048"] is False and flags["MATHEXPR"] is False


def test_inputs_from_text(analyze, easy):
    inputs = readability_inputs(analyze("The cat sat. The dog ran."), easy)
    assert (inputs.n_words, inputs.n_sentences, inputs.n_difficult_words) == (6, 2, 0)
    assert inputs.n_syllables == 6

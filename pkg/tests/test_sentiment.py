import pytest

from lingshift.errors import InvalidResourceError
from lingshift.resources import resource_path
from lingshift.sentiment import SentimentLexicon, load_sentiment_lexicon, sentiment_scores


@pytest.fixture(scope="module")
def toy():
    return SentimentLexicon(
        {("excellent", "JJ"): (0.8, 0.9), ("poor", ""): (-0.4, 0.6)},
        negations=frozenset({"not"}),
        intensifiers={"very": 1.3},
    )


def test_no_matches(analyze, toy):
    s = sentiment_scores(analyze("The graph has edges."), toy)
    assert (s.polarity, s.subjectivity, s.objectivity) == (0.0, 0.0, 1.0)


def test_single_entry(analyze, toy):
    s = sentiment_scores(analyze("The results are excellent."), toy)
    assert (s.polarity, s.subjectivity) == pytest.approx((0.8, 0.9))
    assert s.objectivity == pytest.approx(0.1)


def test_negation_flips(analyze, toy):
    assert sentiment_scores(analyze("The results are not excellent."), toy).polarity == pytest.approx(-0.8)


def test_intensifier_scales_and_clamps(analyze, toy):
    assert sentiment_scores(analyze("The fit is very poor."), toy).polarity == pytest.approx(-0.52)
    assert sentiment_scores(analyze("The fit is very excellent."), toy).polarity == 1.0


def test_document_mean_over_matched_sentences(analyze, toy):
    s = sentiment_scores(analyze("Results are excellent. Graphs exist. The fit is poor."), toy)
    assert s.polarity == pytest.approx((0.8 - 0.4) / 2)


def test_empty_lexicon():
    with pytest.raises(InvalidResourceError):
        SentimentLexicon({})


def test_bundled_lexicon_ranges(analyze):
    lex = load_sentiment_lexicon(resource_path("sentiment_lexicon"), resource_path("negations"), resource_path("intensifiers"))
    s = sentiment_scores(analyze("This is a remarkably good and useful method. It is not bad."), lex)
    assert -1 <= s.polarity <= 1 and 0 <= s.objectivity <= 1
    assert s.polarity > 0


def test_out_of_range_score(tmp_path):
    path = tmp_path / "lex.csv"
    path.write_text("word,pos,polarity,subjectivity\ngood,JJ,1.5,0.5\n")
    with pytest.raises(InvalidResourceError) as err:
        load_sentiment_lexicon(path)
    assert err.value.details["line"] == 2

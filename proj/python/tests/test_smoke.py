import json
import math

import pytest

import gecrank

SOURCES = ["He play a tennis", "She go to school"]
SYSTEMS = [
    ("A", ["He plays a tennis", "She goes to school"]),
    ("B", ["He play tennis", "She go to the school"]),
    ("C", ["He plays tennis", "She goes to school"]),
]
REFERENCES = [["He plays tennis"], ["She goes to school"]]


def test_extract_and_apply_edits():
    src = "He play a tennis".split()
    tgt = "He plays tennis".split()
    edits = gecrank.extract_edits(src, tgt)
    assert edits == [gecrank.Edit(1, 2, ["plays"]), gecrank.Edit(2, 3, [])]
    assert gecrank.apply_edits(src, edits) == tgt


def test_sentence_metrics():
    src = "He play a tennis".split()
    hyp = "He plays a tennis".split()
    refs = ["He plays tennis".split()]
    assert gecrank.edit_f_sentence(src, hyp, refs) == pytest.approx(5 / 6)
    assert gecrank.edit_f_sentence(src, refs[0], refs) == 1.0
    assert 0.0 <= gecrank.gleu_plus_sentence(src, hyp, refs) <= 1.0
    assert 0.0 <= gecrank.green_sentence(src, hyp, refs) <= 1.0


def test_pipeline_ranks_reference_copy_first():
    names, rows = gecrank.score_corpus(SOURCES, SYSTEMS, REFERENCES)
    assert names == ["A", "B", "C"]
    assert len(rows) == 2
    comps = gecrank.to_comparisons(names, rows)
    assert len(comps) == 12
    for method in (gecrank.trueskill_rank, gecrank.expected_wins_rank):
        report = method(comps, names)
        assert report.order()[0] == "C"
    mean = gecrank.mean_rank(names, rows)
    assert mean.order()[0] == "C"
    doc = json.loads(mean.to_json())
    assert doc["method"] == "mean"
    assert [s["rank"] for s in doc["systems"]][0] == 1


def test_scoring_is_thread_independent():
    config = gecrank.MetricConfig()
    config.metric = gecrank.Metric.GLEU_PLUS
    one = gecrank.score_corpus(SOURCES, SYSTEMS, REFERENCES, config, threads=1)
    many = gecrank.score_corpus(SOURCES, SYSTEMS, REFERENCES, config, threads=4)
    assert one == many


def test_trueskill_update_at_prior():
    a, b = gecrank.trueskill_update(gecrank.Rating(), gecrank.Rating(), gecrank.Outcome.A_WINS)
    assert a.mu == pytest.approx(29.395831692991514, abs=1e-12)
    assert a.mu - 25 == pytest.approx(25 - b.mu)
    a, b = gecrank.trueskill_update(gecrank.Rating(), gecrank.Rating(), gecrank.Outcome.TIE)
    assert a.mu == b.mu == 25.0
    assert a.sigma < 25 / 3


def test_correlations_and_windows():
    assert gecrank.pearson([1, 2, 3, 5], [2, 1, 4, 5]) == pytest.approx(0.855235974119758, abs=1e-14)
    assert gecrank.spearman([1, 2, 2, 4], [1, 3, 2, 4]) == pytest.approx(0.9486832980505138, abs=1e-14)
    assert gecrank.fractional_ranks([10, 20, 20, 5]) == [2, 3.5, 3.5, 1]

    names = [f"s{k}" for k in range(14)]
    human = [(n, 14.0 - k) for k, n in enumerate(names)]
    rows = [[14.0 - k + math.sin(k) for k in range(14)]]
    report = gecrank.mean_rank(names, rows)
    windows = gecrank.window_analysis(human, report, 8)
    assert [w[0] for w in windows] == list(range(1, 8))


def test_errors_are_value_errors():
    with pytest.raises(gecrank.GecrankError):
        gecrank.pearson([1, 1, 1], [1, 2, 3])
    with pytest.raises(ValueError):
        gecrank.mean_rank(["A", "B"], [[0.1]])

"""Sentence-level tournament ranking and meta-evaluation for correction systems."""

from ._gecrank import (
    Comparison,
    Edit,
    GecrankError,
    Metric,
    MetricConfig,
    Outcome,
    RankingReport,
    Rating,
    TrueSkillConfig,
    apply_edits,
    edit_f_sentence,
    expected_wins_rank,
    extract_edits,
    fractional_ranks,
    gleu_plus_sentence,
    green_sentence,
    mean_rank,
    pearson,
    score_corpus,
    spearman,
    to_comparisons,
    trueskill_rank,
    trueskill_update,
    window_analysis,
)

__all__ = [
    "Comparison",
    "Edit",
    "GecrankError",
    "Metric",
    "MetricConfig",
    "Outcome",
    "RankingReport",
    "Rating",
    "TrueSkillConfig",
    "apply_edits",
    "edit_f_sentence",
    "expected_wins_rank",
    "extract_edits",
    "fractional_ranks",
    "gleu_plus_sentence",
    "green_sentence",
    "mean_rank",
    "pearson",
    "score_corpus",
    "spearman",
    "to_comparisons",
    "trueskill_rank",
    "trueskill_update",
    "window_analysis",
]

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gecrank/corpus_io.hpp"
#include "gecrank/pairwise.hpp"
#include "gecrank/report.hpp"

namespace gecrank {

struct Rating {
  double mu = 25.0;
  double sigma = 25.0 / 3.0;
};

struct TrueSkillConfig {
  double mu0 = 25.0;
  double sigma0 = 25.0 / 3.0;
  double beta = 25.0 / 6.0;
  double tau = 25.0 / 300.0;
  double draw_probability = 0.1;

  // Conventional parameterization around a prior mean and deviation:
  // beta = sigma0 / 2, tau = sigma0 / 100.
  static TrueSkillConfig from_prior(double mu0, double sigma0, double draw_probability = 0.1);

  void validate() const;
  // Phi^-1((1 + p) / 2) * sqrt(2) * beta.
  double draw_margin() const;
};

// Standard normal density and distribution function.
double normal_pdf(double x);
double normal_cdf(double x);

struct UpdateResult {
  Rating a;
  Rating b;
  // The cdf denominator underflowed and the tail approximation was used.
  bool guarded = false;
};

/// One two-player TrueSkill update for `outcome` of a against b.
///
/// Both variances are inflated by tau^2 first. Throws NumericalInstability if
/// a variance contraction factor leaves [0, 1).
UpdateResult trueskill_update(const Rating& a, const Rating& b, Outcome outcome, const TrueSkillConfig& config);

enum class RankKey { kMu, kConservative };

struct TrueSkillOptions {
  RankKey rank_key = RankKey::kMu;
  // Processes comparisons in a seeded Fisher-Yates order instead of stream order.
  std::optional<std::uint64_t> shuffle_seed;
};

// Single sequential pass over `comparisons` starting every system at the prior.
std::vector<Rating> trueskill_ratings(std::span<const Comparison> comparisons, std::size_t system_count,
                                      const TrueSkillConfig& config, const TrueSkillOptions& options = {},
                                      std::size_t* guarded_updates = nullptr);

RankingReport trueskill_rank(std::span<const Comparison> comparisons, std::span<const std::string> systems,
                             const TrueSkillConfig& config = {}, const TrueSkillOptions& options = {});

// Average over opponents with at least one decisive result of the share of
// decisive comparisons won. Ties are ignored. If no comparison is decisive the
// report has all_ties set and every score is 0.
RankingReport expected_wins_rank(std::span<const Comparison> comparisons, std::span<const std::string> systems);

RankingReport mean_rank(const ScoreMatrix& scores);

// Ranks systems by a precomputed corpus-level score (e.g. corpus F0.5).
RankingReport corpus_rank(std::span<const std::string> systems, std::span<const double> corpus_scores,
                          std::string method = "corpus");

}  // namespace gecrank

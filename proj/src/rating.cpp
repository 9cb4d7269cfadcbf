#include "gecrank/rating.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "gecrank/error.hpp"

namespace gecrank {

namespace {

constexpr double kDenominatorGuard = 1e-300;

SystemResult scalar_result(const std::string& name, double score) {
  SystemResult r;
  r.name = name;
  r.score = score;
  return r;
}

struct VW {
  double v;
  double w;
  bool guarded;
};

// Truncated-Gaussian corrections for a decisive result, x = t - eps / c.
VW win_correction(double x) {
  const double denom = normal_cdf(x);
  if (denom < kDenominatorGuard) return {-x, 1.0, true};
  const double v = normal_pdf(x) / denom;
  return {v, v * (v + x), false};
}

// Corrections for a draw at normalized difference t and margin e = eps / c.
VW draw_correction(double t, double e) {
  const double abs_t = std::abs(t);
  const double hi = e - abs_t;
  const double lo = -e - abs_t;
  const double denom = normal_cdf(hi) - normal_cdf(lo);
  const double sign = t < 0 ? -1.0 : 1.0;
  if (denom < kDenominatorGuard) return {sign * hi, 1.0, true};
  const double v_abs = (normal_pdf(lo) - normal_pdf(hi)) / denom;
  const double w = v_abs * v_abs + (hi * normal_pdf(hi) - lo * normal_pdf(lo)) / denom;
  return {sign * v_abs, w, false};
}

double contract(double variance, double c2, double w) {
  const double factor = (variance / c2) * w;
  if (!(factor >= 0.0 && factor < 1.0))
    throw NumericalInstability("TrueSkill variance contraction out of range: " + std::to_string(factor));
  return variance * (1.0 - factor);
}

}  // namespace

TrueSkillConfig TrueSkillConfig::from_prior(double mu0, double sigma0, double draw_probability) {
  return {mu0, sigma0, sigma0 / 2.0, sigma0 / 100.0, draw_probability};
}

void TrueSkillConfig::validate() const {
  if (!std::isfinite(mu0)) throw ConfigError("mu0 must be finite");
  if (!(sigma0 > 0) || !std::isfinite(sigma0)) throw ConfigError("sigma0 must be > 0");
  if (!(beta > 0) || !std::isfinite(beta)) throw ConfigError("beta must be > 0");
  if (!(tau >= 0) || !std::isfinite(tau)) throw ConfigError("tau must be >= 0");
  if (!(draw_probability >= 0 && draw_probability < 1)) throw ConfigError("draw_probability must lie in [0, 1)");
}

double TrueSkillConfig::draw_margin() const {
  // Phi^-1((1 + p) / 2) = sqrt(2) erf^-1(p)
  if (draw_probability == 0.0) return 0.0;
  return 2.0 * beta * boost::math::erf_inv(draw_probability);
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

UpdateResult trueskill_update(const Rating& a, const Rating& b, Outcome outcome, const TrueSkillConfig& config) {
  double var_a = a.sigma * a.sigma + config.tau * config.tau;
  double var_b = b.sigma * b.sigma + config.tau * config.tau;
  const double c2 = 2.0 * config.beta * config.beta + var_a + var_b;
  const double c = std::sqrt(c2);
  const double e = config.draw_margin() / c;

  UpdateResult out;
  if (outcome == Outcome::kTie) {
    const VW vw = draw_correction((a.mu - b.mu) / c, e);
    out.a.mu = a.mu + var_a / c * vw.v;
    out.b.mu = b.mu - var_b / c * vw.v;
    out.a.sigma = std::sqrt(contract(var_a, c2, vw.w));
    out.b.sigma = std::sqrt(contract(var_b, c2, vw.w));
    out.guarded = vw.guarded;
    return out;
  }

  const bool a_won = outcome == Outcome::kAWins;
  const double winner_mu = a_won ? a.mu : b.mu;
  const double loser_mu = a_won ? b.mu : a.mu;
  const VW vw = win_correction((winner_mu - loser_mu) / c - e);
  const double sign_a = a_won ? 1.0 : -1.0;
  out.a.mu = a.mu + sign_a * var_a / c * vw.v;
  out.b.mu = b.mu - sign_a * var_b / c * vw.v;
  out.a.sigma = std::sqrt(contract(var_a, c2, vw.w));
  out.b.sigma = std::sqrt(contract(var_b, c2, vw.w));
  out.guarded = vw.guarded;
  return out;
}

std::vector<Rating> trueskill_ratings(std::span<const Comparison> comparisons, std::size_t system_count,
                                      const TrueSkillConfig& config, const TrueSkillOptions& options,
                                      std::size_t* guarded_updates) {
  config.validate();
  for (const auto& c : comparisons) {
    if (c.system_a >= system_count) throw UnknownSystem("#" + std::to_string(c.system_a));
    if (c.system_b >= system_count) throw UnknownSystem("#" + std::to_string(c.system_b));
    if (c.system_a == c.system_b) throw ConfigError("comparison of a system with itself");
  }

  std::vector<std::size_t> order(comparisons.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (options.shuffle_seed) {
    std::mt19937_64 rng(*options.shuffle_seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  }

  std::vector<Rating> ratings(system_count, Rating{config.mu0, config.sigma0});
  std::size_t guarded = 0;
  for (const std::size_t idx : order) {
    const Comparison& c = comparisons[idx];
    const UpdateResult r = trueskill_update(ratings[c.system_a], ratings[c.system_b], c.outcome, config);
    ratings[c.system_a] = r.a;
    ratings[c.system_b] = r.b;
    guarded += r.guarded ? 1 : 0;
  }
  if (guarded_updates) *guarded_updates = guarded;
  return ratings;
}

RankingReport trueskill_rank(std::span<const Comparison> comparisons, std::span<const std::string> systems,
                             const TrueSkillConfig& config, const TrueSkillOptions& options) {
  std::size_t guarded = 0;
  const auto ratings = trueskill_ratings(comparisons, systems.size(), config, options, &guarded);
  std::vector<SystemResult> results;
  for (std::size_t k = 0; k < systems.size(); ++k) {
    const double conservative = ratings[k].mu - 3.0 * ratings[k].sigma;
    const double score = options.rank_key == RankKey::kMu ? ratings[k].mu : conservative;
    results.push_back({systems[k], 0, score, ratings[k].mu, ratings[k].sigma, conservative});
  }
  auto report = make_report("trueskill", std::move(results));
  report.guarded_updates = guarded;
  return report;
}

RankingReport expected_wins_rank(std::span<const Comparison> comparisons, std::span<const std::string> systems) {
  const std::size_t n = systems.size();
  std::vector<std::size_t> wins(n * n, 0);
  bool any_decisive = false;
  for (const auto& c : comparisons) {
    if (c.system_a >= n) throw UnknownSystem("#" + std::to_string(c.system_a));
    if (c.system_b >= n) throw UnknownSystem("#" + std::to_string(c.system_b));
    if (c.outcome == Outcome::kAWins) ++wins[c.system_a * n + c.system_b];
    if (c.outcome == Outcome::kBWins) ++wins[c.system_b * n + c.system_a];
    any_decisive = any_decisive || c.outcome != Outcome::kTie;
  }
  std::vector<SystemResult> results;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    std::size_t opponents = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const std::size_t won = wins[i * n + j];
      const std::size_t decisive = won + wins[j * n + i];
      if (decisive == 0) continue;
      sum += static_cast<double>(won) / static_cast<double>(decisive);
      ++opponents;
    }
    results.push_back(scalar_result(systems[i], opponents ? sum / static_cast<double>(opponents) : 0.0));
  }
  auto report = make_report("expected_wins", std::move(results));
  report.all_ties = !any_decisive;
  return report;
}

RankingReport mean_rank(const ScoreMatrix& scores) {
  std::vector<SystemResult> results;
  for (std::size_t k = 0; k < scores.system_count(); ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < scores.sentence_count(); ++i) sum += scores.at(i, k);
    const double mean = scores.sentence_count() ? sum / static_cast<double>(scores.sentence_count()) : 0.0;
    results.push_back(scalar_result(scores.system_names()[k], mean));
  }
  return make_report("mean", std::move(results));
}

RankingReport corpus_rank(std::span<const std::string> systems, std::span<const double> corpus_scores,
                          std::string method) {
  if (systems.size() != corpus_scores.size())
    throw LengthMismatch("corpus scores", systems.size(), corpus_scores.size());
  std::vector<SystemResult> results;
  for (std::size_t k = 0; k < systems.size(); ++k) results.push_back(scalar_result(systems[k], corpus_scores[k]));
  return make_report(std::move(method), std::move(results));
}

}  // namespace gecrank

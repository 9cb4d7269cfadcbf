#include "gecrank/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "gecrank/error.hpp"

namespace gecrank {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kEditF: return "edit_f";
    case Metric::kGleuPlus: return "gleu_plus";
    case Metric::kGreen: return "green";
    case Metric::kExternal: return "external";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  if (name == "edit_f") return Metric::kEditF;
  if (name == "gleu_plus") return Metric::kGleuPlus;
  if (name == "green") return Metric::kGreen;
  if (name == "external") return Metric::kExternal;
  throw ConfigError("unknown metric: " + std::string(name));
}

void MetricConfig::validate() const {
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
  if (gleu_iterations < 1) throw ConfigError("gleu_iterations must be >= 1");
  if (!(green_beta > 0) || !(edit_beta > 0)) throw ConfigError("beta must be > 0");
  if (!(smoothing_epsilon > 0) || !(smoothing_epsilon < 1))
    throw ConfigError("smoothing_epsilon must lie in (0, 1)");
}

NGramCounts count_ngrams(std::span<const std::string> tokens, int n) {
  NGramCounts counts;
  const auto order = static_cast<std::size_t>(n);
  if (order == 0 || tokens.size() < order) return counts;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < order; ++k) {
      key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

namespace {

int lookup(const NGramCounts& counts, const std::string& key) {
  const auto it = counts.find(key);
  return it == counts.end() ? 0 : it->second;
}

EditCounts match_edits(const EditSet& hyp, const EditSet& ref) {
  std::size_t tp = 0;
  for (const auto& e : hyp)
    if (std::find(ref.begin(), ref.end(), e) != ref.end()) ++tp;
  return {tp, hyp.size() - tp, ref.size() - tp};
}

}  // namespace

double f_beta(const EditCounts& c, double beta) {
  if (c.tp == 0) return (c.fp == 0 && c.fn == 0) ? 1.0 : 0.0;
  const double p = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  const double r = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  const double b2 = beta * beta;
  return (1.0 + b2) * p * r / (b2 * p + r);
}

EditCounts best_reference_counts(std::span<const std::string> source,
                                 std::span<const std::string> hypothesis,
                                 std::span<const Tokens> references, double beta) {
  const EditSet hyp_edits = extract_edits(source, hypothesis);
  EditCounts best;
  double best_f = -1.0;
  for (const auto& ref : references) {
    const EditCounts c = match_edits(hyp_edits, extract_edits(source, ref));
    const double f = f_beta(c, beta);
    const bool better =
        f > best_f ||
        (f == best_f && (c.tp > best.tp || (c.tp == best.tp && (c.fp < best.fp ||
                                                               (c.fp == best.fp && c.fn < best.fn)))));
    if (better) {
      best = c;
      best_f = f;
    }
  }
  return best;
}

double edit_f_sentence(std::span<const std::string> source, std::span<const std::string> hypothesis,
                       std::span<const Tokens> references, const MetricConfig& config) {
  if (references.empty()) throw MissingReference(0);
  return f_beta(best_reference_counts(source, hypothesis, references, config.edit_beta), config.edit_beta);
}

double edit_f_corpus(const EvalCorpus& corpus, std::string_view system, const MetricConfig& config) {
  const auto& hyps = corpus.systems()[corpus.system_index(system)].hypotheses;
  EditCounts total;
  for (std::size_t i = 0; i < corpus.sentence_count(); ++i) {
    std::vector<Tokens> refs;
    for (const auto& r : corpus.references(i)) refs.push_back(tokenize(r));
    total += best_reference_counts(tokenize(corpus.sources()[i]), tokenize(hyps[i]), refs,
                                   config.edit_beta);
  }
  return f_beta(total, config.edit_beta);
}

double gleu_single_reference(std::span<const std::string> source, std::span<const std::string> hypothesis,
                             std::span<const std::string> reference, const MetricConfig& config) {
  const double hyp_len = static_cast<double>(hypothesis.size());
  const double ref_len = static_cast<double>(reference.size());
  double log_sum = 0.0;
  for (int n = 1; n <= config.n_max; ++n) {
    const NGramCounts h = count_ngrams(hypothesis, n);
    const NGramCounts r = count_ngrams(reference, n);
    const NGramCounts s = count_ngrams(source, n);
    long matched = 0;
    long penalty = 0;
    for (const auto& [g, hc] : h) {
      const int rc = lookup(r, g);
      matched += std::min(hc, rc);
      // Source n-grams the reference dropped entirely count against the hypothesis.
      if (rc == 0) penalty += std::min(hc, lookup(s, g));
    }
    const long numerator = std::max(0L, matched - penalty);
    const long denominator =
        std::max(0L, static_cast<long>(hypothesis.size()) - static_cast<long>(n) + 1);
    double p = 0.0;
    if (denominator == 0) {
      p = r.empty() ? 1.0 : 0.0;
    } else {
      p = static_cast<double>(numerator) / static_cast<double>(denominator);
    }
    if (p == 0.0) p = config.smoothing_epsilon;
    log_sum += std::log(p);
  }
  double bp = 1.0;
  if (hyp_len == 0.0) {
    bp = ref_len == 0.0 ? 1.0 : 0.0;
  } else {
    bp = std::min(1.0, std::exp(1.0 - ref_len / hyp_len));
  }
  return bp * std::exp(log_sum / config.n_max);
}

double gleu_plus_sentence(std::span<const std::string> source, std::span<const std::string> hypothesis,
                          std::span<const Tokens> references, const MetricConfig& config) {
  if (references.empty()) throw MissingReference(0);
  if (references.size() == 1) return gleu_single_reference(source, hypothesis, references[0], config);
  std::vector<double> per_ref;
  per_ref.reserve(references.size());
  for (const auto& ref : references) per_ref.push_back(gleu_single_reference(source, hypothesis, ref, config));
  std::mt19937_64 rng(config.gleu_seed);
  double sum = 0.0;
  for (int it = 0; it < config.gleu_iterations; ++it) sum += per_ref[rng() % per_ref.size()];
  return sum / config.gleu_iterations;
}

double green_order_f(std::span<const std::string> source, std::span<const std::string> hypothesis,
                     std::span<const std::string> reference, int n, double beta) {
  const NGramCounts s = count_ngrams(source, n);
  const NGramCounts h = count_ngrams(hypothesis, n);
  const NGramCounts r = count_ngrams(reference, n);
  NGramCounts keys = s;
  keys.insert(h.begin(), h.end());
  keys.insert(r.begin(), r.end());

  long tp = 0, made = 0, needed = 0;
  for (const auto& entry : keys) {
    const int sc = lookup(s, entry.first);
    const int hc = lookup(h, entry.first);
    const int rc = lookup(r, entry.first);
    const int del_needed = sc - std::min(sc, rc);
    const int del_made = sc - std::min(sc, hc);
    const int ins_needed = rc - std::min(sc, rc);
    const int ins_made = hc - std::min(sc, hc);
    tp += std::min(del_needed, del_made) + std::min(ins_needed, ins_made);
    made += del_made + ins_made;
    needed += del_needed + ins_needed;
  }
  const EditCounts counts{static_cast<std::size_t>(tp), static_cast<std::size_t>(made - tp),
                          static_cast<std::size_t>(needed - tp)};
  return f_beta(counts, beta);
}

double green_sentence(std::span<const std::string> source, std::span<const std::string> hypothesis,
                      std::span<const Tokens> references, const MetricConfig& config) {
  if (references.empty()) throw MissingReference(0);
  double best = 0.0;
  for (const auto& ref : references) {
    double log_sum = 0.0;
    for (int n = 1; n <= config.n_max; ++n) {
      const double f = green_order_f(source, hypothesis, ref, n, config.green_beta);
      log_sum += std::log(std::max(f, config.smoothing_epsilon));
    }
    best = std::max(best, std::exp(log_sum / config.n_max));
  }
  return best;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ScoreMatrix score_matrix(const EvalCorpus& corpus, const MetricConfig& config, unsigned threads) {
  config.validate();
  if (config.metric == Metric::kExternal)
    throw ConfigError("external scores are loaded from score files, not computed");
  const std::size_t m = corpus.sentence_count();
  const std::size_t n_sys = corpus.system_count();
  for (std::size_t i = 0; i < m; ++i) corpus.references(i);

  std::vector<double> values(m * n_sys);
  auto score_sentence = [&](std::size_t i) {
    const Tokens src = tokenize(corpus.sources()[i]);
    std::vector<Tokens> refs;
    for (const auto& r : corpus.references(i)) refs.push_back(tokenize(r));
    MetricConfig local = config;
    local.gleu_seed = derive_seed(config.gleu_seed, i);
    for (std::size_t k = 0; k < n_sys; ++k) {
      const Tokens hyp = tokenize(corpus.systems()[k].hypotheses[i]);
      double v = 0.0;
      switch (config.metric) {
        case Metric::kEditF: v = edit_f_sentence(src, hyp, refs, local); break;
        case Metric::kGleuPlus: v = gleu_plus_sentence(src, hyp, refs, local); break;
        case Metric::kGreen: v = green_sentence(src, hyp, refs, local); break;
        case Metric::kExternal: break;
      }
      values[i * n_sys + k] = v;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, m));
  if (threads <= 1) {
    for (std::size_t i = 0; i < m; ++i) score_sentence(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < m; i = next++) {
          try {
            score_sentence(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }
  return ScoreMatrix(corpus.system_names(), m, std::move(values));
}

}  // namespace gecrank

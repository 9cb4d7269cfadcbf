#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gecrank/corpus_io.hpp"
#include "gecrank/edits.hpp"

namespace gecrank {

enum class Metric { kEditF, kGleuPlus, kGreen, kExternal };

std::string_view to_string(Metric metric);
// Accepts "edit_f", "gleu_plus", "green", "external"; throws ConfigError.
Metric parse_metric(std::string_view name);

struct MetricConfig {
  Metric metric = Metric::kEditF;
  int n_max = 4;
  int gleu_iterations = 500;
  std::uint64_t gleu_seed = 42;
  double green_beta = 2.0;
  double edit_beta = 0.5;
  double smoothing_epsilon = 1e-9;

  // Throws ConfigError on n_max < 1, gleu_iterations < 1, non-positive betas
  // or a non-positive smoothing floor.
  void validate() const;
};

// Counts of every n-gram of one order. Keys join tokens with '\x1f'.
using NGramCounts = std::unordered_map<std::string, int>;
NGramCounts count_ngrams(std::span<const std::string> tokens, int n);

struct EditCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  EditCounts& operator+=(const EditCounts& o) {
    tp += o.tp, fp += o.fp, fn += o.fn;
    return *this;
  }
};

// F-beta from match counts. TP=FP=FN=0 gives 1.0; TP=0 otherwise gives 0.0.
double f_beta(const EditCounts& counts, double beta);

// Counts against the reference with the best sentence F-beta. Ties prefer more
// TP, then fewer FP, then fewer FN, then the earlier reference.
EditCounts best_reference_counts(std::span<const std::string> source,
                                 std::span<const std::string> hypothesis,
                                 std::span<const Tokens> references, double beta);

double edit_f_sentence(std::span<const std::string> source, std::span<const std::string> hypothesis,
                       std::span<const Tokens> references, const MetricConfig& config);

// Corpus F-beta over accumulated TP/FP/FN, the reference per sentence picked
// by best_reference_counts.
double edit_f_corpus(const EvalCorpus& corpus, std::string_view system, const MetricConfig& config);

// GLEU+ against one fixed reference.
double gleu_single_reference(std::span<const std::string> source, std::span<const std::string> hypothesis,
                             std::span<const std::string> reference, const MetricConfig& config);

// Mean of gleu_single_reference over `gleu_iterations` references drawn
// uniformly with mt19937_64(gleu_seed). One reference needs no sampling.
double gleu_plus_sentence(std::span<const std::string> source, std::span<const std::string> hypothesis,
                          std::span<const Tokens> references, const MetricConfig& config);

// GREEN F-score of one order against one reference.
double green_order_f(std::span<const std::string> source, std::span<const std::string> hypothesis,
                     std::span<const std::string> reference, int n, double beta);

double green_sentence(std::span<const std::string> source, std::span<const std::string> hypothesis,
                      std::span<const Tokens> references, const MetricConfig& config);

// splitmix64 of (base, stream); used to give every sentence its own
// reference-sampling stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Scores every (sentence, system) cell with the configured metric.
///
/// Sentence i samples GLEU+ references with derive_seed(gleu_seed, i), shared
/// by all systems. `threads` = 0 picks hardware concurrency; the result does not
/// depend on the thread count. Metric::kExternal is rejected here, use
/// load_scores instead.
ScoreMatrix score_matrix(const EvalCorpus& corpus, const MetricConfig& config, unsigned threads = 1);

}  // namespace gecrank

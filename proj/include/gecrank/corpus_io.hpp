#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gecrank {

using Tokens = std::vector<std::string>;

// Whitespace tokenization. Blank sentences yield an empty sequence.
Tokens tokenize(std::string_view sentence);

// Reads a UTF-8 text file as one entry per line. A trailing newline does not
// start a new line; a trailing '\r' is stripped.
std::vector<std::string> read_lines(const std::filesystem::path& path);

struct SystemOutputs {
  std::string name;
  std::vector<std::string> hypotheses;
};

/// Line-aligned sources, per-system hypotheses and reference sets.
///
/// Construction validates every invariant: M > 0 sentences, all sequences of
/// length M, system names unique and nonempty. References may be absent
/// altogether (external score workflows); when present every sentence carries
/// at least one.
class EvalCorpus {
 public:
  EvalCorpus(std::vector<std::string> sources, std::vector<SystemOutputs> systems,
             std::vector<std::vector<std::string>> references = {});

  std::size_t sentence_count() const { return sources_.size(); }
  std::size_t system_count() const { return systems_.size(); }

  const std::vector<std::string>& sources() const { return sources_; }
  const std::vector<SystemOutputs>& systems() const { return systems_; }
  std::vector<std::string> system_names() const;

  // Index of `name` in system order; throws UnknownSystem.
  std::size_t system_index(std::string_view name) const;

  bool has_references() const { return !references_.empty(); }
  // Throws MissingReference when the corpus was loaded without references.
  const std::vector<std::string>& references(std::size_t sentence) const;

 private:
  std::vector<std::string> sources_;
  std::vector<SystemOutputs> systems_;
  std::vector<std::vector<std::string>> references_;
};

using NamedPaths = std::vector<std::pair<std::string, std::filesystem::path>>;

// Reference file k, line i holds reference k of sentence i. With more than one
// reference file a blank line marks a missing alternative; a sentence whose
// references are all blank is rejected unless its source is blank too.
EvalCorpus load_corpus(const std::filesystem::path& source_path, const NamedPaths& systems,
                       const std::vector<std::filesystem::path>& reference_paths);

// JSON manifest: {"source": path, "systems": {name: path, ...}, "references": [path, ...]}.
// Relative paths resolve against the manifest's directory; system order is
// the order of the JSON object.
struct CorpusManifest {
  std::filesystem::path source;
  NamedPaths systems;
  std::vector<std::filesystem::path> references;
};

CorpusManifest read_corpus_manifest(const std::filesystem::path& manifest_path);
EvalCorpus load_corpus(const CorpusManifest& manifest);

/// Sentence x system matrix of finite scores, stored row-major.
class ScoreMatrix {
 public:
  ScoreMatrix(std::vector<std::string> system_names, std::size_t sentence_count);
  ScoreMatrix(std::vector<std::string> system_names, std::size_t sentence_count,
              std::vector<double> row_major);

  std::size_t sentence_count() const { return sentence_count_; }
  std::size_t system_count() const { return names_.size(); }
  const std::vector<std::string>& system_names() const { return names_; }

  double at(std::size_t sentence, std::size_t system) const {
    return values_[sentence * names_.size() + system];
  }
  // Rejects non-finite values with NonFiniteScore.
  void set(std::size_t sentence, std::size_t system, double value);

  std::span<const double> row(std::size_t sentence) const {
    return {values_.data() + sentence * names_.size(), names_.size()};
  }
  std::vector<double> column(std::size_t system) const;

  friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;

 private:
  std::vector<std::string> names_;
  std::size_t sentence_count_;
  std::vector<double> values_;
};

ScoreMatrix load_scores(const NamedPaths& manifest, std::size_t sentence_count);

// Score manifest: {"systems": {name: path}} or a flat {name: path} object.
NamedPaths read_score_manifest(const std::filesystem::path& manifest_path);

// Writes <dir>/<system>.scores (one "%.17g" value per line) and
// <dir>/scores.json; returns the per-system paths in system order.
NamedPaths write_scores(const ScoreMatrix& scores, const std::filesystem::path& dir);

}  // namespace gecrank

#pragma once

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gecrank/corpus_io.hpp"

namespace gecrank {

enum class Outcome { kAWins, kBWins, kTie };

std::string_view to_string(Outcome outcome);
Outcome mirror(Outcome outcome);

// One sentence-level judgment. Systems are indices into the system list the
// comparisons were generated from.
struct Comparison {
  std::size_t sentence_id = 0;
  std::size_t system_a = 0;
  std::size_t system_b = 0;
  Outcome outcome = Outcome::kTie;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

enum class PairOrdering { kOrderedPairs, kUnorderedPairs };

struct TournamentConfig {
  double tie_epsilon = 0.0;
  PairOrdering ordering = PairOrdering::kOrderedPairs;

  void validate() const;
};

/// Every sentence-level pairwise comparison implied by a score matrix.
///
/// Per sentence, for a < b in system order: (a, b) and, with ordered pairs,
/// its mirror (b, a) right after it. |s_a - s_b| <= tie_epsilon is a tie,
/// otherwise the higher score wins. Ordered mode yields M*N*(N-1) comparisons.
std::vector<Comparison> to_comparisons(const ScoreMatrix& scores, const TournamentConfig& config = {});

// CSV with header "sentence_id,system_a,system_b,outcome"; outcome is one of
// a_wins, b_wins, tie.
void write_comparisons_csv(std::ostream& out, std::span<const Comparison> comparisons,
                           std::span<const std::string> systems);
// Names are mapped onto `systems`; unknown names throw UnknownSystem.
std::vector<Comparison> read_comparisons_csv(const std::filesystem::path& path,
                                             std::span<const std::string> systems);

}  // namespace gecrank

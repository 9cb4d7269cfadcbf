#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gecrank/corpus_io.hpp"

namespace gecrank {

// Replacement of source tokens [start, end) by `replacement`. start == end is
// an insertion; an empty replacement is a deletion.
struct Edit {
  std::size_t start = 0;
  std::size_t end = 0;
  Tokens replacement;

  friend auto operator<=>(const Edit&, const Edit&) = default;
};

// Ordered by start; spans never overlap. An insertion at position p sorts
// before a span starting at p.
using EditSet = std::vector<Edit>;

/// Aligns `source` to `target` with unit-cost token Levenshtein and returns the
/// merged edit spans.
///
/// Among minimum-cost alignments the one chosen is lexicographically smallest
/// when read left to right with operation preference
/// match < substitution < deletion < insertion. Consecutive operations of the
/// same kind are merged into a single span; operations of different kinds stay
/// separate edits, so "play a" -> "plays" yields a substitution followed by a
/// deletion.
EditSet extract_edits(std::span<const std::string> source, std::span<const std::string> target);

// Applies an EditSet (as produced by extract_edits) to `source`.
Tokens apply_edits(std::span<const std::string> source, const EditSet& edits);

}  // namespace gecrank

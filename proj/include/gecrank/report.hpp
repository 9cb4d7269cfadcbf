#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gecrank {

struct SystemResult {
  std::string name;
  int rank = 0;
  double score = 0.0;  // primary score used for ordering
  std::optional<double> mu;
  std::optional<double> sigma;
  std::optional<double> conservative;  // mu - 3 sigma
};

/// Ordered systems with their primary scores.
///
/// Systems are sorted by score descending, equal scores by name. Ranks use
/// competition ranking (1, 2, 2, 4): equal scores share the smaller rank.
struct RankingReport {
  std::string method;
  std::vector<SystemResult> systems;
  // Number of TrueSkill updates that fell back to the tail approximation.
  std::size_t guarded_updates = 0;
  // Expected Wins saw no decisive comparison at all.
  bool all_ties = false;

  const SystemResult* find(std::string_view name) const;
};

// Sorts `results` and assigns ranks.
RankingReport make_report(std::string method, std::vector<SystemResult> results);

std::string to_json(const RankingReport& report);
RankingReport report_from_json(std::string_view json_text);
RankingReport load_report(const std::filesystem::path& path);

void print_table(std::ostream& out, const RankingReport& report);

}  // namespace gecrank

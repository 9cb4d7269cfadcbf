#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gecrank/report.hpp"

namespace gecrank {

// Product-moment correlation. Throws LengthMismatch for unequal or < 2
// lengths and ZeroVariance when either side is constant.
double pearson(std::span<const double> x, std::span<const double> y);

// 1-based ranks, ties receive the average of the positions they span.
std::vector<double> fractional_ranks(std::span<const double> values);

// Pearson correlation of fractional ranks.
double spearman(std::span<const double> x, std::span<const double> y);

struct HumanRanking {
  std::string source;  // free-form tag, e.g. the benchmark split
  std::vector<std::pair<std::string, double>> entries;

  // Names unique, scores finite, at least two entries.
  void validate() const;
  // Entries sorted by score descending, ties by name.
  std::vector<std::pair<std::string, double>> by_rank() const;
};

// CSV "system,score" with a header row.
HumanRanking load_human_csv(const std::filesystem::path& path, std::string source_tag = {});

struct WindowRow {
  std::size_t start_rank = 0;  // 1-based human rank of the window's first system
  double pearson = 0.0;        // NaN when a window side is constant
  double spearman = 0.0;
};

struct WindowReport {
  std::size_t window = 0;
  std::vector<WindowRow> rows;
};

/// Correlations over consecutive blocks of `window` systems in human order.
///
/// Produces N - window + 1 rows with start ranks 1..N-window+1. A window in
/// which either side has zero variance reports NaN instead of failing the run.
WindowReport window_analysis(const HumanRanking& human, const RankingReport& metric, std::size_t window);

void write_window_csv(std::ostream& out, const WindowReport& report);
// {"window": N, "x": [start ranks], "pearson": [...], "spearman": [...]}
std::string window_plot_json(const WindowReport& report);

struct MetaEvalRow {
  std::string label;
  std::string method;
  std::size_t shared_systems = 0;
  double pearson = 0.0;
  double spearman = 0.0;
  std::optional<WindowReport> windows;
};

struct MetaEvalTable {
  std::vector<MetaEvalRow> rows;
  std::vector<std::string> warnings;
};

/// Correlates every report with the human ranking over their shared systems.
///
/// Systems on only one side are dropped with a warning. Throws
/// InsufficientOverlap when fewer than two systems are shared.
MetaEvalTable metaeval_report(const HumanRanking& human,
                              std::span<const std::pair<std::string, RankingReport>> labelled_reports,
                              std::optional<std::size_t> window = std::nullopt);

// CSV "report,method,systems,pearson,spearman".
void write_metaeval_csv(std::ostream& out, const MetaEvalTable& table);
void print_metaeval_table(std::ostream& out, const MetaEvalTable& table);

}  // namespace gecrank

#include "gecrank/metaeval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>

#include "gecrank/corpus_io.hpp"
#include "gecrank/error.hpp"
#include "json.hpp"

namespace gecrank {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw LengthMismatch("correlation input", x.size(), y.size());
  if (x.size() < 2) throw LengthMismatch("correlation input", 2, x.size());
  const double n = static_cast<double>(x.size());
  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw ZeroVariance();
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share rank average of (i+1)..(j+1)
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw LengthMismatch("correlation input", x.size(), y.size());
  const auto rx = fractional_ranks(x);
  const auto ry = fractional_ranks(y);
  return pearson(rx, ry);
}

void HumanRanking::validate() const {
  std::set<std::string, std::less<>> seen;
  for (const auto& [name, score] : entries) {
    if (name.empty() || !seen.insert(name).second) throw DuplicateSystemName(name);
    if (!std::isfinite(score)) throw NonFiniteScore(name, 0);
  }
  if (entries.size() < 2) throw InsufficientOverlap(entries.size());
}

std::vector<std::pair<std::string, double>> HumanRanking::by_rank() const {
  auto sorted = entries;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return sorted;
}

HumanRanking load_human_csv(const std::filesystem::path& path, std::string source_tag) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw ParseError(path.string(), 1, "");
  HumanRanking human;
  human.source = std::move(source_tag);
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const std::string& line = lines[ln];
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos || comma == 0) throw ParseError(path.string(), ln + 1, line);
    const std::string name = line.substr(0, comma);
    std::string value = line.substr(comma + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    value.erase(value.find_last_not_of(" \t") + 1);
    double score = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), score);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size())
      throw ParseError(path.string(), ln + 1, line);
    if (!std::isfinite(score)) throw NonFiniteScore(name, ln + 1);
    human.entries.emplace_back(name, score);
  }
  human.validate();
  return human;
}

namespace {

double correlation_or_nan(double (*fn)(std::span<const double>, std::span<const double>),
                          std::span<const double> x, std::span<const double> y) {
  try {
    return fn(x, y);
  } catch (const ZeroVariance&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

WindowReport window_analysis(const HumanRanking& human, const RankingReport& metric, std::size_t window) {
  human.validate();
  const auto ranked = human.by_rank();
  const std::size_t n = ranked.size();
  if (window < 2 || window > n) throw WindowTooLarge(window, n);
  std::vector<double> human_scores, metric_scores;
  for (const auto& [name, score] : ranked) {
    const SystemResult* s = metric.find(name);
    if (!s) throw UnknownSystem(name);
    human_scores.push_back(score);
    metric_scores.push_back(s->score);
  }
  WindowReport report{window, {}};
  for (std::size_t start = 0; start + window <= n; ++start) {
    const std::span<const double> h(human_scores.data() + start, window);
    const std::span<const double> m(metric_scores.data() + start, window);
    report.rows.push_back({start + 1, correlation_or_nan(&pearson, h, m), correlation_or_nan(&spearman, h, m)});
  }
  return report;
}

void write_window_csv(std::ostream& out, const WindowReport& report) {
  out << "start_rank,pearson,spearman\n";
  for (const auto& row : report.rows)
    out << row.start_rank << ',' << format_number(row.pearson) << ',' << format_number(row.spearman) << '\n';
}

std::string window_plot_json(const WindowReport& report) {
  nlohmann::ordered_json doc;
  doc["window"] = report.window;
  doc["x"] = nlohmann::ordered_json::array();
  doc["pearson"] = nlohmann::ordered_json::array();
  doc["spearman"] = nlohmann::ordered_json::array();
  auto number = [](double v) { return std::isnan(v) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v); };
  for (const auto& row : report.rows) {
    doc["x"].push_back(row.start_rank);
    doc["pearson"].push_back(number(row.pearson));
    doc["spearman"].push_back(number(row.spearman));
  }
  return doc.dump(2) + "\n";
}

MetaEvalTable metaeval_report(const HumanRanking& human,
                              std::span<const std::pair<std::string, RankingReport>> labelled_reports,
                              std::optional<std::size_t> window) {
  human.validate();
  MetaEvalTable table;
  for (const auto& [label, report] : labelled_reports) {
    HumanRanking shared{human.source, {}};
    std::vector<double> human_scores, metric_scores;
    for (const auto& [name, score] : human.entries) {
      const SystemResult* s = report.find(name);
      if (!s) {
        table.warnings.push_back(label + ": system '" + name + "' missing from report, dropped");
        continue;
      }
      shared.entries.emplace_back(name, score);
      human_scores.push_back(score);
      metric_scores.push_back(s->score);
    }
    for (const auto& s : report.systems) {
      const bool in_human = std::any_of(human.entries.begin(), human.entries.end(),
                                        [&](const auto& e) { return e.first == s.name; });
      if (!in_human) table.warnings.push_back(label + ": system '" + s.name + "' has no human score, dropped");
    }
    if (shared.entries.size() < 2) throw InsufficientOverlap(shared.entries.size());

    MetaEvalRow row{label, report.method, shared.entries.size(),
                    correlation_or_nan(&pearson, human_scores, metric_scores),
                    correlation_or_nan(&spearman, human_scores, metric_scores), std::nullopt};
    if (std::isnan(row.pearson) || std::isnan(row.spearman))
      table.warnings.push_back(label + ": zero variance, correlation undefined");
    if (window) row.windows = window_analysis(shared, report, *window);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_metaeval_csv(std::ostream& out, const MetaEvalTable& table) {
  out << "report,method,systems,pearson,spearman\n";
  for (const auto& row : table.rows)
    out << row.label << ',' << row.method << ',' << row.shared_systems << ',' << format_number(row.pearson) << ','
        << format_number(row.spearman) << '\n';
}

void print_metaeval_table(std::ostream& out, const MetaEvalTable& table) {
  char line[256];
  std::snprintf(line, sizeof line, "%-28s %-14s %8s %10s %10s\n", "report", "method", "systems", "pearson",
                "spearman");
  out << line;
  for (const auto& row : table.rows) {
    std::snprintf(line, sizeof line, "%-28s %-14s %8zu %10.4f %10.4f\n", row.label.c_str(), row.method.c_str(),
                  row.shared_systems, row.pearson, row.spearman);
    out << line;
  }
}

}  // namespace gecrank

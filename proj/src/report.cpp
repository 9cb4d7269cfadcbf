#include "gecrank/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gecrank/error.hpp"
#include "json.hpp"

namespace gecrank {

using ordered_json = nlohmann::ordered_json;

const SystemResult* RankingReport::find(std::string_view name) const {
  for (const auto& s : systems)
    if (s.name == name) return &s;
  return nullptr;
}

RankingReport make_report(std::string method, std::vector<SystemResult> results) {
  std::sort(results.begin(), results.end(), [](const SystemResult& a, const SystemResult& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.name < b.name;
  });
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (i > 0 && results[i].score == results[i - 1].score)
      results[i].rank = results[i - 1].rank;
    else
      results[i].rank = static_cast<int>(i) + 1;
  }
  return RankingReport{std::move(method), std::move(results)};
}

namespace {

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<double> read_optional(const ordered_json& obj, const char* key) {
  if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
  return obj[key].get<double>();
}

}  // namespace

std::string to_json(const RankingReport& report) {
  ordered_json doc;
  doc["method"] = report.method;
  doc["systems"] = ordered_json::array();
  for (const auto& s : report.systems) {
    ordered_json entry;
    entry["name"] = s.name;
    entry["rank"] = s.rank;
    entry["score"] = s.score;
    entry["mu"] = optional_number(s.mu);
    entry["sigma"] = optional_number(s.sigma);
    entry["conservative"] = optional_number(s.conservative);
    doc["systems"].push_back(std::move(entry));
  }
  if (report.guarded_updates > 0) doc["guarded_updates"] = report.guarded_updates;
  if (report.all_ties) doc["all_ties"] = true;
  return doc.dump(2) + "\n";
}

RankingReport report_from_json(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
    RankingReport report;
    report.method = doc.at("method").get<std::string>();
    for (const auto& entry : doc.at("systems")) {
      SystemResult s;
      s.name = entry.at("name").get<std::string>();
      s.rank = entry.at("rank").get<int>();
      s.score = entry.at("score").get<double>();
      s.mu = read_optional(entry, "mu");
      s.sigma = read_optional(entry, "sigma");
      s.conservative = read_optional(entry, "conservative");
      report.systems.push_back(std::move(s));
    }
    report.guarded_updates = doc.value("guarded_updates", std::size_t{0});
    report.all_ties = doc.value("all_ties", false);
    return report;
  } catch (const ordered_json::exception& e) {
    throw ConfigError(std::string("invalid ranking report: ") + e.what());
  }
}

RankingReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFound(path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return report_from_json(buf.str());
}

void print_table(std::ostream& out, const RankingReport& report) {
  out << "method: " << report.method << '\n';
  char line[256];
  std::snprintf(line, sizeof line, "%-6s %-24s %12s %10s %10s\n", "rank", "system", "score", "mu", "sigma");
  out << line;
  for (const auto& s : report.systems) {
    std::snprintf(line, sizeof line, "%-6d %-24s %12.6f", s.rank, s.name.c_str(), s.score);
    out << line;
    if (s.mu && s.sigma) {
      std::snprintf(line, sizeof line, " %10.4f %10.4f", *s.mu, *s.sigma);
      out << line;
    }
    out << '\n';
  }
}

}  // namespace gecrank
